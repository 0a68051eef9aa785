//! Acceptance suite: one test per shipping criterion, each printing a
//! PASS line (visible with `cargo test --test acceptance -- --nocapture`).
//! All checks are exact; there are no numeric tolerances in this domain.

mod common;

use std::collections::BTreeSet;

use rand::Rng;

use nbox::countermodels::fig1_model;
use nbox::decide::{
    brute_force_countermodel, decide, extend_frame, truth_lemma_check, DecideOptions,
    DecisionResult,
};
use nbox::formula::{box_iter, parse, print, relevance_closure, sub, Formula, LogicId};
use nbox::proofs::{check_proof, Justification, Proof, ProofLine};
use nbox::semantics::{
    box_k_semantics_check, is_fully_accessible, is_set_accessible, satisfies, valid, Model,
    WorldId,
};

fn f(text: &str) -> Formula {
    parse(text).unwrap()
}

fn opts() -> DecideOptions {
    DecideOptions::default()
}

fn verdict(result: &DecisionResult) -> &'static str {
    match result {
        DecisionResult::Provable => "provable",
        DecisionResult::Unprovable { .. } => "unprovable",
        DecisionResult::ResourceLimit { .. } => "resource_limit",
    }
}

/// Criterion 1: direct and path-based readings of `[]^k` agree on ≥ 1000
/// random models (≤ 4 worlds), formulas to depth 3, k ≤ 3.
#[test]
fn criterion_01_iterated_box_matches_path_semantics() {
    let mut rng = common::rng(0x0101);
    let mut models = 0;
    while models < 1000 {
        let formula = common::random_formula(&mut rng, 3, &["p", "q"]);
        let rels = common::relation_candidates(&formula, 3);
        let model = common::random_model(&mut rng, 4, &rels, &["p", "q"], 0.7, 0.4);
        models += 1;
        let k = rng.gen_range(0..=3);
        for w in model.worlds() {
            assert!(
                box_k_semantics_check(&model, w, &formula, k),
                "disagreement for {} at k={k}",
                print(&formula)
            );
        }
    }
    println!("ACCEPTANCE 1 PASS: box/path agreement on {models} random models");
}

/// Criterion 2: ≥ 500 perturbations of relations irrelevant to psi leave
/// every satisfaction value unchanged.
#[test]
fn criterion_02_irrelevant_relation_perturbations() {
    let mut rng = common::rng(0x0202);
    let mut perturbations = 0;
    while perturbations < 500 {
        let psi = common::random_formula(&mut rng, 3, &["p", "q"]);
        let rels = common::relation_candidates(&psi, 1);
        let mut model = common::random_model(&mut rng, 4, &rels, &["p", "q"], 0.7, 0.4);
        let baseline: Vec<bool> = model.worlds().map(|w| satisfies(&model, w, &psi)).collect();
        let relevant: BTreeSet<Formula> = sub(&psi)
            .iter()
            .filter_map(|g| match g {
                Formula::Box(inner) => Some((**inner).clone()),
                _ => None,
            })
            .collect();
        for _ in 0..8 {
            let target = loop {
                let candidate = match rng.gen_range(0..4) {
                    0 => Formula::var("fresh"),
                    1 => Formula::boxed(psi.clone()),
                    2 => psi.clone(),
                    _ => common::random_formula(&mut rng, 2, &["p", "q"]),
                };
                if !relevant.contains(&candidate) {
                    break candidate;
                }
            };
            let x = WorldId(rng.gen_range(0..model.world_count()));
            let y = WorldId(rng.gen_range(0..model.world_count()));
            if rng.gen_bool(0.5) {
                model.add_pair_ids(target, x, y).unwrap();
            } else {
                model.remove_pair_ids(&target, x, y).unwrap();
            }
            perturbations += 1;
            let after: Vec<bool> =
                model.worlds().map(|w| satisfies(&model, w, &psi)).collect();
            assert_eq!(baseline, after, "perturbation changed satisfaction of {}", print(&psi));
        }
    }
    println!("ACCEPTANCE 2 PASS: {perturbations} irrelevant perturbations, satisfaction unchanged");
}

/// Criterion 3: decision corpus for N (= NA(1,1)) with certificates that
/// re-verify from their serialized form.
#[test]
fn criterion_03_decision_corpus_for_n() {
    let logic = LogicId::na(1, 1);
    for provable in ["[](p -> p)", "[][](p | ~p)"] {
        assert_eq!(
            decide(logic, &f(provable), &opts()),
            Ok(DecisionResult::Provable),
            "{provable} should be provable in N"
        );
    }
    for unprovable in ["[]p -> p", "[]p -> [][]p", "p -> []p"] {
        let psi = f(unprovable);
        match decide(logic, &psi, &opts()).unwrap() {
            DecisionResult::Unprovable { model, world } => {
                assert!(
                    common::certificate_verifies(&model.to_json(), &world, &psi, 1, 1),
                    "certificate for {unprovable} does not re-verify"
                );
            }
            other => panic!("{unprovable} should be unprovable in N, got {other:?}"),
        }
    }
    println!("ACCEPTANCE 3 PASS: N corpus decided with re-verified certificates");
}

/// Criterion 4: the (2,1) regime proves its axiom, refutes []p -> p, and
/// ignores the rosbox flag.
#[test]
fn criterion_04_n4_regime() {
    for logic in [LogicId::na(2, 1), LogicId::na_plus(2, 1)] {
        assert_eq!(decide(logic, &f("[]p -> [][]p"), &opts()), Ok(DecisionResult::Provable));
        let psi = f("[]p -> p");
        match decide(logic, &psi, &opts()).unwrap() {
            DecisionResult::Unprovable { model, world } => {
                assert!(common::certificate_verifies(&model.to_json(), &world, &psi, 2, 1));
            }
            other => panic!("[]p -> p should be unprovable at (2,1), got {other:?}"),
        }
    }
    let corpus = ["[]p -> [][]p", "[]p -> p", "p -> []p", "[](p -> p)"];
    for text in corpus {
        let plain = decide(LogicId::na(2, 1), &f(text), &opts()).unwrap();
        let plus = decide(LogicId::na_plus(2, 1), &f(text), &opts()).unwrap();
        assert_eq!(verdict(&plain), verdict(&plus), "rosbox changed the verdict on {text}");
    }
    println!("ACCEPTANCE 4 PASS: (2,1) verdicts correct and rosbox-invariant");
}

fn na02_derivation() -> Proof {
    let line = |text: &str, just| ProofLine { formula: f(text), just };
    Proof::new(vec![
        line("[][]#f -> #f", Justification::AxiomA),
        line("([][]#f -> #f) -> ~[][]#f", Justification::Taut),
        line("~[][]#f", Justification::Mp(1, 2)),
    ])
}

/// Criterion 5: (0,2)+rosbox proves ~[][]#f and ~[][][]#f; the explicit
/// derivations check, and the rosbox step is rejected without the rule.
#[test]
fn criterion_05_na02_plus_theorems_and_derivations() {
    let logic = LogicId::na_plus(0, 2);
    assert_eq!(decide(logic, &f("~[][]#f"), &opts()), Ok(DecisionResult::Provable));
    assert_eq!(decide(logic, &f("~[][][]#f"), &opts()), Ok(DecisionResult::Provable));

    let three_line = na02_derivation();
    assert_eq!(check_proof(&three_line, LogicId::na(0, 2)), Ok(()));

    let mut four_line = na02_derivation();
    four_line
        .lines
        .push(ProofLine { formula: f("~[][][]#f"), just: Justification::RosBox(3) });
    assert_eq!(check_proof(&four_line, logic), Ok(()));
    assert!(check_proof(&four_line, LogicId::na(0, 2)).is_err());
    println!("ACCEPTANCE 5 PASS: (0,2)+rosbox theorems decided and derivations checked");
}

/// Criterion 6: the two-world separation fixture satisfies [][][]#f at a,
/// and its defining equivalence plus the A_{0,2} scheme hold on ≥ 200
/// generated formulas to depth 4.
#[test]
fn criterion_06_separation_fixture() {
    let model = fig1_model(2).unwrap();
    let a = model.world_id("a").unwrap();
    let b = model.world_id("b").unwrap();
    assert!(satisfies(&model, a, &f("[][][]#f")));
    assert!(!valid(&model, &f("~[][][]#f")));

    let mut rng = common::rng(0x0606);
    let mut corpus = BTreeSet::new();
    while corpus.len() < 220 {
        corpus.insert(common::random_formula(&mut rng, 4, &["p", "q"]));
    }
    for psi in &corpus {
        assert_eq!(
            model.related(a, &Formula::boxed(psi.clone()), b),
            !satisfies(&model, a, psi),
            "relation/satisfaction equivalence fails for {}",
            print(psi)
        );
        assert!(
            valid(&model, &Formula::implies(box_iter(2, psi.clone()), psi.clone())),
            "[][] {} -> {} fails",
            print(psi),
            print(psi)
        );
    }
    println!("ACCEPTANCE 6 PASS: separation fixture checked on {} formulas", corpus.len());
}

/// Criterion 7: membership coincides with satisfaction on the true
/// canonical model for the stated formulas and logics.
#[test]
fn criterion_07_truth_lemma_instances() {
    let logics = [LogicId::na(1, 1), LogicId::na(2, 1), LogicId::na_plus(0, 2)];
    let mut instances = 0;
    for logic in logics {
        for psi in ["p", "[]p", "[]p -> p", "[]p -> [][]p"] {
            assert_eq!(
                truth_lemma_check(logic, &f(psi), &opts()),
                Ok(true),
                "truth lemma fails for {psi} under {logic}"
            );
            instances += 1;
        }
    }
    println!("ACCEPTANCE 7 PASS: truth lemma holds on {instances} instances");
}

/// Criterion 8: extending ≥ 200 random Sub-accessible models yields fully
/// accessible models that agree with the original on psi's validity.
#[test]
fn criterion_08_frame_extension() {
    let mut rng = common::rng(0x0808);
    let mut accepted = 0;
    for (m, n) in [(2, 1), (1, 2), (0, 2), (2, 2)] {
        let mut per_pair = 0;
        let mut attempts = 0;
        while per_pair < 50 {
            attempts += 1;
            assert!(attempts < 40_000, "generator starving at ({m},{n})");
            let psi = common::random_formula(&mut rng, 3, &["p", "q"]);
            let rels: Vec<Formula> = relevance_closure(&psi, m, n).into_iter().collect();
            let model = common::random_model(&mut rng, 3, &rels, &["p", "q"], 0.5, 0.3);
            if !is_set_accessible(&model, &sub(&psi), m, n) {
                continue;
            }
            per_pair += 1;
            accepted += 1;
            let extended = extend_frame(&model, &psi, m, n)
                .unwrap_or_else(|e| panic!("precondition was checked: {e}"));
            assert!(
                is_set_accessible(&extended, &relevance_closure(&psi, m, n), m, n),
                "extension not closure-accessible for {} at ({m},{n})",
                print(&psi)
            );
            assert!(
                is_fully_accessible(&extended, m, n),
                "extension not fully accessible for {} at ({m},{n})",
                print(&psi)
            );
            assert_eq!(
                valid(&extended, &psi),
                valid(&model, &psi),
                "extension changed validity of {}",
                print(&psi)
            );
        }
    }
    println!("ACCEPTANCE 8 PASS: {accepted} frame extensions verified");
}

/// Criterion 9: whenever the brute-force oracle finds a countermodel, the
/// decision procedure answers Unprovable (≥ 200 comparisons).
#[test]
fn criterion_09_oracle_agreement() {
    let mut rng = common::rng(0x0909);
    let mut compared = 0;
    let mut oracle_hits = 0;
    while compared < 210 {
        let psi = common::random_formula(&mut rng, 3, &["p", "q"]);
        if nbox::decide::generators(&psi).len() > 3 {
            continue;
        }
        let (m, n) = [(1, 1), (2, 1), (0, 1)][compared % 3];
        let logic = LogicId::na(m, n);
        let Ok(oracle) = brute_force_countermodel(logic, &psi, 2) else {
            continue;
        };
        let decision = decide(logic, &psi, &opts()).unwrap();
        compared += 1;
        if let Some((model, world)) = oracle {
            oracle_hits += 1;
            assert!(
                common::certificate_verifies(&model.to_json(), &world, &psi, m, n),
                "oracle model fails its own re-check for {}",
                print(&psi)
            );
            assert!(
                matches!(decision, DecisionResult::Unprovable { .. }),
                "oracle refutes {} at ({m},{n}) but decide says {}",
                print(&psi),
                verdict(&decision)
            );
        }
    }
    assert!(oracle_hits >= 40, "only {oracle_hits} oracle hits; corpus too easy");
    println!("ACCEPTANCE 9 PASS: {compared} oracle comparisons, {oracle_hits} hits, no contradictions");
}

/// Criterion 10: (0,0) and (1,1) verdicts coincide across the corpus, and
/// (0,1) proves its axiom []p -> p.
#[test]
fn criterion_10_regime_identities() {
    let mut corpus: Vec<Formula> = [
        "[](p -> p)",
        "[][](p | ~p)",
        "[]p -> p",
        "[]p -> [][]p",
        "p -> []p",
        "~[]#f",
        "<>p -> <>p",
    ]
    .iter()
    .map(|t| f(t))
    .collect();
    let mut rng = common::rng(0x1010);
    while corpus.len() < 40 {
        corpus.push(common::random_formula(&mut rng, 3, &["p", "q"]));
    }
    for psi in &corpus {
        let at_00 = decide(LogicId::na(0, 0), psi, &opts()).unwrap();
        let at_11 = decide(LogicId::na(1, 1), psi, &opts()).unwrap();
        assert_eq!(
            verdict(&at_00),
            verdict(&at_11),
            "verdicts at (0,0) and (1,1) differ on {}",
            print(psi)
        );
    }
    assert_eq!(
        decide(LogicId::na(0, 1), &f("[]p -> p"), &opts()),
        Ok(DecisionResult::Provable)
    );
    println!("ACCEPTANCE 10 PASS: regime identities over {} formulas", corpus.len());
}
