//! Deterministic generators shared by the integration suites.
#![allow(dead_code)]

use nbox::formula::{box_iter, sub, Formula};
use nbox::semantics::{DefaultPolicy, ExtensionalModel, Model, WorldId};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_formula(rng: &mut ChaCha8Rng, depth: usize, vars: &[&str]) -> Formula {
    if depth == 0 {
        if rng.gen_bool(0.25) {
            Formula::Bottom
        } else {
            Formula::var(vars[rng.gen_range(0..vars.len())])
        }
    } else {
        match rng.gen_range(0..8) {
            0 => Formula::Bottom,
            1 | 2 => Formula::var(vars[rng.gen_range(0..vars.len())]),
            3 => Formula::neg(random_formula(rng, depth - 1, vars)),
            4 | 5 => Formula::boxed(random_formula(rng, depth - 1, vars)),
            _ => Formula::or(
                random_formula(rng, depth - 1, vars),
                random_formula(rng, depth - 1, vars),
            ),
        }
    }
}

pub fn random_default(rng: &mut ChaCha8Rng) -> DefaultPolicy {
    [DefaultPolicy::Empty, DefaultPolicy::Total, DefaultPolicy::Identity]
        [rng.gen_range(0..3)]
}

/// Random table+tail model over the given relation formulas: each gets a
/// tracked table with probability `track_prob`, then pairs with
/// probability `pair_prob`; untracked formulas follow the default tail.
pub fn random_model(
    rng: &mut ChaCha8Rng,
    max_worlds: usize,
    rel_formulas: &[Formula],
    vars: &[&str],
    track_prob: f64,
    pair_prob: f64,
) -> ExtensionalModel {
    let count = rng.gen_range(1..=max_worlds);
    let worlds: Vec<String> = (0..count).map(|i| format!("w{i}")).collect();
    let mut model = ExtensionalModel::new(worlds, random_default(rng)).unwrap();
    for f in rel_formulas {
        if rng.gen_bool(track_prob) {
            model.track(f.clone());
            for x in 0..count {
                for y in 0..count {
                    if rng.gen_bool(pair_prob) {
                        model.add_pair_ids(f.clone(), WorldId(x), WorldId(y)).unwrap();
                    }
                }
            }
        }
    }
    for var in vars {
        for w in 0..count {
            if rng.gen_bool(0.5) {
                model.set_var_ids(WorldId(w), var, true).unwrap();
            }
        }
    }
    model
}

/// Relation formula candidates relevant to evaluating `f` and its box
/// iterates up to `[]^k f`: the subformulas plus the box tower.
pub fn relation_candidates(f: &Formula, k: usize) -> Vec<Formula> {
    let mut out: Vec<Formula> = sub(f).into_iter().collect();
    for i in 0..=k {
        let tower = box_iter(i, f.clone());
        if !out.contains(&tower) {
            out.push(tower);
        }
    }
    out
}

/// Re-checks an unprovability certificate from its serialized form
/// alone: the model must falsify `psi` at `world` and pass the
/// `Sub(psi)`-(m,n)-accessibility check.
pub fn certificate_verifies(
    model_json: &str,
    world: &str,
    psi: &Formula,
    m: usize,
    n: usize,
) -> bool {
    let model = match ExtensionalModel::from_json(model_json) {
        Ok(model) => model,
        Err(_) => return false,
    };
    let Some(w) = model.world_id(world) else {
        return false;
    };
    !nbox::semantics::satisfies(&model, w, psi)
        && nbox::semantics::is_set_accessible(&model, &sub(psi), m, n)
}
