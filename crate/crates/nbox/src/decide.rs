//! Certificate-producing decision procedure for N⁺A_{m,n}.
//!
//! Provability of `psi` is decided by exhaustive search over canonical
//! candidate models: worlds are maximal propositionally coherent subsets
//! of `NSub(psi)`, related by `X R_f Y iff []f ∉ X or f ∈ Y`. A candidate
//! that is `Sub(psi)`-(m,n)-accessible and falsifies `psi` somewhere is a
//! finite countermodel, so `psi` is unprovable; if no subset of the world
//! types yields one, `psi` is provable. Consistency of worlds is never
//! assumed: every candidate is checked semantically, and the genuinely
//! consistent types always form one of the enumerated subsets.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::formula::{
    box_iter, nsub, relevance_closure, sub, variables, Formula, LogicId,
};
use crate::semantics::{
    is_set_accessible, path_rel, satisfies, DefaultPolicy, ExtensionalModel, Model, ModelError,
    WorldId,
};

pub const DEFAULT_MAX_GENERATORS: usize = 4;
pub const DEFAULT_SUBSET_BUDGET: u64 = (1 << 16) - 1;
pub const DEFAULT_BUDGET_MS: u64 = 10_000;

/// Largest generator count the subset engine supports (the type universe
/// is kept in a 64-bit mask).
pub const MAX_SUPPORTED_GENERATORS: usize = 6;

pub const ORACLE_MAX_WORLDS: usize = 2;
pub const ORACLE_MAX_BOXED: usize = 4;

/// A ψ-maximal, propositionally coherent subset of `NSub(psi)`: for every
/// `rho ∈ NSub(psi)` it contains `rho` or `negg rho`, and some truth
/// assignment to the generators makes every member true.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WorldType {
    members: BTreeSet<Formula>,
}

impl WorldType {
    pub fn members(&self) -> &BTreeSet<Formula> {
        &self.members
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.members.contains(f)
    }

    /// Right-nested conjunction of the members, in their canonical order.
    pub fn conjunction(&self) -> Formula {
        let mut rev = self.members.iter().rev();
        let mut acc = rev.next().expect("world types are never empty").clone();
        for f in rev {
            acc = Formula::and(f.clone(), acc);
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{count} generators exceed the cap of {cap}")]
pub struct GeneratorLimit {
    pub count: usize,
    pub cap: usize,
}

/// The generators of `psi`: variables and box formulas in `Sub(psi)`.
/// World types are in bijection with truth assignments to them.
pub fn generators(psi: &Formula) -> Vec<Formula> {
    sub(psi)
        .into_iter()
        .filter(|f| matches!(f, Formula::Var(_) | Formula::Box(_)))
        .collect()
}

/// Enumerates all ψ-maximal propositionally coherent subsets of
/// `NSub(psi)`, one per truth assignment to the generators.
pub fn world_types(psi: &Formula, max_generators: usize) -> Result<Vec<WorldType>, GeneratorLimit> {
    let gens = generators(psi);
    if gens.len() > max_generators {
        return Err(GeneratorLimit { count: gens.len(), cap: max_generators });
    }
    let closure = nsub(psi);
    let mut types = Vec::with_capacity(1 << gens.len());
    for bits in 0u64..(1 << gens.len()) {
        let truth: BTreeMap<&Formula, bool> =
            gens.iter().enumerate().map(|(i, g)| (g, bits >> i & 1 == 1)).collect();
        let members: BTreeSet<Formula> =
            closure.iter().filter(|rho| eval_over_generators(rho, &truth)).cloned().collect();
        types.push(WorldType { members });
    }
    types.sort();
    debug_assert!(types.windows(2).all(|w| w[0] != w[1]), "assignments induce distinct types");
    Ok(types)
}

fn eval_over_generators(f: &Formula, truth: &BTreeMap<&Formula, bool>) -> bool {
    match f {
        Formula::Bottom => false,
        Formula::Var(_) | Formula::Box(_) => {
            *truth.get(f).expect("atoms of NSub members are generators")
        }
        Formula::Neg(inner) => !eval_over_generators(inner, truth),
        Formula::Or(left, right) => {
            eval_over_generators(left, truth) || eval_over_generators(right, truth)
        }
    }
}

/// Builds the canonical N-model over the given world types:
/// `X R_f Y iff []f ∉ X or f ∈ Y` for every `f` with `[]f ∈ NSub(psi)`,
/// total default tail (a box outside `NSub(psi)` is never a member, so
/// its relation is total), and valuation by membership. Worlds are named
/// `t0, t1, …` following the set order of `types`.
pub fn canonical_model(
    types: &BTreeSet<WorldType>,
    psi: &Formula,
) -> Result<ExtensionalModel, ModelError> {
    if types.is_empty() {
        return Err(ModelError::EmptyWorlds);
    }
    let list: Vec<&WorldType> = types.iter().collect();
    let names: Vec<String> = (0..list.len()).map(|i| format!("t{i}")).collect();
    let mut model = ExtensionalModel::new(names, DefaultPolicy::Total)?;
    for boxed in nsub(psi) {
        let Formula::Box(inner) = &boxed else { continue };
        let f = (**inner).clone();
        model.track(f.clone());
        for (i, x) in list.iter().enumerate() {
            for (j, y) in list.iter().enumerate() {
                if !x.contains(&boxed) || y.contains(&f) {
                    model.add_pair_ids(f.clone(), WorldId(i), WorldId(j))?;
                }
            }
        }
    }
    for var in variables(psi) {
        let var_formula = Formula::var(var.clone());
        for (i, x) in list.iter().enumerate() {
            if x.contains(&var_formula) {
                model.set_var_ids(WorldId(i), &var, true)?;
            }
        }
    }
    Ok(model)
}

/// Outcome of the decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecisionResult {
    Provable,
    /// Countermodel certificate: re-running the semantics on `model`
    /// falsifies the query at `world` and passes the `Sub(psi)`
    /// accessibility check.
    Unprovable { model: ExtensionalModel, world: String },
    /// A budget ran out before the search space was exhausted; never a
    /// wrong verdict.
    ResourceLimit { explored: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("the full Ros rule is outside the decision procedure")]
    RosUnsupported,
    #[error("NA(0,{0}) with n >= 2 is weaker than N+A(0,{0}) and has no decision procedure here; enable rosbox to decide N+A(0,{0})")]
    IncompleteRegime(usize),
    #[error("max_generators {0} exceeds the engine limit of {MAX_SUPPORTED_GENERATORS}")]
    GeneratorCapTooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    pub max_generators: usize,
    pub subset_budget: u64,
    pub time_budget: Option<Duration>,
}

impl Default for DecideOptions {
    fn default() -> DecideOptions {
        DecideOptions {
            max_generators: DEFAULT_MAX_GENERATORS,
            subset_budget: DEFAULT_SUBSET_BUDGET,
            time_budget: Some(Duration::from_millis(DEFAULT_BUDGET_MS)),
        }
    }
}

/// Decides provability of `psi` in the logic named by `logic`.
///
/// Accepted configurations: any (m,n) with `rosbox`, and plain NA_{m,n}
/// when `m ≥ 1` or `n ≤ 1` (there Ros□ is admissible, so NA and N⁺A
/// prove the same formulas). Plain NA_{0,n} with `n ≥ 2` is refused
/// rather than silently answered for the stronger logic, and the full
/// Ros rule is refused outright.
pub fn decide(
    logic: LogicId,
    psi: &Formula,
    opts: &DecideOptions,
) -> Result<DecisionResult, DecideError> {
    if logic.ros {
        return Err(DecideError::RosUnsupported);
    }
    if !logic.rosbox && logic.m == 0 && logic.n >= 2 {
        return Err(DecideError::IncompleteRegime(logic.n));
    }
    if opts.max_generators > MAX_SUPPORTED_GENERATORS {
        return Err(DecideError::GeneratorCapTooLarge(opts.max_generators));
    }
    let types = match world_types(psi, opts.max_generators) {
        Ok(types) => types,
        Err(_) => return Ok(DecisionResult::ResourceLimit { explored: 0 }),
    };
    let space = SearchSpace::new(psi, logic.m, logic.n, types);
    let deadline = opts.time_budget.map(|budget| Instant::now() + budget);

    let mut explored: u64 = 0;
    let mut scratch = vec![0u64; space.eval_nodes.len()];
    let count = space.types.len();
    // Subsets by decreasing size, full universe first; within one size,
    // index sets in ascending lexicographic order.
    for size in (1..=count).rev() {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            if explored >= opts.subset_budget {
                return Ok(DecisionResult::ResourceLimit { explored });
            }
            if explored % 512 == 0 {
                if let Some(deadline) = deadline {
                    if Instant::now() > deadline {
                        return Ok(DecisionResult::ResourceLimit { explored });
                    }
                }
            }
            explored += 1;
            let mask = combo.iter().fold(0u64, |acc, &i| acc | 1 << i);
            if let Some(hit) = space.check_candidate(mask, &mut scratch) {
                if let Some(result) = space.certify(mask, hit, psi, logic.m, logic.n) {
                    return Ok(result);
                }
            }
            if !advance_combination(&mut combo, count) {
                break;
            }
        }
    }
    Ok(DecisionResult::Provable)
}

// Next k-combination of 0..count in lexicographic order.
fn advance_combination(combo: &mut [usize], count: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < count - (k - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

// Bitmask engine for candidate checks. Bit i of a mask stands for
// types[i]; all per-formula data is precomputed as membership masks over
// the full type universe, so examining one candidate costs a handful of
// word operations per subformula.
struct SearchSpace {
    types: Vec<WorldType>,
    eval_nodes: Vec<EvalNode>,
    psi_slot: usize,
    // For every accessibility target rho: level i holds the masks
    // defining the canonical relation for []^i rho.
    rho_levels: Vec<Vec<Level>>,
    m: usize,
    n: usize,
}

#[derive(Clone, Copy)]
struct Level {
    // Types containing []^{i+1} rho: from them, only targets work.
    has_box: u64,
    // Types containing []^i rho.
    target: u64,
}

enum EvalNode {
    Bottom,
    Atom(u64),
    Neg(usize),
    Or(usize, usize),
    Box { child: usize, has_box: u64, child_member: u64 },
}

impl SearchSpace {
    fn new(psi: &Formula, m: usize, n: usize, types: Vec<WorldType>) -> SearchSpace {
        let member = |f: &Formula| -> u64 {
            types
                .iter()
                .enumerate()
                .filter(|(_, t)| t.contains(f))
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        };

        let mut eval_nodes = Vec::new();
        let mut slots: HashMap<Formula, usize> = HashMap::new();
        let psi_slot = build_eval(psi, &member, &mut eval_nodes, &mut slots);

        let mut targets: BTreeSet<Formula> = BTreeSet::new();
        for gamma in sub(psi) {
            if let Some(rho) = gamma.strip_boxes(m) {
                targets.insert(rho.clone());
            }
        }
        let depth = m.max(n);
        let rho_levels = targets
            .into_iter()
            .map(|rho| {
                (0..depth)
                    .map(|i| Level {
                        has_box: member(&box_iter(i + 1, rho.clone())),
                        target: member(&box_iter(i, rho.clone())),
                    })
                    .collect()
            })
            .collect();

        SearchSpace { types, eval_nodes, psi_slot, rho_levels, m, n }
    }

    // Lowest falsifying world bit if the candidate is accessible and
    // falsifies psi, else None. Falsification is checked first: on
    // provable inputs it rejects every candidate by itself.
    fn check_candidate(&self, s: u64, scratch: &mut [u64]) -> Option<u32> {
        let sat = self.eval_psi(s, scratch);
        let missing = s & !sat;
        if missing == 0 {
            return None;
        }
        if !self.accessible(s) {
            return None;
        }
        Some(missing.trailing_zeros())
    }

    fn eval_psi(&self, s: u64, vals: &mut [u64]) -> u64 {
        for (i, node) in self.eval_nodes.iter().enumerate() {
            vals[i] = match *node {
                EvalNode::Bottom => 0,
                EvalNode::Atom(mask) => mask & s,
                EvalNode::Neg(child) => s & !vals[child],
                EvalNode::Or(left, right) => vals[left] | vals[right],
                EvalNode::Box { child, has_box, child_member } => {
                    let child_sat = vals[child];
                    let mut out = 0u64;
                    let mut rest = s;
                    while rest != 0 {
                        let t = rest.trailing_zeros();
                        rest &= rest - 1;
                        let succ =
                            if has_box >> t & 1 == 1 { child_member & s } else { s };
                        if succ & !child_sat == 0 {
                            out |= 1 << t;
                        }
                    }
                    out
                }
            };
        }
        vals[self.psi_slot]
    }

    fn accessible(&self, s: u64) -> bool {
        self.rho_levels.iter().all(|levels| {
            let mut rest = s;
            while rest != 0 {
                let x = rest.trailing_zeros();
                rest &= rest - 1;
                let reach_m = self.reach(s, levels, x, self.m);
                if reach_m != 0 && reach_m & !self.reach(s, levels, x, self.n) != 0 {
                    return false;
                }
            }
            true
        })
    }

    // Worlds reachable from x by a path of length k: step i of the path
    // follows the relation for []^{k-1-i} rho.
    fn reach(&self, s: u64, levels: &[Level], x: u32, k: usize) -> u64 {
        let mut frontier = 1u64 << x;
        for level in levels[..k].iter().rev() {
            let mut next = 0u64;
            let mut rest = frontier;
            while rest != 0 {
                let t = rest.trailing_zeros();
                rest &= rest - 1;
                next |= if level.has_box >> t & 1 == 1 { level.target & s } else { s };
            }
            frontier = next;
            if frontier == 0 {
                break;
            }
        }
        frontier
    }

    // Materializes the hit and re-verifies it through the generic
    // semantics path before returning it as a certificate.
    fn certify(
        &self,
        mask: u64,
        falsified_bit: u32,
        psi: &Formula,
        m: usize,
        n: usize,
    ) -> Option<DecisionResult> {
        let selected: BTreeSet<WorldType> = self
            .types
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, t)| t.clone())
            .collect();
        let model = canonical_model(&selected, psi).expect("candidate masks are nonempty");
        let rank = (mask & ((1u64 << falsified_bit) - 1)).count_ones() as usize;
        let world = format!("t{rank}");
        let world_id = model.world_id(&world).expect("rank is in range");
        let verified = !satisfies(&model, world_id, psi)
            && is_set_accessible(&model, &sub(psi), m, n);
        debug_assert!(verified, "bitmask candidate check disagrees with the semantics");
        if !verified {
            return None;
        }
        Some(DecisionResult::Unprovable { model, world })
    }
}

fn build_eval(
    f: &Formula,
    member: &impl Fn(&Formula) -> u64,
    nodes: &mut Vec<EvalNode>,
    slots: &mut HashMap<Formula, usize>,
) -> usize {
    if let Some(&slot) = slots.get(f) {
        return slot;
    }
    let node = match f {
        Formula::Bottom => EvalNode::Bottom,
        Formula::Var(_) => EvalNode::Atom(member(f)),
        Formula::Neg(inner) => EvalNode::Neg(build_eval(inner, member, nodes, slots)),
        Formula::Or(left, right) => {
            let l = build_eval(left, member, nodes, slots);
            let r = build_eval(right, member, nodes, slots);
            EvalNode::Or(l, r)
        }
        Formula::Box(inner) => {
            let child = build_eval(inner, member, nodes, slots);
            EvalNode::Box { child, has_box: member(f), child_member: member(inner) }
        }
    };
    nodes.push(node);
    let slot = nodes.len() - 1;
    slots.insert(f.clone(), slot);
    slot
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendFrameError {
    #[error("model is not Sub(psi)-({m},{n})-accessible: {formula} has an {m}-path from {from} to {to} but no {n}-path", formula = crate::formula::print(.formula))]
    NotAccessible { formula: Formula, m: usize, n: usize, from: String, to: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Extends a `Sub(psi)`-(m,n)-accessible model to a fully accessible one
/// on the same worlds, preserving the truth of `psi` everywhere:
/// relations for `f` with `[]f ∈ Sub(psi)` are copied, relations for
/// other `f ∈ Sub(psi)` become total (n > m) or empty (m > n), and
/// everything else becomes the identity.
pub fn extend_frame(
    model: &ExtensionalModel,
    psi: &Formula,
    m: usize,
    n: usize,
) -> Result<ExtensionalModel, ExtendFrameError> {
    let base = sub(psi);
    for gamma in &base {
        let Some(rho) = gamma.strip_boxes(m) else { continue };
        for x in model.worlds() {
            for y in model.worlds() {
                if path_rel(model, rho, m, x, y) && !path_rel(model, rho, n, x, y) {
                    return Err(ExtendFrameError::NotAccessible {
                        formula: rho.clone(),
                        m,
                        n,
                        from: model.world_name(x).to_string(),
                        to: model.world_name(y).to_string(),
                    });
                }
            }
        }
    }

    let names: Vec<String> = model.worlds().map(|w| model.world_name(w).to_string()).collect();
    let mut out = ExtensionalModel::new(names, DefaultPolicy::Identity)?;
    for f in &base {
        if base.contains(&Formula::boxed(f.clone())) {
            out.track(f.clone());
            for x in model.worlds() {
                for y in model.worlds() {
                    if model.related(x, f, y) {
                        out.add_pair_ids(f.clone(), x, y)?;
                    }
                }
            }
        } else if n > m {
            out.track(f.clone());
            for x in model.worlds() {
                for y in model.worlds() {
                    out.add_pair_ids(f.clone(), x, y)?;
                }
            }
        } else if m > n {
            out.track(f.clone());
        }
        // m == n: the identity default already satisfies A_{m,m}.
    }
    for w in model.worlds() {
        for var in model.true_vars(w) {
            out.set_var_ids(w, var, true)?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("max_worlds {0} exceeds the oracle cap of {ORACLE_MAX_WORLDS}")]
    TooManyWorlds(usize),
    #[error("{0} boxed formulas in the relevance closure exceed the oracle cap of {ORACLE_MAX_BOXED}")]
    TooManyBoxed(usize),
}

// Zero-allocation model over bit-packed relation and valuation tables,
// with identity tail; lets the oracle sweep every table without
// rebuilding map-based models.
struct GridModel<'a> {
    names: &'a [String],
    formulas: &'a [Formula],
    rel_bits: u64,
    vars: &'a [String],
    val_bits: u64,
}

impl Model for GridModel<'_> {
    fn world_count(&self) -> usize {
        self.names.len()
    }

    fn world_name(&self, w: WorldId) -> &str {
        &self.names[w.0]
    }

    fn related(&self, x: WorldId, f: &Formula, y: WorldId) -> bool {
        let count = self.names.len();
        match self.formulas.iter().position(|g| g == f) {
            Some(i) => self.rel_bits >> (i * count * count + x.0 * count + y.0) & 1 == 1,
            None => x == y,
        }
    }

    fn var_true(&self, w: WorldId, var: &str) -> bool {
        let count = self.names.len();
        match self.vars.iter().position(|v| v == var) {
            Some(i) => self.val_bits >> (i * count + w.0) & 1 == 1,
            None => false,
        }
    }
}

/// Independent testing oracle: exhaustively enumerates tiny models and
/// returns the first `Sub(psi)`-(m,n)-accessible one falsifying `psi`,
/// together with the falsifying world's name.
///
/// Models range over world counts `1..=max_worlds`, every relation table
/// for the formulas appearing boxed in the relevance closure (identity
/// tail for the rest), and every valuation of `psi`'s variables.
pub fn brute_force_countermodel(
    logic: LogicId,
    psi: &Formula,
    max_worlds: usize,
) -> Result<Option<(ExtensionalModel, String)>, OracleError> {
    if max_worlds > ORACLE_MAX_WORLDS {
        return Err(OracleError::TooManyWorlds(max_worlds));
    }
    let closure = relevance_closure(psi, logic.m, logic.n);
    let rel_indices: Vec<Formula> = closure
        .iter()
        .filter_map(|f| match f {
            Formula::Box(inner) => Some((**inner).clone()),
            _ => None,
        })
        .collect();
    if rel_indices.len() > ORACLE_MAX_BOXED {
        return Err(OracleError::TooManyBoxed(rel_indices.len()));
    }
    let vars: Vec<String> = variables(psi).into_iter().collect();
    let gamma = sub(psi);

    for count in 1..=max_worlds {
        let names: Vec<String> = (0..count).map(|i| format!("w{i}")).collect();
        let rel_width = rel_indices.len() * count * count;
        let val_width = vars.len() * count;
        for rel_bits in 0u64..(1 << rel_width) {
            for val_bits in 0u64..(1 << val_width) {
                let grid = GridModel {
                    names: &names,
                    formulas: &rel_indices,
                    rel_bits,
                    vars: &vars,
                    val_bits,
                };
                let Some(world) = grid.worlds().find(|&w| !satisfies(&grid, w, psi)) else {
                    continue;
                };
                if is_set_accessible(&grid, &gamma, logic.m, logic.n) {
                    let mut model = ExtensionalModel::new(names.clone(), DefaultPolicy::Identity)
                        .expect("oracle worlds are nonempty and distinct");
                    for f in &rel_indices {
                        model.track(f.clone());
                        for x in grid.worlds() {
                            for y in grid.worlds() {
                                if grid.related(x, f, y) {
                                    model
                                        .add_pair_ids(f.clone(), x, y)
                                        .expect("oracle ids in range");
                                }
                            }
                        }
                    }
                    for var in &vars {
                        for w in grid.worlds() {
                            if grid.var_true(w, var) {
                                model.set_var_ids(w, var, true).expect("oracle ids in range");
                            }
                        }
                    }
                    let name = names[world.0].clone();
                    return Ok(Some((model, name)));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TruthLemmaError {
    #[error(transparent)]
    Config(#[from] DecideError),
    #[error(transparent)]
    Generators(#[from] GeneratorLimit),
    #[error("resource limit after {explored} candidates while deciding world-type consistency")]
    ResourceLimit { explored: u64 },
    #[error("no consistent world types (the logic would be inconsistent)")]
    NoConsistentTypes,
}

/// Instantiates the Truth Lemma for `psi`: builds the true canonical
/// model, whose worlds are the world types `X` with `~(⋀X)` unprovable,
/// and reports whether membership and satisfaction coincide for every
/// formula in `NSub(psi)` at every world.
pub fn truth_lemma_check(
    logic: LogicId,
    psi: &Formula,
    opts: &DecideOptions,
) -> Result<bool, TruthLemmaError> {
    let types = world_types(psi, opts.max_generators)?;
    let mut consistent: BTreeSet<WorldType> = BTreeSet::new();
    for world_type in types {
        let target = Formula::neg(world_type.conjunction());
        match decide(logic, &target, opts)? {
            DecisionResult::Provable => {}
            DecisionResult::Unprovable { .. } => {
                consistent.insert(world_type);
            }
            DecisionResult::ResourceLimit { explored } => {
                return Err(TruthLemmaError::ResourceLimit { explored });
            }
        }
    }
    let model =
        canonical_model(&consistent, psi).map_err(|_| TruthLemmaError::NoConsistentTypes)?;
    let list: Vec<&WorldType> = consistent.iter().collect();
    for rho in nsub(psi) {
        for (i, world_type) in list.iter().enumerate() {
            if satisfies(&model, WorldId(i), &rho) != world_type.contains(&rho) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
