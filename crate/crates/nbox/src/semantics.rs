//! N-models and their satisfaction relation.
//!
//! An N-frame carries one binary relation per formula rather than a
//! single accessibility relation; `[]f` is evaluated along the relation
//! indexed by `f`. The infinite relation family is represented as a
//! finite table plus a uniform default tail (empty, total, or identity),
//! which is enough because the truth of a formula only depends on the
//! relations for its boxed subformulas.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{box_iter, print, Formula, ParseError};

/// Index of a world within a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WorldId(pub usize);

/// Relation applied to every formula absent from a model's table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DefaultPolicy {
    Empty,
    Total,
    Identity,
}

impl DefaultPolicy {
    fn related(self, x: WorldId, y: WorldId) -> bool {
        match self {
            DefaultPolicy::Empty => false,
            DefaultPolicy::Total => true,
            DefaultPolicy::Identity => x == y,
        }
    }
}

/// Finite N-model: a world set, a relation for every formula, and a
/// valuation. Implementations must answer `related` for arbitrary
/// formulas, not just those they store explicitly.
pub trait Model {
    fn world_count(&self) -> usize;

    fn world_name(&self, w: WorldId) -> &str;

    /// Whether `x` sees `y` along the relation indexed by `f`.
    fn related(&self, x: WorldId, f: &Formula, y: WorldId) -> bool;

    /// Truth of variable `var` at `w`.
    fn var_true(&self, w: WorldId, var: &str) -> bool;

    fn worlds(&self) -> WorldIds {
        WorldIds { next: 0, count: self.world_count() }
    }

    fn world_id(&self, name: &str) -> Option<WorldId> {
        self.worlds().find(|&w| self.world_name(w) == name)
    }
}

/// Iterator over a model's world ids.
pub struct WorldIds {
    next: usize,
    count: usize,
}

impl Iterator for WorldIds {
    type Item = WorldId;

    fn next(&mut self) -> Option<WorldId> {
        if self.next < self.count {
            self.next += 1;
            Some(WorldId(self.next - 1))
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("model must have at least one world")]
    EmptyWorlds,
    #[error("duplicate world {0:?}")]
    DuplicateWorld(String),
    #[error("unknown world {0:?}")]
    UnknownWorld(String),
    #[error("world index {0} out of range")]
    WorldOutOfRange(usize),
    #[error("invalid model JSON: {0}")]
    Json(String),
    #[error("invalid formula in model: {0}")]
    Formula(#[from] ParseError),
}

/// N-model with an explicit relation table and a uniform default tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionalModel {
    worlds: Vec<String>,
    default_policy: DefaultPolicy,
    relations: BTreeMap<Formula, BTreeSet<(WorldId, WorldId)>>,
    valuation: BTreeMap<WorldId, BTreeSet<String>>,
}

impl ExtensionalModel {
    pub fn new(
        worlds: Vec<String>,
        default_policy: DefaultPolicy,
    ) -> Result<ExtensionalModel, ModelError> {
        if worlds.is_empty() {
            return Err(ModelError::EmptyWorlds);
        }
        let mut seen = BTreeSet::new();
        for name in &worlds {
            if !seen.insert(name) {
                return Err(ModelError::DuplicateWorld(name.clone()));
            }
        }
        Ok(ExtensionalModel {
            worlds,
            default_policy,
            relations: BTreeMap::new(),
            valuation: BTreeMap::new(),
        })
    }

    pub fn default_policy(&self) -> DefaultPolicy {
        self.default_policy
    }

    /// Formulas with an explicit entry in the relation table.
    pub fn tracked_formulas(&self) -> impl Iterator<Item = &Formula> {
        self.relations.keys()
    }

    pub fn relation_pairs(&self, f: &Formula) -> Option<&BTreeSet<(WorldId, WorldId)>> {
        self.relations.get(f)
    }

    /// Variables true at `w`.
    pub fn true_vars(&self, w: WorldId) -> impl Iterator<Item = &str> {
        self.valuation.get(&w).into_iter().flatten().map(|s| s.as_str())
    }

    fn check_id(&self, w: WorldId) -> Result<WorldId, ModelError> {
        if w.0 < self.worlds.len() {
            Ok(w)
        } else {
            Err(ModelError::WorldOutOfRange(w.0))
        }
    }

    fn resolve(&self, name: &str) -> Result<WorldId, ModelError> {
        self.world_id(name).ok_or_else(|| ModelError::UnknownWorld(name.to_string()))
    }

    /// Creates an explicit (initially empty) table entry for `f`,
    /// shadowing the default tail.
    pub fn track(&mut self, f: Formula) {
        self.relations.entry(f).or_default();
    }

    pub fn add_pair_ids(&mut self, f: Formula, x: WorldId, y: WorldId) -> Result<(), ModelError> {
        self.check_id(x)?;
        self.check_id(y)?;
        self.relations.entry(f).or_default().insert((x, y));
        Ok(())
    }

    pub fn add_pair(&mut self, f: Formula, from: &str, to: &str) -> Result<(), ModelError> {
        let x = self.resolve(from)?;
        let y = self.resolve(to)?;
        self.add_pair_ids(f, x, y)
    }

    pub fn remove_pair_ids(
        &mut self,
        f: &Formula,
        x: WorldId,
        y: WorldId,
    ) -> Result<(), ModelError> {
        self.check_id(x)?;
        self.check_id(y)?;
        // Removing from an untracked relation first materializes the
        // default so the other pairs keep their meaning.
        if !self.relations.contains_key(f) {
            let pairs: BTreeSet<_> = self
                .worlds()
                .flat_map(|a| self.worlds().map(move |b| (a, b)))
                .filter(|&(a, b)| self.default_policy.related(a, b))
                .collect();
            self.relations.insert(f.clone(), pairs);
        }
        self.relations.get_mut(f).expect("just inserted").remove(&(x, y));
        Ok(())
    }

    pub fn set_var_ids(&mut self, w: WorldId, var: &str, value: bool) -> Result<(), ModelError> {
        self.check_id(w)?;
        let entry = self.valuation.entry(w).or_default();
        if value {
            entry.insert(var.to_string());
        } else {
            entry.remove(var);
        }
        Ok(())
    }

    pub fn set_var(&mut self, world: &str, var: &str, value: bool) -> Result<(), ModelError> {
        let w = self.resolve(world)?;
        self.set_var_ids(w, var, value)
    }

    pub fn from_json(text: &str) -> Result<ExtensionalModel, ModelError> {
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
        let mut model = ExtensionalModel::new(file.worlds, file.default)?;
        for entry in file.relations {
            let f = crate::formula::parse(&entry.formula)?;
            model.track(f.clone());
            for (from, to) in entry.pairs {
                model.add_pair(f.clone(), &from, &to)?;
            }
        }
        for (world, vars) in file.valuation {
            for var in vars {
                model.set_var(&world, &var, true)?;
            }
        }
        Ok(model)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let file = ModelFile {
            worlds: self.worlds.clone(),
            default: self.default_policy,
            relations: self
                .relations
                .iter()
                .map(|(f, pairs)| RelationEntry {
                    formula: print(f),
                    pairs: pairs
                        .iter()
                        .map(|&(x, y)| (self.worlds[x.0].clone(), self.worlds[y.0].clone()))
                        .collect(),
                })
                .collect(),
            valuation: self
                .valuation
                .iter()
                .filter(|(_, vars)| !vars.is_empty())
                .map(|(w, vars)| (self.worlds[w.0].clone(), vars.iter().cloned().collect()))
                .collect(),
        };
        serde_json::to_value(file).expect("model serialization cannot fail")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    /// Graphviz export: one digraph per tracked relation, with the
    /// relation's formula as edge label.
    pub fn to_dot(&self) -> String {
        fn quote(s: &str) -> String {
            s.replace('\\', "\\\\").replace('"', "\\\"")
        }
        let mut out = String::new();
        for (i, (f, pairs)) in self.relations.iter().enumerate() {
            let label = quote(&print(f));
            let _ = writeln!(out, "digraph rel_{i} {{");
            let _ = writeln!(out, "  label=\"{label}\";");
            for name in &self.worlds {
                let _ = writeln!(out, "  \"{}\";", quote(name));
            }
            for &(x, y) in pairs {
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [label=\"{label}\"];",
                    quote(&self.worlds[x.0]),
                    quote(&self.worlds[y.0]),
                );
            }
            let _ = writeln!(out, "}}");
        }
        out
    }
}

impl Model for ExtensionalModel {
    fn world_count(&self) -> usize {
        self.worlds.len()
    }

    fn world_name(&self, w: WorldId) -> &str {
        &self.worlds[w.0]
    }

    fn related(&self, x: WorldId, f: &Formula, y: WorldId) -> bool {
        match self.relations.get(f) {
            Some(pairs) => pairs.contains(&(x, y)),
            None => self.default_policy.related(x, y),
        }
    }

    fn var_true(&self, w: WorldId, var: &str) -> bool {
        self.valuation.get(&w).is_some_and(|vars| vars.contains(var))
    }
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    worlds: Vec<String>,
    default: DefaultPolicy,
    #[serde(default)]
    relations: Vec<RelationEntry>,
    #[serde(default)]
    valuation: BTreeMap<String, Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct RelationEntry {
    formula: String,
    pairs: Vec<(String, String)>,
}

/// N-model whose relation and valuation are given by decidable rules on
/// `(world, formula, world)` and `(world, variable)` instead of tables.
///
/// The rule must terminate on every input; model constructions here do
/// so by structural recursion on the formula.
#[derive(Clone)]
pub struct IntensionalModel {
    worlds: Vec<String>,
    rel: Arc<dyn Fn(WorldId, &Formula, WorldId) -> bool + Send + Sync>,
    val: Arc<dyn Fn(WorldId, &str) -> bool + Send + Sync>,
}

impl IntensionalModel {
    pub fn new(
        worlds: Vec<String>,
        rel: impl Fn(WorldId, &Formula, WorldId) -> bool + Send + Sync + 'static,
        val: impl Fn(WorldId, &str) -> bool + Send + Sync + 'static,
    ) -> Result<IntensionalModel, ModelError> {
        if worlds.is_empty() {
            return Err(ModelError::EmptyWorlds);
        }
        let mut seen = BTreeSet::new();
        for name in &worlds {
            if !seen.insert(name) {
                return Err(ModelError::DuplicateWorld(name.clone()));
            }
        }
        Ok(IntensionalModel { worlds, rel: Arc::new(rel), val: Arc::new(val) })
    }

    /// Materializes the relations for the given formulas into a finite
    /// table with the given tail, together with the valuation restricted
    /// to `vars`.
    pub fn materialize<'a>(
        &self,
        formulas: impl IntoIterator<Item = &'a Formula>,
        vars: impl IntoIterator<Item = &'a str>,
        default_policy: DefaultPolicy,
    ) -> ExtensionalModel {
        let mut out = ExtensionalModel::new(self.worlds.clone(), default_policy)
            .expect("worlds validated at construction");
        for f in formulas {
            out.track(f.clone());
            for x in self.worlds() {
                for y in self.worlds() {
                    if self.related(x, f, y) {
                        out.add_pair_ids(f.clone(), x, y).expect("ids in range");
                    }
                }
            }
        }
        for var in vars {
            for w in self.worlds() {
                if self.var_true(w, var) {
                    out.set_var_ids(w, var, true).expect("ids in range");
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntensionalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntensionalModel").field("worlds", &self.worlds).finish_non_exhaustive()
    }
}

impl Model for IntensionalModel {
    fn world_count(&self) -> usize {
        self.worlds.len()
    }

    fn world_name(&self, w: WorldId) -> &str {
        &self.worlds[w.0]
    }

    fn related(&self, x: WorldId, f: &Formula, y: WorldId) -> bool {
        (self.rel)(x, f, y)
    }

    fn var_true(&self, w: WorldId, var: &str) -> bool {
        (self.val)(w, var)
    }
}

/// The satisfaction relation `w ⊩ f`, by structural recursion; `[]g`
/// holds at `w` iff `g` holds at every world `w` sees along the relation
/// indexed by `g`.
pub fn satisfies<M: Model + ?Sized>(model: &M, w: WorldId, f: &Formula) -> bool {
    match f {
        Formula::Bottom => false,
        Formula::Var(name) => model.var_true(w, name),
        Formula::Neg(inner) => !satisfies(model, w, inner),
        Formula::Or(left, right) => satisfies(model, w, left) || satisfies(model, w, right),
        Formula::Box(inner) => {
            model.worlds().all(|v| !model.related(w, inner, v) || satisfies(model, v, inner))
        }
    }
}

/// True iff `f` holds at every world of `model`.
pub fn valid<M: Model + ?Sized>(model: &M, f: &Formula) -> bool {
    model.worlds().all(|w| satisfies(model, w, f))
}

fn box_tower(f: &Formula, k: usize) -> Vec<Formula> {
    let mut tower = Vec::with_capacity(k);
    let mut cur = f.clone();
    for _ in 0..k {
        tower.push(cur.clone());
        cur = Formula::boxed(cur);
    }
    tower
}

type PathMemo = HashMap<(usize, WorldId, WorldId), bool>;

// tower[i] = □^i f; an f-path of length k steps through the relations
// for tower[k-1], tower[k-2], ..., tower[0].
fn path_rel_inner<M: Model + ?Sized>(
    model: &M,
    tower: &[Formula],
    k: usize,
    x: WorldId,
    y: WorldId,
    memo: &mut PathMemo,
) -> bool {
    if k == 0 {
        return x == y;
    }
    if let Some(&hit) = memo.get(&(k, x, y)) {
        return hit;
    }
    let step = &tower[k - 1];
    let found = model
        .worlds()
        .any(|w| model.related(x, step, w) && path_rel_inner(model, tower, k - 1, w, y, memo));
    memo.insert((k, x, y), found);
    found
}

/// Whether there is an `f`-path of length `k` from `x` to `y`:
/// a chain `x R_{□^{k−1}f} w_{k−1} … R_{□f} w_1 R_f y`, with the empty
/// path (`k = 0`) relating every world to itself.
pub fn path_rel<M: Model + ?Sized>(
    model: &M,
    f: &Formula,
    k: usize,
    x: WorldId,
    y: WorldId,
) -> bool {
    let tower = box_tower(f, k);
    path_rel_inner(model, &tower, k, x, y, &mut PathMemo::new())
}

/// Whether every world has at least one `f`-successor.
pub fn is_serial<M: Model + ?Sized>(model: &M, f: &Formula) -> bool {
    model.worlds().all(|w| model.worlds().any(|v| model.related(w, f, v)))
}

/// Whether `x R_{[]f} y` and `y R_f z` imply `x R_f z` for all triples.
pub fn is_transitive<M: Model + ?Sized>(model: &M, f: &Formula) -> bool {
    let box_f = Formula::boxed(f.clone());
    model.worlds().all(|x| {
        model.worlds().all(|y| {
            !model.related(x, &box_f, y)
                || model
                    .worlds()
                    .all(|z| !model.related(y, f, z) || model.related(x, f, z))
        })
    })
}

/// (m,n)-accessibility for `f`: every `f`-path of length `m` between two
/// worlds is matched by an `f`-path of length `n` between the same two.
pub fn is_accessible<M: Model + ?Sized>(model: &M, f: &Formula, m: usize, n: usize) -> bool {
    let tower = box_tower(f, m.max(n));
    let mut memo = PathMemo::new();
    model.worlds().all(|x| {
        model.worlds().all(|y| {
            !path_rel_inner(model, &tower, m, x, y, &mut memo)
                || path_rel_inner(model, &tower, n, x, y, &mut memo)
        })
    })
}

/// Γ-accessibility: (m,n)-accessibility for every `f` with `□^m f ∈ Γ`.
/// For `m = 0` this reads `f ∈ Γ`, so every member of Γ is checked.
pub fn is_set_accessible<M: Model + ?Sized>(
    model: &M,
    gamma: &BTreeSet<Formula>,
    m: usize,
    n: usize,
) -> bool {
    let targets: BTreeSet<&Formula> =
        gamma.iter().filter_map(|g| g.strip_boxes(m)).collect();
    targets.into_iter().all(|f| is_accessible(model, f, m, n))
}

/// Self-test for the layered reading of iterated boxes: `w ⊩ □^k f` iff
/// `f` holds at every endpoint of a length-`k` `f`-path from `w`.
/// Returns true iff the two sides agree at this instance.
pub fn box_k_semantics_check<M: Model + ?Sized>(
    model: &M,
    w: WorldId,
    f: &Formula,
    k: usize,
) -> bool {
    let direct = satisfies(model, w, &box_iter(k, f.clone()));
    let tower = box_tower(f, k);
    let mut memo = PathMemo::new();
    let layered = model.worlds().all(|v| {
        !path_rel_inner(model, &tower, k, w, v, &mut memo) || satisfies(model, v, f)
    });
    direct == layered
}

/// Full (m,n)-accessibility of a table+tail model, over all formulas.
///
/// Formulas with any tracked path relation are checked explicitly; all
/// remaining formulas behave exactly like the default tail, for which
/// accessibility is analytic: an identity tail is always accessible, an
/// empty tail iff `m ≥ 1 ∨ n = 0`, and a total tail iff
/// `n ≥ 1 ∨ m = 0 ∨ |W| = 1`.
pub fn is_fully_accessible(model: &ExtensionalModel, m: usize, n: usize) -> bool {
    let tail_ok = match model.default_policy() {
        DefaultPolicy::Identity => true,
        DefaultPolicy::Empty => m >= 1 || n == 0,
        DefaultPolicy::Total => n >= 1 || m == 0 || model.world_count() == 1,
    };
    if !tail_ok {
        return false;
    }
    let mut candidates = BTreeSet::new();
    for f in model.tracked_formulas() {
        for i in 0..m.max(n) {
            if let Some(base) = f.strip_boxes(i) {
                candidates.insert(base.clone());
            }
        }
    }
    candidates.iter().all(|f| is_accessible(model, f, m, n))
}
