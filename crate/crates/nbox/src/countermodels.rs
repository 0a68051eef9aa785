//! Concrete model constructions used as fixtures for separation and
//! soundness results.

use thiserror::Error;

use crate::formula::{box_iter, Formula};
use crate::semantics::{
    DefaultPolicy, ExtensionalModel, IntensionalModel, ModelError, WorldId,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("n must be at least 2, got {0}")]
    NTooSmall(usize),
    #[error("psi must not be of the form []^{boxes} phi", boxes = .0)]
    PsiIsBoxTower(usize),
}

/// One world, every relation empty, every variable false.
///
/// Every box formula is vacuously valid here, and the frame is
/// (m,n)-accessible for every m ≥ 1, which shows no formula `~[]f` is a
/// theorem of NA_{m,n} in that regime.
pub fn prop41_model() -> ExtensionalModel {
    ExtensionalModel::new(vec!["a".into()], DefaultPolicy::Empty)
        .expect("one world is nonempty")
}

/// Two worlds where `a` sees nothing along `psi`'s relation and
/// everything is related otherwise: total default plus the explicit
/// entry `R_psi = {(b,a),(b,b)}`.
///
/// Requires `psi` to have fewer than `n−1` leading boxes; then `[]psi`
/// is valid while the frame stays (0,n)-accessible.
pub fn prop43_model(psi: &Formula, n: usize) -> Result<ExtensionalModel, FixtureError> {
    if n < 2 {
        return Err(FixtureError::NTooSmall(n));
    }
    if psi.strip_boxes(n - 1).is_some() {
        return Err(FixtureError::PsiIsBoxTower(n - 1));
    }
    let mut model = ExtensionalModel::new(vec!["a".into(), "b".into()], DefaultPolicy::Total)
        .expect("two worlds are nonempty");
    model.track(psi.clone());
    model.add_pair(psi.clone(), "b", "a").map_err(absorb_model_error)?;
    model.add_pair(psi.clone(), "b", "b").map_err(absorb_model_error)?;
    Ok(model)
}

fn absorb_model_error(e: ModelError) -> FixtureError {
    unreachable!("fixture worlds are fixed: {e}")
}

/// The two-world model separating NA_{0,n} from N⁺A_{0,n}.
///
/// Every variable is true everywhere; `b` sees everything along every
/// relation; `a` sees nothing except possibly `b`, and only along
/// relations indexed by a formula of the shape `[]^{n−1}σ`, where the
/// verdict follows σ's structure:
///
/// - `σ = #f`: related;
/// - `σ` a variable: not related;
/// - `σ = ~σ'`: flips the verdict for `σ'`;
/// - `σ = σ₁ | σ₂`: related iff related for both;
/// - `σ = []σ'`: the verdict for `σ'` as a whole relation index.
///
/// The recursion strictly shrinks the formula, so the rule terminates.
pub fn fig1_model(n: usize) -> Result<IntensionalModel, FixtureError> {
    if n < 2 {
        return Err(FixtureError::NTooSmall(n));
    }
    const A: WorldId = WorldId(0);
    IntensionalModel::new(
        vec!["a".into(), "b".into()],
        move |x, f, y| {
            if x != A {
                return true;
            }
            if y == A {
                return false;
            }
            a_sees_b(n, f)
        },
        |_w, _var| true,
    )
    .map_err(|e| unreachable!("fixture worlds are fixed: {e}"))
}

fn a_sees_b(n: usize, f: &Formula) -> bool {
    match f.strip_boxes(n - 1) {
        None => false,
        Some(sigma) => sigma_verdict(n, sigma),
    }
}

fn sigma_verdict(n: usize, sigma: &Formula) -> bool {
    match sigma {
        Formula::Bottom => true,
        Formula::Var(_) => false,
        Formula::Neg(inner) => !sigma_verdict(n, inner),
        Formula::Or(left, right) => sigma_verdict(n, left) && sigma_verdict(n, right),
        Formula::Box(inner) => a_sees_b(n, inner),
    }
}

/// The finite relation fragment touched when evaluating `[]^{n+1}#f` on
/// `fig1_model(n)`: the relations for `#f, []#f, …, []^n #f`.
pub fn fig1_fragment_formulas(n: usize) -> Vec<Formula> {
    (0..=n).map(|i| box_iter(i, Formula::Bottom)).collect()
}
