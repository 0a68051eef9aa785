//! Hilbert-style proof objects and their checker.
//!
//! A proof is a list of lines, each a formula with a justification:
//! a propositional tautology, an instance of the axiom `[]^n f -> []^m f`,
//! modus ponens, necessitation, or one of the Rosser-style rules. The
//! checker validates every line; the theorem proved is the last line.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{modal_atoms, print, Formula, LogicId};

/// Why a proof line claims to hold. Line references are 1-based and must
/// point strictly backwards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Justification {
    /// Propositional tautology over modal atoms.
    Taut,
    /// Instance of the axiom scheme `[]^n f -> []^m f`.
    #[serde(rename = "axA")]
    AxiomA,
    /// Modus ponens: line `j` is `line i -> this`.
    Mp(usize, usize),
    /// Necessitation: this line is `[](line i)`.
    Nec(usize),
    /// Ros□: from `~[]f` infer `~[][]f`.
    #[serde(rename = "rosbox")]
    RosBox(usize),
    /// Ros: from `~f` infer `~[]f`.
    Ros(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub just: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    pub lines: Vec<ProofLine>,
}

impl Proof {
    pub fn new(lines: Vec<ProofLine>) -> Proof {
        Proof { lines }
    }

    /// The formula a valid proof establishes: its last line.
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|line| &line.formula)
    }
}

/// First failing side condition, reported with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ProofError {
    pub line: usize,
    pub kind: ProofErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofErrorKind {
    #[error("empty proof")]
    Empty,
    #[error("reference to line {0} is out of range (references must point backwards)")]
    BadIndex(usize),
    #[error("rule {0} is disabled in this logic")]
    RuleDisabled(&'static str),
    #[error("formula is not a propositional tautology")]
    NotTautology,
    #[error("formula is not an instance of []^{n} f -> []^{m} f")]
    NotAxiomInstance { m: usize, n: usize },
    #[error("line {major} is not {antecedent:?} -> (this line)", antecedent = print(.minor))]
    MpShape { major: usize, minor: Formula },
    #[error("formula is not [] applied to line {0}")]
    NecShape(usize),
    #[error("Ros[] needs line {0} of the form ~[]f and this line equal to ~[][]f")]
    RosBoxShape(usize),
    #[error("Ros needs line {0} of the form ~f and this line equal to ~[]f")]
    RosShape(usize),
}

/// Truth-table tautology check treating variables and box formulas as
/// opaque atoms (with `#f` fixed to false).
pub fn is_tautology(f: &Formula) -> bool {
    let atoms: Vec<Formula> = modal_atoms(f).into_iter().collect();
    let count = atoms.len();
    debug_assert!(count < usize::BITS as usize);
    (0u64..(1 << count)).all(|bits| {
        let truth: BTreeSet<&Formula> = atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, atom)| atom)
            .collect();
        eval_propositional(f, &truth)
    })
}

fn eval_propositional(f: &Formula, truth: &BTreeSet<&Formula>) -> bool {
    match f {
        Formula::Bottom => false,
        Formula::Var(_) | Formula::Box(_) => truth.contains(f),
        Formula::Neg(inner) => !eval_propositional(inner, truth),
        Formula::Or(left, right) => {
            eval_propositional(left, truth) || eval_propositional(right, truth)
        }
    }
}

/// If `f` is `[]^n rho -> []^m rho` (desugared: `~[]^n rho | []^m rho`),
/// returns the witness `rho`.
pub fn axiom_instance_witness(f: &Formula, m: usize, n: usize) -> Option<Formula> {
    let (lhs, rhs) = match f {
        Formula::Or(neg, rhs) => match &**neg {
            Formula::Neg(lhs) => (&**lhs, &**rhs),
            _ => return None,
        },
        _ => return None,
    };
    let rho = lhs.strip_boxes(n)?;
    if rhs.strip_boxes(m)? == rho {
        Some(rho.clone())
    } else {
        None
    }
}

/// Checks every line of `proof` against `logic`'s axioms and enabled
/// rules, reporting the first violation.
pub fn check_proof(proof: &Proof, logic: LogicId) -> Result<(), ProofError> {
    if proof.lines.is_empty() {
        return Err(ProofError { line: 0, kind: ProofErrorKind::Empty });
    }
    for (idx, line) in proof.lines.iter().enumerate() {
        let number = idx + 1;
        let fail = |kind| Err(ProofError { line: number, kind });
        let fetch = |i: usize| -> Result<&Formula, ProofError> {
            if i == 0 || i > idx {
                Err(ProofError { line: number, kind: ProofErrorKind::BadIndex(i) })
            } else {
                Ok(&proof.lines[i - 1].formula)
            }
        };
        match &line.just {
            Justification::Taut => {
                if !is_tautology(&line.formula) {
                    return fail(ProofErrorKind::NotTautology);
                }
            }
            Justification::AxiomA => {
                if axiom_instance_witness(&line.formula, logic.m, logic.n).is_none() {
                    return fail(ProofErrorKind::NotAxiomInstance { m: logic.m, n: logic.n });
                }
            }
            Justification::Mp(i, j) => {
                let minor = fetch(*i)?;
                let major = fetch(*j)?;
                let expected = Formula::implies(minor.clone(), line.formula.clone());
                if *major != expected {
                    return fail(ProofErrorKind::MpShape { major: *j, minor: minor.clone() });
                }
            }
            Justification::Nec(i) => {
                let premise = fetch(*i)?;
                if line.formula != Formula::boxed(premise.clone()) {
                    return fail(ProofErrorKind::NecShape(*i));
                }
            }
            Justification::RosBox(i) => {
                if !logic.rosbox {
                    return fail(ProofErrorKind::RuleDisabled("Ros[]"));
                }
                let premise = fetch(*i)?;
                match unwrap_neg_box(premise) {
                    Some(inner)
                        if line.formula
                            == Formula::neg(Formula::boxed(Formula::boxed(inner.clone()))) => {}
                    _ => return fail(ProofErrorKind::RosBoxShape(*i)),
                }
            }
            Justification::Ros(i) => {
                if !logic.ros {
                    return fail(ProofErrorKind::RuleDisabled("Ros"));
                }
                let premise = fetch(*i)?;
                match premise {
                    Formula::Neg(inner)
                        if line.formula == Formula::neg(Formula::boxed((**inner).clone())) => {}
                    _ => return fail(ProofErrorKind::RosShape(*i)),
                }
            }
        }
    }
    Ok(())
}

fn unwrap_neg_box(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Neg(inner) => match &**inner {
            Formula::Box(body) => Some(body),
            _ => None,
        },
        _ => None,
    }
}

/// JSON form of a proof: the logic plus lines with formulas in concrete
/// syntax and 1-based rule references.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProofFile {
    pub logic: LogicId,
    pub lines: Vec<ProofFileLine>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProofFileLine {
    pub formula: String,
    pub just: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofFileError {
    #[error("invalid proof JSON: {0}")]
    Json(String),
    #[error("line {line}: {err}")]
    Formula { line: usize, err: crate::formula::ParseError },
}

impl ProofFile {
    pub fn from_json(text: &str) -> Result<ProofFile, ProofFileError> {
        serde_json::from_str(text).map_err(|e| ProofFileError::Json(e.to_string()))
    }

    pub fn into_proof(self) -> Result<(Proof, LogicId), ProofFileError> {
        let mut lines = Vec::with_capacity(self.lines.len());
        for (idx, line) in self.lines.into_iter().enumerate() {
            let formula = crate::formula::parse(&line.formula)
                .map_err(|err| ProofFileError::Formula { line: idx + 1, err })?;
            lines.push(ProofLine { formula, just: line.just });
        }
        Ok((Proof::new(lines), self.logic))
    }
}
