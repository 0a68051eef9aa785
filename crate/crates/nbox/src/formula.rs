//! Modal formula AST, concrete syntax, and the syntactic closures used
//! by the other modules.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A modal formula over the core connectives `⊥`, `¬`, `∨`, `□`.
///
/// The surface syntax also accepts `⊤`, `∧`, `→`, `◇`, but those are
/// rewritten away at parse time (`⊤ = ~#f`, `◇φ = ~[]~φ`,
/// `φ∧ψ = ~(~φ|~ψ)`, `φ→ψ = ~φ|ψ`), so stored values only ever use the
/// five constructors below. Structural equality is formula identity;
/// relation tables and world types are keyed by it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bottom,
    Var(String),
    Neg(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    pub fn neg(f: Formula) -> Formula {
        Formula::Neg(Box::new(f))
    }

    pub fn or(left: Formula, right: Formula) -> Formula {
        Formula::Or(Box::new(left), Box::new(right))
    }

    pub fn boxed(f: Formula) -> Formula {
        Formula::Box(Box::new(f))
    }

    /// `⊤`, i.e. `~#f`.
    pub fn top() -> Formula {
        Formula::neg(Formula::Bottom)
    }

    /// `φ ∧ ψ` desugared to `~(~φ | ~ψ)`.
    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::neg(Formula::or(Formula::neg(left), Formula::neg(right)))
    }

    /// `φ → ψ` desugared to `~φ | ψ`.
    pub fn implies(left: Formula, right: Formula) -> Formula {
        Formula::or(Formula::neg(left), right)
    }

    /// `◇φ` desugared to `~[]~φ`.
    pub fn diamond(f: Formula) -> Formula {
        Formula::neg(Formula::boxed(Formula::neg(f)))
    }

    /// Number of leading `[]` operators.
    pub fn leading_boxes(&self) -> usize {
        let mut k = 0;
        let mut cur = self;
        while let Formula::Box(inner) = cur {
            k += 1;
            cur = inner;
        }
        k
    }

    /// Strips exactly `k` leading boxes, or `None` if there are fewer.
    pub fn strip_boxes(&self, k: usize) -> Option<&Formula> {
        let mut cur = self;
        for _ in 0..k {
            match cur {
                Formula::Box(inner) => cur = inner,
                _ => return None,
            }
        }
        Some(cur)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_prec(self, 1, f)
    }
}

// Printing precedence: `|` = 1, unary = 2, atoms = 3. `|` prints
// left-associatively, so only right-nested disjunctions need parens.
fn level(f: &Formula) -> u8 {
    match f {
        Formula::Or(_, _) => 1,
        Formula::Neg(_) | Formula::Box(_) => 2,
        Formula::Bottom | Formula::Var(_) => 3,
    }
}

fn fmt_prec(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if level(f) < min {
        write!(out, "(")?;
        fmt_prec(f, 1, out)?;
        return write!(out, ")");
    }
    match f {
        Formula::Bottom => write!(out, "#f"),
        Formula::Var(name) => write!(out, "{name}"),
        Formula::Neg(inner) => {
            write!(out, "~")?;
            fmt_prec(inner, 2, out)
        }
        Formula::Box(inner) => {
            write!(out, "[]")?;
            fmt_prec(inner, 2, out)
        }
        Formula::Or(left, right) => {
            fmt_prec(left, 1, out)?;
            write!(out, " | ")?;
            fmt_prec(right, 2, out)
        }
    }
}

/// Renders `f` in the concrete syntax with minimal parenthesization.
pub fn print(f: &Formula) -> String {
    f.to_string()
}

/// Identifies one of the logics N, NA_{m,n}, N⁺A_{m,n}, or (for proof
/// checking only) a system with the full Ros rule enabled.
///
/// With both flags off this is NA_{m,n}; `rosbox` adds the Ros□ rule,
/// giving N⁺A_{m,n}. N itself is NA_{1,1} (equivalently NA_{0,0}).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicId {
    pub m: usize,
    pub n: usize,
    #[serde(default)]
    pub rosbox: bool,
    #[serde(default)]
    pub ros: bool,
}

impl LogicId {
    pub fn na(m: usize, n: usize) -> LogicId {
        LogicId { m, n, rosbox: false, ros: false }
    }

    pub fn na_plus(m: usize, n: usize) -> LogicId {
        LogicId { m, n, rosbox: true, ros: false }
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rosbox, self.ros) {
            (false, false) => write!(f, "NA({},{})", self.m, self.n),
            (true, false) => write!(f, "N+A({},{})", self.m, self.n),
            (false, true) => write!(f, "NA({},{})+Ros", self.m, self.n),
            (true, true) => write!(f, "N+A({},{})+Ros", self.m, self.n),
        }
    }
}

/// The set of all subformulae of `f`, including `f` itself.
pub fn sub(f: &Formula) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    collect_sub(f, &mut out);
    out
}

fn collect_sub(f: &Formula, out: &mut BTreeSet<Formula>) {
    if !out.insert(f.clone()) {
        return;
    }
    match f {
        Formula::Bottom | Formula::Var(_) => {}
        Formula::Neg(inner) | Formula::Box(inner) => collect_sub(inner, out),
        Formula::Or(left, right) => {
            collect_sub(left, out);
            collect_sub(right, out);
        }
    }
}

/// Strips one leading negation if present, otherwise prepends one.
///
/// `negg(~~p) = ~p`: exactly one negation is removed, with no deeper
/// normalization.
pub fn negg(f: &Formula) -> Formula {
    match f {
        Formula::Neg(inner) => (**inner).clone(),
        other => Formula::neg(other.clone()),
    }
}

/// `Sub(ψ)` closed under single negation: `Sub(ψ) ∪ {negg ρ : ρ ∈ Sub(ψ)}`.
pub fn nsub(psi: &Formula) -> BTreeSet<Formula> {
    let base = sub(psi);
    let mut out = base.clone();
    for rho in &base {
        out.insert(negg(rho));
    }
    out
}

/// `□ᵏ f`; `box_iter(0, f) = f`.
pub fn box_iter(k: usize, f: Formula) -> Formula {
    let mut cur = f;
    for _ in 0..k {
        cur = Formula::boxed(cur);
    }
    cur
}

/// The finite set of formulas whose relations can influence
/// `Sub(ψ)`-(m,n)-accessibility checking.
///
/// Returns `Sub(ψ) ∪ {□ⁱρ : □ᵐρ ∈ Sub(ψ), 0 ≤ i ≤ max(m,n)−1}`: a
/// ρ-path of length k steps through the relations for `□^{k−1}ρ … ρ`,
/// so both the length-m premise path and the length-n conclusion path
/// stay inside this set.
pub fn relevance_closure(psi: &Formula, m: usize, n: usize) -> BTreeSet<Formula> {
    let base = sub(psi);
    let mut out = base.clone();
    let depth = m.max(n);
    for gamma in &base {
        if let Some(rho) = gamma.strip_boxes(m) {
            for i in 0..depth {
                out.insert(box_iter(i, rho.clone()));
            }
        }
    }
    out
}

/// The maximal subformulas of `f` that are variables or box formulas.
///
/// These are the atoms of `f`'s propositional skeleton: tautology
/// checking assigns truth values to them without looking inside boxes.
pub fn modal_atoms(f: &Formula) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    collect_atoms(f, &mut out);
    out
}

fn collect_atoms(f: &Formula, out: &mut BTreeSet<Formula>) {
    match f {
        Formula::Bottom => {}
        Formula::Var(_) | Formula::Box(_) => {
            out.insert(f.clone());
        }
        Formula::Neg(inner) => collect_atoms(inner, out),
        Formula::Or(left, right) => {
            collect_atoms(left, out);
            collect_atoms(right, out);
        }
    }
}

/// The variable names occurring in `f`.
pub fn variables(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_vars(f, &mut out);
    out
}

fn collect_vars(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Bottom => {}
        Formula::Var(name) => {
            out.insert(name.clone());
        }
        Formula::Neg(inner) | Formula::Box(inner) => collect_vars(inner, out),
        Formula::Or(left, right) => {
            collect_vars(left, out);
            collect_vars(right, out);
        }
    }
}

/// Syntax error with the byte offset of the offending token and the set
/// of tokens that would have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: expected {}, found {found}", expected.join(", "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

const FORMULA_START: &[&str] = &["#f", "#t", "~", "[]", "<>", "(", "identifier"];

/// Parses the concrete syntax into a desugared core AST.
///
/// Grammar (tightest first): unary `~` `[]` `<>`, then `&`, then `|`,
/// then right-associative `->`; `&` and `|` associate to the left.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { input: text.as_bytes(), pos: 0, last_token_start: 0 };
    let f = p.implies()?;
    p.skip_ws();
    if p.pos < p.input.len() {
        return Err(p.err_here(&["|", "&", "->", "end of input"]));
    }
    Ok(f)
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    // Start offset of the most recently consumed token; errors at end of
    // input point here so that dangling operators are blamed, not EOF.
    last_token_start: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.input.len()
    }

    /// Consumes `tok` if the input continues with it.
    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.input[self.pos..].starts_with(tok.as_bytes()) {
            self.last_token_start = self.pos;
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn err_here(&mut self, expected: &[&'static str]) -> ParseError {
        self.skip_ws();
        let (offset, found) = if self.pos >= self.input.len() {
            (self.last_token_start, "end of input".to_string())
        } else {
            let rest = &self.input[self.pos..];
            let len = rest
                .iter()
                .take_while(|b| !b.is_ascii_whitespace())
                .count()
                .clamp(1, 12);
            let shown = String::from_utf8_lossy(&rest[..len]).into_owned();
            (self.pos, format!("{shown:?}"))
        };
        ParseError { offset, expected: expected.to_vec(), found }
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let left = self.or()?;
        if self.eat("->") {
            let right = self.implies()?;
            Ok(Formula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        loop {
            // `|` must not swallow the first dash of `->`.
            self.skip_ws();
            if self.input[self.pos..].starts_with(b"|") {
                self.last_token_start = self.pos;
                self.pos += 1;
                let rhs = self.and()?;
                acc = Formula::or(acc, rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.eat("&") {
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.eat("~") {
            return Ok(Formula::neg(self.unary()?));
        }
        if self.eat("[]") {
            return Ok(Formula::boxed(self.unary()?));
        }
        if self.eat("<>") {
            return Ok(Formula::diamond(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        if self.at_end() {
            return Err(self.err_here(FORMULA_START));
        }
        if self.eat("#f") {
            return Ok(Formula::Bottom);
        }
        if self.eat("#t") {
            return Ok(Formula::top());
        }
        if self.eat("(") {
            let inner = self.implies()?;
            if !self.eat(")") {
                return Err(self.err_here(&[")", "|", "&", "->"]));
            }
            return Ok(inner);
        }
        let b = self.input[self.pos];
        if b.is_ascii_alphabetic() {
            self.last_token_start = self.pos;
            let start = self.pos;
            while self.pos < self.input.len()
                && (self.input[self.pos].is_ascii_alphanumeric() || self.input[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.input[start..self.pos])
                .expect("identifier bytes are ASCII")
                .to_string();
            return Ok(Formula::Var(name));
        }
        Err(self.err_here(FORMULA_START))
    }
}

/// Canonical JSON form of a formula:
/// `{"op":"bot"|"var"|"neg"|"or"|"box", "name"?, "args"?}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AstNode {
    pub op: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub args: Option<Vec<AstNode>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AstError {
    #[error("unknown op {0:?}")]
    UnknownOp(String),
    #[error("op {op:?} takes {want} argument(s), got {got}")]
    Arity { op: String, want: usize, got: usize },
    #[error("op \"var\" requires a name")]
    MissingName,
}

impl From<&Formula> for AstNode {
    fn from(f: &Formula) -> AstNode {
        match f {
            Formula::Bottom => AstNode { op: "bot".into(), name: None, args: None },
            Formula::Var(name) => {
                AstNode { op: "var".into(), name: Some(name.clone()), args: None }
            }
            Formula::Neg(inner) => AstNode {
                op: "neg".into(),
                name: None,
                args: Some(vec![AstNode::from(&**inner)]),
            },
            Formula::Box(inner) => AstNode {
                op: "box".into(),
                name: None,
                args: Some(vec![AstNode::from(&**inner)]),
            },
            Formula::Or(left, right) => AstNode {
                op: "or".into(),
                name: None,
                args: Some(vec![AstNode::from(&**left), AstNode::from(&**right)]),
            },
        }
    }
}

impl TryFrom<&AstNode> for Formula {
    type Error = AstError;

    fn try_from(node: &AstNode) -> Result<Formula, AstError> {
        let args = node.args.as_deref().unwrap_or(&[]);
        let arity = |want: usize| -> Result<(), AstError> {
            if args.len() == want {
                Ok(())
            } else {
                Err(AstError::Arity { op: node.op.clone(), want, got: args.len() })
            }
        };
        match node.op.as_str() {
            "bot" => {
                arity(0)?;
                Ok(Formula::Bottom)
            }
            "var" => {
                arity(0)?;
                let name = node.name.clone().ok_or(AstError::MissingName)?;
                Ok(Formula::Var(name))
            }
            "neg" => {
                arity(1)?;
                Ok(Formula::neg(Formula::try_from(&args[0])?))
            }
            "box" => {
                arity(1)?;
                Ok(Formula::boxed(Formula::try_from(&args[0])?))
            }
            "or" => {
                arity(2)?;
                Ok(Formula::or(Formula::try_from(&args[0])?, Formula::try_from(&args[1])?))
            }
            other => Err(AstError::UnknownOp(other.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Formula {
        parse(text).expect(text)
    }

    #[test]
    fn parse_desugars_implication() {
        assert_eq!(
            p("[]p -> [][]p"),
            Formula::or(
                Formula::neg(Formula::boxed(Formula::var("p"))),
                Formula::boxed(Formula::boxed(Formula::var("p"))),
            )
        );
    }

    #[test]
    fn parse_desugars_diamond() {
        assert_eq!(p("<>p"), Formula::neg(Formula::boxed(Formula::neg(Formula::var("p")))));
    }

    #[test]
    fn parse_desugars_and_top() {
        assert_eq!(p("p & q"), Formula::and(Formula::var("p"), Formula::var("q")));
        assert_eq!(p("#t"), Formula::neg(Formula::Bottom));
    }

    #[test]
    fn incomplete_disjunction_reports_operator_offset() {
        let err = parse("p |").unwrap_err();
        assert_eq!(err.offset, 2);
        assert!(!err.expected.is_empty());
    }

    #[test]
    fn error_offsets_point_at_offending_token() {
        assert_eq!(parse("p q").unwrap_err().offset, 2);
        assert_eq!(parse("").unwrap_err().offset, 0);
        assert_eq!(parse("p -> )").unwrap_err().offset, 5);
        assert_eq!(parse("(p | q").unwrap_err().offset, 5);
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(p("p -> q -> r"), p("p -> (q -> r)"));
        assert_ne!(p("p -> q -> r"), p("(p -> q) -> r"));
    }

    #[test]
    fn or_and_are_left_associative() {
        assert_eq!(p("p | q | r"), Formula::or(Formula::or(p("p"), p("q")), p("r")));
        assert_eq!(p("p & q & r"), Formula::and(Formula::and(p("p"), p("q")), p("r")));
    }

    #[test]
    fn print_examples() {
        assert_eq!(print(&Formula::boxed(Formula::var("p"))), "[]p");
        assert_eq!(print(&Formula::or(Formula::neg(Formula::var("p")), Formula::var("q"))), "~p | q");
        assert_eq!(print(&Formula::Bottom), "#f");
    }

    #[test]
    fn print_parenthesizes_only_where_needed() {
        assert_eq!(print(&p("[](p | q)")), "[](p | q)");
        assert_eq!(print(&p("p | (q | r)")), "p | (q | r)");
        assert_eq!(print(&p("p | q | r")), "p | q | r");
        assert_eq!(print(&p("~~p")), "~~p");
    }

    #[test]
    fn sub_examples() {
        let boxp = p("[]p");
        assert_eq!(sub(&boxp), BTreeSet::from([p("[]p"), p("p")]));
        assert_eq!(sub(&p("p | p")), BTreeSet::from([p("p | p"), p("p")]));
        assert_eq!(sub(&p("~[]#f")), BTreeSet::from([p("~[]#f"), p("[]#f"), p("#f")]));
    }

    #[test]
    fn negg_examples() {
        assert_eq!(negg(&p("~p")), p("p"));
        assert_eq!(negg(&p("p")), p("~p"));
        assert_eq!(negg(&p("~~p")), p("~p"));
        assert_eq!(negg(&p("#f")), p("~#f"));
    }

    #[test]
    fn nsub_examples() {
        assert_eq!(nsub(&p("[]p")), BTreeSet::from([p("[]p"), p("p"), p("~[]p"), p("~p")]));
        assert_eq!(nsub(&p("p")), BTreeSet::from([p("p"), p("~p")]));
        assert_eq!(nsub(&p("~p")), BTreeSet::from([p("~p"), p("p")]));
    }

    #[test]
    fn box_iter_examples() {
        assert_eq!(box_iter(0, p("p")), p("p"));
        assert_eq!(box_iter(2, p("#f")), p("[][]#f"));
        assert_eq!(box_iter(3, p("[]p")), p("[][][][]p"));
    }

    #[test]
    fn relevance_closure_examples() {
        assert_eq!(relevance_closure(&p("[]p"), 2, 1), BTreeSet::from([p("[]p"), p("p")]));
        assert_eq!(
            relevance_closure(&p("[][]p"), 2, 1),
            BTreeSet::from([p("[][]p"), p("[]p"), p("p")])
        );
        // □⁰p = p ∈ Sub(p), so i ranges over {0, 1} and contributes p, []p.
        assert_eq!(relevance_closure(&p("p"), 0, 2), BTreeSet::from([p("p"), p("[]p")]));
    }

    #[test]
    fn relevance_closure_trivial_when_depth_zero() {
        let psi = p("[]p | q");
        assert_eq!(relevance_closure(&psi, 0, 0), sub(&psi));
    }

    #[test]
    fn modal_atoms_stop_at_boxes() {
        assert_eq!(modal_atoms(&p("[]p -> [][]p")), BTreeSet::from([p("[]p"), p("[][]p")]));
        assert_eq!(modal_atoms(&p("#f")), BTreeSet::new());
        assert_eq!(modal_atoms(&p("p | ~q")), BTreeSet::from([p("p"), p("q")]));
    }

    #[test]
    fn json_ast_round_trip() {
        let f = p("[]p -> ~(q | #f)");
        let node = AstNode::from(&f);
        let text = serde_json::to_string(&node).unwrap();
        let back: AstNode = serde_json::from_str(&text).unwrap();
        assert_eq!(Formula::try_from(&back).unwrap(), f);
        assert!(text.contains("\"op\":\"or\""));
    }

    #[test]
    fn json_ast_rejects_bad_shapes() {
        let node: AstNode = serde_json::from_str(r#"{"op":"imp","args":[]}"#).unwrap();
        assert!(matches!(Formula::try_from(&node), Err(AstError::UnknownOp(_))));
        let node: AstNode = serde_json::from_str(r#"{"op":"var"}"#).unwrap();
        assert!(matches!(Formula::try_from(&node), Err(AstError::MissingName)));
        let node: AstNode = serde_json::from_str(r#"{"op":"neg"}"#).unwrap();
        assert!(matches!(Formula::try_from(&node), Err(AstError::Arity { .. })));
    }
}
