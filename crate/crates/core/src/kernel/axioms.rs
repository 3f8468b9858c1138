//! Axiom schemata of the kernel.
//!
//! Logical axioms follow Mendelson's system K (L1-L5). The arithmetic axioms
//! PA1-PA8 are open formulas in `x1`, `x2`, `x3`; a proof line may state any
//! of them under an injective renaming of those variables. Induction (PA9) is
//! only available through an explicit instance.

use crate::syntax::{CaptureError, Formula, FormulaNode, Ident, Term, TermNode};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LogicalSchema {
    L1,
    L2,
    L3,
    L4,
    L5,
}

impl LogicalSchema {
    pub const ALL: [LogicalSchema; 5] = [
        LogicalSchema::L1,
        LogicalSchema::L2,
        LogicalSchema::L3,
        LogicalSchema::L4,
        LogicalSchema::L5,
    ];
}

impl fmt::Display for LogicalSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            LogicalSchema::L1 => 1,
            LogicalSchema::L2 => 2,
            LogicalSchema::L3 => 3,
            LogicalSchema::L4 => 4,
            LogicalSchema::L5 => 5,
        };
        write!(f, "L{n}")
    }
}

/// Index 1..=8 of an arithmetic axiom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PaAxiom(u8);

impl PaAxiom {
    pub fn new(index: u8) -> Option<PaAxiom> {
        (1..=8).contains(&index).then_some(PaAxiom(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = PaAxiom> {
        (1..=8).map(PaAxiom)
    }

    /// The axiom in its stated variables `x1`, `x2`, `x3`.
    pub fn formula(self) -> Formula {
        let x1 = Term::var("x1");
        let x2 = Term::var("x2");
        let x3 = Term::var("x3");
        let eq = Formula::eq;
        let imp = Formula::implies;
        match self.0 {
            1 => imp(
                eq(x1.clone(), x2.clone()),
                imp(eq(x1, x3.clone()), eq(x2, x3)),
            ),
            2 => imp(eq(x1.clone(), x2.clone()), eq(Term::succ(x1), Term::succ(x2))),
            3 => Formula::not(eq(Term::zero(), Term::succ(x1))),
            4 => imp(eq(Term::succ(x1.clone()), Term::succ(x2.clone())), eq(x1, x2)),
            5 => eq(Term::add(x1.clone(), Term::zero()), x1),
            6 => eq(
                Term::add(x1.clone(), Term::succ(x2.clone())),
                Term::succ(Term::add(x1, x2)),
            ),
            7 => eq(Term::mul(x1, Term::zero()), Term::zero()),
            8 => eq(
                Term::mul(x1.clone(), Term::succ(x2.clone())),
                Term::add(Term::mul(x1.clone(), x2), x1),
            ),
            _ => unreachable!("PaAxiom index is validated on construction"),
        }
    }

    /// Variables of the stated axiom, in order.
    pub fn variables(self) -> &'static [&'static str] {
        match self.0 {
            1 => &["x1", "x2", "x3"],
            3 | 5 | 7 => &["x1"],
            _ => &["x1", "x2"],
        }
    }

    /// The axiom with its variables renamed by `names` (must be distinct).
    pub fn renamed(self, names: &[&str]) -> Formula {
        let vars = self.variables();
        assert_eq!(vars.len(), names.len(), "PA{} takes {} variables", self.0, vars.len());
        let mut renaming = BTreeMap::new();
        for (v, n) in vars.iter().zip(names) {
            renaming.insert(Ident::from(*v), Ident::from(*n));
        }
        rename_vars(&self.formula(), &renaming)
    }

    /// Whether `f` is this axiom under an injective renaming of its variables.
    pub fn matches(self, f: &Formula) -> bool {
        let mut map = BTreeMap::new();
        match_renaming_formula(&self.formula(), f, &mut map) && {
            let mut targets: Vec<_> = map.values().collect();
            targets.sort();
            targets.dedup();
            targets.len() == map.len()
        }
    }
}

impl fmt::Display for PaAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PA{}", self.0)
    }
}

impl FromStr for LogicalSchema {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        LogicalSchema::ALL
            .into_iter()
            .find(|l| l.to_string() == s)
            .ok_or(())
    }
}

fn rename_vars(f: &Formula, map: &BTreeMap<Ident, Ident>) -> Formula {
    fn term(t: &Term, map: &BTreeMap<Ident, Ident>) -> Term {
        match t.node() {
            TermNode::Zero => t.clone(),
            TermNode::Var(v) => map.get(v).map(|n| Term::var(n.clone())).unwrap_or_else(|| t.clone()),
            TermNode::Succ(n, inner) => Term::succ_n(n.clone(), term(inner, map)),
            TermNode::Add(l, r) => Term::add(term(l, map), term(r, map)),
            TermNode::Mul(l, r) => Term::mul(term(l, map), term(r, map)),
        }
    }
    match f.node() {
        FormulaNode::Eq(l, r) => Formula::eq(term(l, map), term(r, map)),
        FormulaNode::Not(a) => Formula::not(rename_vars(a, map)),
        FormulaNode::Implies(a, b) => Formula::implies(rename_vars(a, map), rename_vars(b, map)),
        FormulaNode::ForAll(v, b) => Formula::forall(v.clone(), rename_vars(b, map)),
    }
}

fn match_renaming_term(pat: &Term, t: &Term, map: &mut BTreeMap<Ident, Ident>) -> bool {
    match (pat.node(), t.node()) {
        (TermNode::Zero, TermNode::Zero) => true,
        (TermNode::Var(p), TermNode::Var(v)) => match map.get(p) {
            Some(bound) => bound == v,
            None => {
                map.insert(p.clone(), v.clone());
                true
            }
        },
        (TermNode::Succ(n, a), TermNode::Succ(m, b)) => n == m && match_renaming_term(a, b, map),
        (TermNode::Add(a, b), TermNode::Add(c, d)) | (TermNode::Mul(a, b), TermNode::Mul(c, d)) => {
            match_renaming_term(a, c, map) && match_renaming_term(b, d, map)
        }
        _ => false,
    }
}

fn match_renaming_formula(pat: &Formula, f: &Formula, map: &mut BTreeMap<Ident, Ident>) -> bool {
    match (pat.node(), f.node()) {
        (FormulaNode::Eq(a, b), FormulaNode::Eq(c, d)) => {
            match_renaming_term(a, c, map) && match_renaming_term(b, d, map)
        }
        (FormulaNode::Not(a), FormulaNode::Not(b)) => match_renaming_formula(a, b, map),
        (FormulaNode::Implies(a, b), FormulaNode::Implies(c, d)) => {
            match_renaming_formula(a, c, map) && match_renaming_formula(b, d, map)
        }
        _ => false,
    }
}

/// Why a formula fails to be an instance of a logical schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum SchemaMismatch {
    Shape,
    Capture(CaptureError),
}

/// Check `f` against logical schema `schema`.
pub(crate) fn check_logical(schema: LogicalSchema, f: &Formula) -> Result<(), SchemaMismatch> {
    use FormulaNode::*;
    let shape = |ok: bool| if ok { Ok(()) } else { Err(SchemaMismatch::Shape) };
    match schema {
        // B -> (C -> B)
        LogicalSchema::L1 => match f.node() {
            Implies(b, rest) => match rest.node() {
                Implies(_, b2) => shape(b == b2),
                _ => shape(false),
            },
            _ => shape(false),
        },
        // (B -> (C -> D)) -> ((B -> C) -> (B -> D))
        LogicalSchema::L2 => {
            let Implies(first, second) = f.node() else { return shape(false) };
            let Implies(b, cd) = first.node() else { return shape(false) };
            let Implies(c, d) = cd.node() else { return shape(false) };
            let Implies(bc, bd) = second.node() else { return shape(false) };
            let Implies(b2, c2) = bc.node() else { return shape(false) };
            let Implies(b3, d2) = bd.node() else { return shape(false) };
            shape(b == b2 && b == b3 && c == c2 && d == d2)
        }
        // (~C -> ~B) -> ((~C -> B) -> C)
        LogicalSchema::L3 => {
            let Implies(first, second) = f.node() else { return shape(false) };
            let Implies(nc, nb) = first.node() else { return shape(false) };
            let (Not(c), Not(b)) = (nc.node(), nb.node()) else { return shape(false) };
            let Implies(ncb, c3) = second.node() else { return shape(false) };
            let Implies(nc2, b2) = ncb.node() else { return shape(false) };
            let Not(c2) = nc2.node() else { return shape(false) };
            shape(c == c2 && c == c3 && b == b2)
        }
        // forall x. B -> B[x := t], t free for x in B
        LogicalSchema::L4 => {
            let Implies(all, inst) = f.node() else { return shape(false) };
            let ForAll(x, body) = all.node() else { return shape(false) };
            match find_instance(body, x, inst) {
                None => shape(false),
                Some(None) => shape(body == inst),
                Some(Some(t)) => match body.substitute(x, &t) {
                    Ok(g) => shape(&g == inst),
                    Err(e) => Err(SchemaMismatch::Capture(e)),
                },
            }
        }
        // forall x. (B -> C) -> (B -> forall x. C), x not free in B
        LogicalSchema::L5 => {
            let Implies(all, rest) = f.node() else { return shape(false) };
            let ForAll(x, bc) = all.node() else { return shape(false) };
            let Implies(b, c) = bc.node() else { return shape(false) };
            let Implies(b2, allc) = rest.node() else { return shape(false) };
            let ForAll(x2, c2) = allc.node() else { return shape(false) };
            shape(x == x2 && b == b2 && c == c2 && !b.is_free(x))
        }
    }
}

/// Build the induction instance for `body` over `var`:
/// `F(0) -> (forall x. (F(x) -> F(S(x)))) -> forall x. F(x)`.
pub fn induction_instance(body: &Formula, var: &str) -> Result<Formula, CaptureError> {
    let base = body.substitute(var, &Term::zero())?;
    let step_concl = body.substitute(var, &Term::succ(Term::var(var)))?;
    Ok(Formula::implies(
        base,
        Formula::implies(
            Formula::forall(var, Formula::implies(body.clone(), step_concl)),
            Formula::forall(var, body.clone()),
        ),
    ))
}

/// Recover `(F, x)` from a formula shaped like an induction instance.
pub fn induction_parts(f: &Formula) -> Option<(Formula, Ident)> {
    use FormulaNode::*;
    let Implies(_, rest) = f.node() else { return None };
    let Implies(_, concl) = rest.node() else { return None };
    let ForAll(x, body) = concl.node() else { return None };
    let candidate = induction_instance(body, x).ok()?;
    (candidate == *f).then(|| (body.clone(), x.clone()))
}

/// Find `t` with `body[x := t] == target`.
///
/// `None`: no such term. `Some(None)`: `x` is not free in `body`, so the
/// instance is `body` itself. The result must still be verified by
/// substitution, which also performs the capture check.
pub(crate) fn find_instance(body: &Formula, x: &str, target: &Formula) -> Option<Option<Term>> {
    let mut found: Option<Term> = None;
    if match_formula(body, x, target, &mut found) {
        Some(found)
    } else {
        None
    }
}

fn match_formula(p: &Formula, x: &str, t: &Formula, found: &mut Option<Term>) -> bool {
    use FormulaNode::*;
    match (p.node(), t.node()) {
        (Eq(a, b), Eq(c, d)) => match_term(a, x, c, found) && match_term(b, x, d, found),
        (Not(a), Not(b)) => match_formula(a, x, b, found),
        (Implies(a, b), Implies(c, d)) => {
            match_formula(a, x, c, found) && match_formula(b, x, d, found)
        }
        (ForAll(v, a), ForAll(w, b)) => {
            if v != w {
                false
            } else if &**v == x {
                a == b
            } else {
                match_formula(a, x, b, found)
            }
        }
        _ => false,
    }
}

fn bind(found: &mut Option<Term>, t: Term) -> bool {
    match found {
        Some(prev) => *prev == t,
        None => {
            *found = Some(t);
            true
        }
    }
}

fn match_term(p: &Term, x: &str, t: &Term, found: &mut Option<Term>) -> bool {
    match (p.node(), t.node()) {
        (TermNode::Var(v), _) if &**v == x => bind(found, t.clone()),
        (TermNode::Zero, TermNode::Zero) => true,
        (TermNode::Var(v), TermNode::Var(w)) => v == w,
        (TermNode::Succ(n, a), TermNode::Succ(m, b)) => {
            if n == m {
                match_term(a, x, b, found)
            } else if m > n && matches!(a.node(), TermNode::Var(v) if &**v == x) {
                bind(found, Term::succ_n(m - n, b.clone()))
            } else {
                false
            }
        }
        (TermNode::Add(a, b), TermNode::Add(c, d)) | (TermNode::Mul(a, b), TermNode::Mul(c, d)) => {
            match_term(a, x, c, found) && match_term(b, x, d, found)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn pa_axioms_render_as_stated() {
        let rendered: Vec<String> = PaAxiom::all().map(|a| a.formula().to_string()).collect();
        assert_eq!(
            rendered,
            vec![
                "x1 = x2 -> x1 = x3 -> x2 = x3",
                "x1 = x2 -> S(x1) = S(x2)",
                "~(0 = S(x1))",
                "S(x1) = S(x2) -> x1 = x2",
                "x1 + 0 = x1",
                "x1 + S(x2) = S(x1 + x2)",
                "x1 * 0 = 0",
                "x1 * S(x2) = x1 * x2 + x1",
            ]
        );
    }

    #[test]
    fn renaming_must_be_injective() {
        let pa1 = PaAxiom::new(1).unwrap();
        assert!(pa1.matches(&parse("a = b -> a = c -> b = c").unwrap()));
        assert!(!pa1.matches(&parse("a = a -> a = c -> a = c").unwrap()));
        assert!(!pa1.matches(&parse("0 = b -> 0 = c -> b = c").unwrap()));
    }

    #[test]
    fn l4_instance_with_successor_merge() {
        let f = parse("(forall x. S(x) = x + 0) -> S^5(0) = S^4(0) + 0").unwrap();
        assert_eq!(check_logical(LogicalSchema::L4, &f), Ok(()));
        let bad = parse("(forall x. S(x) = x) -> S(0) = S(0)").unwrap();
        assert_eq!(check_logical(LogicalSchema::L4, &bad), Err(SchemaMismatch::Shape));
    }

    #[test]
    fn l4_rejects_capture() {
        let f = parse("(forall x. forall y. x = y) -> forall y. y = y").unwrap();
        assert!(matches!(
            check_logical(LogicalSchema::L4, &f),
            Err(SchemaMismatch::Capture(_))
        ));
    }

    #[test]
    fn l5_side_condition() {
        let ok = parse("(forall x. 0 = 0 -> x = x) -> 0 = 0 -> forall x. x = x").unwrap();
        assert_eq!(check_logical(LogicalSchema::L5, &ok), Ok(()));
        let bad = parse("(forall x. x = 0 -> x = x) -> x = 0 -> forall x. x = x").unwrap();
        assert!(check_logical(LogicalSchema::L5, &bad).is_err());
    }

    #[test]
    fn induction_roundtrip() {
        let body = parse("x + 0 = x").unwrap();
        let inst = induction_instance(&body, "x").unwrap();
        assert_eq!(
            inst.to_string(),
            "0 + 0 = 0 -> (forall x. x + 0 = x -> S(x) + 0 = S(x)) -> forall x. x + 0 = x"
        );
        assert_eq!(induction_parts(&inst), Some((body, Ident::from("x"))));
    }
}
