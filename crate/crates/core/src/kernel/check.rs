use super::axioms::{check_logical, induction_instance, LogicalSchema, PaAxiom, SchemaMismatch};
use crate::syntax::{Formula, FormulaNode, Ident};
use std::fmt;
use thiserror::Error;

/// Why a line was accepted. Line references are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Justification {
    Logical(LogicalSchema),
    Pa(PaAxiom),
    Induction { formula: Formula, var: Ident },
    /// `implication` must be `antecedent -> current`.
    ModusPonens { antecedent: usize, implication: usize },
    /// Current line must be `forall var. premise`.
    Generalisation { premise: usize, var: Ident },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub justification: Justification,
}

/// A Hilbert-style proof; line `i` of the file is `lines[i - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Proof {
    pub lines: Vec<ProofLine>,
}

impl Proof {
    pub fn new(lines: Vec<ProofLine>) -> Proof {
        Proof { lines }
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn formulas(&self) -> Vec<Formula> {
        self.lines.iter().map(|l| l.formula.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("a proof must have at least one line")]
    Empty,
    #[error("not an instance of {0}")]
    BadSchemaInstance(String),
    #[error("illegal {schema} instance: {detail}")]
    CaptureIllegal { schema: LogicalSchema, detail: String },
    #[error("reference to line {0}, which does not precede this line")]
    DanglingReference(usize),
    #[error("modus ponens: line {implication} is not `line {antecedent} -> this line`")]
    MpShapeMismatch { antecedent: usize, implication: usize },
    #[error("generalisation: this line is not `forall {var}.` applied to line {premise}")]
    GenShapeMismatch { premise: usize, var: Ident },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Accepted => "accepted",
            Verdict::Rejected => "rejected",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: Verdict,
    /// 1-based line index and reason. Index 0 is used for an empty proof.
    pub first_failure: Option<(usize, Rejection)>,
    pub conclusion: Option<Formula>,
}

impl CheckReport {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }
}

/// Validate a single line against the lines before it (`earlier[k]` is line `k + 1`).
pub fn check_line(
    earlier: &[Formula],
    formula: &Formula,
    just: &Justification,
) -> Result<(), Rejection> {
    let fetch = |i: usize| {
        if i >= 1 && i <= earlier.len() {
            Ok(&earlier[i - 1])
        } else {
            Err(Rejection::DanglingReference(i))
        }
    };
    match just {
        Justification::Logical(schema) => match check_logical(*schema, formula) {
            Ok(()) => Ok(()),
            Err(SchemaMismatch::Shape) => Err(Rejection::BadSchemaInstance(schema.to_string())),
            Err(SchemaMismatch::Capture(e)) => Err(Rejection::CaptureIllegal {
                schema: *schema,
                detail: e.to_string(),
            }),
        },
        Justification::Pa(ax) => {
            if ax.matches(formula) {
                Ok(())
            } else {
                Err(Rejection::BadSchemaInstance(ax.to_string()))
            }
        }
        Justification::Induction { formula: body, var } => match induction_instance(body, var) {
            Ok(inst) if inst == *formula => Ok(()),
            _ => Err(Rejection::BadSchemaInstance("induction".into())),
        },
        Justification::ModusPonens {
            antecedent,
            implication,
        } => {
            let a = fetch(*antecedent)?;
            let imp = fetch(*implication)?;
            match imp.node() {
                FormulaNode::Implies(x, y) if x == a && y == formula => Ok(()),
                _ => Err(Rejection::MpShapeMismatch {
                    antecedent: *antecedent,
                    implication: *implication,
                }),
            }
        }
        Justification::Generalisation { premise, var } => {
            let p = fetch(*premise)?;
            match formula.node() {
                FormulaNode::ForAll(v, body) if v == var && body == p => Ok(()),
                _ => Err(Rejection::GenShapeMismatch {
                    premise: *premise,
                    var: var.clone(),
                }),
            }
        }
    }
}

/// Check every line in order; stops at the first invalid line.
pub fn check_proof(p: &Proof) -> CheckReport {
    if p.lines.is_empty() {
        return CheckReport {
            verdict: Verdict::Rejected,
            first_failure: Some((0, Rejection::Empty)),
            conclusion: None,
        };
    }
    let mut earlier: Vec<Formula> = Vec::with_capacity(p.lines.len());
    for (i, line) in p.lines.iter().enumerate() {
        if let Err(r) = check_line(&earlier, &line.formula, &line.justification) {
            return CheckReport {
                verdict: Verdict::Rejected,
                first_failure: Some((i + 1, r)),
                conclusion: None,
            };
        }
        earlier.push(line.formula.clone());
    }
    CheckReport {
        verdict: Verdict::Accepted,
        first_failure: None,
        conclusion: p.conclusion().cloned(),
    }
}

/// Every schema tag the formula instantiates. Advisory; never consulted by [`check_proof`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemaTag {
    Logical(LogicalSchema),
    Pa(PaAxiom),
    Induction,
}

impl fmt::Display for SchemaTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaTag::Logical(l) => write!(f, "{l}"),
            SchemaTag::Pa(p) => write!(f, "{p}"),
            SchemaTag::Induction => f.write_str("Induction"),
        }
    }
}

pub fn classify_schema(f: &Formula) -> std::collections::BTreeSet<SchemaTag> {
    let mut tags = std::collections::BTreeSet::new();
    for l in LogicalSchema::ALL {
        if check_logical(l, f).is_ok() {
            tags.insert(SchemaTag::Logical(l));
        }
    }
    for a in PaAxiom::all() {
        if a.matches(f) {
            tags.insert(SchemaTag::Pa(a));
        }
    }
    if super::axioms::induction_parts(f).is_some() {
        tags.insert(SchemaTag::Induction);
    }
    tags
}

/// A justification that makes `f` an axiom line, if any.
pub fn axiom_justification(f: &Formula) -> Option<Justification> {
    for l in LogicalSchema::ALL {
        if check_logical(l, f).is_ok() {
            return Some(Justification::Logical(l));
        }
    }
    if let Some(a) = PaAxiom::all().find(|a| a.matches(f)) {
        return Some(Justification::Pa(a));
    }
    super::axioms::induction_parts(f).map(|(formula, var)| Justification::Induction { formula, var })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn line(src: &str, j: Justification) -> ProofLine {
        ProofLine {
            formula: parse(src).unwrap(),
            justification: j,
        }
    }

    #[test]
    fn pa3_single_line() {
        let p = Proof::new(vec![line("~(0 = S(x1))", Justification::Pa(PaAxiom::new(3).unwrap()))]);
        let r = check_proof(&p);
        assert!(r.accepted());
        assert_eq!(r.conclusion.unwrap().to_string(), "~(0 = S(x1))");
    }

    #[test]
    fn empty_proof_rejected() {
        let r = check_proof(&Proof::default());
        assert_eq!(r.first_failure, Some((0, Rejection::Empty)));
    }

    fn mp_proof(antecedent: usize, implication: usize) -> Proof {
        let a = "0 = 0 -> 0 = 0 -> 0 = 0";
        let b = format!("0 = S(0) -> {a}");
        Proof::new(vec![
            line(a, Justification::Logical(LogicalSchema::L1)),
            line(&format!("({a}) -> {b}"), Justification::Logical(LogicalSchema::L1)),
            line(&b, Justification::ModusPonens { antecedent, implication }),
        ])
    }

    #[test]
    fn modus_ponens_and_swapped_indices() {
        assert!(check_proof(&mp_proof(1, 2)).accepted());
        let r = check_proof(&mp_proof(2, 1));
        assert_eq!(
            r.first_failure,
            Some((3, Rejection::MpShapeMismatch { antecedent: 2, implication: 1 }))
        );
    }

    #[test]
    fn dangling_reference() {
        let p = Proof::new(vec![line(
            "0 = 0",
            Justification::ModusPonens { antecedent: 1, implication: 2 },
        )]);
        assert_eq!(
            check_proof(&p).first_failure,
            Some((1, Rejection::DanglingReference(1)))
        );
    }

    #[test]
    fn generalisation_shape() {
        let pa5 = Justification::Pa(PaAxiom::new(5).unwrap());
        let gen = |v: &str| Justification::Generalisation { premise: 1, var: v.into() };
        let good = Proof::new(vec![line("y + 0 = y", pa5.clone()), line("forall y. y + 0 = y", gen("y"))]);
        assert!(check_proof(&good).accepted());
        let bad = Proof::new(vec![line("y + 0 = y", pa5), line("forall y. y + 0 = y", gen("z"))]);
        assert!(matches!(
            check_proof(&bad).first_failure,
            Some((2, Rejection::GenShapeMismatch { .. }))
        ));
    }

    #[test]
    fn classify_examples() {
        let tags = classify_schema(&parse("~(0 = S(x1))").unwrap());
        assert_eq!(tags.into_iter().collect::<Vec<_>>(), vec![SchemaTag::Pa(PaAxiom::new(3).unwrap())]);
        let tags = classify_schema(&parse("0 = 0 -> 0 = 0 -> 0 = 0").unwrap());
        assert!(tags.contains(&SchemaTag::Logical(LogicalSchema::L1)));
    }
}
