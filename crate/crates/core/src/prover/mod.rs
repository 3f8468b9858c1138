//! Proof synthesis for closed arithmetic facts.
//!
//! Nothing here is trusted: every proof is an ordinary [`Proof`] that the
//! kernel checks like any other. Equality reasoning, congruences and the
//! arithmetic lemma families are derived from PA1..PA9 inside each proof.

mod arith;
mod builder;
mod logic;

use crate::beta::{beta_eval, instantiate_bt, modulus};
use crate::kernel::{check_proof, Proof};
use crate::syntax::{Formula, FormulaNode, Term};
use builder::Builder;
use num_bigint::BigUint;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error("{m} = {n}, so ~({m} = {n}) is false")]
    EqualNumerals { m: BigUint, n: BigUint },
    #[error("beta({b}, {c}, {i}) = {actual}, not {d}")]
    BetaMismatch {
        b: BigUint,
        c: BigUint,
        i: BigUint,
        d: BigUint,
        actual: BigUint,
    },
    #[error("body proof concludes `{found}`, expected `{expected}`")]
    WitnessMismatch { expected: String, found: String },
    #[error("body proof is rejected by the kernel: {0}")]
    BodyRejected(String),
    #[error("term contains the variable `{0}`")]
    NotClosed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// `[m] + [n] = [m + n]`.
pub fn prove_add_fact(m: impl Into<BigUint>, n: impl Into<BigUint>) -> Proof {
    let mut b = Builder::new();
    let l = b.add_num(&m.into(), &n.into());
    b.finish(l)
}

/// `[m] * [n] = [mn]`.
pub fn prove_mul_fact(m: impl Into<BigUint>, n: impl Into<BigUint>) -> Proof {
    let mut b = Builder::new();
    let l = b.mul_num(&m.into(), &n.into());
    b.finish(l)
}

/// `~([m] = [n])`.
pub fn prove_neq_fact(m: impl Into<BigUint>, n: impl Into<BigUint>) -> Result<Proof, ProverError> {
    let (m, n) = (m.into(), n.into());
    if m == n {
        return Err(ProverError::EqualNumerals { m, n });
    }
    let mut b = Builder::new();
    let l = b.neq_num(&m, &n);
    Ok(b.finish(l))
}

/// `t = [v]` for a closed term `t` whose products have numeral right factors.
pub fn prove_eval(t: &Term) -> Result<Proof, ProverError> {
    let mut b = Builder::new();
    let l = match b.eval_closed(t)? {
        (Some(l), _) => l,
        (None, _) => b.refl(t),
    };
    Ok(b.finish(l))
}

/// `~forall var. ~body` from a proof of `body[var := [witness]]`.
pub fn prove_exists(
    witness: impl Into<BigUint>,
    var: &str,
    body: &Formula,
    body_proof: &Proof,
) -> Result<Proof, ProverError> {
    let t = Term::numeral(witness.into());
    let expected = body
        .substitute(var, &t)
        .map_err(|e| ProverError::Unsupported(e.to_string()))?;
    let found = body_proof.conclusion();
    if found != Some(&expected) {
        return Err(ProverError::WitnessMismatch {
            expected: expected.to_string(),
            found: found.map(|f| f.to_string()).unwrap_or_else(|| "nothing".into()),
        });
    }
    let report = check_proof(body_proof);
    if let Some((line, why)) = report.first_failure {
        return Err(ProverError::BodyRejected(format!("line {line}: {why}")));
    }
    let mut b = Builder::new();
    let l = b.import(body_proof);
    let e = b.exists_intro(var, body, &t, l);
    Ok(b.finish(e))
}

/// The closed instance `Bt([b], [c], [i], [d])`, for `d = beta(b, c, i)`.
pub fn prove_bt_instance(b: &BigUint, c: &BigUint, i: &BigUint, d: &BigUint) -> Result<Proof, ProverError> {
    let actual = beta_eval(b, c, i);
    if &actual != d {
        return Err(ProverError::BetaMismatch {
            b: b.clone(),
            c: c.clone(),
            i: i.clone(),
            d: d.clone(),
            actual,
        });
    }
    let m = modulus(c, i);
    let q = b / &m;
    let e = &m - d - 1u32;
    let target = instantiate_bt(b, c, i, d);
    let (w, body) = exists_parts(&target);
    let body_q = body
        .substitute(&w, &Term::numeral(q.clone()))
        .expect("numerals are closed");
    let (eq_a, lt) = and_parts(&body_q);
    let (v, lt_body) = exists_parts(&lt);

    let mut pb = Builder::new();
    let FormulaNode::Eq(_, rhs) = eq_a.node() else {
        unreachable!("first conjunct of Bt is an equation")
    };
    let (ev, _) = pb.eval_closed(rhs)?;
    let ev = ev.expect("right-hand side of Bt is not a numeral");
    let a = pb.sym(ev);

    let FormulaNode::Eq(_, m_term) = lt_body.node() else {
        unreachable!("the bound in Bt is an equation")
    };
    let sum = pb.add_num(d, &(&e + 1u32));
    let (em, _) = pb.eval_closed(m_term)?;
    let em = em.expect("modulus term is not a numeral");
    let em = pb.sym(em);
    let bound = pb.trans(sum, em);
    let lt_proof = pb.exists_intro(&v, &lt_body, &Term::numeral(e), bound);

    let conj = pb.and_intro(a, lt_proof);
    let ex = pb.exists_intro(&w, &body, &Term::numeral(q), conj);
    Ok(pb.finish(ex))
}

fn exists_parts(f: &Formula) -> (crate::syntax::Ident, Formula) {
    if let FormulaNode::Not(all) = f.node() {
        if let FormulaNode::ForAll(v, nb) = all.node() {
            if let FormulaNode::Not(body) = nb.node() {
                return (v.clone(), body.clone());
            }
        }
    }
    panic!("`{f}` is not an existential")
}

fn and_parts(f: &Formula) -> (Formula, Formula) {
    if let FormulaNode::Not(imp) = f.node() {
        if let FormulaNode::Implies(a, nb) = imp.node() {
            if let FormulaNode::Not(b) = nb.node() {
                return (a.clone(), b.clone());
            }
        }
    }
    panic!("`{f}` is not a conjunction")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LemmaTag {
    Reflexivity,
    Symmetry,
    Transitivity,
    SuccCongruence,
    PlusCongruence,
    TimesCongruence,
    ExistsIntro,
}

impl LemmaTag {
    pub const ALL: [LemmaTag; 7] = [
        LemmaTag::Reflexivity,
        LemmaTag::Symmetry,
        LemmaTag::Transitivity,
        LemmaTag::SuccCongruence,
        LemmaTag::PlusCongruence,
        LemmaTag::TimesCongruence,
        LemmaTag::ExistsIntro,
    ];
}

impl fmt::Display for LemmaTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LemmaTag::Reflexivity => "reflexivity",
            LemmaTag::Symmetry => "symmetry",
            LemmaTag::Transitivity => "transitivity",
            LemmaTag::SuccCongruence => "succ-congruence",
            LemmaTag::PlusCongruence => "plus-congruence",
            LemmaTag::TimesCongruence => "times-congruence",
            LemmaTag::ExistsIntro => "exists-intro",
        })
    }
}

/// Standalone proofs of the open equality lemmas, in variables `x1`, `x2`, `x3`.
#[derive(Debug, Clone)]
pub struct LemmaLibrary {
    templates: BTreeMap<LemmaTag, Proof>,
}

impl LemmaLibrary {
    pub fn new() -> LemmaLibrary {
        let templates = LemmaTag::ALL
            .into_iter()
            .map(|tag| {
                let mut b = Builder::new();
                let l = match tag {
                    LemmaTag::Reflexivity => b.refl_lemma(),
                    LemmaTag::Symmetry => b.sym_lemma(),
                    LemmaTag::Transitivity => b.trans_lemma(),
                    LemmaTag::SuccCongruence => b.pa(2),
                    LemmaTag::PlusCongruence => b.plus_left_lemma(),
                    LemmaTag::TimesCongruence => b.times_left_lemma(),
                    LemmaTag::ExistsIntro => {
                        let body = Formula::eq(Term::var("x3"), Term::var("x2"));
                        b.exists_intro_imp("x3", &body, &Term::var("x1"))
                    }
                };
                (tag, b.finish(l))
            })
            .collect();
        LemmaLibrary { templates }
    }

    pub fn template(&self, tag: LemmaTag) -> &Proof {
        &self.templates[&tag]
    }

    /// The template with terms substituted for its free variables.
    pub fn instantiate(&self, tag: LemmaTag, subs: &[(&str, Term)]) -> Proof {
        let mut b = Builder::new();
        let l = b.import(self.template(tag));
        let l = b.inst(l, subs);
        b.finish(l)
    }
}

impl Default for LemmaLibrary {
    fn default() -> Self {
        LemmaLibrary::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn accepted(p: &Proof) -> bool {
        check_proof(p).accepted()
    }

    #[test]
    fn add_examples() {
        let p = prove_add_fact(0u32, 0u32);
        assert!(accepted(&p));
        assert_eq!(p.conclusion().unwrap().to_string(), "0 + 0 = 0");
        let p = prove_add_fact(2u32, 2u32);
        assert!(accepted(&p));
        assert_eq!(
            p.conclusion().unwrap().to_string(),
            "S(S(0)) + S(S(0)) = S(S(S(S(0))))"
        );
    }

    #[test]
    fn mul_examples() {
        let p = prove_mul_fact(5u32, 0u32);
        assert!(accepted(&p));
        assert_eq!(p.conclusion().unwrap(), &parse("S(S(S(S(S(0))))) * 0 = 0").unwrap());
        let p = prove_mul_fact(2u32, 3u32);
        assert!(accepted(&p));
        assert_eq!(p.conclusion().unwrap(), &parse("S(S(0)) * S(S(S(0))) = S^6(0)").unwrap());
    }

    #[test]
    fn neq_examples() {
        let p = prove_neq_fact(0u32, 1u32).unwrap();
        assert!(accepted(&p));
        assert_eq!(p.conclusion().unwrap().to_string(), "~(0 = S(0))");
        assert_eq!(
            prove_neq_fact(3u32, 3u32),
            Err(ProverError::EqualNumerals { m: big(3), n: big(3) })
        );
        for (m, n) in [(4u32, 1u32), (1, 4), (7, 2)] {
            let p = prove_neq_fact(m, n).unwrap();
            assert!(accepted(&p));
            assert_eq!(
                p.conclusion().unwrap(),
                &Formula::not(Formula::eq(Term::numeral(m), Term::numeral(n)))
            );
        }
    }

    #[test]
    fn large_numerals() {
        let a = BigUint::parse_bytes(b"123456789012345678901234567", 10).unwrap();
        let b = BigUint::parse_bytes(b"987654321098765", 10).unwrap();
        let p = prove_add_fact(a.clone(), b.clone());
        assert!(accepted(&p));
        let p = prove_mul_fact(a.clone(), b.clone());
        assert!(accepted(&p));
        assert_eq!(
            p.conclusion().unwrap(),
            &Formula::eq(
                Term::mul(Term::numeral(a.clone()), Term::numeral(b.clone())),
                Term::numeral(a * b)
            )
        );
        assert!(p.len() < 20_000, "{} lines", p.len());
    }

    #[test]
    fn eval_examples() {
        let t = crate::syntax::parse_term("S(0) + (S(S(0)) + S(0)) * S(S(S(0)))").unwrap();
        let p = prove_eval(&t).unwrap();
        assert!(accepted(&p));
        assert_eq!(p.conclusion().unwrap(), &Formula::eq(t, Term::numeral(10u32)));
        let bad = crate::syntax::parse_term("S(0) * (0 + 0)").unwrap();
        assert!(matches!(prove_eval(&bad), Err(ProverError::Unsupported(_))));
    }

    #[test]
    fn exists_examples() {
        let body = parse("v = 0").unwrap();
        let zero = prove_eval(&Term::zero()).unwrap();
        assert_eq!(zero.conclusion().unwrap().to_string(), "0 = 0");
        let p = prove_exists(0u32, "v", &body, &zero).unwrap();
        assert!(accepted(&p));
        assert_eq!(p.conclusion().unwrap(), &parse("exists v. v = 0").unwrap());
        assert!(matches!(
            prove_exists(1u32, "v", &body, &zero),
            Err(ProverError::WitnessMismatch { .. })
        ));
    }

    #[test]
    fn bt_examples() {
        for (b, c, i, d) in [(13, 2, 1, 3), (0, 5, 2, 0), (0, 0, 0, 0), (7, 0, 3, 0), (100, 3, 0, 0)] {
            let (b, c, i, d) = (big(b), big(c), big(i), big(d));
            let p = prove_bt_instance(&b, &c, &i, &d).unwrap();
            assert!(accepted(&p), "Bt({b},{c},{i},{d})");
            assert_eq!(p.conclusion().unwrap(), &instantiate_bt(&b, &c, &i, &d));
        }
        assert!(matches!(
            prove_bt_instance(&big(13), &big(2), &big(1), &big(4)),
            Err(ProverError::BetaMismatch { .. })
        ));
    }

    #[test]
    fn bt_with_large_b() {
        let b = BigUint::parse_bytes(b"2857142857142857142857142857", 10).unwrap();
        let c = big(40320);
        let i = big(5);
        let d = beta_eval(&b, &c, &i);
        let p = prove_bt_instance(&b, &c, &i, &d).unwrap();
        assert!(accepted(&p));
        assert!(p.conclusion().unwrap().is_closed());
    }

    #[test]
    fn library_templates_check() {
        let lib = LemmaLibrary::new();
        for tag in LemmaTag::ALL {
            assert!(accepted(lib.template(tag)), "{tag}");
        }
        let p = lib.instantiate(
            LemmaTag::Symmetry,
            &[("x1", Term::numeral(2u32)), ("x2", Term::var("x1"))],
        );
        assert!(accepted(&p));
        assert_eq!(p.conclusion().unwrap(), &parse("S(S(0)) = x1 -> x1 = S(S(0))").unwrap());
    }
}
