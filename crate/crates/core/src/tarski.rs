//! Truth of arithmetic formulas in the standard model.
//!
//! Closed quantifier-free formulas are decided outright. Quantifiers range
//! over `0..=cutoff`, so a universal that survives every sampled instance is
//! only verified up to the cutoff. Two exact procedures can do better:
//!
//! * an existential whose body has an equation conjunct that is affine in the
//!   bound variable has at most one candidate witness, found by solving;
//! * in computable mode, a block of universals over an equation whose two
//!   sides are the same affine form is true outright.

use crate::syntax::{Formula, FormulaNode, Ident, Term, TermNode};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub const DEFAULT_CUTOFF: u64 = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TarskiError {
    #[error("variable `{0}` has no value")]
    UnboundVariable(Ident),
    #[error("formula is not closed (free: {0})")]
    NotClosed(String),
    #[error("formula contains a quantifier")]
    NotQuantifierFree,
}

/// Values for variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<Ident, BigUint>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn with(mut self, var: impl Into<Ident>, value: impl Into<BigUint>) -> Assignment {
        self.0.insert(var.into(), value.into());
        self
    }

    pub fn get(&self, var: &str) -> Option<&BigUint> {
        self.0.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Ident, &BigUint)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        f.write_str(&parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalVerdict {
    True,
    /// Values of the quantified variables on the falsifying path.
    False(Assignment),
    VerifiedToCutoff(u64),
    Undecided(String),
}

impl fmt::Display for EvalVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalVerdict::True => f.write_str("true"),
            EvalVerdict::False(a) if a.is_empty() => f.write_str("false"),
            EvalVerdict::False(a) => write!(f, "false (counterexample: {a})"),
            EvalVerdict::VerifiedToCutoff(n) => write!(f, "verified up to cutoff {n}"),
            EvalVerdict::Undecided(r) => write!(f, "undecided ({r})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Each instance up to the cutoff is checked; survivors are reported as verified.
    #[default]
    Verifiable,
    /// Only a uniform decision counts; survivors are undecided.
    Computable,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Verifiable => "verifiable",
            Mode::Computable => "computable",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Mode, String> {
        match s {
            "verifiable" => Ok(Mode::Verifiable),
            "computable" => Ok(Mode::Computable),
            _ => Err(format!("unknown mode `{s}` (expected verifiable or computable)")),
        }
    }
}

type Env = Vec<(Ident, BigUint)>;

fn lookup<'a>(env: &'a Env, name: &str) -> Option<&'a BigUint> {
    env.iter().rev().find(|(k, _)| &**k == name).map(|(_, v)| v)
}

fn term_value(t: &Term, env: &Env) -> Result<BigUint, TarskiError> {
    Ok(match t.node() {
        TermNode::Zero => BigUint::zero(),
        TermNode::Var(v) => lookup(env, v)
            .cloned()
            .ok_or_else(|| TarskiError::UnboundVariable(v.clone()))?,
        TermNode::Succ(n, inner) => term_value(inner, env)? + n,
        TermNode::Add(a, b) => term_value(a, env)? + term_value(b, env)?,
        TermNode::Mul(a, b) => term_value(a, env)? * term_value(b, env)?,
    })
}

pub fn eval_term(t: &Term, a: &Assignment) -> Result<BigUint, TarskiError> {
    let env: Env = a.0.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    term_value(t, &env)
}

fn qf_value(f: &Formula, env: &Env) -> Result<bool, TarskiError> {
    Ok(match f.node() {
        FormulaNode::Eq(a, b) => term_value(a, env)? == term_value(b, env)?,
        FormulaNode::Not(a) => !qf_value(a, env)?,
        FormulaNode::Implies(a, b) => !qf_value(a, env)? || qf_value(b, env)?,
        FormulaNode::ForAll(..) => return Err(TarskiError::NotQuantifierFree),
    })
}

fn require_closed(f: &Formula) -> Result<(), TarskiError> {
    let fv = f.free_vars();
    if fv.is_empty() {
        Ok(())
    } else {
        let names: Vec<&str> = fv.iter().map(|v| &**v).collect();
        Err(TarskiError::NotClosed(names.join(", ")))
    }
}

pub fn eval_qf(f: &Formula) -> Result<bool, TarskiError> {
    require_closed(f)?;
    qf_value(f, &Vec::new())
}

pub fn eval_bounded(f: &Formula, cutoff: u64, mode: Mode) -> Result<EvalVerdict, TarskiError> {
    require_closed(f)?;
    let ev = Evaluator { cutoff, mode };
    Ok(match ev.eval(f, &mut Vec::new()) {
        Val::T => EvalVerdict::True,
        Val::F(path) => EvalVerdict::False(Assignment(path.into_iter().collect())),
        Val::V => EvalVerdict::VerifiedToCutoff(cutoff),
        Val::U(r) => EvalVerdict::Undecided(r),
    })
}

/// [`eval_bounded`] on the universal closure.
pub fn eval_closure(f: &Formula, cutoff: u64, mode: Mode) -> EvalVerdict {
    eval_bounded(&f.universal_closure(), cutoff, mode).expect("closures are closed")
}

enum Val {
    T,
    F(Env),
    V,
    U(String),
}

struct Evaluator {
    cutoff: u64,
    mode: Mode,
}

impl Evaluator {
    fn eval(&self, f: &Formula, env: &mut Env) -> Val {
        match f.node() {
            FormulaNode::Eq(a, b) => {
                match (term_value(a, env), term_value(b, env)) {
                    (Ok(x), Ok(y)) if x == y => Val::T,
                    (Ok(_), Ok(_)) => Val::F(Vec::new()),
                    _ => unreachable!("closed formula has every variable bound"),
                }
            }
            FormulaNode::Not(inner) => {
                if let FormulaNode::ForAll(x, body) = inner.node() {
                    if let FormulaNode::Not(h) = body.node() {
                        if let Some(v) = self.exists_affine(x, h, env) {
                            return v;
                        }
                    }
                }
                match self.eval(inner, env) {
                    Val::T => Val::F(Vec::new()),
                    Val::F(_) => Val::T,
                    Val::V => Val::U(format!("no witness up to cutoff {}", self.cutoff)),
                    u @ Val::U(_) => u,
                }
            }
            FormulaNode::Implies(a, b) => {
                let va = self.eval(a, env);
                if let Val::F(_) = va {
                    return Val::T;
                }
                match (va, self.eval(b, env)) {
                    (_, Val::T) => Val::T,
                    (Val::T, v) => v,
                    (Val::V, Val::V) => Val::V,
                    (Val::U(r), _) | (_, Val::U(r)) => Val::U(r),
                    (Val::V, Val::F(_)) => {
                        Val::U(format!("antecedent holds only up to cutoff {}", self.cutoff))
                    }
                    (Val::F(_), _) => unreachable!(),
                }
            }
            FormulaNode::ForAll(x, body) => {
                if self.mode == Mode::Computable && self.affine_identity(f, env) {
                    return Val::T;
                }
                let mut undecided = None;
                for n in 0..=self.cutoff {
                    env.push((x.clone(), BigUint::from(n)));
                    let v = self.eval(body, env);
                    env.pop();
                    match v {
                        Val::F(mut path) => {
                            path.insert(0, (x.clone(), BigUint::from(n)));
                            return Val::F(path);
                        }
                        Val::U(r) => {
                            undecided.get_or_insert(r);
                        }
                        Val::T | Val::V => {}
                    }
                }
                match (undecided, self.mode) {
                    (Some(r), _) => Val::U(r),
                    (None, Mode::Verifiable) => Val::V,
                    (None, Mode::Computable) => Val::U(format!(
                        "no uniform decision for `forall {x}`; instances 0..={} hold",
                        self.cutoff
                    )),
                }
            }
        }
    }

    /// `exists x. h`, decided exactly when some conjunct of `h` pins `x` down.
    fn exists_affine(&self, x: &Ident, h: &Formula, env: &mut Env) -> Option<Val> {
        let sym = std::slice::from_ref(x);
        for (l, r) in conjunct_equations(h) {
            let (Some(al), Some(ar)) = (affine(l, sym, env), affine(r, sym, env)) else {
                continue;
            };
            let diff = al.sub(&ar);
            let a = diff.coeff(x);
            let b = -diff.konst;
            if a.is_zero() {
                if b.is_zero() {
                    continue;
                }
                return Some(Val::F(Vec::new()));
            }
            let (q, rem) = b.div_rem(&a);
            if !rem.is_zero() || q.is_negative() {
                return Some(Val::F(Vec::new()));
            }
            env.push((x.clone(), q.to_biguint().expect("non-negative")));
            let v = self.eval(h, env);
            env.pop();
            return Some(match v {
                Val::T => Val::T,
                Val::F(_) => Val::F(Vec::new()),
                Val::V => Val::U("the only candidate witness is verified only up to the cutoff".into()),
                u @ Val::U(_) => u,
            });
        }
        None
    }

    fn affine_identity(&self, f: &Formula, env: &Env) -> bool {
        let mut block = Vec::new();
        let mut body = f;
        while let FormulaNode::ForAll(v, b) = body.node() {
            block.push(v.clone());
            body = b;
        }
        let FormulaNode::Eq(l, r) = body.node() else {
            return false;
        };
        match (affine(l, &block, env), affine(r, &block, env)) {
            (Some(a), Some(b)) => a.sub(&b).is_zero(),
            _ => false,
        }
    }
}

/// Equations `A` such that `h` implies `A` through nested conjunctions `~(P -> ~Q)`.
fn conjunct_equations(h: &Formula) -> Vec<(&Term, &Term)> {
    let mut out = Vec::new();
    let mut stack = vec![h];
    while let Some(f) = stack.pop() {
        match f.node() {
            FormulaNode::Eq(l, r) => out.push((l, r)),
            FormulaNode::Not(inner) => {
                if let FormulaNode::Implies(p, nq) = inner.node() {
                    if let FormulaNode::Not(q) = nq.node() {
                        stack.push(q);
                        stack.push(p);
                    }
                }
            }
            _ => {}
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Affine {
    coeffs: BTreeMap<Ident, BigInt>,
    konst: BigInt,
}

impl Affine {
    fn constant(k: BigInt) -> Affine {
        Affine {
            coeffs: BTreeMap::new(),
            konst: k,
        }
    }

    fn coeff(&self, v: &Ident) -> BigInt {
        self.coeffs.get(v).cloned().unwrap_or_default()
    }

    fn is_constant(&self) -> bool {
        self.coeffs.values().all(Zero::is_zero)
    }

    fn is_zero(&self) -> bool {
        self.is_constant() && self.konst.is_zero()
    }

    fn add(&self, o: &Affine) -> Affine {
        let mut out = self.clone();
        for (k, v) in &o.coeffs {
            *out.coeffs.entry(k.clone()).or_default() += v;
        }
        out.konst += &o.konst;
        out
    }

    fn scale(&self, k: &BigInt) -> Affine {
        Affine {
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), c * k)).collect(),
            konst: &self.konst * k,
        }
    }

    fn sub(&self, o: &Affine) -> Affine {
        self.add(&o.scale(&BigInt::from(-1)))
    }
}

/// `t` as an affine form in `sym`, other variables read from `env`.
fn affine(t: &Term, sym: &[Ident], env: &Env) -> Option<Affine> {
    let big = |n: &BigUint| BigInt::from_biguint(Sign::Plus, n.clone());
    Some(match t.node() {
        TermNode::Zero => Affine::constant(BigInt::zero()),
        TermNode::Var(v) if sym.contains(v) => {
            let mut a = Affine::constant(BigInt::zero());
            a.coeffs.insert(v.clone(), BigInt::from(1));
            a
        }
        TermNode::Var(v) => Affine::constant(big(lookup(env, v)?)),
        TermNode::Succ(n, inner) => affine(inner, sym, env)?.add(&Affine::constant(big(n))),
        TermNode::Add(a, b) => affine(a, sym, env)?.add(&affine(b, sym, env)?),
        TermNode::Mul(a, b) => {
            let (a, b) = (affine(a, sym, env)?, affine(b, sym, env)?);
            if a.is_constant() {
                b.scale(&a.konst)
            } else if b.is_constant() {
                a.scale(&b.konst)
            } else {
                return None;
            }
        }
    })
}
