//! Terms of the language of arithmetic: `0`, variables, successor, `+` and `*`.
//!
//! Successor chains are stored run-length encoded: a `Succ` node carries a
//! positive count and its inner term is never itself a `Succ`. Every term
//! therefore has exactly one representation, so derived structural equality
//! coincides with equality of the underlying unary trees. Numerals with
//! thousands of digits stay small in memory, which the beta-function
//! certificates depend on.

use num_bigint::BigUint;
use num_traits::{One, Zero as _};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Variable name. Names are shared, so cloning is cheap.
pub type Ident = Arc<str>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term(Arc<TermNode>);

/// Canonical node of a [`Term`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermNode {
    Zero,
    Var(Ident),
    /// `count` successors applied to `inner`; `count >= 1` and `inner` is not a `Succ`.
    Succ(BigUint, Term),
    Add(Term, Term),
    Mul(Term, Term),
}

/// One-constructor-at-a-time view of a term, hiding the run-length encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermView<'a> {
    Zero,
    Var(&'a Ident),
    Succ(Term),
    Add(&'a Term, &'a Term),
    Mul(&'a Term, &'a Term),
}

impl Term {
    pub fn zero() -> Term {
        Term(Arc::new(TermNode::Zero))
    }

    pub fn var(name: impl Into<Ident>) -> Term {
        Term(Arc::new(TermNode::Var(name.into())))
    }

    pub fn succ(inner: Term) -> Term {
        Term::succ_n(BigUint::one(), inner)
    }

    /// `S^n(inner)`; `n = 0` returns `inner` unchanged.
    pub fn succ_n(n: impl Into<BigUint>, inner: Term) -> Term {
        let n = n.into();
        if n.is_zero() {
            return inner;
        }
        match inner.node() {
            TermNode::Succ(m, base) => Term(Arc::new(TermNode::Succ(n + m, base.clone()))),
            _ => Term(Arc::new(TermNode::Succ(n, inner))),
        }
    }

    pub fn add(left: Term, right: Term) -> Term {
        Term(Arc::new(TermNode::Add(left, right)))
    }

    pub fn mul(left: Term, right: Term) -> Term {
        Term(Arc::new(TermNode::Mul(left, right)))
    }

    /// The numeral `S^n(0)`.
    pub fn numeral(n: impl Into<BigUint>) -> Term {
        Term::succ_n(n, Term::zero())
    }

    pub fn node(&self) -> &TermNode {
        &self.0
    }

    pub fn view(&self) -> TermView<'_> {
        match self.node() {
            TermNode::Zero => TermView::Zero,
            TermNode::Var(v) => TermView::Var(v),
            TermNode::Succ(n, inner) => {
                TermView::Succ(Term::succ_n(n - BigUint::one(), inner.clone()))
            }
            TermNode::Add(l, r) => TermView::Add(l, r),
            TermNode::Mul(l, r) => TermView::Mul(l, r),
        }
    }

    /// Value of the term if it is a numeral `S^n(0)`.
    pub fn as_numeral(&self) -> Option<BigUint> {
        match self.node() {
            TermNode::Zero => Some(BigUint::zero()),
            TermNode::Succ(n, inner) if matches!(inner.node(), TermNode::Zero) => Some(n.clone()),
            _ => None,
        }
    }

    pub fn as_var(&self) -> Option<&str> {
        match self.node() {
            TermNode::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_closed(&self) -> bool {
        match self.node() {
            TermNode::Zero => true,
            TermNode::Var(_) => false,
            TermNode::Succ(_, t) => t.is_closed(),
            TermNode::Add(l, r) | TermNode::Mul(l, r) => l.is_closed() && r.is_closed(),
        }
    }

    pub fn vars(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Ident>) {
        match self.node() {
            TermNode::Zero => {}
            TermNode::Var(v) => {
                out.insert(v.clone());
            }
            TermNode::Succ(_, t) => t.collect_vars(out),
            TermNode::Add(l, r) | TermNode::Mul(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self.node() {
            TermNode::Zero => false,
            TermNode::Var(v) => &**v == name,
            TermNode::Succ(_, t) => t.contains_var(name),
            TermNode::Add(l, r) | TermNode::Mul(l, r) => {
                l.contains_var(name) || r.contains_var(name)
            }
        }
    }

    /// Replace every occurrence of `name` by `t`.
    pub fn replace(&self, name: &str, t: &Term) -> Term {
        if !self.contains_var(name) {
            return self.clone();
        }
        match self.node() {
            TermNode::Zero => self.clone(),
            TermNode::Var(v) => {
                if &**v == name {
                    t.clone()
                } else {
                    self.clone()
                }
            }
            TermNode::Succ(n, inner) => Term::succ_n(n.clone(), inner.replace(name, t)),
            TermNode::Add(l, r) => Term::add(l.replace(name, t), r.replace(name, t)),
            TermNode::Mul(l, r) => Term::mul(l.replace(name, t), r.replace(name, t)),
        }
    }

    /// Number of nodes in the unary tree this term denotes, saturating at `u64::MAX`.
    pub fn unary_size(&self) -> u64 {
        match self.node() {
            TermNode::Zero | TermNode::Var(_) => 1,
            TermNode::Succ(n, t) => {
                let n: u64 = n.try_into().unwrap_or(u64::MAX);
                n.saturating_add(t.unary_size())
            }
            TermNode::Add(l, r) | TermNode::Mul(l, r) => {
                1u64.saturating_add(l.unary_size()).saturating_add(r.unary_size())
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::render_term(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::render_term(self))
    }
}

/// A numeral together with the value it denotes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Numeral {
    pub value: BigUint,
    pub term: Term,
}

pub fn numeral(n: impl Into<BigUint>) -> Numeral {
    let value = n.into();
    Numeral {
        term: Term::numeral(value.clone()),
        value,
    }
}
