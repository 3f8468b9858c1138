//! Formulas over the core connectives `=`, `~`, `->` and `forall`.
//!
//! `exists`, `&`, `|` and `<` are abbreviations only: their constructors
//! build the expanded core tree and nothing downstream ever sees them.

use super::term::{Ident, Term};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Formula(Arc<FormulaNode>);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaNode {
    Eq(Term, Term),
    Not(Formula),
    Implies(Formula, Formula),
    ForAll(Ident, Formula),
}

/// Substituting a term would bind one of its variables.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("term `{term}` is not free for `{var}`: `{binder}` would capture it")]
pub struct CaptureError {
    pub var: Ident,
    pub term: Term,
    pub binder: Ident,
}

impl Formula {
    pub fn eq(left: Term, right: Term) -> Formula {
        Formula(Arc::new(FormulaNode::Eq(left, right)))
    }

    pub fn not(inner: Formula) -> Formula {
        Formula(Arc::new(FormulaNode::Not(inner)))
    }

    pub fn implies(antecedent: Formula, consequent: Formula) -> Formula {
        Formula(Arc::new(FormulaNode::Implies(antecedent, consequent)))
    }

    pub fn forall(var: impl Into<Ident>, body: Formula) -> Formula {
        Formula(Arc::new(FormulaNode::ForAll(var.into(), body)))
    }

    /// `exists x. F` as `~forall x. ~F`.
    pub fn exists(var: impl Into<Ident>, body: Formula) -> Formula {
        Formula::not(Formula::forall(var, Formula::not(body)))
    }

    /// `A & B` as `~(A -> ~B)`.
    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::not(Formula::implies(left, Formula::not(right)))
    }

    /// `A | B` as `~A -> B`.
    pub fn or(left: Formula, right: Formula) -> Formula {
        Formula::implies(Formula::not(left), right)
    }

    /// `t < s` as `exists v. t + S(v) = s`, `v` fresh for both sides.
    pub fn lt(left: Term, right: Term) -> Formula {
        let mut taken = left.vars();
        right.collect_vars(&mut taken);
        let v = fresh_name("v", &taken);
        let body = Formula::eq(Term::add(left, Term::succ(Term::var(v.clone()))), right);
        Formula::exists(v, body)
    }

    pub fn neq(left: Term, right: Term) -> Formula {
        Formula::not(Formula::eq(left, right))
    }

    pub fn node(&self) -> &FormulaNode {
        &self.0
    }

    pub fn free_vars(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Ident>, out: &mut BTreeSet<Ident>) {
        match self.node() {
            FormulaNode::Eq(l, r) => {
                for v in l.vars().into_iter().chain(r.vars()) {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
            FormulaNode::Not(a) => a.collect_free(bound, out),
            FormulaNode::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            FormulaNode::ForAll(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_free(&self, name: &str) -> bool {
        match self.node() {
            FormulaNode::Eq(l, r) => l.contains_var(name) || r.contains_var(name),
            FormulaNode::Not(a) => a.is_free(name),
            FormulaNode::Implies(a, b) => a.is_free(name) || b.is_free(name),
            FormulaNode::ForAll(v, body) => &**v != name && body.is_free(name),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self.node() {
            FormulaNode::Eq(..) => true,
            FormulaNode::Not(a) => a.is_quantifier_free(),
            FormulaNode::Implies(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            FormulaNode::ForAll(..) => false,
        }
    }

    /// All variables occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        self.collect_all(&mut out);
        out
    }

    fn collect_all(&self, out: &mut BTreeSet<Ident>) {
        match self.node() {
            FormulaNode::Eq(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            FormulaNode::Not(a) => a.collect_all(out),
            FormulaNode::Implies(a, b) => {
                a.collect_all(out);
                b.collect_all(out);
            }
            FormulaNode::ForAll(v, body) => {
                out.insert(v.clone());
                body.collect_all(out);
            }
        }
    }

    /// Binder variables in tree order (pre-order).
    pub fn binders(&self) -> Vec<Ident> {
        let mut out = Vec::new();
        self.collect_binders(&mut out);
        out
    }

    fn collect_binders(&self, out: &mut Vec<Ident>) {
        match self.node() {
            FormulaNode::Eq(..) => {}
            FormulaNode::Not(a) => a.collect_binders(out),
            FormulaNode::Implies(a, b) => {
                a.collect_binders(out);
                b.collect_binders(out);
            }
            FormulaNode::ForAll(v, body) => {
                out.push(v.clone());
                body.collect_binders(out);
            }
        }
    }

    /// Replace the free occurrences of `var` by `t`.
    pub fn substitute(&self, var: &str, t: &Term) -> Result<Formula, CaptureError> {
        if !self.is_free(var) {
            return Ok(self.clone());
        }
        let tvars = t.vars();
        self.subst_inner(var, t, &tvars)
    }

    fn subst_inner(
        &self,
        var: &str,
        t: &Term,
        tvars: &BTreeSet<Ident>,
    ) -> Result<Formula, CaptureError> {
        if !self.is_free(var) {
            return Ok(self.clone());
        }
        Ok(match self.node() {
            FormulaNode::Eq(l, r) => Formula::eq(l.replace(var, t), r.replace(var, t)),
            FormulaNode::Not(a) => Formula::not(a.subst_inner(var, t, tvars)?),
            FormulaNode::Implies(a, b) => Formula::implies(
                a.subst_inner(var, t, tvars)?,
                b.subst_inner(var, t, tvars)?,
            ),
            FormulaNode::ForAll(v, body) => {
                if tvars.contains(v) {
                    return Err(CaptureError {
                        var: var.into(),
                        term: t.clone(),
                        binder: v.clone(),
                    });
                }
                Formula::forall(v.clone(), body.subst_inner(var, t, tvars)?)
            }
        })
    }

    /// Universal closure, quantifying free variables in sorted order (outermost first).
    pub fn universal_closure(&self) -> Formula {
        self.free_vars()
            .into_iter()
            .rev()
            .fold(self.clone(), |acc, v| Formula::forall(v, acc))
    }

    pub fn depth(&self) -> usize {
        match self.node() {
            FormulaNode::Eq(..) => 1,
            FormulaNode::Not(a) | FormulaNode::ForAll(_, a) => 1 + a.depth(),
            FormulaNode::Implies(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::render(self))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::render(self))
    }
}

/// `base`, else `base1`, `base2`, ... whichever is first not in `taken`.
pub fn fresh_name(base: &str, taken: &BTreeSet<Ident>) -> Ident {
    if !taken.iter().any(|t| &**t == base) {
        return base.into();
    }
    (1u64..)
        .map(|i| format!("{base}{i}"))
        .find(|cand| !taken.iter().any(|t| &**t == cand.as_str()))
        .expect("unbounded counter")
        .into()
}
