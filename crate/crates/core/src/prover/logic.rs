//! Derived propositional, quantifier and equality rules.

use super::arith::Key;
use super::builder::{Builder, L};
use crate::kernel::LogicalSchema;
use crate::syntax::{Formula, FormulaNode, Term};

fn imp(a: Formula, b: Formula) -> Formula {
    Formula::implies(a, b)
}

fn not(a: Formula) -> Formula {
    Formula::not(a)
}

pub(crate) fn eq_sides(f: &Formula) -> (Term, Term) {
    match f.node() {
        FormulaNode::Eq(a, b) => (a.clone(), b.clone()),
        _ => panic!("expected an equation, got `{f}`"),
    }
}

fn imp_sides(f: &Formula) -> (Formula, Formula) {
    match f.node() {
        FormulaNode::Implies(a, b) => (a.clone(), b.clone()),
        _ => panic!("expected an implication, got `{f}`"),
    }
}

fn x(n: u8) -> Term {
    Term::var(format!("x{n}"))
}

impl Builder {
    /// From `A -> B` and `B -> C`, derive `A -> C`.
    pub fn hs(&mut self, ab: L, bc: L) -> L {
        let (a, b) = imp_sides(self.formula(ab));
        let (_, c) = imp_sides(self.formula(bc));
        let bc_f = self.formula(bc).clone();
        let l1 = self.logical(LogicalSchema::L1, imp(bc_f.clone(), imp(a.clone(), bc_f)));
        let a_bc = self.mp(bc, l1);
        let l2 = self.logical(
            LogicalSchema::L2,
            imp(
                imp(a.clone(), imp(b.clone(), c.clone())),
                imp(imp(a.clone(), b), imp(a, c)),
            ),
        );
        let s = self.mp(a_bc, l2);
        self.mp(ab, s)
    }

    /// `~~a -> a`.
    pub fn dne(&mut self, a: &Formula) -> L {
        let na = not(a.clone());
        let nna = not(na.clone());
        let l3 = self.logical(
            LogicalSchema::L3,
            imp(imp(na.clone(), nna.clone()), imp(imp(na.clone(), na.clone()), a.clone())),
        );
        let h = self.assume(nna.clone());
        let l1 = self.logical(LogicalSchema::L1, imp(nna.clone(), imp(na.clone(), nna)));
        let na_nna = self.mp(h, l1);
        let s = self.mp(na_nna, l3);
        let refl = self.imp_refl(&na);
        let r = self.mp(refl, s);
        self.discharge(r)
    }

    /// `a -> ~~a`.
    pub fn dni(&mut self, a: &Formula) -> L {
        let na = not(a.clone());
        let nna = not(na.clone());
        let nnna = not(nna.clone());
        let l3 = self.logical(
            LogicalSchema::L3,
            imp(imp(nnna.clone(), na.clone()), imp(imp(nnna.clone(), a.clone()), nna)),
        );
        let d = self.dne(&na);
        let s = self.mp(d, l3);
        let h = self.assume(a.clone());
        let l1 = self.logical(LogicalSchema::L1, imp(a.clone(), imp(nnna, a.clone())));
        let t = self.mp(h, l1);
        let r = self.mp(t, s);
        self.discharge(r)
    }

    /// From `A -> B`, derive `~B -> ~A`.
    pub fn contra(&mut self, ab: L) -> L {
        let (a, b) = imp_sides(self.formula(ab));
        let (na, nb) = (not(a.clone()), not(b.clone()));
        let (nna, nnb) = (not(na.clone()), not(nb.clone()));
        let d = self.dne(&a);
        let x1 = self.hs(d, ab);
        let i = self.dni(&b);
        let nna_nnb = self.hs(x1, i);
        let l3 = self.logical(
            LogicalSchema::L3,
            imp(imp(nna.clone(), nnb), imp(imp(nna.clone(), nb.clone()), na)),
        );
        let s = self.mp(nna_nnb, l3);
        let h = self.assume(nb.clone());
        let l1 = self.logical(LogicalSchema::L1, imp(nb.clone(), imp(nna, nb)));
        let t = self.mp(h, l1);
        let r = self.mp(t, s);
        self.discharge(r)
    }

    /// From `A` and `B`, derive `~(A -> ~B)`.
    pub fn and_intro(&mut self, a: L, b: L) -> L {
        let fb = self.formula(b).clone();
        let fa = self.formula(a).clone();
        let h = self.assume(imp(fa, not(fb.clone())));
        let nb = self.mp(a, h);
        let t = self.discharge(nb);
        let c = self.contra(t);
        let i = self.dni(&fb);
        let nnb = self.mp(b, i);
        self.mp(nnb, c)
    }

    /// `body[var := t] -> ~forall var. ~body`.
    pub fn exists_intro_imp(&mut self, var: &str, body: &Formula, t: &Term) -> L {
        let inst = body.substitute(var, t).expect("witness is free for the variable");
        let all = Formula::forall(var, not(body.clone()));
        let l4 = self.logical(LogicalSchema::L4, imp(all, not(inst.clone())));
        let c = self.contra(l4);
        let i = self.dni(&inst);
        self.hs(i, c)
    }

    /// From a proof of `body[var := t]`, derive `~forall var. ~body`.
    pub fn exists_intro(&mut self, var: &str, body: &Formula, t: &Term, proof: L) -> L {
        let e = self.exists_intro_imp(var, body, t);
        self.mp(proof, e)
    }

    /// `x1 = x1`.
    pub fn refl_lemma(&mut self) -> L {
        self.memo(Key::Refl, |b| {
            let pa5 = b.pa(5);
            let x1p0 = Term::add(x(1), Term::zero());
            let pa1 = b.pa(1);
            let p = b.inst(pa1, &[("x1", x1p0), ("x2", x(1)), ("x3", x(1))]);
            let s = b.mp(pa5, p);
            b.mp(pa5, s)
        })
    }

    /// `x1 = x2 -> x2 = x1`.
    pub fn sym_lemma(&mut self) -> L {
        self.memo(Key::Sym, |b| {
            let h = b.assume(Formula::eq(x(1), x(2)));
            let pa1 = b.pa(1);
            let p = b.inst(pa1, &[("x3", x(1))]);
            let s = b.mp(h, p);
            let r = b.refl_lemma();
            let out = b.mp(r, s);
            b.discharge(out)
        })
    }

    /// `x1 = x2 -> (x2 = x3 -> x1 = x3)`.
    pub fn trans_lemma(&mut self) -> L {
        self.memo(Key::Trans, |b| {
            let h1 = b.assume(Formula::eq(x(1), x(2)));
            let h2 = b.assume(Formula::eq(x(2), x(3)));
            let s = b.sym(h1);
            let pa1 = b.pa(1);
            let p = b.inst(pa1, &[("x1", x(2)), ("x2", x(1))]);
            let m = b.mp(s, p);
            let out = b.mp(h2, m);
            let d = b.discharge(out);
            b.discharge(d)
        })
    }

    pub fn refl(&mut self, t: &Term) -> L {
        let r = self.refl_lemma();
        self.inst(r, &[("x1", t.clone())])
    }

    /// From `a = b`, derive `b = a`.
    pub fn sym(&mut self, l: L) -> L {
        let (a, b) = eq_sides(self.formula(l));
        let s = self.sym_lemma();
        let i = self.inst(s, &[("x1", a), ("x2", b)]);
        self.mp(l, i)
    }

    /// From `a = b` and `b = c`, derive `a = c`.
    pub fn trans(&mut self, ab: L, bc: L) -> L {
        let (a, b) = eq_sides(self.formula(ab));
        let (b2, c) = eq_sides(self.formula(bc));
        assert_eq!(b, b2, "transitivity through different middle terms");
        let t = self.trans_lemma();
        let i = self.inst(t, &[("x1", a), ("x2", b), ("x3", c)]);
        let s = self.mp(ab, i);
        self.mp(bc, s)
    }

    /// `trans` through a list of equations.
    pub fn chain(&mut self, steps: &[L]) -> L {
        let mut acc = steps[0];
        for &s in &steps[1..] {
            acc = self.trans(acc, s);
        }
        acc
    }

    /// Instantiate an open lemma `P -> Q` at `subs` and apply it to a proof of `P`.
    pub fn apply(&mut self, lemma: L, subs: &[(&str, Term)], premise: L) -> L {
        let i = self.inst(lemma, subs);
        self.mp(premise, i)
    }
}
