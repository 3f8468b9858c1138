//! Arithmetic lemmas. Numerals can be huge, so every family indexed by a
//! number is built by halving, with `O(log n)` cached members.

use super::builder::{Builder, L};
use super::logic::eq_sides;
use super::ProverError;
use crate::syntax::{Formula, Term, TermNode};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Key {
    Refl,
    Sym,
    Trans,
    ZeroAdd,
    SuccAdd,
    PlusLeft,
    PlusRight,
    TimesLeft,
    /// `x1 = x2 -> S^n(x1) = S^n(x2)`
    SuccN(BigUint),
    /// `S^n(x1) = S^n(x2) -> x1 = x2`
    PredN(BigUint),
    /// `x1 + S^n(x2) = S^n(x1 + x2)`
    AddSucc(BigUint),
    /// `[a] * S^(2^k)(x2) = S^(a 2^k)([a] * x2)`
    MulPow(BigUint, u32),
}

fn x(n: u8) -> Term {
    Term::var(format!("x{n}"))
}

fn num(n: &BigUint) -> Term {
    Term::numeral(n.clone())
}

/// `n = a + b` with both parts positive, `n >= 2`.
fn split(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_even() {
        let h = n >> 1u32;
        (h.clone(), h)
    } else {
        (n - 1u32, BigUint::one())
    }
}

impl Builder {
    pub(super) fn memo(&mut self, key: Key, make: impl FnOnce(&mut Builder) -> L) -> L {
        if let Some(&l) = self.cache.get(&key) {
            return l;
        }
        let l = make(self);
        self.cache.insert(key, l);
        l
    }

    pub fn succ_lemma(&mut self, n: &BigUint) -> L {
        if n.is_one() {
            return self.pa(2);
        }
        self.memo(Key::SuccN(n.clone()), |b| {
            let (p, q) = split(n);
            let first = b.succ_lemma(&p);
            let second = b.succ_lemma(&q);
            let shifted = b.inst(
                second,
                &[
                    ("x1", Term::succ_n(p.clone(), x(1))),
                    ("x2", Term::succ_n(p, x(2))),
                ],
            );
            b.hs(first, shifted)
        })
    }

    /// From `a = b`, derive `S^n(a) = S^n(b)`.
    pub fn succ_cong(&mut self, l: L, n: &BigUint) -> L {
        if n.is_zero() {
            return l;
        }
        let (a, c) = eq_sides(self.formula(l));
        let lemma = self.succ_lemma(n);
        self.apply(lemma, &[("x1", a), ("x2", c)], l)
    }

    pub fn pred_lemma(&mut self, n: &BigUint) -> L {
        if n.is_one() {
            return self.pa(4);
        }
        self.memo(Key::PredN(n.clone()), |b| {
            let (p, q) = split(n);
            let outer = b.pred_lemma(&p);
            let outer = b.inst(
                outer,
                &[
                    ("x1", Term::succ_n(q.clone(), x(1))),
                    ("x2", Term::succ_n(q.clone(), x(2))),
                ],
            );
            let inner = b.pred_lemma(&q);
            b.hs(outer, inner)
        })
    }

    pub fn add_succ_lemma(&mut self, n: &BigUint) -> L {
        if n.is_one() {
            return self.pa(6);
        }
        self.memo(Key::AddSucc(n.clone()), |b| {
            let (p, q) = split(n);
            let outer = b.add_succ_lemma(&p);
            let outer = b.inst(outer, &[("x2", Term::succ_n(q.clone(), x(2)))]);
            let inner = b.add_succ_lemma(&q);
            let inner = b.succ_cong(inner, &p);
            b.trans(outer, inner)
        })
    }

    /// `w + [n] = S^n(w)`.
    pub fn add_shift(&mut self, w: &Term, n: &BigUint) -> L {
        let pa5 = self.pa(5);
        let zero_sum = self.inst(pa5, &[("x1", w.clone())]);
        if n.is_zero() {
            return zero_sum;
        }
        let lemma = self.add_succ_lemma(n);
        let p = self.inst(lemma, &[("x1", w.clone()), ("x2", Term::zero())]);
        let z = self.succ_cong(zero_sum, n);
        self.trans(p, z)
    }

    /// `[a] + [b] = [a + b]`.
    pub fn add_num(&mut self, a: &BigUint, b: &BigUint) -> L {
        self.add_shift(&num(a), b)
    }

    fn mul_pow(&mut self, a: &BigUint, k: u32) -> L {
        self.memo(Key::MulPow(a.clone(), k), |b| {
            if k == 0 {
                let pa8 = b.pa(8);
                let p = b.inst(pa8, &[("x1", num(a))]);
                let s = b.add_shift(&Term::mul(num(a), x(2)), a);
                b.trans(p, s)
            } else {
                let half = b.mul_pow(a, k - 1);
                let m = BigUint::one() << (k - 1);
                b.mul_combine(a, half, &m, half, &m)
            }
        })
    }

    /// From `[a] * S^m(x2) = S^(am)([a] * x2)` and the same for `n`, the same for `m + n`.
    fn mul_combine(&mut self, a: &BigUint, tm: L, m: &BigUint, tn: L, n: &BigUint) -> L {
        let outer = self.inst(tm, &[("x2", Term::succ_n(n.clone(), x(2)))]);
        let inner = self.succ_cong(tn, &(a * m));
        self.trans(outer, inner)
    }

    /// `[a] * S^n(x2) = S^(an)([a] * x2)`, `n >= 1`.
    fn mul_lemma(&mut self, a: &BigUint, n: &BigUint) -> L {
        let mut acc: Option<(L, BigUint)> = None;
        for k in 0..n.bits() {
            if !n.bit(k) {
                continue;
            }
            let k = k as u32;
            let tk = self.mul_pow(a, k);
            let pk = BigUint::one() << k;
            acc = Some(match acc {
                None => (tk, pk),
                Some((t, low)) => {
                    let l = self.mul_combine(a, tk, &pk, t, &low);
                    (l, low + pk)
                }
            });
        }
        acc.expect("n >= 1").0
    }

    /// `[a] * [b] = [ab]`.
    pub fn mul_num(&mut self, a: &BigUint, b: &BigUint) -> L {
        let pa7 = self.pa(7);
        let zero_prod = self.inst(pa7, &[("x1", num(a))]);
        if b.is_zero() {
            return zero_prod;
        }
        let lemma = self.mul_lemma(a, b);
        let t = self.inst(lemma, &[("x2", Term::zero())]);
        let z = self.succ_cong(zero_prod, &(a * b));
        self.trans(t, z)
    }

    /// `~([m] = [n])` for `m != n`.
    pub fn neq_num(&mut self, m: &BigUint, n: &BigUint) -> L {
        if m > n {
            let lt = self.neq_num(n, m);
            let s = self.sym_lemma();
            let s = self.inst(s, &[("x1", num(m)), ("x2", num(n))]);
            let c = self.contra(s);
            return self.mp(lt, c);
        }
        let gap = n - m;
        let pa3 = self.pa(3);
        let base = self.inst(pa3, &[("x1", num(&(&gap - 1u32)))]);
        if m.is_zero() {
            return base;
        }
        let pred = self.pred_lemma(m);
        let pred = self.inst(pred, &[("x1", Term::zero()), ("x2", num(&gap))]);
        let c = self.contra(pred);
        self.mp(base, c)
    }

    /// Prove `F(x)` for the open body `F` by induction on `var`, given
    /// `F(0)` and `F(var) -> F(S(var))`.
    fn induct(&mut self, body: &Formula, var: &str, base: L, step: L) -> L {
        let step = self.gen(step, var);
        let ind = self.induction(body, var);
        let s = self.mp(base, ind);
        let all = self.mp(step, s);
        self.spec(all, &Term::var(var))
    }

    /// `0 + x1 = x1`.
    fn zero_add_lemma(&mut self) -> L {
        self.memo(Key::ZeroAdd, |b| {
            let body = Formula::eq(Term::add(Term::zero(), x(1)), x(1));
            let pa5 = b.pa(5);
            let base = b.inst(pa5, &[("x1", Term::zero())]);
            let h = b.assume(body.clone());
            let pa6 = b.pa(6);
            let p = b.inst(pa6, &[("x1", Term::zero()), ("x2", x(1))]);
            let s = b.succ_cong(h, &BigUint::one());
            let out = b.trans(p, s);
            let step = b.discharge(out);
            b.induct(&body, "x1", base, step)
        })
    }

    /// `S(x1) + x2 = S(x1 + x2)`.
    fn succ_add_lemma(&mut self) -> L {
        self.memo(Key::SuccAdd, |b| {
            let one = BigUint::one();
            let body = Formula::eq(Term::add(Term::succ(x(1)), x(2)), Term::succ(Term::add(x(1), x(2))));
            let pa5 = b.pa(5);
            let a = b.inst(pa5, &[("x1", Term::succ(x(1)))]);
            let c = b.succ_cong(pa5, &one);
            let c = b.sym(c);
            let base = b.trans(a, c);
            let h = b.assume(body.clone());
            let pa6 = b.pa(6);
            let p = b.inst(pa6, &[("x1", Term::succ(x(1)))]);
            let q = b.succ_cong(h, &one);
            let s = b.succ_cong(pa6, &one);
            let s = b.sym(s);
            let out = b.chain(&[p, q, s]);
            let step = b.discharge(out);
            b.induct(&body, "x2", base, step)
        })
    }

    /// `x1 = x2 -> x1 + x3 = x2 + x3`.
    pub fn plus_left_lemma(&mut self) -> L {
        self.memo(Key::PlusLeft, |b| {
            let hyp = Formula::eq(x(1), x(2));
            let body = Formula::implies(
                hyp.clone(),
                Formula::eq(Term::add(x(1), x(3)), Term::add(x(2), x(3))),
            );
            let pa5 = b.pa(5);
            let h = b.assume(hyp.clone());
            let e2 = b.inst(pa5, &[("x1", x(2))]);
            let e2 = b.sym(e2);
            let out = b.chain(&[pa5, h, e2]);
            let base = b.discharge(out);

            let ih = b.assume(body.clone());
            let h = b.assume(hyp);
            let m = b.mp(h, ih);
            let s = b.succ_cong(m, &BigUint::one());
            let pa6 = b.pa(6);
            let p1 = b.inst(pa6, &[("x2", x(3))]);
            let p2 = b.inst(pa6, &[("x1", x(2)), ("x2", x(3))]);
            let p2 = b.sym(p2);
            let out = b.chain(&[p1, s, p2]);
            let d = b.discharge(out);
            let step = b.discharge(d);
            b.induct(&body, "x3", base, step)
        })
    }

    /// `x1 = x2 -> x3 + x1 = x3 + x2`.
    pub fn plus_right_lemma(&mut self) -> L {
        self.memo(Key::PlusRight, |b| {
            let hyp = Formula::eq(x(1), x(2));
            let body = Formula::implies(
                hyp.clone(),
                Formula::eq(Term::add(x(3), x(1)), Term::add(x(3), x(2))),
            );
            let za = b.zero_add_lemma();
            let h = b.assume(hyp.clone());
            let z2 = b.inst(za, &[("x1", x(2))]);
            let z2 = b.sym(z2);
            let out = b.chain(&[za, h, z2]);
            let base = b.discharge(out);

            let sa = b.succ_add_lemma();
            let ih = b.assume(body.clone());
            let h = b.assume(hyp);
            let m = b.mp(h, ih);
            let g1 = b.inst(sa, &[("x1", x(3)), ("x2", x(1))]);
            let s = b.succ_cong(m, &BigUint::one());
            let g2 = b.inst(sa, &[("x1", x(3)), ("x2", x(2))]);
            let g2 = b.sym(g2);
            let out = b.chain(&[g1, s, g2]);
            let d = b.discharge(out);
            let step = b.discharge(d);
            b.induct(&body, "x3", base, step)
        })
    }

    /// `x1 = x2 -> x1 * x3 = x2 * x3`.
    pub fn times_left_lemma(&mut self) -> L {
        self.memo(Key::TimesLeft, |b| {
            let hyp = Formula::eq(x(1), x(2));
            let body = Formula::implies(
                hyp.clone(),
                Formula::eq(Term::mul(x(1), x(3)), Term::mul(x(2), x(3))),
            );
            let pa7 = b.pa(7);
            b.assume(hyp.clone());
            let z2 = b.inst(pa7, &[("x1", x(2))]);
            let z2 = b.sym(z2);
            let out = b.trans(pa7, z2);
            let base = b.discharge(out);

            let pl = b.plus_left_lemma();
            let pr = b.plus_right_lemma();
            let ih = b.assume(body.clone());
            let h = b.assume(hyp);
            let m = b.mp(h, ih);
            let pa8 = b.pa(8);
            let p1 = b.inst(pa8, &[("x2", x(3))]);
            let e = b.apply(
                pl,
                &[("x1", Term::mul(x(1), x(3))), ("x2", Term::mul(x(2), x(3))), ("x3", x(1))],
                m,
            );
            let i = b.apply(pr, &[("x3", Term::mul(x(2), x(3)))], h);
            let p2 = b.inst(pa8, &[("x1", x(2)), ("x2", x(3))]);
            let p2 = b.sym(p2);
            let out = b.chain(&[p1, e, i, p2]);
            let d = b.discharge(out);
            let step = b.discharge(d);
            b.induct(&body, "x3", base, step)
        })
    }

    /// From `a = b`, derive `a + c = b + c`.
    pub fn plus_left(&mut self, l: L, c: &Term) -> L {
        let (a, b) = eq_sides(self.formula(l));
        let lemma = self.plus_left_lemma();
        self.apply(lemma, &[("x1", a), ("x2", b), ("x3", c.clone())], l)
    }

    /// From `a = b`, derive `c + a = c + b`.
    pub fn plus_right(&mut self, l: L, c: &Term) -> L {
        let (a, b) = eq_sides(self.formula(l));
        let lemma = self.plus_right_lemma();
        self.apply(lemma, &[("x1", a), ("x2", b), ("x3", c.clone())], l)
    }

    /// From `a = b`, derive `a * c = b * c`.
    pub fn times_left(&mut self, l: L, c: &Term) -> L {
        let (a, b) = eq_sides(self.formula(l));
        let lemma = self.times_left_lemma();
        self.apply(lemma, &[("x1", a), ("x2", b), ("x3", c.clone())], l)
    }

    /// A proof of `t = [v]` for a closed term `t`, or `None` when `t` is the numeral itself.
    pub fn eval_closed(&mut self, t: &Term) -> Result<(Option<L>, BigUint), ProverError> {
        if let Some(v) = t.as_numeral() {
            return Ok((None, v));
        }
        let then = |b: &mut Builder, acc: Option<L>, next: L| match acc {
            Some(a) => b.trans(a, next),
            None => next,
        };
        Ok(match t.node() {
            TermNode::Zero => unreachable!("0 is a numeral"),
            TermNode::Var(v) => return Err(ProverError::NotClosed(v.to_string())),
            TermNode::Succ(n, inner) => {
                let (e, v) = self.eval_closed(inner)?;
                let e = e.expect("inner of a non-numeral successor is not a numeral");
                (Some(self.succ_cong(e, n)), v + n)
            }
            TermNode::Add(a, c) => {
                let (ea, va) = self.eval_closed(a)?;
                let (ec, vc) = self.eval_closed(c)?;
                let mut acc = ea.map(|e| self.plus_left(e, c));
                if let Some(e) = ec {
                    let s = self.plus_right(e, &num(&va));
                    acc = Some(then(self, acc, s));
                }
                let sum = self.add_num(&va, &vc);
                (Some(then(self, acc, sum)), va + vc)
            }
            TermNode::Mul(a, c) => {
                let Some(vc) = c.as_numeral() else {
                    return Err(ProverError::Unsupported(format!(
                        "the right factor of `{t}` must be a numeral"
                    )));
                };
                let (ea, va) = self.eval_closed(a)?;
                let acc = ea.map(|e| self.times_left(e, c));
                let prod = self.mul_num(&va, &vc);
                let v = &va * &vc;
                (Some(then(self, acc, prod)), v)
            }
        })
    }
}
