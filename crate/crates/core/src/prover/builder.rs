use crate::kernel::{check_line, induction_instance, Justification, LogicalSchema, PaAxiom, Proof, ProofLine};
use crate::syntax::{Formula, FormulaNode, Ident, Term};
use std::collections::HashMap;

#[derive(Clone, Debug)]
enum Step {
    Axiom(Justification),
    Mp { ante: usize, imp: usize },
    Gen { premise: usize, var: Ident },
    Hyp,
}

#[derive(Clone, Debug)]
struct Line {
    formula: Formula,
    step: Step,
    /// Bit `k` set: depends on the hypothesis at stack depth `k`.
    deps: u64,
}

/// Handle to a derived line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct L(usize);

/// Proof under construction, with hypotheses that are discharged by the
/// deduction theorem. Hypothesis-free lines are shared by formula.
pub(crate) struct Builder {
    lines: Vec<Line>,
    known: HashMap<Formula, usize>,
    hyps: Vec<Formula>,
    fresh: usize,
    pub(crate) cache: HashMap<super::arith::Key, L>,
}

impl Builder {
    pub fn new() -> Builder {
        Builder {
            lines: Vec::new(),
            known: HashMap::new(),
            hyps: Vec::new(),
            fresh: 0,
            cache: HashMap::new(),
        }
    }

    pub fn formula(&self, l: L) -> &Formula {
        &self.lines[l.0].formula
    }

    pub fn fresh_var(&mut self) -> Ident {
        self.fresh += 1;
        format!("t_{}", self.fresh).into()
    }

    fn push(&mut self, formula: Formula, step: Step, deps: u64) -> L {
        debug_assert!(deps >> self.hyps.len() == 0, "line depends on a discharged hypothesis");
        if deps == 0 {
            if let Some(&i) = self.known.get(&formula) {
                return L(i);
            }
        }
        let i = self.lines.len();
        if deps == 0 {
            self.known.insert(formula.clone(), i);
        }
        self.lines.push(Line { formula, step, deps });
        L(i)
    }

    pub fn axiom(&mut self, f: Formula, j: Justification) -> L {
        debug_assert!(check_line(&[], &f, &j).is_ok(), "{f} is not an instance of {j:?}");
        self.push(f, Step::Axiom(j), 0)
    }

    pub fn logical(&mut self, s: LogicalSchema, f: Formula) -> L {
        self.axiom(f, Justification::Logical(s))
    }

    /// `PAn` in its stated variables.
    pub fn pa(&mut self, n: u8) -> L {
        let ax = PaAxiom::new(n).expect("PA1..PA8");
        self.axiom(ax.formula(), Justification::Pa(ax))
    }

    pub fn induction(&mut self, body: &Formula, var: &str) -> L {
        let f = induction_instance(body, var).expect("induction body admits 0 and S(var)");
        self.axiom(
            f,
            Justification::Induction {
                formula: body.clone(),
                var: var.into(),
            },
        )
    }

    pub fn mp(&mut self, ante: L, imp: L) -> L {
        let (a, i) = (&self.lines[ante.0], &self.lines[imp.0]);
        let consequent = match i.formula.node() {
            FormulaNode::Implies(x, y) if *x == a.formula => y.clone(),
            _ => panic!("modus ponens mismatch: `{}` with `{}`", a.formula, i.formula),
        };
        let deps = a.deps | i.deps;
        self.push(consequent, Step::Mp { ante: ante.0, imp: imp.0 }, deps)
    }

    pub fn gen(&mut self, premise: L, var: &str) -> L {
        let line = &self.lines[premise.0];
        for (k, h) in self.hyps.iter().enumerate() {
            assert!(
                line.deps & (1 << k) == 0 || !h.is_free(var),
                "generalising {var}, which is free in hypothesis `{h}`"
            );
        }
        let f = Formula::forall(var, line.formula.clone());
        let deps = line.deps;
        self.push(
            f,
            Step::Gen {
                premise: premise.0,
                var: var.into(),
            },
            deps,
        )
    }

    /// `forall x. G` to `G[x := t]`.
    pub fn spec(&mut self, l: L, t: &Term) -> L {
        let f = self.formula(l).clone();
        let FormulaNode::ForAll(x, body) = f.node() else {
            panic!("spec on a non-universal `{f}`")
        };
        let inst = body.substitute(x, t).expect("instance term is free for the variable");
        let ax = self.logical(LogicalSchema::L4, Formula::implies(f.clone(), inst));
        self.mp(l, ax)
    }

    /// Simultaneous substitution of terms for free variables of a line that
    /// depends on no hypothesis containing them.
    pub fn inst(&mut self, l: L, subs: &[(&str, Term)]) -> L {
        let subs: Vec<(&str, Term)> = subs
            .iter()
            .filter(|(k, t)| t.as_var() != Some(*k))
            .cloned()
            .collect();
        let clash = subs
            .iter()
            .enumerate()
            .any(|(i, (_, t))| subs[i + 1..].iter().any(|(k, _)| t.contains_var(k)));
        if !clash {
            return self.inst_seq(l, &subs);
        }
        let tmp: Vec<Ident> = subs.iter().map(|_| self.fresh_var()).collect();
        let first: Vec<(&str, Term)> = subs
            .iter()
            .zip(&tmp)
            .map(|((k, _), v)| (*k, Term::var(v.clone())))
            .collect();
        let mid = self.inst_seq(l, &first);
        let second: Vec<(&str, Term)> = tmp
            .iter()
            .zip(&subs)
            .map(|(v, (_, t))| (&**v, t.clone()))
            .collect();
        self.inst_seq(mid, &second)
    }

    fn inst_seq(&mut self, l: L, subs: &[(&str, Term)]) -> L {
        let f = self.formula(l).clone();
        let live: Vec<&(&str, Term)> = subs.iter().filter(|(k, _)| f.is_free(k)).collect();
        let mut g = l;
        for (k, _) in live.iter().rev() {
            g = self.gen(g, k);
        }
        for (_, t) in &live {
            g = self.spec(g, t);
        }
        g
    }

    pub fn assume(&mut self, h: Formula) -> L {
        let k = self.hyps.len();
        assert!(k < 64, "hypotheses nested too deeply");
        self.hyps.push(h.clone());
        let i = self.lines.len();
        self.lines.push(Line {
            formula: h,
            step: Step::Hyp,
            deps: 1 << k,
        });
        L(i)
    }

    /// Close the innermost hypothesis `h`: from a line `F` derive `h -> F`.
    pub fn discharge(&mut self, concl: L) -> L {
        let h = self.hyps.pop().expect("no open hypothesis");
        let bit = 1u64 << self.hyps.len();
        let mut memo = HashMap::new();
        self.lift(concl.0, &h, bit, &mut memo)
    }

    fn lift(&mut self, i: usize, h: &Formula, bit: u64, memo: &mut HashMap<usize, L>) -> L {
        if let Some(&r) = memo.get(&i) {
            return r;
        }
        let line = self.lines[i].clone();
        let r = if line.deps & bit == 0 {
            let target = Formula::implies(h.clone(), line.formula.clone());
            let ax = self.logical(LogicalSchema::L1, Formula::implies(line.formula, target));
            self.mp(L(i), ax)
        } else {
            match line.step {
                Step::Hyp => self.imp_refl(h),
                Step::Mp { ante, imp } => {
                    let ha = self.lift(ante, h, bit, memo);
                    let hi = self.lift(imp, h, bit, memo);
                    let a = self.lines[ante].formula.clone();
                    let f = line.formula;
                    let l2 = self.logical(
                        LogicalSchema::L2,
                        Formula::implies(
                            Formula::implies(h.clone(), Formula::implies(a.clone(), f.clone())),
                            Formula::implies(
                                Formula::implies(h.clone(), a),
                                Formula::implies(h.clone(), f),
                            ),
                        ),
                    );
                    let s = self.mp(hi, l2);
                    self.mp(ha, s)
                }
                Step::Gen { premise, var } => {
                    let hp = self.lift(premise, h, bit, memo);
                    let g = self.lines[premise].formula.clone();
                    let all = self.gen(hp, &var);
                    let l5 = self.logical(
                        LogicalSchema::L5,
                        Formula::implies(
                            Formula::forall(var.clone(), Formula::implies(h.clone(), g.clone())),
                            Formula::implies(h.clone(), Formula::forall(var, g)),
                        ),
                    );
                    self.mp(all, l5)
                }
                Step::Axiom(_) => unreachable!("axioms depend on no hypothesis"),
            }
        };
        memo.insert(i, r);
        r
    }

    /// `a -> a`.
    pub fn imp_refl(&mut self, a: &Formula) -> L {
        let aa = Formula::implies(a.clone(), a.clone());
        let s1 = Formula::implies(a.clone(), Formula::implies(aa.clone(), a.clone()));
        let l1 = self.logical(LogicalSchema::L1, s1.clone());
        let l2 = self.logical(
            LogicalSchema::L2,
            Formula::implies(
                s1,
                Formula::implies(Formula::implies(a.clone(), aa.clone()), aa.clone()),
            ),
        );
        let m = self.mp(l1, l2);
        let l1b = self.logical(LogicalSchema::L1, Formula::implies(a.clone(), aa));
        self.mp(l1b, m)
    }

    /// Copy an accepted proof in; returns its conclusion.
    pub fn import(&mut self, p: &Proof) -> L {
        let mut map: Vec<L> = Vec::with_capacity(p.len());
        for line in &p.lines {
            let l = match &line.justification {
                Justification::ModusPonens {
                    antecedent,
                    implication,
                } => self.mp(map[antecedent - 1], map[implication - 1]),
                Justification::Generalisation { premise, var } => self.gen(map[premise - 1], var),
                j => self.axiom(line.formula.clone(), j.clone()),
            };
            map.push(l);
        }
        *map.last().expect("nonempty proof")
    }

    /// The ancestors of `concl`, renumbered from 1, ending in `concl`.
    pub fn finish(&self, concl: L) -> Proof {
        assert!(self.hyps.is_empty() && self.lines[concl.0].deps == 0, "open hypotheses");
        let mut keep = vec![false; concl.0 + 1];
        let mut stack = vec![concl.0];
        while let Some(i) = stack.pop() {
            if keep[i] {
                continue;
            }
            keep[i] = true;
            match &self.lines[i].step {
                Step::Mp { ante, imp } => stack.extend([*ante, *imp]),
                Step::Gen { premise, .. } => stack.push(*premise),
                Step::Axiom(_) => {}
                Step::Hyp => unreachable!("hypothesis survived discharge"),
            }
        }
        let mut number = vec![0usize; concl.0 + 1];
        let mut out = Vec::new();
        for i in (0..=concl.0).filter(|&i| keep[i]) {
            let line = &self.lines[i];
            let justification = match &line.step {
                Step::Axiom(j) => j.clone(),
                Step::Mp { ante, imp } => Justification::ModusPonens {
                    antecedent: number[*ante],
                    implication: number[*imp],
                },
                Step::Gen { premise, var } => Justification::Generalisation {
                    premise: number[*premise],
                    var: var.clone(),
                },
                Step::Hyp => unreachable!(),
            };
            out.push(ProofLine {
                formula: line.formula.clone(),
                justification,
            });
            number[i] = out.len();
        }
        let proof = Proof::new(out);
        debug_assert!(crate::kernel::check_proof(&proof).accepted(), "builder emitted a rejected proof");
        proof
    }
}
