//! Canonical printing. Output always reparses to the same tree.

use super::formula::{Formula, FormulaNode};
use super::term::{Term, TermNode};
use num_bigint::BigUint;

/// Successor chains up to this length print as nested `S(...)`; longer ones as `S^n(...)`.
pub const NESTED_SUCC_LIMIT: u32 = 8;

pub fn render_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

fn write_term(t: &Term, out: &mut String) {
    match t.node() {
        TermNode::Zero => out.push('0'),
        TermNode::Var(v) => out.push_str(v),
        TermNode::Succ(n, inner) => {
            if *n <= BigUint::from(NESTED_SUCC_LIMIT) {
                let k: u32 = n.try_into().expect("small count");
                for _ in 0..k {
                    out.push_str("S(");
                }
                write_term(inner, out);
                for _ in 0..k {
                    out.push(')');
                }
            } else {
                out.push_str("S^");
                out.push_str(&n.to_string());
                out.push('(');
                write_term(inner, out);
                out.push(')');
            }
        }
        TermNode::Add(l, r) => {
            write_term(l, out);
            out.push_str(" + ");
            write_wrapped(r, matches!(r.node(), TermNode::Add(..)), out);
        }
        TermNode::Mul(l, r) => {
            write_wrapped(l, matches!(l.node(), TermNode::Add(..)), out);
            out.push_str(" * ");
            write_wrapped(r, matches!(r.node(), TermNode::Add(..) | TermNode::Mul(..)), out);
        }
    }
}

fn write_wrapped(t: &Term, wrap: bool, out: &mut String) {
    if wrap {
        out.push('(');
        write_term(t, out);
        out.push(')');
    } else {
        write_term(t, out);
    }
}

pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

fn write_formula(f: &Formula, out: &mut String) {
    match f.node() {
        FormulaNode::Eq(l, r) => {
            write_term(l, out);
            out.push_str(" = ");
            write_term(r, out);
        }
        FormulaNode::Not(a) => {
            out.push('~');
            if matches!(a.node(), FormulaNode::Not(_)) {
                write_formula(a, out);
            } else {
                out.push('(');
                write_formula(a, out);
                out.push(')');
            }
        }
        FormulaNode::Implies(a, b) => {
            if matches!(a.node(), FormulaNode::Implies(..) | FormulaNode::ForAll(..)) {
                out.push('(');
                write_formula(a, out);
                out.push(')');
            } else {
                write_formula(a, out);
            }
            out.push_str(" -> ");
            write_formula(b, out);
        }
        FormulaNode::ForAll(v, body) => {
            out.push_str("forall ");
            out.push_str(v);
            out.push_str(". ");
            write_formula(body, out);
        }
    }
}
