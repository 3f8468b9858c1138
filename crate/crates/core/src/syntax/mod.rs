//! Abstract syntax, parsing, printing and substitution for the language of
//! first-order arithmetic.

mod formula;
mod parse;
mod render;
mod term;

pub use formula::{fresh_name, CaptureError, Formula, FormulaNode};
pub use parse::{is_variable_name, parse, parse_term, ParseError};
pub use render::{render, render_term, NESTED_SUCC_LIMIT};
pub use term::{numeral, Ident, Numeral, Term, TermNode, TermView};

#[cfg(test)]
pub(crate) mod proptests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn arb_term() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            Just(Term::zero()),
            prop::sample::select(vec!["x", "y", "z", "w1"]).prop_map(Term::var),
        ];
        leaf.prop_recursive(4, 16, 2, |inner| {
            prop_oneof![
                (1u32..12, inner.clone()).prop_map(|(n, t)| Term::succ_n(n, t)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Term::mul(a, b)),
            ]
        })
    }

    pub(crate) fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = (arb_term(), arb_term()).prop_map(|(a, b)| Formula::eq(a, b));
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (prop::sample::select(vec!["x", "y", "v"]), inner)
                    .prop_map(|(v, b)| Formula::forall(v, b)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn render_then_parse_is_identity(f in arb_formula()) {
            prop_assert_eq!(parse(&render(&f)).unwrap(), f);
        }

        #[test]
        fn substituting_closed_term_removes_var(f in arb_formula(), n in 0u32..5) {
            let g = f.substitute("x", &Term::numeral(n)).unwrap();
            prop_assert!(!g.free_vars().contains("x"));
            prop_assert_eq!(g.binders(), f.binders());
        }

        #[test]
        fn sugar_expands_to_core(a in arb_term(), b in arb_term()) {
            let eq = Formula::eq(a.clone(), b.clone());
            let src = format!("({0}) & ({0}) | {1} < {2}", render(&eq), render_term(&a), render_term(&b));
            let expected = Formula::or(Formula::and(eq.clone(), eq), Formula::lt(a, b));
            prop_assert_eq!(parse(&src).unwrap(), expected);
        }
    }
}
