//! Goedel numbering of formulas and formula sequences, and the proof relation.
//!
//! A formula is first flattened to a prefix string of positive symbols:
//!
//! | symbol | meaning |
//! |---|---|
//! | 1 | `0` |
//! | 2 | successor, applied once |
//! | 3 | successor applied `n >= 2` times; followed by the digits of `n` and 11 |
//! | 4, 5 | `+`, `*` |
//! | 6, 7, 8, 9 | `=`, `~`, `->`, `forall` |
//! | 10 | variable; followed by its name characters and 11 |
//! | 11 | end of a digit or name run |
//! | 12 | separator between the formulas of a sequence |
//! | 13..=22 | digits `0`..`9` |
//! | 23..=48 | letters `a`..`z` |
//! | 49 | `_` |
//!
//! The string `s_1 .. s_n` is then packed into one natural, either as
//! `2^s_1 * 3^s_2 * ... * p_n^s_n` or as the base-64 numeral with digits
//! `s_1 .. s_n, 1` (least significant first). Successor runs are always
//! stored maximally merged, so a code whose successor symbol is directly
//! followed by another successor symbol is malformed.

use crate::kernel::{axiom_justification, check_proof, Justification, Proof, ProofLine};
use crate::syntax::{is_variable_name, Formula, FormulaNode, Ident, Term, TermNode};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

const ZERO: u8 = 1;
const SUCC: u8 = 2;
const SUCC_POW: u8 = 3;
const PLUS: u8 = 4;
const TIMES: u8 = 5;
const EQ: u8 = 6;
const NOT: u8 = 7;
const IMPLIES: u8 = 8;
const FORALL: u8 = 9;
const VAR: u8 = 10;
const END: u8 = 11;
const SEP: u8 = 12;
const DIGIT0: u8 = 13;
const LETTER_A: u8 = 23;
const UNDERSCORE: u8 = 49;
const MAX_SYMBOL: u8 = UNDERSCORE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Scheme {
    /// Product of prime powers.
    #[default]
    #[serde(rename = "prime")]
    Prime,
    /// Base-64 digits.
    #[serde(rename = "positional")]
    Positional,
}

impl Scheme {
    /// Versioned tag written next to serialized codes.
    pub fn tag(self) -> &'static str {
        match self {
            Scheme::Prime => "prime-power/v1",
            Scheme::Positional => "base64-positional/v1",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Prime => "prime",
            Scheme::Positional => "positional",
        })
    }
}

impl FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> Result<Scheme, String> {
        match s {
            "prime" => Ok(Scheme::Prime),
            "positional" => Ok(Scheme::Positional),
            _ => Err(format!("unknown scheme `{s}` (expected prime or positional)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodeKind {
    Formula,
    Proof,
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeKind::Formula => "formula",
            CodeKind::Proof => "proof",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GoedelCode {
    pub value: BigUint,
    pub kind: CodeKind,
    pub scheme: Scheme,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoedelError {
    #[error("expected a {expected} code, got a {found} code")]
    WrongKind { expected: CodeKind, found: CodeKind },
    /// `position` counts symbols from 0.
    #[error("malformed code at symbol {position}: {reason}")]
    Malformed { position: usize, reason: String },
}

fn malformed(position: usize, reason: impl Into<String>) -> GoedelError {
    GoedelError::Malformed {
        position,
        reason: reason.into(),
    }
}

fn push_chars(out: &mut Vec<u8>, s: &str) {
    for ch in s.bytes() {
        out.push(match ch {
            b'0'..=b'9' => DIGIT0 + (ch - b'0'),
            b'a'..=b'z' => LETTER_A + (ch - b'a'),
            b'_' => UNDERSCORE,
            _ => unreachable!("identifiers and counts use [a-z0-9_]"),
        });
    }
    out.push(END);
}

fn term_symbols(t: &Term, out: &mut Vec<u8>) {
    match t.node() {
        TermNode::Zero => out.push(ZERO),
        TermNode::Var(v) => {
            out.push(VAR);
            push_chars(out, v);
        }
        TermNode::Succ(n, inner) => {
            if n.is_one() {
                out.push(SUCC);
            } else {
                out.push(SUCC_POW);
                push_chars(out, &n.to_string());
            }
            term_symbols(inner, out);
        }
        TermNode::Add(a, b) => {
            out.push(PLUS);
            term_symbols(a, out);
            term_symbols(b, out);
        }
        TermNode::Mul(a, b) => {
            out.push(TIMES);
            term_symbols(a, out);
            term_symbols(b, out);
        }
    }
}

fn formula_symbols(f: &Formula, out: &mut Vec<u8>) {
    match f.node() {
        FormulaNode::Eq(a, b) => {
            out.push(EQ);
            term_symbols(a, out);
            term_symbols(b, out);
        }
        FormulaNode::Not(a) => {
            out.push(NOT);
            formula_symbols(a, out);
        }
        FormulaNode::Implies(a, b) => {
            out.push(IMPLIES);
            formula_symbols(a, out);
            formula_symbols(b, out);
        }
        FormulaNode::ForAll(v, body) => {
            out.push(FORALL);
            out.push(VAR);
            push_chars(out, v);
            formula_symbols(body, out);
        }
    }
}

/// The symbol string of a formula.
pub fn symbols_of_formula(f: &Formula) -> Vec<u8> {
    let mut out = Vec::new();
    formula_symbols(f, &mut out);
    out
}

/// The symbol string of a formula sequence.
pub fn symbols_of_proof(p: &Proof) -> Vec<u8> {
    let mut out = Vec::new();
    for (i, line) in p.lines.iter().enumerate() {
        if i > 0 {
            out.push(SEP);
        }
        formula_symbols(&line.formula, &mut out);
    }
    out
}

struct Reader<'a> {
    syms: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn next(&mut self, what: &str) -> Result<u8, GoedelError> {
        let s = *self
            .syms
            .get(self.pos)
            .ok_or_else(|| malformed(self.pos, format!("code ends where {what} was expected")))?;
        self.pos += 1;
        Ok(s)
    }

    fn peek(&self) -> Option<u8> {
        self.syms.get(self.pos).copied()
    }

    fn chars(&mut self) -> Result<String, GoedelError> {
        let mut s = String::new();
        loop {
            let at = self.pos;
            match self.next("a character or end marker")? {
                END => return Ok(s),
                d @ DIGIT0..=22 => s.push((b'0' + d - DIGIT0) as char),
                l @ LETTER_A..=48 => s.push((b'a' + l - LETTER_A) as char),
                UNDERSCORE => s.push('_'),
                other => return Err(malformed(at, format!("symbol {other} inside a name or count"))),
            }
        }
    }

    fn var_name(&mut self) -> Result<Ident, GoedelError> {
        let at = self.pos;
        let name = self.chars()?;
        if is_variable_name(&name) {
            Ok(name.into())
        } else {
            Err(malformed(at, format!("`{name}` is not a variable name")))
        }
    }

    fn term(&mut self) -> Result<Term, GoedelError> {
        let at = self.pos;
        Ok(match self.next("a term")? {
            ZERO => Term::zero(),
            VAR => Term::var(self.var_name()?),
            s @ (SUCC | SUCC_POW) => {
                let n = if s == SUCC {
                    BigUint::one()
                } else {
                    let digits = self.chars()?;
                    let canonical = !digits.is_empty()
                        && !digits.starts_with('0')
                        && digits.bytes().all(|b| b.is_ascii_digit());
                    match BigUint::from_str(&digits) {
                        Ok(n) if canonical && n > BigUint::one() => n,
                        _ => return Err(malformed(at, format!("bad successor count `{digits}`"))),
                    }
                };
                if matches!(self.peek(), Some(SUCC | SUCC_POW)) {
                    return Err(malformed(self.pos, "successor run is not merged"));
                }
                Term::succ_n(n, self.term()?)
            }
            PLUS => {
                let a = self.term()?;
                Term::add(a, self.term()?)
            }
            TIMES => {
                let a = self.term()?;
                Term::mul(a, self.term()?)
            }
            other => return Err(malformed(at, format!("symbol {other} cannot start a term"))),
        })
    }

    fn formula(&mut self) -> Result<Formula, GoedelError> {
        let at = self.pos;
        Ok(match self.next("a formula")? {
            EQ => {
                let a = self.term()?;
                Formula::eq(a, self.term()?)
            }
            NOT => Formula::not(self.formula()?),
            IMPLIES => {
                let a = self.formula()?;
                Formula::implies(a, self.formula()?)
            }
            FORALL => {
                let vat = self.pos;
                if self.next("a bound variable")? != VAR {
                    return Err(malformed(vat, "quantifier without a variable"));
                }
                let v = self.var_name()?;
                Formula::forall(v, self.formula()?)
            }
            other => return Err(malformed(at, format!("symbol {other} cannot start a formula"))),
        })
    }

    fn finish(&self) -> Result<(), GoedelError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(malformed(self.pos, "trailing symbols")),
        }
    }
}

pub fn formula_from_symbols(syms: &[u8]) -> Result<Formula, GoedelError> {
    let mut r = Reader { syms, pos: 0 };
    let f = r.formula()?;
    r.finish()?;
    Ok(f)
}

/// Formulas of a sequence; an empty string is the empty sequence.
pub fn formulas_from_symbols(syms: &[u8]) -> Result<Vec<Formula>, GoedelError> {
    let mut out = Vec::new();
    if syms.is_empty() {
        return Ok(out);
    }
    let mut r = Reader { syms, pos: 0 };
    loop {
        out.push(r.formula()?);
        match r.peek() {
            None => return Ok(out),
            Some(SEP) => r.pos += 1,
            Some(_) => return Err(malformed(r.pos, "expected a separator or the end")),
        }
    }
}

/// The first `n` primes.
fn primes(n: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(n);
    let mut c = 2u64;
    while out.len() < n {
        if out.iter().take_while(|&&p| p * p <= c).all(|&p| c % p != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

fn product(factors: &[BigUint]) -> BigUint {
    match factors {
        [] => BigUint::one(),
        [x] => x.clone(),
        _ => {
            let (a, b) = factors.split_at(factors.len() / 2);
            product(a) * product(b)
        }
    }
}

pub fn pack(syms: &[u8], scheme: Scheme) -> BigUint {
    match scheme {
        Scheme::Prime => {
            let ps = primes(syms.len());
            let powers: Vec<BigUint> = ps
                .iter()
                .zip(syms)
                .map(|(&p, &s)| BigUint::from(p).pow(u32::from(s)))
                .collect();
            product(&powers)
        }
        Scheme::Positional => {
            let mut digits = syms.to_vec();
            digits.push(1);
            BigUint::from_radix_le(&digits, 64).expect("symbols are base-64 digits")
        }
    }
}

pub fn unpack(value: &BigUint, scheme: Scheme) -> Result<Vec<u8>, GoedelError> {
    if value.is_zero() {
        return Err(malformed(0, "0 is not a code"));
    }
    let syms = match scheme {
        Scheme::Prime => {
            let mut rest = value.clone();
            let mut syms = Vec::new();
            let mut c = 2u64;
            let mut ps: Vec<u64> = Vec::new();
            while !rest.is_one() {
                while ps.iter().take_while(|&&p| p * p <= c).any(|&p| c % p == 0) {
                    c += 1;
                }
                ps.push(c);
                let p = BigUint::from(c);
                let mut e = 0u32;
                loop {
                    let (q, r) = (&rest / &p, &rest % &p);
                    if !r.is_zero() {
                        break;
                    }
                    rest = q;
                    e += 1;
                    if e > u32::from(MAX_SYMBOL) {
                        return Err(malformed(syms.len(), format!("exponent of {c} exceeds {MAX_SYMBOL}")));
                    }
                }
                if e == 0 {
                    return Err(malformed(syms.len(), format!("{c} does not divide the code")));
                }
                syms.push(e as u8);
                c += 1;
            }
            syms
        }
        Scheme::Positional => {
            let mut digits = value.to_radix_le(64);
            if digits.pop() != Some(1) {
                return Err(malformed(digits.len(), "missing end digit"));
            }
            digits
        }
    };
    if let Some(i) = syms.iter().position(|&s| s == 0 || s > MAX_SYMBOL) {
        return Err(malformed(i, format!("{} is not a symbol", syms[i])));
    }
    Ok(syms)
}

pub fn encode_formula(f: &Formula, scheme: Scheme) -> GoedelCode {
    GoedelCode {
        value: pack(&symbols_of_formula(f), scheme),
        kind: CodeKind::Formula,
        scheme,
    }
}

pub fn decode_formula(g: &GoedelCode) -> Result<Formula, GoedelError> {
    expect_kind(g, CodeKind::Formula)?;
    formula_from_symbols(&unpack(&g.value, g.scheme)?)
}

/// Codes only the formulas; justifications are recovered by [`reconstruct`].
pub fn encode_proof(p: &Proof, scheme: Scheme) -> GoedelCode {
    GoedelCode {
        value: pack(&symbols_of_proof(p), scheme),
        kind: CodeKind::Proof,
        scheme,
    }
}

pub fn decode_proof_formulas(g: &GoedelCode) -> Result<Vec<Formula>, GoedelError> {
    expect_kind(g, CodeKind::Proof)?;
    formulas_from_symbols(&unpack(&g.value, g.scheme)?)
}

/// Decode and reconstruct justifications. Fails if a line has no justification.
pub fn decode_proof(g: &GoedelCode) -> Result<Proof, GoedelError> {
    let formulas = decode_proof_formulas(g)?;
    reconstruct(&formulas).map_err(|line| malformed(0, format!("line {line} has no justification")))
}

fn expect_kind(g: &GoedelCode, expected: CodeKind) -> Result<(), GoedelError> {
    if g.kind == expected {
        Ok(())
    } else {
        Err(GoedelError::WrongKind {
            expected,
            found: g.kind,
        })
    }
}

/// Find a justification for every line: an axiom schema, modus ponens from
/// two earlier lines, or generalisation of an earlier line. `Err` carries the
/// 1-based index of the first line with none.
pub fn reconstruct(formulas: &[Formula]) -> Result<Proof, usize> {
    let mut first: HashMap<&Formula, usize> = HashMap::new();
    let mut by_consequent: HashMap<&Formula, Vec<usize>> = HashMap::new();
    let mut lines = Vec::with_capacity(formulas.len());
    for (k, f) in formulas.iter().enumerate() {
        let idx = k + 1;
        let just = axiom_justification(f)
            .or_else(|| {
                by_consequent.get(f).and_then(|imps| {
                    imps.iter().find_map(|&j| match formulas[j - 1].node() {
                        FormulaNode::Implies(a, _) => first.get(a).map(|&i| Justification::ModusPonens {
                            antecedent: i,
                            implication: j,
                        }),
                        _ => None,
                    })
                })
            })
            .or_else(|| match f.node() {
                FormulaNode::ForAll(v, body) => first.get(body).map(|&i| Justification::Generalisation {
                    premise: i,
                    var: v.clone(),
                }),
                _ => None,
            })
            .ok_or(idx)?;
        lines.push(ProofLine {
            formula: f.clone(),
            justification: just,
        });
        first.entry(f).or_insert(idx);
        if let FormulaNode::Implies(_, b) = f.node() {
            by_consequent.entry(b).or_default().push(idx);
        }
    }
    Ok(Proof::new(lines))
}

/// `x` codes a formula sequence that is a proof, and its last formula is coded by `y`.
pub fn proof_relation_b(x: &GoedelCode, y: &GoedelCode) -> bool {
    let (Ok(formulas), Ok(target)) = (decode_proof_formulas(x), decode_formula(y)) else {
        return false;
    };
    if formulas.last() != Some(&target) {
        return false;
    }
    match reconstruct(&formulas) {
        Ok(p) => check_proof(&p).accepted(),
        Err(_) => false,
    }
}
