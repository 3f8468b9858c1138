//! Goedel's beta function, finite-sequence encoding through factorial moduli
//! and the Chinese remainder theorem, and the formula `Bt` representing beta.

use crate::syntax::{Formula, Term};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default bound on the bit length of `c` accepted by [`encode_sequence`].
pub const DEFAULT_MAX_C_BITS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BetaError {
    #[error("cannot encode an empty sequence")]
    EmptySequence,
    #[error("c = {j}! needs more than {limit} bits; raise the limit to encode this sequence")]
    ResourceLimit { j: u64, limit: u64 },
}

/// `b mod (1 + (i + 1) * c)`.
pub fn beta_eval(b: &BigUint, c: &BigUint, i: &BigUint) -> BigUint {
    b % modulus(c, i)
}

/// `1 + (i + 1) * c`.
pub fn modulus(c: &BigUint, i: &BigUint) -> BigUint {
    BigUint::one() + (i + 1u32) * c
}

/// `d_0, ..., d_k` with `d_i = 1 + (i + 1) * c`.
pub fn moduli(c: &BigUint, k: u64) -> Vec<BigUint> {
    (0..=k).map(|i| modulus(c, &BigUint::from(i))).collect()
}

/// Numbers `(b, c)` with `beta(b, c, i) = f(i)` for `0 <= i <= k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaPair {
    #[serde(with = "crate::decimal")]
    pub b: BigUint,
    #[serde(with = "crate::decimal")]
    pub c: BigUint,
    /// Last encoded index.
    #[serde(with = "crate::decimal")]
    pub k: u64,
    /// `c = j!`.
    #[serde(with = "crate::decimal")]
    pub j: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodeOptions {
    /// `j` is at least this large (in addition to `k` and every value).
    pub min_j: u64,
    pub max_c_bits: u64,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        EncodeOptions {
            min_j: 0,
            max_c_bits: DEFAULT_MAX_C_BITS,
        }
    }
}

/// Encode `f(0..=k)` with `j = max(k, f(0), ..., f(k))`, `c = j!` and `b` the
/// least solution of the congruences `b = f(i) mod d_i`.
pub fn encode_sequence(f: &[u64]) -> Result<BetaPair, BetaError> {
    encode_sequence_with(f, EncodeOptions::default())
}

pub fn encode_sequence_with(f: &[u64], opts: EncodeOptions) -> Result<BetaPair, BetaError> {
    if f.is_empty() {
        return Err(BetaError::EmptySequence);
    }
    let k = (f.len() - 1) as u64;
    let j = f.iter().copied().chain([k, opts.min_j]).max().unwrap_or(0);
    let c = factorial_bounded(j, opts.max_c_bits).ok_or(BetaError::ResourceLimit {
        j,
        limit: opts.max_c_bits,
    })?;
    let ms = moduli(&c, k);
    let residues: Vec<BigUint> = f.iter().map(|&v| BigUint::from(v)).collect();
    let b = crt(&residues, &ms);
    Ok(BetaPair { b, c, k, j })
}

impl BetaPair {
    pub fn decode(&self) -> Vec<BigUint> {
        (0..=self.k)
            .map(|i| beta_eval(&self.b, &self.c, &BigUint::from(i)))
            .collect()
    }
}

fn factorial_bounded(j: u64, max_bits: u64) -> Option<BigUint> {
    let mut acc = BigUint::one();
    for n in 2..=j {
        acc *= n;
        if acc.bits() > max_bits {
            return None;
        }
    }
    Some(acc)
}

/// Least non-negative `x` with `x = residues[i] mod moduli[i]`; moduli pairwise coprime.
pub fn crt(residues: &[BigUint], moduli: &[BigUint]) -> BigUint {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (a, d) in residues.iter().zip(moduli) {
        let a = BigInt::from_biguint(Sign::Plus, a.clone());
        let d = BigInt::from_biguint(Sign::Plus, d.clone());
        let eg = m.mod_floor(&d).extended_gcd(&d);
        debug_assert!(eg.gcd.is_one(), "moduli must be pairwise coprime");
        let inv = eg.x.mod_floor(&d);
        let t = ((a - &x) * inv).mod_floor(&d);
        x += &m * t;
        m *= d;
    }
    x.to_biguint().expect("CRT solution is non-negative")
}

/// The representing formula with free variables `x1..x4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BtSchema {
    pub formula: Formula,
}

/// `1 + (x3 + 1) * x2` over arbitrary terms.
pub fn modulus_term(c: Term, i: Term) -> Term {
    let one = || Term::succ(Term::zero());
    Term::add(one(), Term::mul(Term::add(i, one()), c))
}

/// `exists w. x1 = (1 + (x3 + 1) * x2) * w + x4 & x4 < 1 + (x3 + 1) * x2`.
pub fn bt_formula() -> BtSchema {
    let [x1, x2, x3, x4] = ["x1", "x2", "x3", "x4"].map(Term::var);
    let m = modulus_term(x2, x3);
    let body = Formula::and(
        Formula::eq(x1, Term::add(Term::mul(m.clone(), Term::var("w")), x4.clone())),
        Formula::lt(x4, m),
    );
    BtSchema {
        formula: Formula::exists("w", body),
    }
}

/// `Bt(b, c, i, d)` with numerals substituted for `x1..x4`.
pub fn instantiate_bt(b: &BigUint, c: &BigUint, i: &BigUint, d: &BigUint) -> Formula {
    let schema = bt_formula().formula;
    [("x1", b), ("x2", c), ("x3", i), ("x4", d)]
        .into_iter()
        .fold(schema, |f, (v, n)| {
            f.substitute(v, &Term::numeral(n.clone()))
                .expect("numerals are closed")
        })
}
