//! Serde adapter writing naturals as decimal strings.

use serde::{de::Error as _, Deserialize, Deserializer, Serializer};
use std::fmt::Display;
use std::str::FromStr;

pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
where
    T: FromStr,
    T::Err: Display,
    D: Deserializer<'de>,
{
    let s = String::deserialize(d)?;
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
        return Err(D::Error::custom(format!("`{s}` is not a canonical decimal natural")));
    }
    s.parse().map_err(D::Error::custom)
}

/// The same format for large naturals, parsed in subquadratic time.
pub mod big {
    use num_bigint::BigUint;
    use serde::{de::Error as _, Deserialize, Deserializer};
    use std::collections::HashMap;

    pub use super::serialize;

    const CHUNK: usize = 512;

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
            return Err(D::Error::custom(format!("`{s}` is not a canonical decimal natural")));
        }
        Ok(parse(s.as_bytes(), &mut HashMap::new()))
    }

    /// Split into high and low halves, `hi * 10^|lo| + lo`.
    fn parse(s: &[u8], pow: &mut HashMap<usize, BigUint>) -> BigUint {
        if s.len() <= CHUNK {
            return BigUint::parse_bytes(s, 10).expect("ascii digits");
        }
        let mut low = CHUNK;
        while low * 2 < s.len() {
            low *= 2;
        }
        let (hi, lo) = s.split_at(s.len() - low);
        let hi = parse(hi, pow);
        let lo = parse(lo, pow);
        hi * ten_pow(low, pow) + lo
    }

    fn ten_pow(n: usize, pow: &mut HashMap<usize, BigUint>) -> BigUint {
        if let Some(p) = pow.get(&n) {
            return p.clone();
        }
        let p = if n <= CHUNK {
            BigUint::from(10u32).pow(n as u32)
        } else {
            let h = ten_pow(n / 2, pow);
            &h * &h
        };
        pow.insert(n, p.clone());
        p
    }

    #[cfg(test)]
    mod tests {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn agrees_with_schoolbook(digits in "[1-9][0-9]{0,3000}") {
                let fast = parse(digits.as_bytes(), &mut HashMap::new());
                prop_assert_eq!(fast, BigUint::parse_bytes(digits.as_bytes(), 10).unwrap());
            }
        }
    }
}
