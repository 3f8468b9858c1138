use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("bad stream spec `{spec}`: {reason}")]
    BadSpec { spec: String, reason: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: `{found}` is not a decimal digit")]
    BadDigit { path: PathBuf, found: char },
    #[error("stream has {available} digits, {requested} requested")]
    Exhausted { requested: u64, available: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Constant(u8),
    Periodic(Vec<u8>),
    /// Fractional digits of `p / q`.
    Rational { p: BigUint, q: BigUint },
    Random(u64),
    File(PathBuf),
}

/// Digits `r(1), r(2), ...` named by a stable id such as `rational:1/7`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitStream {
    source: Source,
}

impl DigitStream {
    pub fn new(source: Source) -> DigitStream {
        DigitStream { source }
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn id(&self) -> String {
        match &self.source {
            Source::Constant(d) => format!("constant:{d}"),
            Source::Periodic(ds) => format!("periodic:{}", digits_str(ds)),
            Source::Rational { p, q } => format!("rational:{p}/{q}"),
            Source::Random(seed) => format!("random:{seed}"),
            Source::File(path) => format!("file:{}", path.display()),
        }
    }

    /// `r(1), ..., r(k)`.
    pub fn prefix(&self, k: u64) -> Result<Vec<u8>, StreamError> {
        let n = k as usize;
        Ok(match &self.source {
            Source::Constant(d) => vec![*d; n],
            Source::Periodic(ds) => ds.iter().copied().cycle().take(n).collect(),
            Source::Rational { p, q } => {
                let mut rem = p % q;
                (0..n)
                    .map(|_| {
                        rem *= 10u32;
                        let d = (&rem / q).to_u8().expect("digit below 10");
                        rem %= q;
                        d
                    })
                    .collect()
            }
            Source::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..n).map(|_| rng.gen_range(0..10u8)).collect()
            }
            Source::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| StreamError::Io {
                    path: path.clone(),
                    source,
                })?;
                let mut out = Vec::with_capacity(n);
                for ch in text.chars().filter(|c| !c.is_whitespace()) {
                    if out.len() == n {
                        break;
                    }
                    let d = ch.to_digit(10).ok_or_else(|| StreamError::BadDigit {
                        path: path.clone(),
                        found: ch,
                    })?;
                    out.push(d as u8);
                }
                if out.len() < n {
                    return Err(StreamError::Exhausted {
                        requested: k,
                        available: out.len() as u64,
                    });
                }
                out
            }
        })
    }
}

fn digits_str(ds: &[u8]) -> String {
    ds.iter().map(|d| char::from(b'0' + d)).collect()
}

fn parse_digits(s: &str) -> Option<Vec<u8>> {
    s.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect()
}

impl fmt::Display for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for DigitStream {
    type Err = StreamError;

    fn from_str(spec: &str) -> Result<DigitStream, StreamError> {
        let bad = |reason: &str| StreamError::BadSpec {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let (kind, arg) = spec
            .split_once(':')
            .ok_or_else(|| bad("expected KIND:ARG"))?;
        let source = match kind {
            "constant" => match parse_digits(arg).as_deref() {
                Some([d]) => Source::Constant(*d),
                _ => return Err(bad("constant takes one digit")),
            },
            "periodic" => match parse_digits(arg) {
                Some(ds) if !ds.is_empty() => Source::Periodic(ds),
                _ => return Err(bad("periodic takes a nonempty digit pattern")),
            },
            "rational" => {
                let (p, q) = arg.split_once('/').ok_or_else(|| bad("expected P/Q"))?;
                let p: BigUint = p.parse().map_err(|_| bad("numerator is not a natural"))?;
                let q: BigUint = q.parse().map_err(|_| bad("denominator is not a natural"))?;
                if q.is_zero() {
                    return Err(bad("denominator is zero"));
                }
                Source::Rational { p, q }
            }
            "random" => Source::Random(arg.parse().map_err(|_| bad("seed is not a u64"))?),
            "file" if !arg.is_empty() => Source::File(PathBuf::from(arg)),
            _ => return Err(bad("kind is one of constant, periodic, rational, random, file")),
        };
        Ok(DigitStream::new(source))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stream(s: &str) -> DigitStream {
        s.parse().unwrap()
    }

    #[test]
    fn builtin_prefixes() {
        assert_eq!(stream("rational:1/7").prefix(8).unwrap(), [1, 4, 2, 8, 5, 7, 1, 4]);
        assert_eq!(stream("rational:22/7").prefix(3).unwrap(), [1, 4, 2]);
        assert_eq!(stream("rational:1/4").prefix(4).unwrap(), [2, 5, 0, 0]);
        assert_eq!(stream("constant:0").prefix(3).unwrap(), [0, 0, 0]);
        assert_eq!(stream("periodic:31").prefix(5).unwrap(), [3, 1, 3, 1, 3]);
        assert!(stream("random:9").prefix(50).unwrap().iter().all(|&d| d < 10));
    }

    #[test]
    fn deterministic_and_prefix_closed() {
        let s = stream("random:42");
        let long = s.prefix(40).unwrap();
        assert_eq!(s.prefix(40).unwrap(), long);
        assert_eq!(s.prefix(7).unwrap(), long[..7]);
    }

    #[test]
    fn ids_roundtrip() {
        for id in ["constant:3", "periodic:142857", "rational:1/7", "random:5", "file:digits.txt"] {
            assert_eq!(stream(id).id(), id);
        }
    }

    #[test]
    fn bad_specs() {
        for id in ["", "constant:12", "periodic:", "rational:1/0", "rational:x/2", "random:-1", "pi:3", "file:"] {
            assert!(id.parse::<DigitStream>().is_err(), "{id}");
        }
    }

    #[test]
    fn file_stream() {
        let dir = std::env::temp_dir().join(format!("pa-stream-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("digits.txt");
        std::fs::write(&path, "31 41\n59").unwrap();
        let s = DigitStream::new(Source::File(path.clone()));
        assert_eq!(s.prefix(6).unwrap(), [3, 1, 4, 1, 5, 9]);
        assert!(matches!(s.prefix(7), Err(StreamError::Exhausted { available: 6, .. })));
        std::fs::write(&path, "3x").unwrap();
        assert!(matches!(s.prefix(2), Err(StreamError::BadDigit { found: 'x', .. })));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
