//! Prefix certificates: each digit `r(n)` of a stream is tied to a kernel
//! checked proof of `Bt(b, c, n - 1, r(n))` for one shared pair `(b, c)`.
//!
//! A certificate only speaks about the finite prefix it records.

mod stream;

pub use stream::{DigitStream, Source, StreamError};

use crate::beta::{beta_eval, encode_sequence_with, instantiate_bt, BetaError, BetaPair, EncodeOptions, DEFAULT_MAX_C_BITS};
use crate::goedel::{encode_formula, encode_proof, proof_relation_b, CodeKind, GoedelCode, Scheme};
use crate::kernel::{check_proof, parse_proof, render_proof, SCHEMA_SET_TAG};
use crate::prover::{prove_bt_instance, ProverError};
use crate::syntax::parse;
use crate::tarski::{eval_closure, EvalVerdict, Mode, DEFAULT_CUTOFF};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

pub const CERTIFICATE_FORMAT: &str = "pa-prefix-certificate/v1";

/// Digit `r(n)` is stored at beta index `n - INDEX_OFFSET`.
pub const INDEX_OFFSET: u64 = 1;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("prefix length must be at least 1")]
    EmptyPrefix,
    #[error("new prefix length {new} does not exceed {old}")]
    NotLonger { old: u64, new: u64 },
    #[error("stream {stream} no longer yields the recorded digits")]
    StreamChanged { stream: String },
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error(transparent)]
    Beta(#[from] BetaError),
    #[error("position {n}: {source}")]
    Prover {
        n: u64,
        #[source]
        source: ProverError,
    },
    #[error("position {n}: kernel rejects line {line}: {reason}")]
    Rejected { n: u64, line: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Position {
    pub n: u64,
    pub beta_index: u64,
    pub digit: u8,
    pub conclusion: String,
    pub proof: String,
    #[serde(with = "crate::decimal::big")]
    pub proof_code: BigUint,
    #[serde(with = "crate::decimal::big")]
    pub conclusion_code: BigUint,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub format: String,
    pub kernel_schemata: String,
    pub scheme: Scheme,
    pub scheme_tag: String,
    pub index_offset: u64,
    pub stream: String,
    pub k: u64,
    pub digits: Vec<u8>,
    pub beta: BetaPair,
    pub positions: Vec<Position>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(src: &str) -> Result<Certificate, serde_json::Error> {
        serde_json::from_str(src)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    pub scheme: Scheme,
    pub max_c_bits: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            scheme: Scheme::Positional,
            max_c_bits: DEFAULT_MAX_C_BITS,
        }
    }
}

pub fn certify_prefix(s: &DigitStream, k: u64) -> Result<Certificate, LabError> {
    certify_prefix_with(s, k, CertifyOptions::default())
}

pub fn certify_prefix_with(s: &DigitStream, k: u64, opts: CertifyOptions) -> Result<Certificate, LabError> {
    if k == 0 {
        return Err(LabError::EmptyPrefix);
    }
    let digits = s.prefix(k)?;
    certify_digits(s.id(), digits, opts)
}

fn certify_digits(stream: String, digits: Vec<u8>, opts: CertifyOptions) -> Result<Certificate, LabError> {
    let k = digits.len() as u64;
    let seq: Vec<u64> = digits.iter().map(|&d| d.into()).collect();
    let beta = encode_sequence_with(
        &seq,
        EncodeOptions {
            min_j: k,
            max_c_bits: opts.max_c_bits,
        },
    )?;
    let positions = digits
        .par_iter()
        .enumerate()
        .map(|(idx, &digit)| certify_position(&beta, idx as u64 + INDEX_OFFSET, digit, opts.scheme))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Certificate {
        format: CERTIFICATE_FORMAT.into(),
        kernel_schemata: SCHEMA_SET_TAG.into(),
        scheme: opts.scheme,
        scheme_tag: opts.scheme.tag().into(),
        index_offset: INDEX_OFFSET,
        stream,
        k,
        digits,
        beta,
        positions,
    })
}

fn certify_position(beta: &BetaPair, n: u64, digit: u8, scheme: Scheme) -> Result<Position, LabError> {
    let i = n - INDEX_OFFSET;
    let proof = prove_bt_instance(&beta.b, &beta.c, &BigUint::from(i), &BigUint::from(digit))
        .map_err(|source| LabError::Prover { n, source })?;
    let report = check_proof(&proof);
    if let Some((line, reason)) = report.first_failure {
        return Err(LabError::Rejected {
            n,
            line,
            reason: reason.to_string(),
        });
    }
    let conclusion = proof.conclusion().expect("nonempty proof").clone();
    Ok(Position {
        n,
        beta_index: i,
        digit,
        conclusion: conclusion.to_string(),
        proof: render_proof(&proof),
        proof_code: encode_proof(&proof, scheme).value,
        conclusion_code: encode_formula(&conclusion, scheme).value,
        verdict: report.verdict.to_string(),
    })
}

/// Recertify a longer prefix of the same stream; `(b, c)` is recomputed.
pub fn extend_certificate(cert: &Certificate, k: u64) -> Result<Certificate, LabError> {
    if k <= cert.k {
        return Err(LabError::NotLonger { old: cert.k, new: k });
    }
    let s: DigitStream = cert.stream.parse()?;
    let digits = s.prefix(k)?;
    if digits[..cert.digits.len()] != cert.digits[..] {
        return Err(LabError::StreamChanged {
            stream: cert.stream.clone(),
        });
    }
    certify_digits(
        cert.stream.clone(),
        digits,
        CertifyOptions {
            scheme: cert.scheme,
            ..CertifyOptions::default()
        },
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditProblem {
    Header(String),
    BetaMismatch { n: u64, digit: u8, actual: BigUint },
    Conclusion { n: u64, reason: String },
    ProofUnreadable { n: u64, reason: String },
    KernelRejected { n: u64, line: usize, reason: String },
    CodeMismatch { n: u64, which: &'static str },
    RelationFails { n: u64 },
    NotTrue { n: u64, verdict: String },
}

impl fmt::Display for AuditProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuditProblem::Header(s) => write!(f, "header: {s}"),
            AuditProblem::BetaMismatch { n, digit, actual } => {
                write!(f, "position {n}: beta mismatch, digit {digit} but beta gives {actual}")
            }
            AuditProblem::Conclusion { n, reason } => write!(f, "position {n}: conclusion {reason}"),
            AuditProblem::ProofUnreadable { n, reason } => write!(f, "position {n}: proof unreadable: {reason}"),
            AuditProblem::KernelRejected { n, line, reason } => {
                write!(f, "position {n}: kernel rejection at line {line}: {reason}")
            }
            AuditProblem::CodeMismatch { n, which } => write!(f, "position {n}: {which} code does not match"),
            AuditProblem::RelationFails { n } => write!(f, "position {n}: proof relation B fails"),
            AuditProblem::NotTrue { n, verdict } => write!(f, "position {n}: conclusion evaluates to {verdict}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AuditReport {
    pub problems: Vec<AuditProblem>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("audit passed");
        }
        for p in &self.problems {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

pub fn audit_certificate(cert: &Certificate) -> bool {
    audit_report(cert).passed()
}

/// Every certificate invariant, rechecked from the recorded data alone.
pub fn audit_report(cert: &Certificate) -> AuditReport {
    let mut problems = Vec::new();
    let mut header = |ok: bool, what: String| {
        if !ok {
            problems.push(AuditProblem::Header(what));
        }
    };
    header(cert.format == CERTIFICATE_FORMAT, format!("unknown format `{}`", cert.format));
    header(
        cert.kernel_schemata == SCHEMA_SET_TAG,
        format!("unknown schema set `{}`", cert.kernel_schemata),
    );
    header(
        cert.scheme_tag == cert.scheme.tag(),
        format!("scheme tag `{}` does not belong to {}", cert.scheme_tag, cert.scheme),
    );
    header(cert.index_offset == INDEX_OFFSET, format!("index offset {}", cert.index_offset));
    header(cert.k >= 1, "empty prefix".into());
    header(
        cert.digits.len() as u64 == cert.k && cert.positions.len() as u64 == cert.k,
        format!(
            "k = {} with {} digits and {} positions",
            cert.k,
            cert.digits.len(),
            cert.positions.len()
        ),
    );
    let per_position: Vec<Vec<AuditProblem>> = cert
        .positions
        .par_iter()
        .enumerate()
        .map(|(idx, pos)| audit_position(cert, idx, pos))
        .collect();
    problems.extend(per_position.into_iter().flatten());
    AuditReport { problems }
}

fn audit_position(cert: &Certificate, idx: usize, pos: &Position) -> Vec<AuditProblem> {
    let n = idx as u64 + INDEX_OFFSET;
    let mut out = Vec::new();
    if pos.n != n || pos.beta_index != idx as u64 {
        out.push(AuditProblem::Header(format!(
            "position {} recorded as n = {}, beta index {}",
            n, pos.n, pos.beta_index
        )));
        return out;
    }
    let digit = cert.digits.get(idx).copied().unwrap_or(pos.digit);
    if digit != pos.digit {
        out.push(AuditProblem::Header(format!(
            "position {n} records digit {} but the prefix has {digit}",
            pos.digit
        )));
    }
    let (b, c, i, d) = (&cert.beta.b, &cert.beta.c, BigUint::from(pos.beta_index), BigUint::from(digit));
    let actual = beta_eval(b, c, &i);
    if actual != d {
        out.push(AuditProblem::BetaMismatch { n, digit, actual });
    }
    let expected = instantiate_bt(b, c, &i, &d);
    match parse(&pos.conclusion) {
        Ok(f) if f == expected => {}
        Ok(_) => out.push(AuditProblem::Conclusion {
            n,
            reason: "is not the Bt instance for this position".into(),
        }),
        Err(e) => out.push(AuditProblem::Conclusion {
            n,
            reason: format!("does not parse: {e}"),
        }),
    }
    match eval_closure(&expected, DEFAULT_CUTOFF, Mode::Verifiable) {
        EvalVerdict::True => {}
        v => out.push(AuditProblem::NotTrue { n, verdict: v.to_string() }),
    }
    if pos.verdict != "accepted" {
        out.push(AuditProblem::Header(format!("position {n} records verdict `{}`", pos.verdict)));
    }
    let proof = match parse_proof(&pos.proof) {
        Ok(p) => p,
        Err(e) => {
            out.push(AuditProblem::ProofUnreadable {
                n,
                reason: e.to_string(),
            });
            return out;
        }
    };
    let report = check_proof(&proof);
    if let Some((line, reason)) = report.first_failure {
        out.push(AuditProblem::KernelRejected {
            n,
            line,
            reason: reason.to_string(),
        });
    } else if report.conclusion.as_ref() != Some(&expected) {
        out.push(AuditProblem::Conclusion {
            n,
            reason: "is not what the embedded proof proves".into(),
        });
    }
    if encode_proof(&proof, cert.scheme).value != pos.proof_code {
        out.push(AuditProblem::CodeMismatch { n, which: "proof" });
    }
    if encode_formula(&expected, cert.scheme).value != pos.conclusion_code {
        out.push(AuditProblem::CodeMismatch { n, which: "conclusion" });
    }
    let x = GoedelCode {
        value: pos.proof_code.clone(),
        kind: CodeKind::Proof,
        scheme: cert.scheme,
    };
    let y = GoedelCode {
        value: pos.conclusion_code.clone(),
        kind: CodeKind::Formula,
        scheme: cert.scheme,
    };
    if !proof_relation_b(&x, &y) {
        out.push(AuditProblem::RelationFails { n });
    }
    out
}
