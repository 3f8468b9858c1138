use num_bigint::BigUint;
use pa_core::beta::beta_eval;
use pa_core::kernel::{parse_proof, render_proof};
use pa_core::lab::{audit_certificate, audit_report, certify_prefix, extend_certificate, AuditProblem, Certificate, DigitStream, LabError};
use pa_core::syntax::parse;
use pa_core::tarski::{eval_closure, EvalVerdict, Mode, DEFAULT_CUTOFF};
use std::sync::OnceLock;

fn seventh(k: u64) -> Certificate {
    let s: DigitStream = "rational:1/7".parse().unwrap();
    certify_prefix(&s, k).unwrap()
}

fn seventh6() -> &'static Certificate {
    static CERT: OnceLock<Certificate> = OnceLock::new();
    CERT.get_or_init(|| seventh(6))
}

/// Digits of 1/7 by schoolbook long division.
fn long_division(p: u64, q: u64, k: usize) -> Vec<u8> {
    let mut r = p % q;
    let mut out = Vec::new();
    for _ in 0..k {
        r *= 10;
        out.push((r / q) as u8);
        r %= q;
    }
    out
}

#[test]
fn seventh_prefix_certifies() {
    let cert = seventh6();
    assert_eq!(cert.digits, long_division(1, 7, 6));
    assert_eq!(cert.digits, [1, 4, 2, 8, 5, 7]);
    assert_eq!(cert.beta.c, BigUint::from(40320u32));
    for pos in &cert.positions {
        assert_eq!(pos.verdict, "accepted");
        let i = BigUint::from(pos.beta_index);
        assert_eq!(beta_eval(&cert.beta.b, &cert.beta.c, &i), BigUint::from(pos.digit));
        let f = parse(&pos.conclusion).unwrap();
        assert_eq!(eval_closure(&f, DEFAULT_CUTOFF, Mode::Verifiable), EvalVerdict::True);
    }
    assert!(audit_certificate(cert));
}

#[test]
fn altered_digit_is_caught() {
    let mut cert = seventh6().clone();
    cert.digits[2] = 3;
    cert.positions[2].digit = 3;
    let report = audit_report(&cert);
    assert!(!report.passed());
    assert!(report
        .problems
        .iter()
        .any(|p| matches!(p, AuditProblem::BetaMismatch { n: 3, digit: 3, .. })));
}

#[test]
fn deleted_proof_line_is_caught() {
    let mut cert = seventh6().clone();
    let mut proof = parse_proof(&cert.positions[0].proof).unwrap();
    proof.lines.remove(0);
    cert.positions[0].proof = render_proof(&proof);
    let report = audit_report(&cert);
    assert!(report
        .problems
        .iter()
        .any(|p| matches!(p, AuditProblem::KernelRejected { n: 1, .. })));
    assert!(!audit_certificate(&cert));
}

#[test]
fn unrenumbered_deletion_is_caught() {
    let mut cert = seventh6().clone();
    let text = &cert.positions[1].proof;
    let kept: Vec<&str> = text.lines().enumerate().filter(|(i, _)| *i != 3).map(|(_, l)| l).collect();
    cert.positions[1].proof = kept.join("\n");
    assert!(!audit_certificate(&cert));
}

#[test]
fn deterministic_bytes() {
    let a = seventh(3).to_json();
    let b = seventh(3).to_json();
    assert_eq!(a, b);
    assert_eq!(Certificate::from_json(&a).unwrap().to_json(), a);
}

#[test]
fn extend_recomputes_pair() {
    let short = seventh(3);
    assert!(matches!(extend_certificate(&short, 3), Err(LabError::NotLonger { .. })));
    let long = extend_certificate(&short, 6).unwrap();
    assert_eq!(long.k, 6);
    assert_eq!(&long.digits[..3], &short.digits[..]);
    assert_ne!((&long.beta.b, &long.beta.c), (&short.beta.b, &short.beta.c));
    assert!(audit_certificate(&long));
    assert_eq!(long.to_json(), seventh6().to_json());
}
