use pa_core::beta::encode_sequence;
use std::process::{Command, Output};

fn pa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pa")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn encode_seq_matches_library() {
    let o = pa(&["encode-seq", "3", "1", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let pair = encode_sequence(&[3, 1, 4]).unwrap();
    assert_eq!(stdout(&o).trim(), serde_json::to_string(&pair).unwrap());
}

#[test]
fn prove_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("fact.pf");
    let path = file.to_str().unwrap();
    let o = pa(&["prove-fact", "mul", "2", "3", "--out", path]);
    assert_eq!(o.status.code(), Some(0));
    let o = pa(&["check-proof", path]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "accepted: S(S(0)) * S(S(S(0))) = S(S(S(S(S(S(0))))))");

    let text = std::fs::read_to_string(&file).unwrap();
    let broken = text.replacen("PA8", "PA7", 1).replacen("PA5", "PA6", 1);
    std::fs::write(&file, broken).unwrap();
    let o = pa(&["check-proof", path]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(pa(&["prove-fact", "neq", "3", "3"]).status.code(), Some(1));
    assert_eq!(pa(&["parse", "forall . x"]).status.code(), Some(1));
    assert_eq!(pa(&["no-such-verb"]).status.code(), Some(2));
    assert_eq!(pa(&["check-proof", "/no/such/file.pf"]).status.code(), Some(2));
    assert_eq!(pa(&["certify", "--stream", "pi:3", "--k", "2"]).status.code(), Some(2));
}

#[test]
fn eval_and_parse() {
    let o = pa(&["eval", "x1 + 0 = x1"]);
    assert_eq!(stdout(&o).trim(), "verified up to cutoff 25");
    let o = pa(&["eval", "x1 + 0 = x1", "--mode", "computable"]);
    assert_eq!(stdout(&o).trim(), "true");
    let o = pa(&["eval", "S(0) = 0"]);
    assert_eq!(stdout(&o).trim(), "false");
    let o = pa(&["parse", "S^3(0) = x"]);
    assert_eq!(stdout(&o).trim(), "S(S(S(0))) = x");
}

#[test]
fn goedel_roundtrip() {
    let o = pa(&["goedelize", "0 = 0"]);
    assert_eq!(stdout(&o).trim(), "960");
    let o = pa(&["goedelize", "--decode", "960"]);
    assert_eq!(stdout(&o).trim(), "0 = 0");
    let o = pa(&["goedelize", "--scheme", "positional", "~(0 = S(0))"]);
    let code = stdout(&o);
    let o = pa(&["goedelize", "--scheme", "positional", "--decode", code.trim()]);
    assert_eq!(stdout(&o).trim(), "~(0 = S(0))");
}

#[test]
fn certify_then_audit() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cert.json");
    let path = file.to_str().unwrap();
    let o = pa(&["certify", "--stream", "rational:1/7", "--k", "6", "--out", path]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = pa(&["audit", path]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "audit passed: 6 positions of rational:1/7");

    let text = std::fs::read_to_string(&file).unwrap();
    let tampered = text.replacen("\"digit\": 4", "\"digit\": 5", 1);
    assert_ne!(tampered, text);
    std::fs::write(&file, tampered).unwrap();
    let o = pa(&["audit", path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 2"));
}
