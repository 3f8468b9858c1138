use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use pa_core::beta::{beta_eval, encode_sequence, instantiate_bt, modulus};
use pa_core::goedel::{
    decode_formula, decode_proof, decode_proof_formulas, encode_formula, encode_proof, pack, proof_relation_b,
    symbols_of_proof, CodeKind, GoedelCode, Scheme,
};
use pa_core::kernel::{check_proof, parse_proof, Justification, PaAxiom, Proof};
use pa_core::lab::{audit_report, certify_prefix, DigitStream};
use pa_core::prover::{prove_add_fact, prove_bt_instance, prove_mul_fact, prove_neq_fact, LemmaLibrary, LemmaTag};
use pa_core::syntax::{parse, Formula, Term};
use pa_core::tarski::{eval_closure, eval_qf, EvalVerdict, Mode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::ExitCode;
use std::time::{Duration, Instant};

const SEED: u64 = 0x5eed;
const CUTOFF: u64 = 25;

const BETA_SEQUENCES: usize = 500;
const BETA_MAX_LEN: usize = 10;
const BETA_MAX_VALUE: u64 = 100;
const BRUTE_FORCE_BOUND: u64 = 1_000_000;
const BETA_BUDGET: Duration = Duration::from_secs(10);

const COPRIME_MAX_J: u64 = 8;

const SWEEP_MAX: u64 = 10;
const SWEEP_BUDGET: Duration = Duration::from_secs(60);

const MIN_MUTATIONS: usize = 100;

const AXIOM_BUDGET: Duration = Duration::from_secs(30);

const RANDOM_FORMULAS: usize = 1000;
const FORMULA_DEPTH: usize = 5;
const GOEDEL_PROOFS: usize = 100;
const BAD_PAIRS: usize = 100;

const CERT_K: u64 = 6;
const CERT_BUDGET: Duration = Duration::from_secs(120);

const BT_SAMPLES: usize = 500;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn crt_brute(residues: &[u64], moduli: &[u64]) -> Option<u64> {
    let product: u64 = moduli.iter().product();
    (0..product).find(|b| residues.iter().zip(moduli).all(|(r, m)| b % m == *r))
}

fn beta_roundtrip(rng: &mut ChaCha8Rng) -> Outcome {
    let start = Instant::now();
    let (mut mismatches, mut brute_checked, mut brute_failed) = (0, 0, 0);
    for _ in 0..BETA_SEQUENCES {
        let len = rng.gen_range(1..=BETA_MAX_LEN);
        // Small values keep some modulus products in brute-force range.
        let cap = if rng.gen_bool(0.5) { 3 } else { BETA_MAX_VALUE };
        let seq: Vec<u64> = (0..len).map(|_| rng.gen_range(0..=cap)).collect();
        let pair = encode_sequence(&seq).expect("encodable");
        for (i, &v) in seq.iter().enumerate() {
            if beta_eval(&pair.b, &pair.c, &big(i as u64)) != big(v) {
                mismatches += 1;
            }
        }
        let ms: Vec<BigUint> = (0..len as u64).map(|i| modulus(&pair.c, &big(i))).collect();
        let product: BigUint = ms.iter().product();
        if product < big(BRUTE_FORCE_BOUND) {
            brute_checked += 1;
            let ms: Vec<u64> = ms.iter().map(|m| m.to_u64().unwrap()).collect();
            if crt_brute(&seq, &ms).map(big) != Some(pair.b.clone()) {
                brute_failed += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && brute_failed == 0 && brute_checked > 0 && elapsed < BETA_BUDGET,
        format!(
            "{BETA_SEQUENCES} sequences, {mismatches} element mismatches, {brute_failed}/{brute_checked} brute-force CRT disagreements, {elapsed:.2?}"
        ),
    )
}

fn moduli_coprime() -> Outcome {
    let (mut pairs, mut violations) = (0, 0);
    let mut fact = 1u64;
    for j in 0..=COPRIME_MAX_J {
        if j > 0 {
            fact *= j;
        }
        for i in 0..=j {
            for i2 in i + 1..=j {
                pairs += 1;
                let a = 1 + (i + 1) * fact;
                let b = 1 + (i2 + 1) * fact;
                if a.gcd(&b) != 1 {
                    violations += 1;
                }
            }
        }
    }
    outcome(violations == 0, format!("{pairs} pairs, {violations} violations"))
}

fn sweep() -> Outcome {
    let start = Instant::now();
    let (mut proofs, mut rejected) = (0, 0);
    let mut count = |p: &Proof, expected: Formula| {
        proofs += 1;
        if !check_proof(p).accepted() || p.conclusion() != Some(&expected) {
            rejected += 1;
        }
    };
    for m in 0..=SWEEP_MAX {
        for n in 0..=SWEEP_MAX {
            let (tm, tn) = (Term::numeral(m), Term::numeral(n));
            count(&prove_add_fact(m, n), Formula::eq(Term::add(tm.clone(), tn.clone()), Term::numeral(m + n)));
            count(&prove_mul_fact(m, n), Formula::eq(Term::mul(tm.clone(), tn.clone()), Term::numeral(m * n)));
            if m != n {
                count(&prove_neq_fact(m, n).expect("distinct"), Formula::not(Formula::eq(tm, tn)));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        rejected == 0 && elapsed < SWEEP_BUDGET,
        format!("{proofs} proofs, {rejected} rejected, {elapsed:.2?}"),
    )
}

const SAMPLE_PROOF: &str = "\
1 | x1 + 0 = x1 | PA5
2 | forall x1. x1 + 0 = x1 | GEN 1 x1
3 | (forall x1. x1 + 0 = x1) -> 0 + 0 = 0 | L4
4 | 0 + 0 = 0 | MP 2 3
";

fn corpus() -> Vec<Proof> {
    let mut out = vec![parse_proof(SAMPLE_PROOF).unwrap()];
    for (m, n) in [(0u64, 0u64), (2, 2), (3, 1), (1, 3)] {
        out.push(prove_add_fact(m, n));
        out.push(prove_mul_fact(m, n));
        if m != n {
            out.push(prove_neq_fact(m, n).unwrap());
        }
    }
    out.push(prove_bt_instance(&big(13), &big(2), &big(1), &big(3)).unwrap());
    let lib = LemmaLibrary::new();
    out.extend(LemmaTag::ALL.iter().map(|&t| lib.template(t).clone()));
    out
}

fn negated(f: &Formula) -> Formula {
    Formula::not(f.clone())
}

/// Single-line corruptions, each of which breaks its own line.
fn mutations(p: &Proof, rng: &mut ChaCha8Rng) -> Vec<Proof> {
    let mut out = Vec::new();
    let i = rng.gen_range(0..p.len());
    let mut q = p.clone();
    q.lines[i].formula = negated(&q.lines[i].formula);
    out.push(q);

    let mps: Vec<usize> = (0..p.len())
        .filter(|&i| matches!(p.lines[i].justification, Justification::ModusPonens { .. }))
        .collect();
    if !mps.is_empty() {
        let i = mps[rng.gen_range(0..mps.len())];
        let mut q = p.clone();
        if let Justification::ModusPonens { antecedent, implication } = q.lines[i].justification {
            q.lines[i].justification = Justification::ModusPonens {
                antecedent: implication,
                implication: antecedent,
            };
        }
        out.push(q);
        let mut q = p.clone();
        if let Justification::ModusPonens { implication, .. } = q.lines[i].justification {
            q.lines[i].justification = Justification::ModusPonens {
                antecedent: i + 1,
                implication,
            };
        }
        out.push(q);
    }
    let pas: Vec<usize> = (0..p.len())
        .filter(|&i| matches!(p.lines[i].justification, Justification::Pa(_)))
        .collect();
    if !pas.is_empty() {
        let i = pas[rng.gen_range(0..pas.len())];
        let mut q = p.clone();
        if let Justification::Pa(a) = q.lines[i].justification {
            q.lines[i].justification = Justification::Pa(PaAxiom::new(a.index() % 8 + 1).unwrap());
        }
        out.push(q);
    }
    out
}

fn soundness(rng: &mut ChaCha8Rng) -> Outcome {
    let proofs = corpus();
    let (mut lines, mut counterexamples, mut undecided, mut not_accepted) = (0, 0, 0, 0);
    for p in &proofs {
        if !check_proof(p).accepted() {
            not_accepted += 1;
            continue;
        }
        for line in &p.lines {
            lines += 1;
            match eval_closure(&line.formula, CUTOFF, Mode::Verifiable) {
                EvalVerdict::False(_) => counterexamples += 1,
                EvalVerdict::Undecided(_) => undecided += 1,
                _ => {}
            }
        }
    }
    let (mut tried, mut survived) = (0, 0);
    while tried < MIN_MUTATIONS {
        for p in &proofs {
            for q in mutations(p, rng) {
                tried += 1;
                if check_proof(&q).accepted() {
                    survived += 1;
                }
            }
        }
    }
    outcome(
        not_accepted == 0 && counterexamples == 0 && survived == 0,
        format!(
            "{} proofs, {lines} lines, {counterexamples} counterexamples, {undecided} undecided; {survived}/{tried} mutants accepted",
            proofs.len()
        ),
    )
}

fn assignments(vars: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = (CUTOFF + 1).pow(vars as u32);
    (0..total).map(move |mut code| {
        (0..vars)
            .map(|_| {
                let v = code % (CUTOFF + 1);
                code /= CUTOFF + 1;
                v
            })
            .collect()
    })
}

fn axiom_truth() -> Outcome {
    let start = Instant::now();
    let (mut verified, mut counterexamples, mut instances) = (0, 0, 0u64);
    for ax in PaAxiom::all() {
        let f = ax.formula();
        if eval_closure(&f, CUTOFF, Mode::Verifiable) == EvalVerdict::VerifiedToCutoff(CUTOFF) {
            verified += 1;
        }
        let vars: Vec<_> = f.free_vars().into_iter().collect();
        assert!(vars.len() <= 3);
        for values in assignments(vars.len()) {
            let mut g = f.clone();
            for (v, n) in vars.iter().zip(&values) {
                g = g.substitute(v, &Term::numeral(*n)).unwrap();
            }
            instances += 1;
            if !eval_qf(&g).expect("closed and quantifier-free") {
                counterexamples += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        verified == 8 && counterexamples == 0 && elapsed < AXIOM_BUDGET,
        format!("{verified}/8 verified to cutoff {CUTOFF}, {counterexamples} counterexamples in {instances} instances, {elapsed:.2?}"),
    )
}

fn random_term(rng: &mut ChaCha8Rng, depth: usize) -> Term {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return match rng.gen_range(0..3) {
            0 => Term::zero(),
            1 => Term::numeral(rng.gen_range(1..40u32)),
            _ => Term::var(["x", "y", "x1", "v_2"][rng.gen_range(0..4)]),
        };
    }
    match rng.gen_range(0..3) {
        0 => Term::succ(random_term(rng, depth - 1)),
        1 => Term::add(random_term(rng, depth - 1), random_term(rng, depth - 1)),
        _ => Term::mul(random_term(rng, depth - 1), random_term(rng, depth - 1)),
    }
}

fn random_formula(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    if depth <= 1 || rng.gen_bool(0.2) {
        return Formula::eq(random_term(rng, 2), random_term(rng, 2));
    }
    match rng.gen_range(0..3) {
        0 => Formula::not(random_formula(rng, depth - 1)),
        1 => Formula::implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1)),
        _ => Formula::forall(["x", "y", "z"][rng.gen_range(0..3)], random_formula(rng, depth - 1)),
    }
}

fn goedel(rng: &mut ChaCha8Rng) -> Outcome {
    let mut formula_failures = 0;
    for _ in 0..RANDOM_FORMULAS {
        let f = random_formula(rng, FORMULA_DEPTH);
        assert!(f.depth() <= FORMULA_DEPTH);
        for scheme in [Scheme::Prime, Scheme::Positional] {
            if decode_formula(&encode_formula(&f, scheme)).ok() != Some(f.clone()) {
                formula_failures += 1;
            }
        }
    }

    let mut proofs = Vec::new();
    'fill: for m in 0..10u64 {
        for n in 0..10u64 {
            if proofs.len() == GOEDEL_PROOFS {
                break 'fill;
            }
            proofs.push(if (m + n) % 2 == 0 {
                prove_add_fact(m, n)
            } else {
                prove_mul_fact(m, n % 4)
            });
        }
    }
    let (mut proof_failures, mut matched_false) = (0, 0);
    let codes: Vec<(GoedelCode, GoedelCode)> = proofs
        .iter()
        .map(|p| {
            let scheme = if p.len() < 60 { Scheme::Prime } else { Scheme::Positional };
            let x = encode_proof(p, scheme);
            let y = encode_formula(p.conclusion().unwrap(), scheme);
            (x, y)
        })
        .collect();
    for (p, (x, y)) in proofs.iter().zip(&codes) {
        let formulas = decode_proof_formulas(x).unwrap_or_default();
        let rebuilt = decode_proof(x);
        if formulas != p.formulas() || !rebuilt.is_ok_and(|r| check_proof(&r).accepted()) {
            proof_failures += 1;
        }
        if !proof_relation_b(x, y) {
            matched_false += 1;
        }
    }

    let mut bad_true = 0;
    for t in 0..BAD_PAIRS {
        let a = rng.gen_range(0..proofs.len());
        let (x, _) = &codes[a];
        let accepted = if t % 2 == 0 {
            // Conclusion of a proof with a different conclusion.
            let b = (0..proofs.len())
                .cycle()
                .skip(a + 1 + rng.gen_range(0..proofs.len()))
                .find(|&b| proofs[b].conclusion() != proofs[a].conclusion())
                .unwrap();
            let y = encode_formula(proofs[b].conclusion().unwrap(), x.scheme);
            proof_relation_b(x, &y)
        } else {
            // A corrupted formula sequence.
            let mut q = proofs[a].clone();
            let i = rng.gen_range(0..q.len() - 1);
            q.lines[i].formula = negated(&q.lines[i].formula);
            let value = pack(&symbols_of_proof(&q), x.scheme);
            let xq = GoedelCode {
                value,
                kind: CodeKind::Proof,
                scheme: x.scheme,
            };
            let y = encode_formula(q.conclusion().unwrap(), x.scheme);
            proof_relation_b(&xq, &y)
        };
        if accepted {
            bad_true += 1;
        }
    }
    outcome(
        formula_failures == 0 && proof_failures == 0 && matched_false == 0 && bad_true == 0,
        format!(
            "{RANDOM_FORMULAS} formulas x 2 schemes: {formula_failures} roundtrip failures; {} proofs: {proof_failures} roundtrip failures, B false on {matched_false} matched pairs, true on {bad_true}/{BAD_PAIRS} bad pairs",
            proofs.len()
        ),
    )
}

fn certificate() -> Outcome {
    let start = Instant::now();
    let stream: DigitStream = "rational:1/7".parse().unwrap();
    let cert = match certify_prefix(&stream, CERT_K) {
        Ok(c) => c,
        Err(e) => return outcome(false, format!("certify_prefix failed: {e}")),
    };
    let report = audit_report(&cert);
    let semantic = cert
        .positions
        .iter()
        .filter(|p| {
            parse(&p.conclusion).is_ok_and(|f| eval_closure(&f, CUTOFF, Mode::Verifiable) == EvalVerdict::True)
        })
        .count();
    let json = cert.to_json();
    let elapsed = start.elapsed();
    let again = certify_prefix(&stream, CERT_K).map(|c| c.to_json()).ok();
    let identical = again.as_deref() == Some(json.as_str());
    outcome(
        report.passed() && semantic == CERT_K as usize && identical && elapsed < CERT_BUDGET,
        format!(
            "k = {CERT_K}, digits {:?}, audit {}, {semantic}/{CERT_K} conclusions true, {} bytes, repeat identical: {identical}, {elapsed:.2?}",
            cert.digits,
            if report.passed() { "passed" } else { "failed" },
            json.len()
        ),
    )
}

fn bt_agreement(rng: &mut ChaCha8Rng) -> Outcome {
    let mut disagreements = 0;
    for _ in 0..BT_SAMPLES {
        let b = big(rng.gen_range(0..1u64 << 40));
        let c = big(rng.gen_range(0..5000));
        let i = big(rng.gen_range(0..30));
        let d = beta_eval(&b, &c, &i);
        if eval_closure(&instantiate_bt(&b, &c, &i, &d), CUTOFF, Mode::Verifiable) != EvalVerdict::True {
            disagreements += 1;
        }
        let wrong = &d + BigUint::one();
        if !matches!(
            eval_closure(&instantiate_bt(&b, &c, &i, &wrong), CUTOFF, Mode::Verifiable),
            EvalVerdict::False(_)
        ) {
            disagreements += 1;
        }
    }
    outcome(
        disagreements == 0,
        format!("{BT_SAMPLES} triples, {disagreements} disagreements"),
    )
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let criteria: [(&str, &dyn Fn(&mut ChaCha8Rng) -> Outcome); 8] = [
        ("beta roundtrip", &beta_roundtrip),
        ("moduli coprimality", &|_| moduli_coprime()),
        ("fact prover sweep", &|_| sweep()),
        ("kernel soundness sampling", &soundness),
        ("axiom truth sampling", &|_| axiom_truth()),
        ("Goedel roundtrips and relation B", &goedel),
        ("end-to-end certificate", &|_| certificate()),
        ("Bt semantic agreement", &bt_agreement),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let o = run(&mut rng);
        if !o.pass {
            failed += 1;
        }
        println!("{} {}. {name}: {}", if o.pass { "PASS" } else { "FAIL" }, n + 1, o.detail);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
