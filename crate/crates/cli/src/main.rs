use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use pa_core::beta::{encode_sequence_with, EncodeOptions, DEFAULT_MAX_C_BITS};
use pa_core::goedel::{decode_formula, decode_proof, encode_formula, encode_proof, CodeKind, GoedelCode, Scheme};
use pa_core::kernel::{check_proof, parse_proof, render_proof, Proof};
use pa_core::lab::{audit_report, certify_prefix_with, Certificate, CertifyOptions, DigitStream};
use pa_core::prover::{prove_add_fact, prove_bt_instance, prove_mul_fact, prove_neq_fact};
use pa_core::syntax::parse;
use pa_core::tarski::{eval_closure, Mode, DEFAULT_CUTOFF};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pa", version, about = "Peano arithmetic proof workbench")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Parse a formula and print its canonical form.
    Parse { formula: String },
    /// Check a proof file.
    CheckProof { file: PathBuf },
    /// Emit a proof of a closed arithmetic fact.
    ProveFact {
        #[command(subcommand)]
        fact: Fact,
        /// Write the proof here instead of standard output.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Print the Goedel number of a formula or proof file, or decode one.
    Goedelize {
        /// A formula, or with --proof a proof file, or with --decode a code.
        input: String,
        #[arg(long)]
        proof: bool,
        #[arg(long)]
        decode: bool,
        #[arg(long, default_value_t = Scheme::Prime)]
        scheme: Scheme,
    },
    /// Encode a sequence of naturals as a beta pair.
    EncodeSeq {
        #[arg(required = true)]
        values: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_MAX_C_BITS)]
        max_c_bits: u64,
    },
    /// Evaluate the universal closure of a formula in the standard model.
    Eval {
        formula: String,
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: u64,
        #[arg(long, default_value_t = Mode::Verifiable)]
        mode: Mode,
    },
    /// Certify a prefix of a digit stream.
    Certify {
        /// constant:D, periodic:DIGITS, rational:P/Q, random:SEED or file:PATH
        #[arg(long)]
        stream: DigitStream,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = Scheme::Positional)]
        scheme: Scheme,
        #[arg(long, default_value_t = DEFAULT_MAX_C_BITS)]
        max_c_bits: u64,
    },
    /// Audit a certificate file.
    Audit { file: PathBuf },
}

#[derive(Subcommand)]
enum Fact {
    /// [m] + [n] = [m + n]
    Add { m: BigUint, n: BigUint },
    /// [m] * [n] = [mn]
    Mul { m: BigUint, n: BigUint },
    /// ~([m] = [n])
    Neq { m: BigUint, n: BigUint },
    /// Bt([b], [c], [i], [d])
    Bt { b: BigUint, c: BigUint, i: BigUint, d: BigUint },
}

enum Failure {
    Rejected(String),
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn rejected(e: impl ToString) -> Failure {
    Failure::Rejected(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(verb: Verb) -> Outcome {
    match verb {
        Verb::Parse { formula } => {
            let f = parse(&formula).map_err(rejected)?;
            println!("{f}");
        }
        Verb::CheckProof { file } => {
            let proof = parse_proof(&read(&file)?).map_err(rejected)?;
            let report = check_proof(&proof);
            match (report.first_failure, report.conclusion) {
                (None, Some(c)) => println!("accepted: {c}"),
                (Some((line, why)), _) => return Err(rejected(format!("rejected at line {line}: {why}"))),
                (None, None) => return Err(rejected("rejected: empty proof")),
            }
        }
        Verb::ProveFact { fact, out } => {
            let proof = match fact {
                Fact::Add { m, n } => prove_add_fact(m, n),
                Fact::Mul { m, n } => prove_mul_fact(m, n),
                Fact::Neq { m, n } => prove_neq_fact(m, n).map_err(rejected)?,
                Fact::Bt { b, c, i, d } => prove_bt_instance(&b, &c, &i, &d).map_err(rejected)?,
            };
            write_or_print(out.as_deref(), &render_proof(&proof))?;
        }
        Verb::Goedelize {
            input,
            proof,
            decode,
            scheme,
        } => {
            let kind = if proof { CodeKind::Proof } else { CodeKind::Formula };
            if decode {
                let value: BigUint = input
                    .trim()
                    .parse()
                    .map_err(|_| Failure::Usage(format!("`{input}` is not a decimal natural")))?;
                let g = GoedelCode { value, kind, scheme };
                if proof {
                    print!("{}", render_proof(&decode_proof(&g).map_err(rejected)?));
                } else {
                    println!("{}", decode_formula(&g).map_err(rejected)?);
                }
            } else if proof {
                let p: Proof = parse_proof(&read(Path::new(&input))?).map_err(rejected)?;
                println!("{}", encode_proof(&p, scheme).value);
            } else {
                let f = parse(&input).map_err(rejected)?;
                println!("{}", encode_formula(&f, scheme).value);
            }
        }
        Verb::EncodeSeq { values, max_c_bits } => {
            let pair = encode_sequence_with(&values, EncodeOptions { min_j: 0, max_c_bits }).map_err(rejected)?;
            println!("{}", serde_json::to_string(&pair).expect("beta pair serializes"));
        }
        Verb::Eval { formula, cutoff, mode } => {
            let f = parse(&formula).map_err(rejected)?;
            println!("{}", eval_closure(&f, cutoff, mode));
        }
        Verb::Certify {
            stream,
            k,
            out,
            scheme,
            max_c_bits,
        } => {
            let cert = certify_prefix_with(&stream, k, CertifyOptions { scheme, max_c_bits }).map_err(rejected)?;
            write_or_print(out.as_deref(), &cert.to_json())?;
        }
        Verb::Audit { file } => {
            let cert = Certificate::from_json(&read(&file)?).map_err(rejected)?;
            let report = audit_report(&cert);
            if !report.passed() {
                return Err(rejected(report));
            }
            println!("audit passed: {} positions of {}", cert.k, cert.stream);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.verb) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(msg)) => {
            eprintln!("{}", msg.trim_end());
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
