//! Trusted checker for Hilbert-style proofs in first-order arithmetic.
//!
//! This is the only code that decides whether a proof is accepted. Everything
//! that produces proofs lives elsewhere and is checked here.

mod axioms;
mod check;
mod file;

pub use axioms::{induction_instance, induction_parts, LogicalSchema, PaAxiom};
pub use check::{
    axiom_justification, check_line, check_proof, classify_schema, CheckReport, Justification,
    Proof, ProofLine, Rejection, SchemaTag, Verdict,
};
pub use file::{parse_proof, render_justification, render_proof, ProofFileError, SCHEMA_SET_TAG};
