//! Line-oriented proof files.
//!
//! ```text
//! # comment
//! 1 | x1 + 0 = x1 | PA5
//! 2 | forall x1. x1 + 0 = x1 | GEN 1 x1
//! ```
//!
//! Justifications: `L1`..`L5`, `PA1`..`PA8`, `IND <var> : <formula>`,
//! `MP <antecedent> <implication>`, `GEN <premise> <var>`.

use super::axioms::{LogicalSchema, PaAxiom};
use super::check::{Justification, Proof, ProofLine};
use crate::syntax::{is_variable_name, parse, render, ParseError};
use thiserror::Error;

/// Version tag of the axiom set written at the top of every rendered file.
pub const SCHEMA_SET_TAG: &str = "K(L1-L5)+PA1-PA9/v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofFileError {
    #[error("line {line}: expected `<index> | <formula> | <justification>`")]
    Layout { line: usize },
    #[error("line {line}: index {found} out of sequence, expected {expected}")]
    Index { line: usize, expected: usize, found: String },
    #[error("line {line}: formula: {source}")]
    Formula { line: usize, source: ParseError },
    #[error("line {line}: unrecognised justification `{text}`")]
    Justification { line: usize, text: String },
}

const KEYWORDS: [&str; 5] = ["L", "PA", "IND", "MP", "GEN"];

fn starts_with_keyword(s: &str) -> bool {
    let s = s.trim_start();
    KEYWORDS.iter().any(|k| {
        s.strip_prefix(k)
            .is_some_and(|rest| rest.is_empty() || rest.starts_with(|c: char| c.is_ascii_digit() || c == ' '))
    })
}

fn parse_justification(text: &str, line: usize) -> Result<Justification, ProofFileError> {
    let bad = || ProofFileError::Justification {
        line,
        text: text.to_string(),
    };
    let text = text.trim();
    if let Ok(l) = text.parse::<LogicalSchema>() {
        return Ok(Justification::Logical(l));
    }
    if let Some(n) = text.strip_prefix("PA") {
        return n
            .parse::<u8>()
            .ok()
            .and_then(PaAxiom::new)
            .map(Justification::Pa)
            .ok_or_else(bad);
    }
    if let Some(rest) = text.strip_prefix("IND ") {
        let (var, body) = rest.split_once(':').ok_or_else(bad)?;
        let var = var.trim();
        if !is_variable_name(var) {
            return Err(bad());
        }
        let formula = parse(body).map_err(|source| ProofFileError::Formula { line, source })?;
        return Ok(Justification::Induction {
            formula,
            var: var.into(),
        });
    }
    let words: Vec<&str> = text.split_whitespace().collect();
    match words.as_slice() {
        ["MP", a, b] => Ok(Justification::ModusPonens {
            antecedent: a.parse().map_err(|_| bad())?,
            implication: b.parse().map_err(|_| bad())?,
        }),
        ["GEN", p, v] if is_variable_name(v) => Ok(Justification::Generalisation {
            premise: p.parse().map_err(|_| bad())?,
            var: (*v).into(),
        }),
        _ => Err(bad()),
    }
}

/// Parse a proof file. Indices must run 1, 2, 3, ... without gaps.
pub fn parse_proof(src: &str) -> Result<Proof, ProofFileError> {
    let mut lines = Vec::new();
    for (n, raw) in src.lines().enumerate() {
        let line_no = n + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let (index, rest) = content
            .split_once('|')
            .ok_or(ProofFileError::Layout { line: line_no })?;
        let expected = lines.len() + 1;
        if index.trim().parse::<usize>().ok() != Some(expected) {
            return Err(ProofFileError::Index {
                line: line_no,
                expected,
                found: index.trim().to_string(),
            });
        }
        // The formula may itself contain `|` (disjunction); the justification
        // starts at the first `|` followed by a justification keyword.
        let split = rest
            .match_indices('|')
            .map(|(i, _)| i)
            .find(|&i| starts_with_keyword(&rest[i + 1..]))
            .ok_or(ProofFileError::Layout { line: line_no })?;
        let formula = parse(&rest[..split])
            .map_err(|source| ProofFileError::Formula { line: line_no, source })?;
        let justification = parse_justification(&rest[split + 1..], line_no)?;
        lines.push(ProofLine {
            formula,
            justification,
        });
    }
    Ok(Proof::new(lines))
}

pub fn render_justification(j: &Justification) -> String {
    match j {
        Justification::Logical(l) => l.to_string(),
        Justification::Pa(a) => a.to_string(),
        Justification::Induction { formula, var } => format!("IND {var} : {}", render(formula)),
        Justification::ModusPonens {
            antecedent,
            implication,
        } => format!("MP {antecedent} {implication}"),
        Justification::Generalisation { premise, var } => format!("GEN {premise} {var}"),
    }
}

/// Canonical file text for a proof.
pub fn render_proof(p: &Proof) -> String {
    let mut out = format!("# schemata: {SCHEMA_SET_TAG}\n");
    for (i, line) in p.lines.iter().enumerate() {
        out.push_str(&format!(
            "{} | {} | {}\n",
            i + 1,
            render(&line.formula),
            render_justification(&line.justification)
        ));
    }
    out
}
