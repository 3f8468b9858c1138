//! Concrete syntax.
//!
//! ```text
//! formula := imp
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | ("forall" | "exists") ident "." imp | atom
//! atom    := term ("=" | "<") term | "(" imp ")"
//! term    := prod ("+" prod)*
//! prod    := base ("*" base)*
//! base    := "0" | ident | "S" "(" term ")" | "S^" digits "(" term ")" | "(" term ")"
//! ```
//!
//! Identifiers are `[a-z_][a-z0-9_]*` minus the two keywords. `#` starts a
//! comment running to the end of the line.

use super::formula::Formula;
use super::term::Term;
use num_bigint::BigUint;
use num_traits::Zero;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: expected {}, found {found}", .expected.join(" or "))]
    Syntax {
        line: usize,
        col: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("{line}:{col}: `{name}` is not a variable (variables are lower-case identifiers)")]
    UnknownIdentifier { line: usize, col: usize, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Zero,
    Succ,
    SuccPow(BigUint),
    Ident(String),
    Forall,
    Exists,
    LParen,
    RParen,
    Plus,
    Star,
    Eq,
    Lt,
    Not,
    And,
    Or,
    Arrow,
    Dot,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Zero => "`0`".into(),
            Tok::Succ => "`S`".into(),
            Tok::SuccPow(n) => format!("`S^{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Forall => "`forall`".into(),
            Tok::Exists => "`exists`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Dot => "`.`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let syntax = |line, col, found: String| ParseError::Syntax {
        line,
        col,
        expected: vec!["a token".into()],
        found,
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned { tok, line: l0, col: c0 });
            *i += len;
            *col += len;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '+' => push(Tok::Plus, 1, &mut i, &mut col),
            '*' => push(Tok::Star, 1, &mut i, &mut col),
            '=' => push(Tok::Eq, 1, &mut i, &mut col),
            '<' => push(Tok::Lt, 1, &mut i, &mut col),
            '~' => push(Tok::Not, 1, &mut i, &mut col),
            '&' => push(Tok::And, 1, &mut i, &mut col),
            '|' => push(Tok::Or, 1, &mut i, &mut col),
            '.' => push(Tok::Dot, 1, &mut i, &mut col),
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Arrow, 2, &mut i, &mut col),
            '0' => {
                if chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                    return Err(syntax(l0, c0, "a multi-digit number".into()));
                }
                push(Tok::Zero, 1, &mut i, &mut col)
            }
            'S' if !chars
                .get(i + 1)
                .is_some_and(|d| d.is_ascii_alphanumeric() || *d == '_') =>
            {
                if chars.get(i + 1) == Some(&'^') {
                    let start = i + 2;
                    let mut end = start;
                    while end < chars.len() && chars[end].is_ascii_digit() {
                        end += 1;
                    }
                    let digits: String = chars[start..end].iter().collect();
                    let n = if digits.is_empty() || digits.starts_with('0') {
                        None
                    } else {
                        digits.parse::<BigUint>().ok()
                    };
                    match n {
                        Some(n) if !n.is_zero() => push(Tok::SuccPow(n), end - i, &mut i, &mut col),
                        _ => {
                            return Err(ParseError::Syntax {
                                line: l0,
                                col: c0 + 2,
                                expected: vec!["a positive exponent".into()],
                                found: format!("`{digits}`"),
                            })
                        }
                    }
                } else {
                    push(Tok::Succ, 1, &mut i, &mut col)
                }
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                let mut end = i;
                while end < chars.len() && (chars[end].is_alphanumeric() || chars[end] == '_') {
                    end += 1;
                }
                let word: String = chars[start..end].iter().collect();
                let tok = match word.as_str() {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    w if is_variable_name(w) => Tok::Ident(word.clone()),
                    _ => {
                        return Err(ParseError::UnknownIdentifier {
                            line: l0,
                            col: c0,
                            name: word,
                        })
                    }
                };
                push(tok, end - start, &mut i, &mut col)
            }
            other => return Err(syntax(l0, c0, format!("`{other}`"))),
        }
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

/// Lower-case identifier that is not a keyword.
pub fn is_variable_name(s: &str) -> bool {
    let mut chars = s.chars();
    let first_ok = chars
        .next()
        .is_some_and(|c| c.is_ascii_lowercase() || c == '_');
    first_ok
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
        && s != "forall"
        && s != "exists"
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    /// Furthest failure seen: (position, expected descriptions).
    furthest: Option<(usize, BTreeSet<String>)>,
}

type PResult<T> = Result<T, ()>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn fail<T>(&mut self, expected: &[&str]) -> PResult<T> {
        match &mut self.furthest {
            Some((p, set)) if *p == self.pos => set.extend(expected.iter().map(|s| s.to_string())),
            Some((p, _)) if *p > self.pos => {}
            _ => {
                self.furthest = Some((self.pos, expected.iter().map(|s| s.to_string()).collect()))
            }
        }
        Err(())
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.pos += 1;
            Ok(())
        } else {
            let d = tok.describe();
            self.fail(&[d.as_str()])
        }
    }

    fn error(&self) -> ParseError {
        let (pos, expected) = self.furthest.clone().unwrap_or((self.pos, BTreeSet::new()));
        let sp = &self.toks[pos];
        ParseError::Syntax {
            line: sp.line,
            col: sp.col,
            expected: expected.into_iter().collect(),
            found: sp.tok.describe(),
        }
    }

    fn imp(&mut self) -> PResult<Formula> {
        let left = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.pos += 1;
            let right = self.imp()?;
            Ok(Formula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn or(&mut self) -> PResult<Formula> {
        let mut acc = self.and()?;
        while *self.peek() == Tok::Or {
            self.pos += 1;
            let rhs = self.and()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn and(&mut self) -> PResult<Formula> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Not => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            q @ (Tok::Forall | Tok::Exists) => {
                self.pos += 1;
                let var = match self.peek().clone() {
                    Tok::Ident(v) => {
                        self.pos += 1;
                        v
                    }
                    _ => return self.fail(&["a variable"]),
                };
                self.expect(Tok::Dot)?;
                let body = self.imp()?;
                Ok(if q == Tok::Forall {
                    Formula::forall(var, body)
                } else {
                    Formula::exists(var, body)
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        let start = self.pos;
        if let Ok(left) = self.term() {
            match self.peek() {
                Tok::Eq => {
                    self.pos += 1;
                    return Ok(Formula::eq(left, self.term()?));
                }
                Tok::Lt => {
                    self.pos += 1;
                    return Ok(Formula::lt(left, self.term()?));
                }
                _ => {
                    let _ = self.fail::<()>(&["`=`", "`<`", "`+`", "`*`"]);
                }
            }
        }
        self.pos = start;
        if *self.peek() == Tok::LParen {
            self.pos += 1;
            let f = self.imp()?;
            self.expect(Tok::RParen)?;
            return Ok(f);
        }
        self.fail(&["a formula"])
    }

    fn term(&mut self) -> PResult<Term> {
        let mut acc = self.prod()?;
        while *self.peek() == Tok::Plus {
            self.pos += 1;
            acc = Term::add(acc, self.prod()?);
        }
        Ok(acc)
    }

    fn prod(&mut self) -> PResult<Term> {
        let mut acc = self.base()?;
        while *self.peek() == Tok::Star {
            self.pos += 1;
            acc = Term::mul(acc, self.base()?);
        }
        Ok(acc)
    }

    fn base(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Zero => {
                self.pos += 1;
                Ok(Term::zero())
            }
            Tok::Ident(v) => {
                self.pos += 1;
                Ok(Term::var(v))
            }
            Tok::Succ | Tok::SuccPow(_) => {
                let n = match self.peek().clone() {
                    Tok::SuccPow(n) => n,
                    _ => BigUint::from(1u32),
                };
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let inner = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::succ_n(n, inner))
            }
            Tok::LParen => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => self.fail(&["a term"]),
        }
    }
}

fn run<T>(src: &str, f: impl FnOnce(&mut Parser) -> PResult<T>) -> Result<T, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        furthest: None,
    };
    match f(&mut p) {
        Ok(v) if *p.peek() == Tok::End => Ok(v),
        Ok(_) => {
            let _ = p.fail::<()>(&["end of input"]);
            Err(p.error())
        }
        Err(()) => Err(p.error()),
    }
}

pub fn parse(src: &str) -> Result<Formula, ParseError> {
    run(src, |p| p.imp())
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    run(src, |p| p.term())
}
