//! Line-oriented parser for presentation files.
//!
//! ```text
//! file    := header line*
//! header  := "gens" ident+ NEWLINE
//! line    := "rel" word NEWLINE | "name" string NEWLINE | "pi0" int+ NEWLINE | comment
//! word    := term+        term := ident ("^" signed-int)?
//! comment := "#" any
//! ```
//!
//! Terms in a word may be separated by spaces or juxtaposed; juxtaposed text
//! is cut by longest-declared-generator match with no backtracking, so
//! `serialize` (which space-separates) always round-trips. Blank lines are
//! skipped. Errors carry 1-based line and column.

use super::presentation::{valid_generator_name, Presentation, PresentationError};
use super::words::{Letter, Word};
use std::collections::BTreeSet;
use thiserror::Error;

/// Largest accepted |exponent| in a term; words are stored expanded.
pub const MAX_EXPONENT: i64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, col {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected `gens` header")]
    ExpectedHeader,
    #[error("header declares no generators")]
    EmptyGeneratorList,
    #[error("invalid generator name {0:?}")]
    BadGeneratorName(String),
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("unknown directive {0:?}")]
    UnknownDirective(String),
    #[error("undeclared generator {0:?}")]
    UndeclaredGenerator(String),
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("`rel` line has no word")]
    MissingWord,
    #[error("malformed exponent")]
    BadExponent,
    #[error("exponent exceeds {MAX_EXPONENT} in magnitude")]
    ExponentTooLarge,
    #[error("pi0 entry {0} is not a prime")]
    NotAPrime(u64),
    #[error("malformed integer")]
    BadInteger,
    #[error("`name` given twice")]
    DuplicateName,
    #[error("`pi0` given twice")]
    DuplicatePi0,
    #[error("`name` line is empty")]
    EmptyName,
}

/// A parsed file: the presentation plus the optional declared torsion primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub presentation: Presentation,
    pub pi0: Option<BTreeSet<u64>>,
}

fn err<T>(line: usize, col: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { line, col, kind })
}

pub fn parse(text: &str) -> Result<PresentationFile, ParseError> {
    let mut gens: Option<Vec<String>> = None;
    let mut relator_src: Vec<(usize, usize, String)> = Vec::new(); // line, col, text
    let mut name: Option<String> = None;
    let mut pi0: Option<BTreeSet<u64>> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lno = idx + 1;
        let line = raw.trim_end();
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = line.len() - trimmed.len();
        let (keyword, rest) = match trimmed.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r),
            None => (trimmed, ""),
        };
        let rest_col = indent + keyword.len() + 2; // 1-based col of rest
        if gens.is_none() {
            if keyword != "gens" {
                return err(lno, indent + 1, ParseErrorKind::ExpectedHeader);
            }
            let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
            if names.is_empty() {
                return err(lno, rest_col, ParseErrorKind::EmptyGeneratorList);
            }
            let mut seen = BTreeSet::new();
            for n in &names {
                if !valid_generator_name(n) {
                    return err(lno, rest_col, ParseErrorKind::BadGeneratorName(n.clone()));
                }
                if !seen.insert(n.clone()) {
                    return err(lno, rest_col, ParseErrorKind::DuplicateGenerator(n.clone()));
                }
            }
            gens = Some(names);
            continue;
        }
        match keyword {
            "rel" => {
                if rest.trim().is_empty() {
                    return err(lno, rest_col, ParseErrorKind::MissingWord);
                }
                relator_src.push((lno, rest_col, rest.to_string()));
            }
            "name" => {
                if name.is_some() {
                    return err(lno, indent + 1, ParseErrorKind::DuplicateName);
                }
                let n = rest.trim();
                if n.is_empty() {
                    return err(lno, rest_col, ParseErrorKind::EmptyName);
                }
                name = Some(n.to_string());
            }
            "pi0" => {
                if pi0.is_some() {
                    return err(lno, indent + 1, ParseErrorKind::DuplicatePi0);
                }
                let mut primes = BTreeSet::new();
                for tok in rest.split_whitespace() {
                    let v: u64 = tok
                        .parse()
                        .map_err(|_| ParseError { line: lno, col: rest_col, kind: ParseErrorKind::BadInteger })?;
                    if !is_prime(v) {
                        return err(lno, rest_col, ParseErrorKind::NotAPrime(v));
                    }
                    primes.insert(v);
                }
                if primes.is_empty() {
                    return err(lno, rest_col, ParseErrorKind::BadInteger);
                }
                pi0 = Some(primes);
            }
            other => {
                return err(lno, indent + 1, ParseErrorKind::UnknownDirective(other.to_string()));
            }
        }
    }

    let gens = match gens {
        Some(g) => g,
        None => return err(text.lines().count().max(1), 1, ParseErrorKind::ExpectedHeader),
    };
    let mut relators = Vec::new();
    for (lno, col, src) in relator_src {
        relators.push(parse_word_in(&gens, &src, lno, col)?);
    }
    let presentation = Presentation::new(gens, relators, name).map_err(|e| match e {
        PresentationError::DuplicateGenerator(g) => {
            ParseError { line: 1, col: 1, kind: ParseErrorKind::DuplicateGenerator(g) }
        }
        other => panic!("validated during parsing: {other}"),
    })?;
    Ok(PresentationFile { presentation, pi0 })
}

/// Parses a file and discards the pi0 declaration.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    parse(text).map(|f| f.presentation)
}

/// Parses one word over the named generators (the `rel` payload grammar).
/// Exposed for inputs that are plain word lists, e.g. extra-relator files.
pub fn parse_word(gens: &[String], src: &str) -> Result<Word, ParseError> {
    if src.trim().is_empty() {
        return err(1, 1, ParseErrorKind::MissingWord);
    }
    parse_word_in(gens, src, 1, 1)
}

fn parse_word_in(gens: &[String], src: &str, lno: usize, col0: usize) -> Result<Word, ParseError> {
    let bytes = src.as_bytes();
    let mut letters: Vec<Letter> = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let col = col0 + i;
        // longest declared generator name starting here
        let mut best: Option<usize> = None;
        for (gi, g) in gens.iter().enumerate() {
            if src[i..].starts_with(g.as_str())
                && best.map_or(true, |b: usize| g.len() > gens[b].len())
            {
                best = Some(gi);
            }
        }
        let gi = match best {
            Some(gi) => gi,
            None => {
                let c = src[i..].chars().next().unwrap();
                if c.is_ascii_alphabetic() {
                    let end = src[i..]
                        .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                        .map_or(src.len(), |off| i + off);
                    return err(
                        lno,
                        col,
                        ParseErrorKind::UndeclaredGenerator(src[i..end].to_string()),
                    );
                }
                return err(lno, col, ParseErrorKind::UnexpectedChar(c));
            }
        };
        i += gens[gi].len();
        let mut exp: i64 = 1;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            let start = i;
            if i < bytes.len() && bytes[i] == b'-' {
                i += 1;
            }
            let dstart = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i == dstart {
                return err(lno, col0 + start, ParseErrorKind::BadExponent);
            }
            exp = src[start..i]
                .parse()
                .map_err(|_| ParseError { line: lno, col: col0 + start, kind: ParseErrorKind::ExponentTooLarge })?;
            if exp.abs() > MAX_EXPONENT {
                return err(lno, col0 + start, ParseErrorKind::ExponentTooLarge);
            }
        }
        let inv = exp < 0;
        for _ in 0..exp.unsigned_abs() {
            letters.push(Letter::new(gi, inv));
        }
    }
    Ok(Word::from_letters(letters))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
