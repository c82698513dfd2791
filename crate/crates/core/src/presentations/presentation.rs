//! Finite presentations and the combinators that build new ones.
//!
//! Invariants: generator names are unique valid identifiers; every relator is
//! freely and cyclically reduced; relators that reduce to the empty word are
//! dropped at construction time.

use super::words::{Letter, Word};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("invalid generator name {0:?}")]
    BadGeneratorName(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("word uses generator index {index} but only {n_gens} generators are declared")]
    UndeclaredGenerator { index: usize, n_gens: usize },
    #[error("power vector has length {got}, presentation has {want} relators")]
    PowerVectorLength { got: usize, want: usize },
    #[error("extra relator reduces to the empty word")]
    EmptyRelator,
}

/// A named generator. Names follow identifier syntax: ASCII letter first,
/// then letters, digits, or underscores.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct GeneratorSymbol(pub String);

pub fn valid_generator_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A finite presentation `< generators | relators >`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Presentation {
    generators: Vec<GeneratorSymbol>,
    relators: Vec<Word>,
    name: Option<String>,
}

impl Presentation {
    /// Validates names and word indices, then normalizes the relators.
    pub fn new(
        generators: Vec<String>,
        relators: Vec<Word>,
        name: Option<String>,
    ) -> Result<Self, PresentationError> {
        if generators.is_empty() {
            return Err(PresentationError::EmptyGenerators);
        }
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !valid_generator_name(g) {
                return Err(PresentationError::BadGeneratorName(g.clone()));
            }
            if !seen.insert(g.clone()) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        let n = generators.len();
        let mut normalized = Vec::new();
        for r in relators {
            check_indices(&r, n)?;
            let r = r.cyclically_reduced();
            if !r.is_empty() {
                normalized.push(r);
            }
        }
        Ok(Presentation {
            generators: generators.into_iter().map(GeneratorSymbol).collect(),
            relators: normalized,
            name,
        })
    }

    /// Free group on `n` generators, named a..z then g1, g2, ...
    pub fn free(n: usize) -> Presentation {
        assert!(n >= 1, "free group needs at least one generator");
        let names = (0..n)
            .map(|i| {
                if n <= 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("g{}", i + 1)
                }
            })
            .collect();
        Presentation::new(names, Vec::new(), Some(format!("free({n})"))).unwrap()
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.generators
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.0.as_str()).collect()
    }

    pub fn n_gens(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn is_free_presentation(&self) -> bool {
        self.relators.is_empty()
    }

    /// |generators| == |relators|.
    pub fn is_balanced(&self) -> bool {
        self.generators.len() == self.relators.len()
    }

    /// Renders a word over this presentation's generator names,
    /// space-separated terms with merged exponent runs.
    pub fn word_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return String::new();
        }
        let mut terms: Vec<(usize, i64)> = Vec::new();
        for l in w.letters() {
            let e = if l.inv { -1 } else { 1 };
            match terms.last_mut() {
                Some((g, k)) if *g == l.gen && (*k > 0) == (e > 0) => *k += e,
                _ => terms.push((l.gen, e)),
            }
        }
        terms
            .iter()
            .map(|&(g, k)| {
                let name = &self.generators[g].0;
                if k == 1 {
                    name.clone()
                } else {
                    format!("{name}^{k}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Deterministic file form; `parse` inverts this exactly.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("gens ");
        out.push_str(&self.generator_names().join(" "));
        out.push('\n');
        if let Some(n) = &self.name {
            out.push_str(&format!("name {n}\n"));
        }
        for r in &self.relators {
            out.push_str(&format!("rel {}\n", self.word_string(r)));
        }
        out
    }
}

fn check_indices(w: &Word, n_gens: usize) -> Result<(), PresentationError> {
    if let Some(m) = w.max_gen() {
        if m >= n_gens {
            return Err(PresentationError::UndeclaredGenerator { index: m, n_gens });
        }
    }
    Ok(())
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.generator_names().join(" "))?;
        for (i, r) in self.relators.iter().enumerate() {
            write!(f, "{}{}", if i == 0 { " " } else { ", " }, self.word_string(r))?;
        }
        write!(f, " >")
    }
}

/// `p1 x p2`: disjoint generator copies suffixed `_1` / `_2`, both relator
/// sets, and one commutator per cross-factor generator pair.
pub fn direct_product(p1: &Presentation, p2: &Presentation) -> Presentation {
    let n1 = p1.n_gens();
    let mut gens: Vec<String> = p1.generator_names().iter().map(|g| format!("{g}_1")).collect();
    gens.extend(p2.generator_names().iter().map(|g| format!("{g}_2")));
    let shift: Vec<usize> = (0..p2.n_gens()).map(|i| i + n1).collect();
    let ident: Vec<usize> = (0..n1).collect();
    let mut relators: Vec<Word> = p1.relators().iter().map(|r| r.relabel(&ident)).collect();
    relators.extend(p2.relators().iter().map(|r| r.relabel(&shift)));
    for i in 0..n1 {
        for j in 0..p2.n_gens() {
            relators.push(Word::generator(i).commutator(&Word::generator(n1 + j)));
        }
    }
    let name = match (p1.name(), p2.name()) {
        (Some(a), Some(b)) => Some(format!("{a} x {b}")),
        _ => None,
    };
    Presentation::new(gens, relators, name).expect("product of valid presentations is valid")
}

/// Same generators, relators of `p` followed by `extra`.
pub fn quotient_extend(p: &Presentation, extra: &[Word]) -> Result<Presentation, PresentationError> {
    for w in extra {
        check_indices(w, p.n_gens())?;
    }
    let mut relators = p.relators().to_vec();
    relators.extend(extra.iter().cloned());
    Presentation::new(
        p.generator_names().iter().map(|s| s.to_string()).collect(),
        relators,
        p.name.clone(),
    )
}

/// Adds a central generator `z`: relator `r_i` becomes `r_i z^{e_i}`, and one
/// centrality commutator `[z, x]` is appended per original generator.
pub fn central_extension(
    p: &Presentation,
    powers: &[i64],
) -> Result<Presentation, PresentationError> {
    if powers.len() != p.relators().len() {
        return Err(PresentationError::PowerVectorLength {
            got: powers.len(),
            want: p.relators().len(),
        });
    }
    let mut gens: Vec<String> = p.generator_names().iter().map(|s| s.to_string()).collect();
    let z_name = {
        let mut candidate = "z".to_string();
        let mut k = 0usize;
        while gens.iter().any(|g| *g == candidate) {
            candidate = format!("z{k}");
            k += 1;
        }
        candidate
    };
    gens.push(z_name);
    let z = p.n_gens();
    let mut relators: Vec<Word> = Vec::new();
    for (r, &e) in p.relators().iter().zip(powers) {
        relators.push(r.concat(&Word::generator(z).pow(e)));
    }
    for x in 0..p.n_gens() {
        relators.push(Word::generator(z).commutator(&Word::generator(x)));
    }
    Presentation::new(gens, relators, None)
}

/// Letter from a signed generator index (1-based magnitude), used by tests
/// and table code: +1 -> gen 0, -1 -> gen 0 inverse.
pub fn signed_letter(s: i64) -> Letter {
    assert!(s != 0);
    Letter::new((s.unsigned_abs() as usize) - 1, s < 0)
}
