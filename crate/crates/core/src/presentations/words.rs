//! Freely reduced words over an indexed generating set.
//!
//! A letter is a generator index together with a sign; a word is a sequence of
//! letters with no adjacent cancelling pair. Every constructor reduces, so a
//! `Word` held by callers is always in normal form.

use serde::{Deserialize, Serialize};
use std::fmt;

/// One signed occurrence of a generator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    /// Single positive generator.
    pub fn generator(gen: usize) -> Self {
        Word { letters: vec![Letter::new(gen, false)] }
    }

    /// Builds a word from raw letters, cancelling adjacent inverse pairs.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Appends one letter, reducing against the current tail.
    pub fn push(&mut self, l: Letter) {
        match self.letters.last() {
            Some(&last) if last.cancels(l) => {
                self.letters.pop();
            }
            _ => self.letters.push(l),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Concatenation followed by free reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    /// `self` raised to an integer power.
    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..e.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// `g self g^-1`.
    pub fn conjugated_by(&self, g: &Word) -> Word {
        g.concat(self).concat(&g.inverse())
    }

    /// Commutator `[self, other] = self other self^-1 other^-1`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.concat(other).concat(&self.inverse()).concat(&other.inverse())
    }

    /// Removes a conjugating prefix/suffix pair: the result generates the same
    /// normal closure. Returns a cyclically reduced word.
    pub fn cyclically_reduced(&self) -> Word {
        let mut ls = self.letters.clone();
        while ls.len() >= 2 && ls[0].cancels(*ls.last().unwrap()) {
            ls.pop();
            ls.remove(0);
        }
        Word { letters: ls }
    }

    /// Exponent sum of each of the first `n_gens` generators.
    pub fn exponent_sums(&self, n_gens: usize) -> Vec<i64> {
        let mut e = vec![0i64; n_gens];
        for l in &self.letters {
            e[l.gen] += if l.inv { -1 } else { 1 };
        }
        e
    }

    /// Largest generator index used, if any letter is present.
    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Renames generators through `map[old] = new`.
    pub fn relabel(&self, map: &[usize]) -> Word {
        Word {
            letters: self.letters.iter().map(|l| Letter::new(map[l.gen], l.inv)).collect(),
        }
    }
}

/// Reduces a raw letter sequence. Same normal form as `Word::from_letters`;
/// kept as a named entry point for callers holding plain slices.
pub fn free_reduce(letters: &[Letter]) -> Word {
    Word::from_letters(letters.iter().copied())
}

impl fmt::Display for Word {
    /// Context-free debug form: generator index with `'` for inverses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{}{}", l.gen, if l.inv { "'" } else { "" })?;
        }
        Ok(())
    }
}
