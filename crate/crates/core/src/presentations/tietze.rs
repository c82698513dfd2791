//! Seeded Tietze-style rewrites. Every transformation here preserves the
//! presented group, so downstream invariants (abelianization, homology
//! certificates, quotient spectra) must agree before and after; the test
//! suites lean on that.

use super::presentation::{Presentation, PresentationError};
use super::words::Word;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Applies `moves` random relator-level moves: invert a relator, conjugate it
/// by a generator, multiply it by a conjugate of another relator, or swap two
/// relators. Deterministic in `seed`. Relators that collapse to the empty
/// word are dropped on rebuild, so the output can have fewer relators.
pub fn shuffled(p: &Presentation, seed: u64, moves: usize) -> Presentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut relators: Vec<Word> = p.relators().to_vec();
    let n_gens = p.n_gens();
    for _ in 0..moves {
        if relators.is_empty() {
            break;
        }
        let i = rng.gen_range(0..relators.len());
        match rng.gen_range(0..4u8) {
            0 => {
                let inv = relators[i].inverse();
                relators[i] = inv;
            }
            1 => {
                let g = Word::generator(rng.gen_range(0..n_gens));
                let c = if rng.gen() { g } else { g.inverse() };
                relators[i] = relators[i].conjugated_by(&c);
            }
            2 if relators.len() >= 2 => {
                let mut j = rng.gen_range(0..relators.len() - 1);
                if j >= i {
                    j += 1;
                }
                let mut by = relators[j].clone();
                if rng.gen() {
                    by = by.inverse();
                }
                let conj = Word::generator(rng.gen_range(0..n_gens));
                relators[i] = relators[i].concat(&by.conjugated_by(&conj));
            }
            _ => {
                let j = rng.gen_range(0..relators.len());
                relators.swap(i, j);
            }
        }
    }
    let names = p.generator_names().iter().map(|s| s.to_string()).collect();
    let name = p.name().map(|n| format!("{n} (shuffled)"));
    Presentation::new(names, relators, name).expect("moves keep words valid")
}

/// Adds a redundant generator `name` defined to equal the word `w` over the
/// existing generators, via the relator `name w^-1`.
pub fn add_generator(
    p: &Presentation,
    w: &Word,
    name: &str,
) -> Result<Presentation, PresentationError> {
    if let Some(m) = w.max_gen() {
        if m >= p.n_gens() {
            return Err(PresentationError::UndeclaredGenerator { index: m, n_gens: p.n_gens() });
        }
    }
    let mut names: Vec<String> = p.generator_names().iter().map(|s| s.to_string()).collect();
    names.push(name.to_string());
    let mut relators = p.relators().to_vec();
    relators.push(Word::generator(p.n_gens()).concat(&w.inverse()));
    Presentation::new(names, relators, p.name().map(String::from))
}
