//! Built-in presentations: a handful of fixed groups shipped as data files
//! plus parameterized families constructed on demand.
//!
//! Fixed entries: `fig8_knot`, `gamma4`, `higman`, `knot_5_2`, `weeks`.
//! Families: `triangle(p,q,r)`, `two_bridge(p,q)`, `fig8_orbifold(n)`,
//! `orbifold_5_2(n)`, `free(n)`.

use super::parse::{parse, parse_word};
use super::presentation::{quotient_extend, Presentation};
use super::words::{Letter, Word};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("no corpus entry named {0:?}")]
    Unknown(String),
    #[error("bad parameter for {family}: {reason}")]
    BadParameter { family: &'static str, reason: String },
}

/// A corpus presentation together with its declared torsion primes (when the
/// construction supplies them) and a one-line provenance note.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub presentation: Presentation,
    /// Primes declared to generate the torsion of the group, when known by
    /// construction. Never computed here.
    pub pi0: Option<BTreeSet<u64>>,
    pub notes: String,
}

const WEEKS: &str = include_str!("../../corpus/weeks.grp");
const GAMMA4: &str = include_str!("../../corpus/gamma4.grp");
const HIGMAN: &str = include_str!("../../corpus/higman.grp");
const FIG8_KNOT: &str = include_str!("../../corpus/fig8_knot.grp");
const KNOT_5_2: &str = include_str!("../../corpus/knot_5_2.grp");

const FIXED: [(&str, &str, &str); 5] = [
    (
        "fig8_knot",
        FIG8_KNOT,
        "figure-eight knot group, two-bridge form (u is the meridian)",
    ),
    (
        "gamma4",
        GAMMA4,
        "balanced two-generator hyperbolic lattice with abelianization of order 45",
    ),
    (
        "higman",
        HIGMAN,
        "Higman's group: infinite with no nontrivial finite quotients",
    ),
    (
        "knot_5_2",
        KNOT_5_2,
        "knot group of 5_2, two-bridge form (u is the meridian)",
    ),
    (
        "weeks",
        WEEKS,
        "fundamental group of the Weeks manifold",
    ),
];

/// Names of the fixed entries, sorted.
pub fn fixed_names() -> Vec<&'static str> {
    FIXED.iter().map(|(n, _, _)| *n).collect()
}

/// Patterns accepted by `get` beyond the fixed names.
pub fn family_patterns() -> Vec<&'static str> {
    vec![
        "fig8_orbifold(n)",
        "free(n)",
        "orbifold_5_2(n)",
        "triangle(p,q,r)",
        "two_bridge(p,q)",
    ]
}

/// Looks up a fixed entry or builds a family member, e.g. `triangle(2,3,5)`.
pub fn get(name: &str) -> Result<CorpusEntry, CorpusError> {
    for (n, text, notes) in FIXED {
        if n == name {
            let f = parse(text).expect("bundled corpus file parses");
            return Ok(CorpusEntry {
                presentation: f.presentation,
                pi0: f.pi0,
                notes: notes.to_string(),
            });
        }
    }
    let (family, args) = match name.strip_suffix(')').and_then(|s| s.split_once('(')) {
        Some((f, a)) => (f, a),
        None => return Err(CorpusError::Unknown(name.to_string())),
    };
    let nums: Result<Vec<u64>, _> = args.split(',').map(|t| t.trim().parse::<u64>()).collect();
    let bad = |family: &'static str, reason: &str| CorpusError::BadParameter {
        family,
        reason: reason.to_string(),
    };
    let nums = nums.map_err(|_| bad("family", "arguments must be integers"))?;
    match (family, nums.as_slice()) {
        ("triangle", &[p, q, r]) => triangle(p, q, r),
        ("triangle", _) => Err(bad("triangle", "expected three arguments")),
        ("two_bridge", &[p, q]) => {
            two_bridge(p, q).map(|presentation| CorpusEntry {
                presentation,
                pi0: None,
                notes: format!("two-bridge knot group S({p},{q})"),
            })
        }
        ("two_bridge", _) => Err(bad("two_bridge", "expected two arguments")),
        ("fig8_orbifold", &[n]) => orbifold("fig8_knot", "fig8_orbifold", n),
        ("fig8_orbifold", _) => Err(bad("fig8_orbifold", "expected one argument")),
        ("orbifold_5_2", &[n]) => orbifold("knot_5_2", "orbifold_5_2", n),
        ("orbifold_5_2", _) => Err(bad("orbifold_5_2", "expected one argument")),
        ("free", &[n]) => {
            if n == 0 || n > 26 {
                return Err(bad("free", "rank must be between 1 and 26"));
            }
            Ok(CorpusEntry {
                presentation: Presentation::free(n as usize),
                pi0: None,
                notes: format!("free group of rank {n}"),
            })
        }
        ("free", _) => Err(bad("free", "expected one argument")),
        _ => Err(CorpusError::Unknown(name.to_string())),
    }
}

/// `< x y | x^p, y^q, (x y)^r >` with declared torsion primes dividing pqr.
pub fn triangle(p: u64, q: u64, r: u64) -> Result<CorpusEntry, CorpusError> {
    for v in [p, q, r] {
        if !(2..=1000).contains(&v) {
            return Err(CorpusError::BadParameter {
                family: "triangle",
                reason: format!("order {v} out of range 2..=1000"),
            });
        }
    }
    let x = Word::generator(0);
    let y = Word::generator(1);
    let relators = vec![x.pow(p as i64), y.pow(q as i64), x.concat(&y).pow(r as i64)];
    let presentation = Presentation::new(
        vec!["x".into(), "y".into()],
        relators,
        Some(format!("triangle({p},{q},{r})")),
    )
    .expect("triangle relators are valid");
    let mut pi0 = BTreeSet::new();
    for v in [p, q, r] {
        pi0.extend(prime_factors(v));
    }
    Ok(CorpusEntry {
        presentation,
        pi0: Some(pi0),
        notes: format!("({p},{q},{r}) triangle group"),
    })
}

/// Two-bridge knot group for Schubert form S(p,q): generators are the bridge
/// meridians u, v and the single relator is `u w v^-1 w^-1` where
/// `w = v^{e_1} u^{e_2} v^{e_3} ...` with `e_i = (-1)^floor(i q / p)`.
pub fn two_bridge(p: u64, q: u64) -> Result<Presentation, CorpusError> {
    let bad = |reason: String| CorpusError::BadParameter { family: "two_bridge", reason };
    if p < 3 || p % 2 == 0 || p > 9999 {
        return Err(bad(format!("p = {p} must be odd and in 3..=9999")));
    }
    if q == 0 || q >= p || q % 2 == 0 {
        return Err(bad(format!("q = {q} must be odd with 0 < q < p")));
    }
    if gcd(p, q) != 1 {
        return Err(bad(format!("p = {p} and q = {q} must be coprime")));
    }
    let (u, v) = (0usize, 1usize);
    let mut w: Vec<Letter> = Vec::new();
    for i in 1..p {
        let neg = (i * q / p) % 2 == 1;
        let g = if i % 2 == 1 { v } else { u };
        w.push(Letter::new(g, neg));
    }
    let w = Word::from_letters(w);
    let relator = Word::generator(u)
        .concat(&w)
        .concat(&Word::generator(v).inverse())
        .concat(&w.inverse());
    Ok(Presentation::new(
        vec!["u".into(), "v".into()],
        vec![relator],
        Some(format!("two_bridge({p},{q})")),
    )
    .expect("two-bridge relator is valid"))
}

fn orbifold(base: &str, family: &'static str, n: u64) -> Result<CorpusEntry, CorpusError> {
    if !(2..=1000).contains(&n) {
        return Err(CorpusError::BadParameter {
            family,
            reason: format!("cone order {n} out of range 2..=1000"),
        });
    }
    let entry = get(base).expect("fixed base entry exists");
    let p = &entry.presentation;
    let names: Vec<String> = p.generator_names().iter().map(|s| s.to_string()).collect();
    let meridian_power = parse_word(&names, &format!("u^{n}")).expect("u is a generator");
    let presentation = quotient_extend(p, &[meridian_power])
        .expect("meridian power is a valid extra relator")
        .with_name(format!("{family}({n})"));
    Ok(CorpusEntry {
        presentation,
        pi0: Some(prime_factors(n)),
        notes: format!("{base} with the meridian forced to order dividing {n}"),
    })
}

fn prime_factors(mut n: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut d = 2u64;
    while d * d <= n {
        while n % d == 0 {
            out.insert(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.insert(n);
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}
