//! Catalog of all finite groups of order at most 15, one permutation
//! representation per isomorphism class, built from presentations by coset
//! enumeration over the trivial subgroup (so every entry acts regularly).
//!
//! Class counts per order: 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1.

use crate::enumerator::{todd_coxeter, PermGroup};
use crate::presentations::parse_presentation;

pub const SMALL_GROUPS_CAP: usize = 15;

fn cyclic(n: usize) -> String {
    format!("gens a\nrel a^{n}\n")
}

fn dihedral(n: usize) -> String {
    format!("gens r s\nrel r^{n}\nrel s^2\nrel r s r s\n")
}

fn abelian2(m: usize, k: usize) -> String {
    format!("gens a b\nrel a^{m}\nrel b^{k}\nrel a^-1 b^-1 a b\n")
}

/// Presentations for every isomorphism class of groups of order `n`.
fn class_presentations(n: usize) -> Vec<String> {
    match n {
        1 => vec!["gens a\nrel a\n".to_string()],
        4 => vec![cyclic(4), abelian2(2, 2)],
        6 => vec![cyclic(6), dihedral(3)],
        8 => vec![
            cyclic(8),
            abelian2(4, 2),
            "gens a b c\nrel a^2\nrel b^2\nrel c^2\nrel a^-1 b^-1 a b\nrel a^-1 c^-1 a c\nrel b^-1 c^-1 b c\n".to_string(),
            dihedral(4),
            // quaternion: a^4, a^2 = b^2, b^-1 a b = a^-1
            "gens a b\nrel a^4\nrel a^2 b^-2\nrel b^-1 a b a\n".to_string(),
        ],
        9 => vec![cyclic(9), abelian2(3, 3)],
        10 => vec![cyclic(10), dihedral(5)],
        12 => vec![
            cyclic(12),
            abelian2(6, 2),
            // alternating group on 4 points
            "gens x y\nrel x^2\nrel y^3\nrel x y x y x y\n".to_string(),
            dihedral(6),
            // dicyclic: a^6, a^3 = b^2, b^-1 a b = a^-1
            "gens a b\nrel a^6\nrel a^3 b^-2\nrel b^-1 a b a\n".to_string(),
        ],
        14 => vec![cyclic(14), dihedral(7)],
        _ => vec![cyclic(n)],
    }
}

/// One regular permutation group per isomorphism class of order `n`.
/// Panics if `n` is 0 or exceeds `SMALL_GROUPS_CAP`.
pub fn groups_of_order(n: usize) -> Vec<PermGroup> {
    assert!(n >= 1 && n <= SMALL_GROUPS_CAP, "catalog covers orders 1..={SMALL_GROUPS_CAP}");
    class_presentations(n)
        .iter()
        .map(|src| {
            let p = parse_presentation(src).expect("catalog presentation parses");
            let t = todd_coxeter(&p, &[], 200).expect("catalog enumeration completes");
            assert_eq!(t.n_cosets(), n, "catalog presentation has the stated order");
            t.permutation_group().expect("complete table yields permutations")
        })
        .collect()
}

/// All catalog groups of order 1 through `n` inclusive.
pub fn groups_up_to(n: usize) -> Vec<PermGroup> {
    (1..=n).flat_map(groups_of_order).collect()
}
