//! Exact isomorphism testing for small finite groups via generator-image
//! backtracking over multiplication tables.

use super::SpectrumError;
use crate::enumerator::{Perm, PermError, PermGroup};
use std::collections::{BTreeMap, HashMap};

/// Largest group order `exact_iso` accepts. Beyond this the spectrum code
/// falls back to fingerprint comparison.
pub const EXACT_ISO_CAP: usize = 64;

const UND: usize = usize::MAX;

/// Element-indexed model of a small finite group: sorted element list,
/// multiplication table, element orders, and a reduced generating tuple
/// (indices, sorted by decreasing element order).
pub(crate) struct FiniteModel {
    pub n: usize,
    pub elements: Vec<Perm>,
    pub mult: Vec<Vec<usize>>,
    pub order_of: Vec<u64>,
    pub id: usize,
    pub tuple: Vec<usize>,
}

pub(crate) fn model(g: &PermGroup, cap: usize) -> Result<FiniteModel, PermError> {
    let elements = g.elements(cap)?;
    let n = elements.len();
    let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut mult = vec![vec![0usize; n]; n];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            mult[i][j] = index[&a.compose(b)];
        }
    }
    let id = index[&Perm::identity(g.degree())];
    let mut order_of = vec![0u64; n];
    for (i, e) in elements.iter().enumerate() {
        order_of[i] = e.order();
    }
    let mut tuple: Vec<usize> = Vec::new();
    for p in g.generators() {
        let i = index[p];
        if i != id && !tuple.contains(&i) {
            tuple.push(i);
        }
    }
    // greedy reduction: drop any generator the rest already produce
    let mut k = 0;
    while k < tuple.len() {
        let rest: Vec<usize> =
            tuple.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &g)| g).collect();
        if closure_size(&mult, id, &rest) == n {
            tuple.remove(k);
        } else {
            k += 1;
        }
    }
    tuple.sort_by_key(|&i| std::cmp::Reverse(order_of[i]));
    Ok(FiniteModel { n, elements, mult, order_of, id, tuple })
}

/// Size of the subgroup generated by `gens` (element indices).
pub(crate) fn closure_size(mult: &[Vec<usize>], id: usize, gens: &[usize]) -> usize {
    let n = mult.len();
    let mut seen = vec![false; n];
    seen[id] = true;
    let mut stack = vec![id];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &g in gens {
            let y = mult[x][g];
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count
}

/// Closes the assignment `g_i -> h_i` into a partial map on the subgroup the
/// `g_i` generate. Returns the map (a-index to b-index, UND off the
/// subgroup), or None if the pairs force a non-injective or inconsistent
/// assignment. A conflict-free map here is automatically a homomorphism on
/// the subgroup: every element is reached as x*g and the rule phi(x*g) =
/// phi(x)*h is checked at every (x, g).
fn joint_closure(a: &FiniteModel, b: &FiniteModel, pairs: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut map = vec![UND; a.n];
    let mut rmap = vec![UND; b.n];
    map[a.id] = b.id;
    rmap[b.id] = a.id;
    let mut sub = vec![a.id];
    let mut i = 0;
    while i < sub.len() {
        let x = sub[i];
        for &(g, h) in pairs {
            let z = a.mult[x][g];
            let w = b.mult[map[x]][h];
            if map[z] == UND {
                if rmap[w] != UND {
                    return None;
                }
                map[z] = w;
                rmap[w] = z;
                sub.push(z);
            } else if map[z] != w {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

fn search(
    a: &FiniteModel,
    b: &FiniteModel,
    j: usize,
    pairs: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<usize>>,
    all: bool,
) -> bool {
    if j == a.tuple.len() {
        let map = joint_closure(a, b, pairs).expect("prefix was checked");
        debug_assert!(map.iter().all(|&v| v != UND), "tuple generates the whole group");
        out.push(map);
        return !all;
    }
    let g = a.tuple[j];
    for h in 0..b.n {
        if b.order_of[h] != a.order_of[g] {
            continue;
        }
        pairs.push((g, h));
        if joint_closure(a, b, pairs).is_some() && search(a, b, j + 1, pairs, out, all) {
            pairs.pop();
            return true;
        }
        pairs.pop();
    }
    false
}

fn order_histogram(m: &FiniteModel) -> BTreeMap<u64, u64> {
    let mut hist = BTreeMap::new();
    for &o in &m.order_of {
        *hist.entry(o).or_insert(0u64) += 1;
    }
    hist
}

/// Decides isomorphism exactly for groups of order at most `EXACT_ISO_CAP`.
/// Larger inputs are refused rather than approximated.
pub fn exact_iso(a: &PermGroup, b: &PermGroup) -> Result<bool, SpectrumError> {
    let ma = match model(a, EXACT_ISO_CAP) {
        Ok(m) => m,
        Err(PermError::CapExceeded(_)) => {
            return Err(SpectrumError::OrderCapExceeded { cap: EXACT_ISO_CAP })
        }
        Err(e) => return Err(SpectrumError::Perm(e)),
    };
    let mb = match model(b, EXACT_ISO_CAP) {
        Ok(m) => m,
        Err(PermError::CapExceeded(_)) => {
            return Err(SpectrumError::OrderCapExceeded { cap: EXACT_ISO_CAP })
        }
        Err(e) => return Err(SpectrumError::Perm(e)),
    };
    if ma.n != mb.n || order_histogram(&ma) != order_histogram(&mb) {
        return Ok(false);
    }
    let mut out = Vec::new();
    search(&ma, &mb, 0, &mut Vec::new(), &mut out, false);
    Ok(!out.is_empty())
}

/// Every automorphism of the modeled group, as permutations of the element
/// list (index i maps to aut[i]).
pub(crate) fn automorphisms_of(m: &FiniteModel) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    search(m, m, 0, &mut Vec::new(), &mut out, true);
    out
}
