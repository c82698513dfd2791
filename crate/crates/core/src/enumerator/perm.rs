//! Permutations on {0..degree-1} and finite permutation groups: exact order
//! via a stabilizer chain, element enumeration under a cap, derived series,
//! normal closures, and abelianization through the Cayley-graph relation
//! lattice.
//!
//! Products act left to right: `a.compose(b)` applies `a` first.

use crate::homology::AbelianInvariants;
use crate::zlinalg::{smith_normal_form, IntMatrix};
use num_bigint::BigUint;
use num_traits::One;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("images are not a bijection on 0..{0}")]
    NotABijection(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("element enumeration exceeded cap {0}")]
    CapExceeded(usize),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotABijection(n));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Product of disjoint cycles on `degree` points, e.g. `&[vec![0,1,2]]`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        for c in cycles {
            for k in 0..c.len() {
                let from = c[k];
                let to = c[(k + 1) % c.len()];
                if from >= degree || to >= degree {
                    return Err(PermError::NotABijection(degree));
                }
                images[from] = to;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Nontrivial cycles, each starting at its least point, sorted by it.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1u64, num_integer::lcm)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let inner: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", inner.join(" "))?;
        }
        Ok(())
    }
}

/// BFS closure of a seed set into the full element list, capped. The seeds'
/// inverses are included implicitly (finite closure of a finite set of
/// permutations is a group). Output is sorted.
pub fn closure_of(degree: usize, seeds: &[Perm], cap: usize) -> Result<Vec<Perm>, PermError> {
    let mut set: HashSet<Perm> = HashSet::new();
    set.insert(Perm::identity(degree));
    let mut queue: Vec<Perm> = vec![Perm::identity(degree)];
    while let Some(p) = queue.pop() {
        for g in seeds {
            debug_assert_eq!(g.degree(), degree);
            let q = p.compose(g);
            if !set.contains(&q) {
                if set.len() >= cap {
                    return Err(PermError::CapExceeded(cap));
                }
                set.insert(q.clone());
                queue.push(q);
            }
        }
    }
    let mut out: Vec<Perm> = set.into_iter().collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> PermGroup {
        for g in &gens {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
        }
        PermGroup { degree, gens }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup { degree, gens: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    /// Exact order from the orbit-stabilizer chain.
    pub fn order(&self) -> BigUint {
        chain_order(self.degree, self.gens.clone())
    }

    pub fn is_transitive(&self) -> bool {
        if self.degree == 0 {
            return true;
        }
        self.orbit_of(0).len() == self.degree
    }

    pub fn orbit_of(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            for g in &self.gens {
                let y = g.apply(orbit[i]);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit
    }

    pub fn elements(&self, cap: usize) -> Result<Vec<Perm>, PermError> {
        closure_of(self.degree, &self.gens, cap)
    }

    pub fn element_order_histogram(&self, cap: usize) -> Result<BTreeMap<u64, u64>, PermError> {
        let mut hist = BTreeMap::new();
        for e in self.elements(cap)? {
            *hist.entry(e.order()).or_insert(0u64) += 1;
        }
        Ok(hist)
    }

    /// Smallest normal subgroup containing the seeds: closes the generator
    /// set under conjugation by the group's generators, with membership
    /// decided on enumerated elements.
    pub fn normal_closure(&self, seeds: &[Perm], cap: usize) -> Result<PermGroup, PermError> {
        let mut hgens: Vec<Perm> = Vec::new();
        for s in seeds {
            if !s.is_identity() && !hgens.contains(s) {
                hgens.push(s.clone());
            }
        }
        loop {
            let have: HashSet<Perm> = closure_of(self.degree, &hgens, cap)?.into_iter().collect();
            let mut added = false;
            for h in hgens.clone() {
                for g in &self.gens {
                    let c = g.inverse().compose(&h).compose(g);
                    if !have.contains(&c) {
                        hgens.push(c);
                        added = true;
                    }
                }
            }
            if !added {
                return Ok(PermGroup::new(self.degree, hgens));
            }
        }
    }

    pub fn derived_subgroup(&self, cap: usize) -> Result<PermGroup, PermError> {
        let mut seeds = Vec::new();
        for a in &self.gens {
            for b in &self.gens {
                let c = a
                    .inverse()
                    .compose(&b.inverse())
                    .compose(a)
                    .compose(b);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&seeds, cap)
    }

    /// Orders down the derived series. The list stops once the order
    /// stabilizes, and the stable value is not repeated: a perfect group of
    /// order 60 gives [60]; a solvable group ends in 1.
    pub fn derived_series_orders(&self, cap: usize) -> Result<Vec<BigUint>, PermError> {
        let mut orders = vec![self.order()];
        let mut current = self.clone();
        loop {
            let d = current.derived_subgroup(cap)?;
            let o = d.order();
            if &o == orders.last().unwrap() {
                break;
            }
            let stop = o.is_one();
            orders.push(o);
            if stop {
                break;
            }
            current = d;
        }
        Ok(orders)
    }

    /// Abelianization of the abstract group: generators modulo the relation
    /// lattice read off the Cayley graph (one row per non-tree edge).
    pub fn abelianization(&self, cap: usize) -> Result<AbelianInvariants, PermError> {
        let k = self.gens.len();
        let mut expvec: HashMap<Perm, Vec<i64>> = HashMap::new();
        let id = Perm::identity(self.degree);
        expvec.insert(id.clone(), vec![0; k]);
        let mut queue = vec![id];
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head].clone();
            head += 1;
            let ev = expvec[&e].clone();
            for (i, g) in self.gens.iter().enumerate() {
                let f = e.compose(g);
                let mut fv = ev.clone();
                fv[i] += 1;
                match expvec.get(&f) {
                    None => {
                        if expvec.len() >= cap {
                            return Err(PermError::CapExceeded(cap));
                        }
                        expvec.insert(f.clone(), fv);
                        queue.push(f);
                    }
                    Some(existing) => {
                        let row: Vec<i64> =
                            fv.iter().zip(existing).map(|(a, b)| a - b).collect();
                        rows.push(row);
                    }
                }
            }
        }
        let m = IntMatrix::from_i64_rows(&rows, k);
        let snf = smith_normal_form(&m);
        let inv = AbelianInvariants::from_diag(&snf.diag, snf.rank, k);
        debug_assert!(inv.is_finite(), "finite group has finite abelianization");
        Ok(inv)
    }
}

fn chain_order(degree: usize, gens: Vec<Perm>) -> BigUint {
    let gens: Vec<Perm> = {
        let mut seen = HashSet::new();
        gens.into_iter()
            .filter(|g| !g.is_identity() && seen.insert(g.clone()))
            .collect()
    };
    if gens.is_empty() {
        return BigUint::one();
    }
    let beta = (0..degree)
        .find(|&i| gens.iter().any(|g| g.apply(i) != i))
        .expect("non-identity generator moves a point");
    // orbit of beta with coset representatives
    let mut rep: HashMap<usize, Perm> = HashMap::new();
    rep.insert(beta, Perm::identity(degree));
    let mut orbit = vec![beta];
    let mut head = 0;
    while head < orbit.len() {
        let delta = orbit[head];
        head += 1;
        for g in &gens {
            let image = g.apply(delta);
            if !rep.contains_key(&image) {
                let r = rep[&delta].compose(g);
                rep.insert(image, r);
                orbit.push(image);
            }
        }
    }
    let mut schreier: HashSet<Perm> = HashSet::new();
    for &delta in &orbit {
        for g in &gens {
            let s = rep[&delta].compose(g).compose(&rep[&g.apply(delta)].inverse());
            if !s.is_identity() {
                schreier.insert(s);
            }
        }
    }
    let mut stab_gens: Vec<Perm> = schreier.into_iter().collect();
    stab_gens.sort();
    BigUint::from(orbit.len()) * chain_order(degree, stab_gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(degree, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn compose_and_inverse() {
        let a = cyc(3, &[&[0, 1]]);
        let b = cyc(3, &[&[1, 2]]);
        // apply a first: 0 -> 1 -> 2
        assert_eq!(a.compose(&b).apply(0), 2);
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(cyc(5, &[&[0, 1, 2, 3, 4]]).order(), 5);
        assert_eq!(cyc(6, &[&[0, 1], &[2, 3, 4]]).order(), 6);
        assert_eq!(Perm::identity(4).order(), 1);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_images(vec![1, 2]).is_err());
    }

    #[test]
    fn orders_by_stabilizer_chain() {
        assert_eq!(PermGroup::trivial(4).order(), BigUint::from(1u32));
        let c5 = PermGroup::new(5, vec![cyc(5, &[&[0, 1, 2, 3, 4]])]);
        assert_eq!(c5.order(), BigUint::from(5u32));
        let s3 = PermGroup::new(3, vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]);
        assert_eq!(s3.order(), BigUint::from(6u32));
        let a5 = PermGroup::new(5, vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1, 2]])]);
        assert_eq!(a5.order(), BigUint::from(60u32));
        let s6 = PermGroup::new(6, vec![cyc(6, &[&[0, 1]]), cyc(6, &[&[0, 1, 2, 3, 4, 5]])]);
        assert_eq!(s6.order(), BigUint::from(720u32));
    }

    #[test]
    fn element_listing_matches_order() {
        let s3 = PermGroup::new(3, vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]);
        let els = s3.elements(100).unwrap();
        assert_eq!(els.len(), 6);
        assert!(s3.elements(5).is_err());
    }

    #[test]
    fn histograms() {
        let c6 = PermGroup::new(6, vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]])]);
        let h = c6.element_order_histogram(100).unwrap();
        assert_eq!(h, [(1, 1), (2, 1), (3, 2), (6, 2)].into_iter().collect());
        let t = PermGroup::trivial(1).element_order_histogram(10).unwrap();
        assert_eq!(t, [(1, 1)].into_iter().collect());
    }

    #[test]
    fn normal_closures() {
        let s3 = PermGroup::new(3, vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]);
        let a3 = s3.normal_closure(&[cyc(3, &[&[0, 1, 2]])], 100).unwrap();
        assert_eq!(a3.order(), BigUint::from(3u32));
    }

    #[test]
    fn derived_series() {
        let s3 = PermGroup::new(3, vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]);
        let orders = s3.derived_series_orders(100).unwrap();
        assert_eq!(orders, vec![6u32.into(), 3u32.into(), 1u32.into()]);
        let c6 = PermGroup::new(6, vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]])]);
        assert_eq!(c6.derived_series_orders(100).unwrap(), vec![6u32.into(), 1u32.into()]);
        let a5 = PermGroup::new(5, vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1, 2]])]);
        assert_eq!(a5.derived_series_orders(100).unwrap(), vec![BigUint::from(60u32)]);
    }

    #[test]
    fn abelianizations() {
        let s3 = PermGroup::new(3, vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])]);
        assert_eq!(s3.abelianization(100).unwrap().to_string(), "Z/2");
        let c6 = PermGroup::new(6, vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]])]);
        assert_eq!(c6.abelianization(100).unwrap().to_string(), "Z/6");
        let d4 = PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[1, 3]])]);
        assert_eq!(d4.abelianization(100).unwrap().to_string(), "Z/2 x Z/2");
        let a5 = PermGroup::new(5, vec![cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1, 2]])]);
        assert!(a5.abelianization(100).unwrap().is_trivial());
        // generators listed with repeats / identity included
        let padded = PermGroup::new(3, vec![Perm::identity(3), cyc(3, &[&[0, 1, 2]])]);
        assert_eq!(padded.abelianization(100).unwrap().to_string(), "Z/3");
    }

    #[test]
    fn transitivity_and_orbits() {
        let c2 = PermGroup::new(4, vec![cyc(4, &[&[0, 1]])]);
        assert!(!c2.is_transitive());
        assert_eq!(c2.orbit_of(0), vec![0, 1]);
        let c4 = PermGroup::new(4, vec![cyc(4, &[&[0, 1, 2, 3]])]);
        assert!(c4.is_transitive());
    }

    #[test]
    fn cycle_display() {
        assert_eq!(cyc(5, &[&[0, 1, 2], &[3, 4]]).to_string(), "(0 1 2)(3 4)");
        assert_eq!(Perm::identity(3).to_string(), "()");
    }
}
