//! Truncated finite-quotient spectra: all quotients of order at most N of a
//! finitely presented group, with isomorphism fingerprinting, spectrum
//! comparison, torsion-prime extraction, and "no finite quotients up to N"
//! certificates.
//!
//! Completeness rests on one fact: a quotient of order m is the core
//! quotient of an index-m subgroup (the preimage of the trivial subgroup),
//! so enumerating subgroup classes to index N and taking normal cores sees
//! every quotient of order at most N.

pub(crate) mod iso;
mod small_groups;

pub use iso::{exact_iso, EXACT_ISO_CAP};
pub use small_groups::{groups_of_order, groups_up_to, SMALL_GROUPS_CAP};

use crate::enumerator::{
    low_index_subgroups_partial, normal_core_quotient, EnumeratorError, Perm, PermError,
    QuotientRecord,
};
use crate::homology::AbelianInvariants;
use crate::presentations::Presentation;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

/// Largest quotient order a fingerprint will be computed for.
pub const FINGERPRINT_CAP: usize = 1 << 20;

#[derive(Debug)]
pub enum SpectrumError {
    ZeroLevel,
    OrderCapExceeded { cap: usize },
    IncompleteSpectrum { side: &'static str },
    Enumerator(EnumeratorError),
    Perm(PermError),
}

impl fmt::Display for SpectrumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumError::ZeroLevel => write!(f, "spectrum level must be at least 1"),
            SpectrumError::OrderCapExceeded { cap } => {
                write!(f, "group order exceeds the cap of {cap}")
            }
            SpectrumError::IncompleteSpectrum { side } => {
                write!(f, "refusing to compare: the {side} spectrum is incomplete at this budget")
            }
            SpectrumError::Enumerator(e) => write!(f, "{e}"),
            SpectrumError::Perm(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SpectrumError {}

impl From<EnumeratorError> for SpectrumError {
    fn from(e: EnumeratorError) -> Self {
        SpectrumError::Enumerator(e)
    }
}

impl From<PermError> for SpectrumError {
    fn from(e: PermError) -> Self {
        SpectrumError::Perm(e)
    }
}

/// Invariant bundle standing in for the isomorphism type of a finite group.
/// Equal fingerprints are necessary but not sufficient for isomorphism.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Fingerprint {
    order: BigUint,
    abelianization: AbelianInvariants,
    derived_series_orders: Vec<BigUint>,
    element_order_histogram: BTreeMap<u64, u64>,
}

impl Fingerprint {
    pub fn of_group(g: &crate::enumerator::PermGroup) -> Result<Fingerprint, SpectrumError> {
        let order = g.order();
        let cap = order
            .to_usize()
            .filter(|&c| c <= FINGERPRINT_CAP)
            .ok_or(SpectrumError::OrderCapExceeded { cap: FINGERPRINT_CAP })?;
        let element_order_histogram = g.element_order_histogram(cap)?;
        debug_assert_eq!(
            element_order_histogram.values().sum::<u64>(),
            cap as u64,
            "histogram counts every element"
        );
        Ok(Fingerprint {
            order,
            abelianization: g.abelianization(cap)?,
            derived_series_orders: g.derived_series_orders(cap)?,
            element_order_histogram,
        })
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn abelianization(&self) -> &AbelianInvariants {
        &self.abelianization
    }

    pub fn derived_series_orders(&self) -> &[BigUint] {
        &self.derived_series_orders
    }

    pub fn element_order_histogram(&self) -> &BTreeMap<u64, u64> {
        &self.element_order_histogram
    }

    /// Perfect means the derived subgroup is the whole group.
    pub fn is_perfect(&self) -> bool {
        self.derived_series_orders.len() == 1
    }

    pub fn to_json(&self) -> Value {
        let hist: serde_json::Map<String, Value> = self
            .element_order_histogram
            .iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect();
        json!({
            "order": self.order.to_string(),
            "abelianization": serde_json::to_value(&self.abelianization).expect("serializable"),
            "derived_series_orders":
                self.derived_series_orders.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
            "element_order_histogram": hist,
        })
    }
}

/// How a spectrum entry's identity as an isomorphism class was settled.
/// `Exact` entries are genuine classes (decided by backtracking isomorphism
/// or by a fingerprint no other kernel shares). `Unresolved` entries sit
/// above the exact-isomorphism cap with a colliding fingerprint: each kernel
/// is kept as its own entry rather than silently merged.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Resolution {
    Exact,
    Unresolved,
}

#[derive(Clone, Debug)]
pub struct SpectrumEntry {
    fingerprint: Fingerprint,
    count: usize,
    representative: QuotientRecord,
    resolution: Resolution,
}

impl SpectrumEntry {
    pub fn fingerprint(&self) -> &Fingerprint {
        &self.fingerprint
    }

    /// Number of distinct kernels realizing this quotient class.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn representative(&self) -> &QuotientRecord {
        &self.representative
    }

    pub fn resolution(&self) -> Resolution {
        self.resolution
    }
}

#[derive(Clone, Debug)]
pub struct SpectrumReport {
    level: usize,
    complete: bool,
    budget_exhausted: bool,
    quotients: Vec<SpectrumEntry>,
}

impl SpectrumReport {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn budget_exhausted(&self) -> bool {
        self.budget_exhausted
    }

    pub fn quotients(&self) -> &[SpectrumEntry] {
        &self.quotients
    }

    pub fn to_json(&self) -> Value {
        json!({
            "level": self.level,
            "complete": self.complete,
            "budget_exhausted": self.budget_exhausted,
            "quotients": self.quotients.iter().map(|e| json!({
                "order": e.fingerprint.order().to_string(),
                "fingerprint": e.fingerprint.to_json(),
                "count": e.count,
                "resolution": match e.resolution {
                    Resolution::Exact => "exact",
                    Resolution::Unresolved => "unresolved",
                },
            })).collect::<Vec<_>>(),
        })
    }
}

/// Whether two quotient records of the same presentation have the same
/// kernel: the joint image in the direct product has the order of either
/// image exactly when each map factors through the other.
pub fn same_kernel(a: &QuotientRecord, b: &QuotientRecord) -> bool {
    if a.order() != b.order() {
        return false;
    }
    assert_eq!(a.images().len(), b.images().len(), "records of the same presentation");
    let da = a.group().degree();
    let db = b.group().degree();
    let gens: Vec<Perm> = a
        .images()
        .iter()
        .zip(b.images())
        .map(|(pa, pb)| {
            let mut im: Vec<usize> = pa.images().to_vec();
            im.extend(pb.images().iter().map(|&x| x + da));
            Perm::from_images(im).expect("block permutation is a bijection")
        })
        .collect();
    crate::enumerator::PermGroup::new(da + db, gens).order() == *a.order()
}

pub(crate) fn record_key(r: &QuotientRecord) -> (BigUint, usize, Vec<usize>) {
    let flat: Vec<usize> = r.images().iter().flat_map(|p| p.images().to_vec()).collect();
    (r.order().clone(), r.group().degree(), flat)
}

/// Rebuilds a quotient record on the regular action of its image, numbered
/// breadth-first from the identity through the generator images. The
/// numbering depends only on the quotient group marked with its generator
/// tuple, so records with the same kernel rebuild to identical tables.
fn regular_record(rec: &QuotientRecord) -> Result<QuotientRecord, SpectrumError> {
    let m = rec.order().to_usize().expect("order was filtered to at most the level");
    let elements = rec.group().elements(m).map_err(SpectrumError::Perm)?;
    let index: HashMap<&Perm, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let id = index[&Perm::identity(rec.group().degree())];
    let mut number = vec![usize::MAX; m];
    number[id] = 0;
    let mut bfs = vec![id];
    let mut next = 1usize;
    let mut at = 0usize;
    while at < bfs.len() {
        let x = bfs[at];
        at += 1;
        for g in rec.images() {
            let y = index[&elements[x].compose(g)];
            if number[y] == usize::MAX {
                number[y] = next;
                next += 1;
                bfs.push(y);
            }
        }
    }
    debug_assert_eq!(next, m, "generator images generate the image group");
    let images: Vec<Perm> = rec
        .images()
        .iter()
        .map(|g| {
            let mut im = vec![0usize; m];
            for &x in &bfs {
                im[number[x]] = number[index[&elements[x].compose(g)]];
            }
            Perm::from_images(im).expect("right translation is a bijection")
        })
        .collect();
    Ok(QuotientRecord::new(rec.source().clone(), images)?)
}

/// Every quotient of order at most `level`, one record per kernel, each on
/// the regular action of its image, sorted canonically. The flag is false
/// when the subgroup search ran out of budget (the list is then a subset of
/// the truth).
pub fn quotient_kernels(
    p: &Presentation,
    level: usize,
    max_nodes: usize,
) -> Result<(Vec<QuotientRecord>, bool), SpectrumError> {
    if level == 0 {
        return Err(SpectrumError::ZeroLevel);
    }
    let (tables, complete) = low_index_subgroups_partial(p, level, max_nodes)?;
    let bound = BigUint::from(level);
    let mut records: Vec<QuotientRecord> = Vec::new();
    for t in &tables {
        let rec = normal_core_quotient(t)?;
        if *rec.order() <= bound {
            records.push(regular_record(&rec)?);
        }
    }
    records.sort_by_key(record_key);
    // distinct tables can share a core, but shared cores rebuilt identically
    records.dedup_by(|a, b| record_key(a) == record_key(b));
    Ok((records, complete))
}

/// The spectrum of finite quotients of order at most `level`. Kernels are
/// grouped into isomorphism classes: exactly (backtracking) up to order
/// `EXACT_ISO_CAP`, by fingerprint beyond, with fingerprint collisions
/// beyond the cap kept apart and marked `Unresolved`.
pub fn finite_quotients(
    p: &Presentation,
    level: usize,
    max_nodes: usize,
) -> Result<SpectrumReport, SpectrumError> {
    let (kernels, complete) = quotient_kernels(p, level, max_nodes)?;
    let mut tagged: Vec<(Fingerprint, QuotientRecord)> = Vec::new();
    for rec in kernels {
        tagged.push((Fingerprint::of_group(rec.group())?, rec));
    }
    tagged.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| record_key(&x.1).cmp(&record_key(&y.1))));

    let iso_cap = BigUint::from(EXACT_ISO_CAP);
    let mut quotients: Vec<SpectrumEntry> = Vec::new();
    let mut run_start = 0;
    while run_start < tagged.len() {
        let mut run_end = run_start + 1;
        while run_end < tagged.len() && tagged[run_end].0 == tagged[run_start].0 {
            run_end += 1;
        }
        let fp = tagged[run_start].0.clone();
        let run = &tagged[run_start..run_end];
        if *fp.order() <= iso_cap {
            let mut classes: Vec<(QuotientRecord, usize)> = Vec::new();
            for (_, rec) in run {
                match classes.iter_mut().find(|(rep, _)| {
                    exact_iso(rep.group(), rec.group()).expect("orders are under the cap")
                }) {
                    Some((_, n)) => *n += 1,
                    None => classes.push((rec.clone(), 1)),
                }
            }
            for (rep, count) in classes {
                quotients.push(SpectrumEntry {
                    fingerprint: fp.clone(),
                    count,
                    representative: rep,
                    resolution: Resolution::Exact,
                });
            }
        } else if run.len() == 1 {
            quotients.push(SpectrumEntry {
                fingerprint: fp,
                count: 1,
                representative: run[0].1.clone(),
                resolution: Resolution::Exact,
            });
        } else {
            for (_, rec) in run {
                quotients.push(SpectrumEntry {
                    fingerprint: fp.clone(),
                    count: 1,
                    representative: rec.clone(),
                    resolution: Resolution::Unresolved,
                });
            }
        }
        run_start = run_end;
    }
    Ok(SpectrumReport { level, complete, budget_exhausted: !complete, quotients })
}

#[derive(Clone, Debug)]
pub struct SpectrumWitness {
    pub order: BigUint,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SpectraComparison {
    level: usize,
    equal: bool,
    witness: Option<SpectrumWitness>,
    fingerprint_only: bool,
}

impl SpectraComparison {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_equal(&self) -> bool {
        self.equal
    }

    pub fn witness(&self) -> Option<&SpectrumWitness> {
        self.witness.as_ref()
    }

    /// True when some matched class pair sits above the exact-isomorphism
    /// cap, so agreement there is fingerprint-level evidence only.
    pub fn fingerprint_only(&self) -> bool {
        self.fingerprint_only
    }

    pub fn to_json(&self) -> Value {
        json!({
            "level": self.level,
            "equal": self.equal,
            "fingerprint_only": self.fingerprint_only,
            "witness": self.witness.as_ref().map(|w| json!({
                "order": w.order.to_string(),
                "detail": w.detail,
            })),
        })
    }
}

fn group_by_fingerprint(r: &SpectrumReport) -> Vec<(&Fingerprint, Vec<&SpectrumEntry>)> {
    let mut out: Vec<(&Fingerprint, Vec<&SpectrumEntry>)> = Vec::new();
    for e in &r.quotients {
        match out.last_mut() {
            Some((fp, group)) if **fp == e.fingerprint => group.push(e),
            _ => out.push((&e.fingerprint, vec![e])),
        }
    }
    out
}

/// Compares the sets of isomorphism classes of quotients of order at most
/// `level`. Classes are matched by fingerprint and, under the exact cap, by
/// backtracking isomorphism; kernel multiplicities are deliberately not
/// compared. Refuses incomplete spectra.
pub fn spectra_equal(
    p1: &Presentation,
    p2: &Presentation,
    level: usize,
    max_nodes: usize,
) -> Result<SpectraComparison, SpectrumError> {
    let s1 = finite_quotients(p1, level, max_nodes)?;
    if !s1.complete {
        return Err(SpectrumError::IncompleteSpectrum { side: "first" });
    }
    let s2 = finite_quotients(p2, level, max_nodes)?;
    if !s2.complete {
        return Err(SpectrumError::IncompleteSpectrum { side: "second" });
    }
    let g1 = group_by_fingerprint(&s1);
    let g2 = group_by_fingerprint(&s2);
    let iso_cap = BigUint::from(EXACT_ISO_CAP);
    let mut fingerprint_only = false;
    let mut i = 0;
    let mut j = 0;
    while i < g1.len() || j < g2.len() {
        let cmp = if i == g1.len() {
            std::cmp::Ordering::Greater
        } else if j == g2.len() {
            std::cmp::Ordering::Less
        } else {
            g1[i].0.cmp(g2[j].0)
        };
        match cmp {
            std::cmp::Ordering::Less => {
                let fp = g1[i].0;
                return Ok(SpectraComparison {
                    level,
                    equal: false,
                    witness: Some(SpectrumWitness {
                        order: fp.order().clone(),
                        detail: format!(
                            "a quotient class of order {} on the first side has no counterpart",
                            fp.order()
                        ),
                    }),
                    fingerprint_only,
                });
            }
            std::cmp::Ordering::Greater => {
                let fp = g2[j].0;
                return Ok(SpectraComparison {
                    level,
                    equal: false,
                    witness: Some(SpectrumWitness {
                        order: fp.order().clone(),
                        detail: format!(
                            "a quotient class of order {} on the second side has no counterpart",
                            fp.order()
                        ),
                    }),
                    fingerprint_only,
                });
            }
            std::cmp::Ordering::Equal => {
                let (fp, left) = &g1[i];
                let (_, right) = &g2[j];
                if left.len() != right.len() {
                    return Ok(SpectraComparison {
                        level,
                        equal: false,
                        witness: Some(SpectrumWitness {
                            order: fp.order().clone(),
                            detail: format!(
                                "order {}: {} class(es) on the first side, {} on the second",
                                fp.order(),
                                left.len(),
                                right.len()
                            ),
                        }),
                        fingerprint_only,
                    });
                }
                if *fp.order() <= iso_cap {
                    // within a side the entries are pairwise non-isomorphic,
                    // so a perfect matching exists iff each left class has
                    // some isomorphic right class
                    let mut used = vec![false; right.len()];
                    for le in left.iter() {
                        let found = right.iter().enumerate().find(|(ri, re)| {
                            !used[*ri]
                                && exact_iso(le.representative.group(), re.representative.group())
                                    .expect("orders are under the cap")
                        });
                        match found {
                            Some((ri, _)) => used[ri] = true,
                            None => {
                                return Ok(SpectraComparison {
                                    level,
                                    equal: false,
                                    witness: Some(SpectrumWitness {
                                        order: fp.order().clone(),
                                        detail: format!(
                                            "order {}: classes share fingerprints but are not isomorphic",
                                            fp.order()
                                        ),
                                    }),
                                    fingerprint_only,
                                });
                            }
                        }
                    }
                } else {
                    fingerprint_only = true;
                }
                i += 1;
                j += 1;
            }
        }
    }
    Ok(SpectraComparison { level, equal: true, witness: None, fingerprint_only })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NfqStatus {
    /// Every subgroup of index at most the level is the whole group, and the
    /// search completed. In the limit over all levels this is triviality of
    /// the profinite completion.
    Valid,
    /// A proper subgroup of the given index exists; its core is a nontrivial
    /// finite quotient, so the completion is not trivial. The witness is the
    /// smallest proper index found (the global minimum when the search
    /// completed).
    Refuted { witness_index: usize },
    /// The search budget ran out before any proper subgroup was found.
    /// Deliberately distinct from both other outcomes.
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct NfqCertificate {
    level: usize,
    status: NfqStatus,
}

impl NfqCertificate {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn status(&self) -> &NfqStatus {
        &self.status
    }

    pub fn is_valid(&self) -> bool {
        self.status == NfqStatus::Valid
    }

    pub fn to_json(&self) -> Value {
        match self.status {
            NfqStatus::Valid => json!({"level": self.level, "status": "valid"}),
            NfqStatus::Refuted { witness_index } => {
                json!({"level": self.level, "status": "refuted", "witness_index": witness_index})
            }
            NfqStatus::Inconclusive => json!({"level": self.level, "status": "inconclusive"}),
        }
    }
}

/// Certifies "no subgroup of index 2..=level" by exhaustive low-index
/// search. Valid certificates bound the finite quotients from below: any
/// nontrivial quotient of order at most `level` would pull back to a proper
/// subgroup of index at most `level`.
pub fn no_finite_quotients_certificate(
    p: &Presentation,
    level: usize,
    max_nodes: usize,
) -> Result<NfqCertificate, SpectrumError> {
    if level == 0 {
        return Err(SpectrumError::ZeroLevel);
    }
    let (tables, complete) = low_index_subgroups_partial(p, level, max_nodes)?;
    let proper = tables.iter().map(|t| t.n_cosets()).filter(|&n| n > 1).min();
    let status = match (proper, complete) {
        (Some(m), _) => NfqStatus::Refuted { witness_index: m },
        (None, true) => NfqStatus::Valid,
        (None, false) => NfqStatus::Inconclusive,
    };
    Ok(NfqCertificate { level, status })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes occurring as element orders across the report's quotients. By
/// Cauchy's theorem this is exactly the set of primes dividing some quotient
/// order at this level.
pub fn quotient_order_primes(r: &SpectrumReport) -> BTreeSet<u64> {
    let mut primes = BTreeSet::new();
    for e in &r.quotients {
        for &k in e.fingerprint.element_order_histogram().keys() {
            if is_prime(k) {
                primes.insert(k);
            }
        }
    }
    primes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::{todd_coxeter, PermGroup};
    use crate::presentations::{corpus, parse_presentation, quotient_extend};
    use num_traits::ToPrimitive;

    fn entry_orders(r: &SpectrumReport) -> Vec<usize> {
        r.quotients().iter().map(|e| e.fingerprint().order().to_usize().unwrap()).collect()
    }

    #[test]
    fn integer_quotients_are_cyclic_one_per_order() {
        let p = Presentation::free(1);
        let r = finite_quotients(&p, 4, 100_000).unwrap();
        assert!(r.is_complete());
        assert_eq!(entry_orders(&r), vec![1, 2, 3, 4]);
        assert!(r.quotients().iter().all(|e| e.count() == 1));
        // the order-4 quotient is cyclic: an element of order 4 exists
        let top = &r.quotients()[3];
        assert!(top.fingerprint().element_order_histogram().contains_key(&4));
        let primes = quotient_order_primes(&r);
        assert_eq!(primes.into_iter().collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn catalog_counts_and_distinctness() {
        let expected = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1];
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 1;
            let classes = groups_of_order(n);
            assert_eq!(classes.len(), want, "order {n}");
            for g in &classes {
                assert_eq!(g.order(), BigUint::from(n), "regular representation order");
                assert_eq!(g.degree(), n);
            }
            for a in 0..classes.len() {
                for b in a + 1..classes.len() {
                    assert!(
                        !exact_iso(&classes[a], &classes[b]).unwrap(),
                        "order {n}: classes {a} and {b} must differ"
                    );
                }
            }
        }
        assert_eq!(groups_up_to(15).len(), 28);
    }

    #[test]
    fn exact_iso_separates_the_two_groups_of_order_four() {
        let four = groups_of_order(4);
        assert!(!exact_iso(&four[0], &four[1]).unwrap());
        assert!(exact_iso(&four[0], &four[0]).unwrap());
    }

    #[test]
    fn exact_iso_matches_regular_and_natural_representations() {
        // S3 on 3 points vs its regular representation on 6
        let natural = PermGroup::new(
            3,
            vec![
                Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap(),
                Perm::from_cycles(3, &[vec![0, 1]]).unwrap(),
            ],
        );
        let regular = &groups_of_order(6)[1];
        assert_eq!(regular.order(), BigUint::from(6u32));
        assert!(exact_iso(&natural, regular).unwrap());
        let trivial = PermGroup::trivial(1);
        assert!(exact_iso(&trivial, &PermGroup::trivial(5)).unwrap());
    }

    #[test]
    fn exact_iso_exceeds_cap_loudly() {
        // S5 on 5 points has order 120 > 64
        let s5 = PermGroup::new(
            5,
            vec![
                Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap(),
                Perm::from_cycles(5, &[vec![0, 1]]).unwrap(),
            ],
        );
        match exact_iso(&s5, &s5) {
            Err(SpectrumError::OrderCapExceeded { cap }) => assert_eq!(cap, EXACT_ISO_CAP),
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn exact_iso_is_not_fooled_by_equal_histograms() {
        // Heisenberg group mod 3 vs the elementary abelian group of order
        // 27: same element-order histogram {1:1, 3:26}, not isomorphic.
        let heis = parse_presentation(
            "gens a b c\nrel a^3\nrel b^3\nrel c^3\nrel a^-1 b^-1 a b c^-1\nrel a^-1 c^-1 a c\nrel b^-1 c^-1 b c\n",
        )
        .unwrap();
        let cube = parse_presentation(
            "gens a b c\nrel a^3\nrel b^3\nrel c^3\nrel a^-1 b^-1 a b\nrel a^-1 c^-1 a c\nrel b^-1 c^-1 b c\n",
        )
        .unwrap();
        let gh = todd_coxeter(&heis, &[], 200).unwrap().permutation_group().unwrap();
        let gc = todd_coxeter(&cube, &[], 200).unwrap().permutation_group().unwrap();
        assert_eq!(gh.order(), BigUint::from(27u32));
        assert_eq!(gc.order(), BigUint::from(27u32));
        assert_eq!(
            gh.element_order_histogram(27).unwrap(),
            gc.element_order_histogram(27).unwrap()
        );
        assert!(!exact_iso(&gh, &gc).unwrap());
        assert!(!exact_iso(&gc, &gh).unwrap());
    }

    #[test]
    fn higman_spectrum_is_trivial_to_level_eight() {
        let p = corpus::get("higman").unwrap().presentation;
        let r = finite_quotients(&p, 8, 50_000_000).unwrap();
        assert!(r.is_complete());
        assert_eq!(entry_orders(&r), vec![1]);
        assert_eq!(r.quotients()[0].count(), 1);
        assert!(quotient_order_primes(&r).is_empty());
    }

    #[test]
    fn tetrahedral_spectrum_to_level_twelve() {
        let p = corpus::get("triangle(2,3,3)").unwrap().presentation;
        let r = finite_quotients(&p, 12, 10_000_000).unwrap();
        assert!(r.is_complete());
        assert_eq!(entry_orders(&r), vec![1, 3, 12]);
        // order 12: the full group; its abelianization is Z/3
        let top = &r.quotients()[2];
        assert_eq!(top.fingerprint().abelianization().order(), Some(BigUint::from(3u32)));
        // every representative still satisfies its source relators
        for e in r.quotients() {
            let rec = e.representative();
            for rel in rec.source().relators() {
                assert!(rec.image_of(rel).is_identity());
            }
        }
    }

    #[test]
    fn monotone_consistency_of_levels() {
        let p = corpus::get("triangle(2,3,3)").unwrap().presentation;
        let small = finite_quotients(&p, 4, 10_000_000).unwrap();
        let large = finite_quotients(&p, 12, 10_000_000).unwrap();
        let bound = BigUint::from(4u32);
        let restricted: Vec<_> =
            large.quotients().iter().filter(|e| *e.fingerprint().order() <= bound).collect();
        assert_eq!(small.quotients().len(), restricted.len());
        for (a, b) in small.quotients().iter().zip(restricted) {
            assert_eq!(a.fingerprint(), b.fingerprint());
            assert_eq!(a.count(), b.count());
        }
    }

    #[test]
    fn free_group_spectrum_matches_homomorphism_oracle() {
        // oracle: closures of all generator pairs in S_d, d <= 6, keeping
        // groups of order <= 6; these are exactly the 2-generated groups of
        // order <= 6
        let mut oracle_orders = BTreeSet::new();
        for d in 1..=6usize {
            let perms = all_perms(d);
            for s in &perms {
                for t in &perms {
                    if let Ok(els) =
                        crate::enumerator::closure_of(d, &[s.clone(), t.clone()], 7)
                    {
                        oracle_orders.insert(els.len());
                    }
                }
            }
        }
        let p = Presentation::free(2);
        let r = finite_quotients(&p, 6, 50_000_000).unwrap();
        assert!(r.is_complete());
        let spectrum_orders: BTreeSet<usize> = entry_orders(&r).into_iter().collect();
        assert_eq!(spectrum_orders, oracle_orders);
        // class and kernel counts, from hand counts of epimorphisms mod
        // automorphism: C2 has 3 kernels, V4 one, S3 three
        assert_eq!(entry_orders(&r), vec![1, 2, 3, 4, 4, 5, 6, 6]);
        let by_order = |n: u32| -> Vec<&SpectrumEntry> {
            r.quotients()
                .iter()
                .filter(|e| *e.fingerprint().order() == BigUint::from(n))
                .collect()
        };
        assert_eq!(by_order(2)[0].count(), 3);
        let fours = by_order(4);
        let v4 = fours
            .iter()
            .find(|e| !e.fingerprint().element_order_histogram().contains_key(&4))
            .unwrap();
        assert_eq!(v4.count(), 1);
        let sixes = by_order(6);
        let s3 = sixes
            .iter()
            .find(|e| e.fingerprint().abelianization().order() == Some(BigUint::from(2u32)))
            .unwrap();
        assert_eq!(s3.count(), 3);
    }

    fn all_perms(d: usize) -> Vec<Perm> {
        let mut images: Vec<usize> = (0..d).collect();
        let mut out = Vec::new();
        permute(&mut images, 0, &mut out);
        out
    }

    fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
        if k == v.len() {
            out.push(Perm::from_images(v.clone()).unwrap());
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, out);
            v.swap(k, i);
        }
    }

    #[test]
    fn spectra_comparison_finds_smallest_witness() {
        let z = Presentation::free(1);
        let f2 = Presentation::free(2);
        let self_cmp = spectra_equal(&z, &z, 10, 1_000_000).unwrap();
        assert!(self_cmp.is_equal());
        let cmp = spectra_equal(&z, &f2, 6, 50_000_000).unwrap();
        assert!(!cmp.is_equal());
        // smallest disagreement: F2 has the noncyclic order-4 quotient
        assert_eq!(cmp.witness().unwrap().order, BigUint::from(4u32));
        let sym = spectra_equal(&f2, &z, 6, 50_000_000).unwrap();
        assert!(!sym.is_equal());
        assert_eq!(sym.witness().unwrap().order, BigUint::from(4u32));
    }

    #[test]
    fn redundant_relator_does_not_change_the_spectrum() {
        let weeks = corpus::get("weeks").unwrap().presentation;
        let extra = weeks.relators()[0].conjugated_by(&crate::presentations::Word::generator(1));
        let padded = quotient_extend(&weeks, &[extra]).unwrap();
        let cmp = spectra_equal(&weeks, &padded, 10, 50_000_000).unwrap();
        assert!(cmp.is_equal());
    }

    #[test]
    fn comparison_refuses_incomplete_spectra() {
        let p = corpus::get("higman").unwrap().presentation;
        match spectra_equal(&p, &p, 8, 50) {
            Err(SpectrumError::IncompleteSpectrum { .. }) => {}
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn no_quotients_certificates() {
        let higman = corpus::get("higman").unwrap().presentation;
        let cert = no_finite_quotients_certificate(&higman, 8, 50_000_000).unwrap();
        assert!(cert.is_valid());

        let z = Presentation::free(1);
        let refuted = no_finite_quotients_certificate(&z, 2, 100_000).unwrap();
        assert_eq!(*refuted.status(), NfqStatus::Refuted { witness_index: 2 });

        let t334 = corpus::get("triangle(3,3,4)").unwrap().presentation;
        let small = no_finite_quotients_certificate(&t334, 2, 1_000_000).unwrap();
        assert!(small.is_valid(), "no index-2 subgroup: abelianization is Z/3");

        let starved = no_finite_quotients_certificate(&higman, 8, 10).unwrap();
        assert_eq!(*starved.status(), NfqStatus::Inconclusive);
    }

    #[test]
    fn budget_exhaustion_flags_the_report() {
        let p = corpus::get("higman").unwrap().presentation;
        let r = finite_quotients(&p, 8, 10).unwrap();
        assert!(!r.is_complete());
        assert!(r.budget_exhausted());
    }

    #[test]
    fn icosahedral_spectrum_at_level_sixty() {
        let p = corpus::get("triangle(2,3,5)").unwrap().presentation;
        let r = finite_quotients(&p, 60, 100_000_000).unwrap();
        assert!(r.is_complete());
        assert_eq!(entry_orders(&r), vec![1, 60]);
        let top = &r.quotients()[1];
        assert_eq!(top.count(), 1);
        assert!(top.fingerprint().is_perfect());
        let hist = top.fingerprint().element_order_histogram();
        let expected: BTreeMap<u64, u64> = [(1, 1), (2, 15), (3, 20), (5, 24)].into();
        assert_eq!(*hist, expected);
        let primes = quotient_order_primes(&r);
        assert_eq!(primes.into_iter().collect::<Vec<_>>(), vec![2, 3, 5]);
    }
}
