//! Fibre products of a group with itself over a common quotient, and the
//! certificates that make such a product a candidate pair: triviality of the
//! quotient's finite quotients to a level, a zero certificate for its second
//! homology, surjectivity of the fibre product onto finite quotients of the
//! ambient product, nested-chain step certificates, and the diagonal-image
//! sanity check.
//!
//! The fibre product P of G -> Q with itself is handled through a generating
//! set only: it is generally not finitely presentable, so no presentation of
//! P is ever materialized.

use crate::enumerator::{todd_coxeter, Perm, PermGroup, QuotientRecord};
use crate::homology::{h2_certificate, H2Certificate};
use crate::presentations::{quotient_extend, Letter, Presentation, Word};
use crate::spectrum::{
    self, iso, no_finite_quotients_certificate, quotient_kernels, NfqCertificate,
    SMALL_GROUPS_CAP,
};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use std::collections::HashSet;
use std::fmt;

#[derive(Debug)]
pub enum GrothendieckError {
    EmptyRelatorSet,
    UndeclaredGenerator { gen: usize, n_gens: usize },
    EmptyChain,
    NonNestedChain { step: usize },
    QuotientNotFiniteAtBudget { max_cosets: usize },
    IncompleteEnumeration { what: &'static str },
    Presentation(crate::presentations::PresentationError),
    Enumerator(crate::enumerator::EnumeratorError),
    Spectrum(spectrum::SpectrumError),
}

impl fmt::Display for GrothendieckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrothendieckError::EmptyRelatorSet => {
                write!(f, "the extra relator set must be nonempty")
            }
            GrothendieckError::UndeclaredGenerator { gen, n_gens } => {
                write!(f, "relator uses generator {gen} but the presentation has {n_gens}")
            }
            GrothendieckError::EmptyChain => write!(f, "chain must contain at least one set"),
            GrothendieckError::NonNestedChain { step } => {
                write!(f, "relator set {step} is not contained in set {}", step + 1)
            }
            GrothendieckError::QuotientNotFiniteAtBudget { max_cosets } => {
                write!(f, "quotient not shown finite within {max_cosets} cosets")
            }
            GrothendieckError::IncompleteEnumeration { what } => {
                write!(f, "enumeration of {what} did not finish within the node budget")
            }
            GrothendieckError::Presentation(e) => write!(f, "{e}"),
            GrothendieckError::Enumerator(e) => write!(f, "{e}"),
            GrothendieckError::Spectrum(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for GrothendieckError {}

impl From<crate::presentations::PresentationError> for GrothendieckError {
    fn from(e: crate::presentations::PresentationError) -> Self {
        GrothendieckError::Presentation(e)
    }
}

impl From<crate::enumerator::EnumeratorError> for GrothendieckError {
    fn from(e: crate::enumerator::EnumeratorError) -> Self {
        GrothendieckError::Enumerator(e)
    }
}

impl From<spectrum::SpectrumError> for GrothendieckError {
    fn from(e: spectrum::SpectrumError) -> Self {
        GrothendieckError::Spectrum(e)
    }
}

/// The fibre product P = {(g,h) : both map to the same element of Q} of
/// G = <X|R> with itself over Q = <X|R,S>, carried as a generating set
/// inside the ambient direct product: the diagonal pairs (x,x) for x in X
/// and the one-sided pairs (s,1) for s in S.
#[derive(Clone, Debug)]
pub struct FibreProductSpec {
    g: Presentation,
    extra_relators: Vec<Word>,
    ambient: Presentation,
    generators_of_p: Vec<Word>,
}

impl FibreProductSpec {
    pub fn base(&self) -> &Presentation {
        &self.g
    }

    pub fn extra_relators(&self) -> &[Word] {
        &self.extra_relators
    }

    pub fn ambient(&self) -> &Presentation {
        &self.ambient
    }

    /// Words over the ambient product's generators.
    pub fn generators_of_p(&self) -> &[Word] {
        &self.generators_of_p
    }

    /// The common quotient Q = <X | R, S>.
    pub fn quotient(&self) -> Presentation {
        quotient_extend(&self.g, &self.extra_relators).expect("relators were validated")
    }
}

/// Builds the fibre product generating set for G -> G/<<S>>. The one-sided
/// generators (s,1) normally generate K x 1 with K the normal closure of S,
/// and together with the diagonal they generate P.
pub fn fibre_product(
    g: &Presentation,
    s: &[Word],
) -> Result<FibreProductSpec, GrothendieckError> {
    if s.is_empty() {
        return Err(GrothendieckError::EmptyRelatorSet);
    }
    let n = g.n_gens();
    for w in s {
        if let Some(m) = w.max_gen() {
            if m >= n {
                return Err(GrothendieckError::UndeclaredGenerator { gen: m, n_gens: n });
            }
        }
    }
    let ambient = crate::presentations::direct_product(g, g);
    let mut generators_of_p: Vec<Word> = (0..n)
        .map(|i| Word::from_letters([Letter::new(i, false), Letter::new(n + i, false)]))
        .collect();
    generators_of_p.extend(s.iter().cloned());
    Ok(FibreProductSpec {
        g: g.clone(),
        extra_relators: s.to_vec(),
        ambient,
        generators_of_p,
    })
}

/// Index of P in the ambient product, which equals |Q|.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FibreIndex {
    Finite(usize),
    /// The coset enumeration did not close within the budget. Says nothing
    /// about finiteness; a value, not an error.
    UnboundedAtBudget,
}

pub fn fibre_index(
    spec: &FibreProductSpec,
    max_cosets: usize,
) -> Result<FibreIndex, GrothendieckError> {
    let q = spec.quotient();
    let t = todd_coxeter(&q, &[], max_cosets)?;
    if t.is_complete() {
        Ok(FibreIndex::Finite(t.n_cosets()))
    } else {
        Ok(FibreIndex::UnboundedAtBudget)
    }
}

#[derive(Clone, Debug)]
pub struct SurjectivityReport {
    level: usize,
    product_level: usize,
    checks: Vec<(QuotientRecord, bool)>,
    product_checks: Vec<(QuotientRecord, bool)>,
}

impl SurjectivityReport {
    pub fn level(&self) -> usize {
        self.level
    }

    /// Level used for the ambient-product checks; smaller than `level`
    /// because the ambient presentation has twice the generators.
    pub fn product_level(&self) -> usize {
        self.product_level
    }

    /// One entry per kernel of a quotient of G of order <= level: pass iff
    /// the normal closure of the images of S is the whole image group.
    pub fn checks(&self) -> &[(QuotientRecord, bool)] {
        &self.checks
    }

    /// One entry per kernel of a quotient of the ambient product of order
    /// <= product_level: pass iff the images of the P-generators generate
    /// the whole image group.
    pub fn product_checks(&self) -> &[(QuotientRecord, bool)] {
        &self.product_checks
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
            && self.product_checks.iter().all(|(_, ok)| *ok)
    }

    pub fn to_json(&self) -> Value {
        let row = |(rec, ok): &(QuotientRecord, bool)| {
            json!({"order": rec.order().to_string(), "pass": ok})
        };
        json!({
            "level": self.level,
            "product_level": self.product_level,
            "all_pass": self.all_pass(),
            "checks": self.checks.iter().map(row).collect::<Vec<_>>(),
            "product_checks": self.product_checks.iter().map(row).collect::<Vec<_>>(),
        })
    }
}

/// Kernels of all quotients of a free group of order <= level: for each
/// group in the order-classified catalog, the generating tuples up to
/// automorphism. The subgroup search is hopeless on free presentations (the
/// class counts explode factorially), so this goes through the
/// classification instead; both routes enumerate the same kernels.
fn free_quotient_kernels(
    p: &Presentation,
    level: usize,
) -> Result<Vec<QuotientRecord>, GrothendieckError> {
    assert!(level <= SMALL_GROUPS_CAP);
    let k = p.n_gens();
    let mut records: Vec<QuotientRecord> = Vec::new();
    for n in 1..=level {
        for f in spectrum::groups_of_order(n) {
            let m = iso::model(&f, n).map_err(spectrum::SpectrumError::Perm)?;
            let auts = iso::automorphisms_of(&m);
            let mut seen: HashSet<Vec<usize>> = HashSet::new();
            let mut tuple = vec![0usize; k];
            loop {
                if iso::closure_size(&m.mult, m.id, &tuple) == m.n {
                    let canon = auts
                        .iter()
                        .map(|a| tuple.iter().map(|&t| a[t]).collect::<Vec<usize>>())
                        .min()
                        .expect("identity automorphism always present");
                    if seen.insert(canon.clone()) {
                        let images: Vec<Perm> =
                            canon.iter().map(|&i| m.elements[i].clone()).collect();
                        records.push(QuotientRecord::new(p.clone(), images)?);
                    }
                }
                // mixed-radix increment over the element indices
                let mut pos = 0;
                loop {
                    if pos == k {
                        break;
                    }
                    tuple[pos] += 1;
                    if tuple[pos] < m.n {
                        break;
                    }
                    tuple[pos] = 0;
                    pos += 1;
                }
                if pos == k {
                    break;
                }
            }
        }
    }
    records.sort_by_key(spectrum::record_key);
    Ok(records)
}

/// Kernels of quotients of order <= level, one record each, complete or an
/// error. Free presentations go through the catalog route.
fn kernels_complete(
    p: &Presentation,
    level: usize,
    max_nodes: usize,
    what: &'static str,
) -> Result<Vec<QuotientRecord>, GrothendieckError> {
    if p.is_free_presentation() && level <= SMALL_GROUPS_CAP {
        return free_quotient_kernels(p, level);
    }
    let (kernels, complete) = quotient_kernels(p, level, max_nodes)?;
    if !complete {
        return Err(GrothendieckError::IncompleteEnumeration { what });
    }
    Ok(kernels)
}

fn default_product_level(ambient_gens: usize, level: usize) -> usize {
    // at index <= 4 every kept core action is regular and the search stays
    // cheap even for 4 generators; with more generators index 3 is the
    // practical bound
    let m = if ambient_gens <= 4 { 4 } else { 3 };
    m.min(level).max(1)
}

/// K-density test against every finite quotient of G up to the level: P
/// surjects onto the corresponding quotients of G x G exactly when the
/// normal closure of q(S) is the whole image for every quotient q. A
/// failure group F/<<q(S)>> is a common nontrivial quotient of Q and F.
/// Ambient product quotients are checked directly at a smaller level.
pub fn surjectivity_check(
    spec: &FibreProductSpec,
    level: usize,
    max_nodes: usize,
) -> Result<SurjectivityReport, GrothendieckError> {
    let g_kernels = kernels_complete(spec.base(), level, max_nodes, "quotients of the base")?;
    let mut checks = Vec::new();
    for rec in g_kernels {
        let seeds: Vec<Perm> =
            spec.extra_relators().iter().map(|w| rec.image_of(w)).collect();
        let cap = rec.order().to_usize().expect("quotient order fits: it is at most the level");
        let closure = rec
            .group()
            .normal_closure(&seeds, cap)
            .map_err(spectrum::SpectrumError::Perm)?;
        let pass = closure.order() == *rec.order();
        checks.push((rec, pass));
    }

    let product_level = default_product_level(spec.ambient().n_gens(), level);
    let ambient_kernels = kernels_complete(
        spec.ambient(),
        product_level,
        max_nodes,
        "quotients of the ambient product",
    )?;
    let mut product_checks = Vec::new();
    for rec in ambient_kernels {
        let images: Vec<Perm> =
            spec.generators_of_p().iter().map(|w| rec.image_of(w)).collect();
        let image_order = PermGroup::new(rec.group().degree(), images).order();
        let pass = image_order == *rec.order();
        product_checks.push((rec, pass));
    }
    Ok(SurjectivityReport { level, product_level, checks, product_checks })
}

#[derive(Clone, Debug)]
pub struct PTCertificate {
    level: usize,
    nfq: NfqCertificate,
    h2: H2Certificate,
    fibre: FibreProductSpec,
    surjectivity: SurjectivityReport,
    valid: bool,
    caveat: String,
}

impl PTCertificate {
    pub fn is_valid(&self) -> bool {
        self.valid
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn nfq(&self) -> &NfqCertificate {
        &self.nfq
    }

    pub fn h2(&self) -> &H2Certificate {
        &self.h2
    }

    pub fn fibre(&self) -> &FibreProductSpec {
        &self.fibre
    }

    pub fn surjectivity(&self) -> &SurjectivityReport {
        &self.surjectivity
    }

    pub fn caveat(&self) -> &str {
        &self.caveat
    }

    /// Highest level with a valid quotient-triviality certificate: the
    /// requested level when valid, 0 when not certified.
    pub fn q_trivial_to(&self) -> usize {
        if self.nfq.is_valid() {
            self.level
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Value {
        let ambient = self.fibre.ambient();
        json!({
            "valid": self.valid,
            "q_trivial_to": self.q_trivial_to(),
            "nfq": self.nfq.to_json(),
            "h2": serde_json::to_value(&self.h2).expect("serializable"),
            "fibre_generators": self.fibre.generators_of_p()
                .iter()
                .map(|w| ambient.word_string(w))
                .collect::<Vec<_>>(),
            "surjectivity": self.surjectivity.to_json(),
            "caveat": self.caveat,
        })
    }
}

/// Assembles the full certificate for the pair (P, G x G) built from
/// G -> Q = G/<<S>>: quotient-triviality of Q to the level, a zero H2
/// certificate for Q, and the surjectivity report. All three must hold.
///
/// A valid certificate checks the hypotheses up to the level only. The
/// conclusion for the pair needs triviality of all finite quotients of Q,
/// which no finite computation establishes, and the injectivity direction
/// of the completion comparison is not examined at all; the caveat field
/// states both restrictions.
pub fn pt_certify(
    g: &Presentation,
    s: &[Word],
    level: usize,
    max_nodes: usize,
) -> Result<PTCertificate, GrothendieckError> {
    let fibre = fibre_product(g, s)?;
    let q = fibre.quotient();
    let nfq = no_finite_quotients_certificate(&q, level, max_nodes)?;
    let h2 = h2_certificate(&q);
    let surjectivity = surjectivity_check(&fibre, level, max_nodes)?;
    let valid = nfq.is_valid() && h2.is_zero() && surjectivity.all_pass();
    let caveat = format!(
        "quotient triviality is evidenced to level {level} only; the pair conclusion \
         requires it at every level, and injectivity of the induced map on profinite \
         completions is not checked"
    );
    Ok(PTCertificate { level, nfq, h2, fibre, surjectivity, valid, caveat })
}

#[derive(Clone, Debug)]
pub struct ChainStep {
    from: usize,
    to: usize,
    nfq: NfqCertificate,
    h2_next: H2Certificate,
    /// For each generator of P_from, its index among the generators of
    /// P_to: diagonal generators are shared, and each (s,1) with s in the
    /// smaller set reappears in the larger one.
    generator_map: Vec<usize>,
}

impl ChainStep {
    pub fn endpoints(&self) -> (usize, usize) {
        (self.from, self.to)
    }

    pub fn nfq(&self) -> &NfqCertificate {
        &self.nfq
    }

    pub fn h2_next(&self) -> &H2Certificate {
        &self.h2_next
    }

    pub fn generator_map(&self) -> &[usize] {
        &self.generator_map
    }

    pub fn passes(&self) -> bool {
        self.nfq.is_valid() && self.h2_next.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct ChainReport {
    level: usize,
    steps: Vec<ChainStep>,
    valid: bool,
}

impl ChainReport {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn steps(&self) -> &[ChainStep] {
        &self.steps
    }

    pub fn is_valid(&self) -> bool {
        self.valid
    }

    pub fn to_json(&self) -> Value {
        json!({
            "level": self.level,
            "valid": self.valid,
            "steps": self.steps.iter().map(|s| json!({
                "from": s.from,
                "to": s.to,
                "nfq": s.nfq.to_json(),
                "h2_next": serde_json::to_value(&s.h2_next).expect("serializable"),
                "generator_map": s.generator_map,
                "pass": s.passes(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Certifies each inclusion step of a nested family of relator sets
/// S_1 ⊆ S_2 ⊆ ... : step (i, i+1) needs quotient-triviality of Q_i to the
/// level and a zero H2 certificate for Q_{i+1}, and emits the witness that
/// every generator of P_i is literally a generator of P_{i+1}. A chain of
/// length one degenerates to the certificate components for its single set.
/// Steps are reported individually; the report is valid only if every step
/// passes.
pub fn nested_chain_certify(
    g: &Presentation,
    chain: &[Vec<Word>],
    level: usize,
    max_nodes: usize,
) -> Result<ChainReport, GrothendieckError> {
    if chain.is_empty() {
        return Err(GrothendieckError::EmptyChain);
    }
    for s in chain {
        // validates generators and nonemptiness
        fibre_product(g, s)?;
    }
    for i in 1..chain.len() {
        if !chain[i - 1].iter().all(|w| chain[i].contains(w)) {
            return Err(GrothendieckError::NonNestedChain { step: i });
        }
    }
    let n = g.n_gens();
    let quotient = |s: &[Word]| quotient_extend(g, s).expect("validated above");
    let mut steps = Vec::new();
    if chain.len() == 1 {
        let q = quotient(&chain[0]);
        steps.push(ChainStep {
            from: 1,
            to: 1,
            nfq: no_finite_quotients_certificate(&q, level, max_nodes)?,
            h2_next: h2_certificate(&q),
            generator_map: (0..n + chain[0].len()).collect(),
        });
    }
    for i in 1..chain.len() {
        let q_lower = quotient(&chain[i - 1]);
        let q_upper = quotient(&chain[i]);
        let mut generator_map: Vec<usize> = (0..n).collect();
        for w in &chain[i - 1] {
            let j = chain[i].iter().position(|v| v == w).expect("nestedness checked");
            generator_map.push(n + j);
        }
        steps.push(ChainStep {
            from: i,
            to: i + 1,
            nfq: no_finite_quotients_certificate(&q_lower, level, max_nodes)?,
            h2_next: h2_certificate(&q_upper),
            generator_map,
        });
    }
    let valid = steps.iter().all(|s| s.passes());
    Ok(ChainReport { level, steps, valid })
}

#[derive(Clone, Debug)]
pub struct DiagonalReport {
    quotient_order: usize,
    image_order: BigUint,
    generators_diagonal: bool,
}

impl DiagonalReport {
    pub fn quotient_order(&self) -> usize {
        self.quotient_order
    }

    pub fn image_order(&self) -> &BigUint {
        &self.image_order
    }

    pub fn generators_diagonal(&self) -> bool {
        self.generators_diagonal
    }

    pub fn passes(&self) -> bool {
        self.generators_diagonal && self.image_order == BigUint::from(self.quotient_order)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "quotient_order": self.quotient_order,
            "image_order": self.image_order.to_string(),
            "generators_diagonal": self.generators_diagonal,
            "pass": self.passes(),
        })
    }
}

/// Verifies that the image of P under the two coordinate maps to Q is
/// exactly the diagonal copy of Q inside Q x Q, on the regular permutation
/// representation from coset enumeration.
pub fn diagonal_image_check(
    spec: &FibreProductSpec,
    max_cosets: usize,
) -> Result<DiagonalReport, GrothendieckError> {
    let q = spec.quotient();
    let t = todd_coxeter(&q, &[], max_cosets)?;
    if !t.is_complete() {
        return Err(GrothendieckError::QuotientNotFiniteAtBudget { max_cosets });
    }
    let m = t.n_cosets();
    let q_images =
        t.permutation_images().map_err(crate::enumerator::EnumeratorError::Table)?;
    let n = spec.base().n_gens();
    // ambient generator i acts on the first block, generator n+i on the second
    let block = |p: &Perm, second: bool| -> Perm {
        let mut im: Vec<usize> = (0..2 * m).collect();
        for x in 0..m {
            if second {
                im[m + x] = m + p.apply(x);
            } else {
                im[x] = p.apply(x);
            }
        }
        Perm::from_images(im).expect("block action is a bijection")
    };
    let ambient_images: Vec<Perm> = (0..n)
        .map(|i| block(&q_images[i], false))
        .chain((0..n).map(|i| block(&q_images[i], true)))
        .collect();
    let eval = |w: &Word| -> Perm {
        let mut p = Perm::identity(2 * m);
        for &l in w.letters() {
            let g =
                if l.inv { ambient_images[l.gen].inverse() } else { ambient_images[l.gen].clone() };
            p = p.compose(&g);
        }
        p
    };
    let p_images: Vec<Perm> = spec.generators_of_p().iter().map(|w| eval(w)).collect();
    let generators_diagonal = p_images
        .iter()
        .all(|p| (0..m).all(|x| p.apply(m + x) == m + p.apply(x)));
    let image_order = PermGroup::new(2 * m, p_images).order();
    Ok(DiagonalReport { quotient_order: m, image_order, generators_diagonal })
}
