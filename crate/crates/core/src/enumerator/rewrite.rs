//! Subgroup presentations from complete coset tables: Schreier transversals
//! and generators, relator rewriting, conjugation action on the subgroup's
//! generators, and quotient records for finite images.

use super::perm::{Perm, PermGroup};
use super::table::CosetTable;
use super::todd_coxeter::todd_coxeter;
use super::EnumeratorError;
use crate::presentations::{Letter, Presentation, Word};
use crate::zlinalg::{smith_normal_form, IntMatrix};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

fn col_letter(col: usize) -> Letter {
    Letter::new(col / 2, col % 2 == 1)
}

/// BFS spanning tree of the coset graph: `transversal[c]` carries coset 0 to
/// coset c, and the set of words is prefix closed. `tree_edge[c]` is the
/// (source, column) that discovered c, with coset 0 the root.
struct SchreierTree {
    transversal: Vec<Word>,
    tree_edge: Vec<Option<(usize, usize)>>,
}

fn schreier_tree(t: &CosetTable) -> Result<SchreierTree, EnumeratorError> {
    if !t.is_complete() {
        return Err(EnumeratorError::IncompleteTable);
    }
    let n = t.n_cosets();
    let n_cols = 2 * t.presentation().n_gens();
    let mut transversal: Vec<Option<Word>> = vec![None; n];
    let mut tree_edge = vec![None; n];
    transversal[0] = Some(Word::identity());
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let c = queue[head];
        head += 1;
        for col in 0..n_cols {
            let d = t.apply(c, col_letter(col)).expect("complete table");
            if transversal[d].is_none() {
                let mut w = transversal[c].clone().unwrap();
                w.push(col_letter(col));
                transversal[d] = Some(w);
                tree_edge[d] = Some((c, col));
                queue.push(d);
            }
        }
    }
    if queue.len() != n {
        // cannot happen for tables built here; defend against hand-made rows
        return Err(EnumeratorError::IncompleteTable);
    }
    Ok(SchreierTree {
        transversal: transversal.into_iter().map(Option::unwrap).collect(),
        tree_edge,
    })
}

pub fn schreier_transversal(t: &CosetTable) -> Result<Vec<Word>, EnumeratorError> {
    Ok(schreier_tree(t)?.transversal)
}

/// Generators of the point stabilizer of coset 0, one per positive non-tree
/// edge: `u_c x u_d^-1` where the edge c -> d is labeled x. For an index n
/// subgroup of a k generator group this yields n*k - n + 1 words.
pub fn schreier_generator_words(t: &CosetTable) -> Result<Vec<Word>, EnumeratorError> {
    Ok(rewriter(t)?.words)
}

/// True when the stabilizer of coset 0 is normal, i.e. every Schreier
/// generator fixes every coset.
pub fn is_normal(t: &CosetTable) -> Result<bool, EnumeratorError> {
    let gens = schreier_generator_words(t)?;
    for w in &gens {
        for c in 0..t.n_cosets() {
            if t.trace(c, w) != Some(c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct Rewriter<'a> {
    table: &'a CosetTable,
    // new generator index for each positive non-tree edge, indexed [coset][gen]
    edge_gen: Vec<Vec<Option<usize>>>,
    words: Vec<Word>,
}

fn rewriter(t: &CosetTable) -> Result<Rewriter<'_>, EnumeratorError> {
    let tree = schreier_tree(t)?;
    let k = t.presentation().n_gens();
    let mut edge_gen = vec![vec![None; k]; t.n_cosets()];
    let mut words = Vec::new();
    for c in 0..t.n_cosets() {
        for g in 0..k {
            let x = Letter::new(g, false);
            let d = t.apply(c, x).expect("complete table");
            // a tree edge in either orientation is not a generator
            if tree.tree_edge[d] == Some((c, 2 * g)) || tree.tree_edge[c] == Some((d, 2 * g + 1)) {
                continue;
            }
            let mut w = tree.transversal[c].clone();
            w.push(x);
            let w = w.concat(&tree.transversal[d].inverse());
            debug_assert!(!w.is_empty(), "non-tree edge gives a nontrivial word");
            edge_gen[c][g] = Some(words.len());
            words.push(w);
        }
    }
    Ok(Rewriter { table: t, edge_gen, words })
}

impl Rewriter<'_> {
    /// Rewrites a word over the original generators, read at `start`, as a
    /// word over the Schreier generators. Only meaningful when the word
    /// traces back to `start`.
    fn rewrite(&self, start: usize, w: &Word) -> Word {
        let mut c = start;
        let mut out = Vec::new();
        for &l in w.letters() {
            if !l.inv {
                if let Some(g) = self.edge_gen[c][l.gen] {
                    out.push(Letter::new(g, false));
                }
                c = self.table.apply(c, l).expect("complete table");
            } else {
                let d = self.table.apply(c, l).expect("complete table");
                if let Some(g) = self.edge_gen[d][l.gen] {
                    out.push(Letter::new(g, true));
                }
                c = d;
            }
        }
        debug_assert_eq!(c, start, "rewriting a word outside the subgroup");
        Word::from_letters(out)
    }
}

/// Presentation of the stabilizer of coset 0 on the Schreier generators,
/// with one rewritten copy of each relator per coset. Freely trivial
/// relators are dropped.
pub fn reidemeister_schreier(t: &CosetTable) -> Result<Presentation, EnumeratorError> {
    let rw = rewriter(t)?;
    let p = t.presentation();
    let mut names = Vec::with_capacity(rw.words.len());
    for (c, row) in rw.edge_gen.iter().enumerate() {
        for (g, slot) in row.iter().enumerate() {
            if slot.is_some() {
                names.push(format!("{}_{}", p.generator_names()[g], c));
            }
        }
    }
    let mut relators = Vec::new();
    for r in p.relators() {
        for c in 0..t.n_cosets() {
            let w = rw.rewrite(c, r);
            if !w.is_empty() {
                relators.push(w);
            }
        }
    }
    let name = p
        .name()
        .map(|nm| format!("{} subgroup (index {})", nm, t.n_cosets()));
    match Presentation::new(names.clone(), relators.clone(), name.clone()) {
        Ok(q) => Ok(q),
        // derived names can collide when the originals already carry
        // suffixes; fall back to neutral ones
        Err(_) => {
            let plain = (0..names.len()).map(|i| format!("s{}", i)).collect();
            Ok(Presentation::new(plain, relators, name).expect("generated names are distinct"))
        }
    }
}

/// Conjugation action of the ambient generators on the abelianized subgroup:
/// matrix `out[x]` has row j the exponent vector of `x w_j x^-1` rewritten
/// over the Schreier generators. Requires a normal stabilizer.
pub fn action_matrices(t: &CosetTable) -> Result<Vec<IntMatrix>, EnumeratorError> {
    let rw = rewriter(t)?;
    let m = rw.words.len();
    for (j, w) in rw.words.iter().enumerate() {
        for c in 0..t.n_cosets() {
            if t.trace(c, w) != Some(c) {
                return Err(EnumeratorError::NotNormal { gen: j, coset: c });
            }
        }
    }
    let mut out = Vec::new();
    for x in 0..t.presentation().n_gens() {
        let xw = Word::generator(x);
        let mut rows = Vec::with_capacity(m);
        for w in &rw.words {
            let conj = w.conjugated_by(&xw);
            rows.push(rw.rewrite(0, &conj).exponent_sums(m));
        }
        out.push(IntMatrix::from_i64_rows(&rows, m));
    }
    Ok(out)
}

/// A finite quotient: generator images in a permutation group together with
/// the exact order. Construction verifies that the images satisfy the
/// relators.
#[derive(Clone, Debug)]
pub struct QuotientRecord {
    source: Presentation,
    images: Vec<Perm>,
    group: PermGroup,
    order: BigUint,
}

impl QuotientRecord {
    pub fn new(source: Presentation, images: Vec<Perm>) -> Result<QuotientRecord, EnumeratorError> {
        assert_eq!(images.len(), source.n_gens(), "one image per generator");
        let degree = if images.is_empty() { 1 } else { images[0].degree() };
        for (ri, r) in source.relators().iter().enumerate() {
            for pt in 0..degree {
                let mut x = pt;
                for &l in r.letters() {
                    x = if l.inv { images[l.gen].inverse().apply(x) } else { images[l.gen].apply(x) };
                }
                if x != pt {
                    return Err(EnumeratorError::Table(super::TableError::RelatorOpen {
                        relator: ri,
                        coset: pt,
                    }));
                }
            }
        }
        let group = PermGroup::new(degree, images.clone());
        let order = group.order();
        Ok(QuotientRecord { source, images, group, order })
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn images(&self) -> &[Perm] {
        &self.images
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Image of a word under the quotient map.
    pub fn image_of(&self, w: &Word) -> Perm {
        let mut p = Perm::identity(self.group.degree());
        for &l in w.letters() {
            let g = if l.inv { self.images[l.gen].inverse() } else { self.images[l.gen].clone() };
            p = p.compose(&g);
        }
        p
    }
}

/// Quotient by the normal core of the stabilizer of coset 0: the image of
/// the group in its action on the cosets.
pub fn normal_core_quotient(t: &CosetTable) -> Result<QuotientRecord, EnumeratorError> {
    if !t.is_complete() {
        return Err(EnumeratorError::IncompleteTable);
    }
    let images = t.permutation_images()?;
    QuotientRecord::new(t.presentation().clone(), images)
}

/// Coset table of the commutator subgroup, built directly on the elements of
/// the abelianization. Fails when the abelianization is infinite or larger
/// than `cap`.
pub fn commutator_subgroup_table(
    p: &Presentation,
    cap: usize,
) -> Result<CosetTable, EnumeratorError> {
    let k = p.n_gens();
    let e = crate::homology::exponent_matrix(p);
    let snf = smith_normal_form(&e);
    if snf.rank < k {
        return Err(EnumeratorError::InfiniteAbelianization);
    }
    let mut moduli = Vec::with_capacity(k);
    let mut order = BigUint::one();
    for j in 0..k {
        let d = snf.diag[j].magnitude().clone();
        order *= &d;
        if order > BigUint::from(cap) {
            return Err(EnumeratorError::AbelianizationTooLarge {
                order: format!("at least {}", order),
                cap,
            });
        }
        moduli.push(d.to_u64().expect("bounded by cap"));
    }
    let n: usize = moduli.iter().product::<u64>() as usize;
    // class of generator i in the diagonalized coordinates: row i of v
    let gen_class: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let m = BigInt::from(moduli[j]);
                    let r = snf.v.at(i, j).mod_floor(&m);
                    r.magnitude().to_u64().expect("reduced below modulus")
                })
                .collect()
        })
        .collect();
    let stride: Vec<usize> = {
        let mut s = Vec::with_capacity(k);
        let mut acc = 1usize;
        for &m in &moduli {
            s.push(acc);
            acc *= m as usize;
        }
        s
    };
    let decode = |mut t: usize| -> Vec<u64> {
        let mut a = vec![0u64; k];
        for j in 0..k {
            a[j] = (t % moduli[j] as usize) as u64;
            t /= moduli[j] as usize;
        }
        a
    };
    let encode = |a: &[u64]| -> usize {
        a.iter().zip(&stride).map(|(&x, &s)| x as usize * s).sum()
    };
    let mut rows = Vec::with_capacity(n);
    for t in 0..n {
        let a = decode(t);
        let mut row = Vec::with_capacity(2 * k);
        for i in 0..k {
            let add: Vec<u64> = (0..k)
                .map(|j| (a[j] + gen_class[i][j]) % moduli[j])
                .collect();
            let sub: Vec<u64> = (0..k)
                .map(|j| (a[j] + moduli[j] - gen_class[i][j]) % moduli[j])
                .collect();
            row.push(Some(encode(&add)));
            row.push(Some(encode(&sub)));
        }
        rows.push(row);
    }
    let mut subgroup = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            subgroup.push(Word::generator(i).commutator(&Word::generator(j)));
        }
    }
    let mut table = CosetTable::from_parts(p.clone(), subgroup, rows, true);
    table.verify().expect("translation table is closed");
    table.standardize();
    Ok(table)
}

/// Coset table for an arbitrary finite-index subgroup given by words, via
/// enumeration. Thin wrapper that keeps call sites uniform.
pub fn subgroup_table(
    p: &Presentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, EnumeratorError> {
    todd_coxeter(p, subgroup, max_cosets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::h1;
    use crate::presentations::{corpus, parse_presentation, signed_letter};

    fn word(ls: &[i64]) -> Word {
        Word::from_letters(ls.iter().map(|&s| signed_letter(s)))
    }

    #[test]
    fn transversal_is_prefix_closed() {
        let p = corpus::get("triangle(2,3,3)").unwrap().presentation;
        let t = todd_coxeter(&p, &[], 100).unwrap();
        let tr = schreier_transversal(&t).unwrap();
        assert_eq!(tr.len(), 12);
        assert!(tr[0].is_empty());
        for (c, w) in tr.iter().enumerate() {
            assert_eq!(t.trace(0, w), Some(c));
            // each proper prefix is also a transversal word
            for cut in 0..w.len() {
                let prefix = Word::from_letters(w.letters()[..cut].iter().copied());
                let d = t.trace(0, &prefix).unwrap();
                assert_eq!(tr[d], prefix);
            }
        }
    }

    #[test]
    fn schreier_generator_count_for_free_groups() {
        for k in 1..=3usize {
            let f = Presentation::free(k);
            // kernel of "every generator maps to 1" onto Z/n, generated by
            // a^n and a^i g_j a^-(i+1) over the transversal {a^i}
            for n in 2..=4usize {
                let a = Word::generator(0);
                let mut subgroup = vec![a.pow(n as i64)];
                for g in 1..k {
                    for i in 0..n {
                        let w = a.pow(i as i64).concat(&Word::generator(g)).concat(&a.pow(-(i as i64 + 1)));
                        subgroup.push(w);
                    }
                }
                let t = todd_coxeter(&f, &subgroup, 200).unwrap();
                assert!(t.is_complete());
                assert_eq!(t.n_cosets(), n);
                let gens = schreier_generator_words(&t).unwrap();
                assert_eq!(gens.len(), n * k - n + 1);
                for w in &gens {
                    assert_eq!(t.trace(0, w), Some(0));
                }
            }
        }
    }

    #[test]
    fn rewriting_presents_the_kernel() {
        // index 2 in free(2): kernel of both generators mapping to the flip
        let f = Presentation::free(2);
        let t = todd_coxeter(&f, &[word(&[1, 1]), word(&[2, -1]), word(&[1, 2])], 100).unwrap();
        assert_eq!(t.n_cosets(), 2);
        let q = reidemeister_schreier(&t).unwrap();
        // free of rank 3, no relators survive
        assert_eq!(q.n_gens(), 3);
        assert!(q.relators().is_empty());
        assert_eq!(h1(&q).to_string(), "Z^3");
    }

    #[test]
    fn rewritten_subgroup_of_finite_cyclic() {
        // Z/6 onto Z/2: subgroup Z/3
        let p = parse_presentation("gens a\nrel a^6\n").unwrap();
        let t = todd_coxeter(&p, &[word(&[1, 1])], 100).unwrap();
        assert_eq!(t.n_cosets(), 2);
        let q = reidemeister_schreier(&t).unwrap();
        assert_eq!(h1(&q).to_string(), "Z/3");
    }

    #[test]
    fn normality_detection() {
        let s3 = parse_presentation("gens s t\nrel s^2\nrel t^3\nrel s t s t\n").unwrap();
        // <t> has index 2, normal
        let a3 = todd_coxeter(&s3, &[word(&[2])], 100).unwrap();
        assert!(is_normal(&a3).unwrap());
        // <s> has index 3, not normal
        let c2 = todd_coxeter(&s3, &[word(&[1])], 100).unwrap();
        assert_eq!(c2.n_cosets(), 3);
        assert!(!is_normal(&c2).unwrap());
    }

    #[test]
    fn action_on_abelianized_kernel() {
        // infinite dihedral <a, b | b^2, b a b a>: kernel of a -> 1, b -> flip
        // is <a> = Z, with b acting by inversion
        let p = parse_presentation("gens a b\nrel b^2\nrel b a b a\n").unwrap();
        let t = todd_coxeter(&p, &[word(&[1])], 100).unwrap();
        assert_eq!(t.n_cosets(), 2);
        assert!(is_normal(&t).unwrap());
        let ms = action_matrices(&t).unwrap();
        let q = reidemeister_schreier(&t).unwrap();
        assert_eq!(h1(&q).to_string(), "Z");
        let m = q.n_gens();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[0].rows(), m);
        // conjugation by a is trivial on the kernel's generators
        for j in 0..m {
            for l in 0..m {
                let want = i64::from(j == l);
                assert_eq!(ms[0].at(j, l), &want.into());
            }
        }
        // coinvariants of the b action: Z with t identified with -t, so Z/2
        let mut rows: Vec<Vec<i64>> = q.relators().iter().map(|r| r.exponent_sums(m)).collect();
        for mx in &ms {
            for j in 0..m {
                let mut row: Vec<i64> = (0..m)
                    .map(|c| i64::try_from(mx.at(j, c).clone()).unwrap())
                    .collect();
                row[j] -= 1;
                rows.push(row);
            }
        }
        let snf = smith_normal_form(&IntMatrix::from_i64_rows(&rows, m));
        let inv = crate::homology::AbelianInvariants::from_diag(&snf.diag, snf.rank, m);
        assert_eq!(inv.to_string(), "Z/2");
    }

    #[test]
    fn core_quotient_verifies_relators() {
        let p = corpus::get("triangle(2,3,5)").unwrap().presentation;
        let t = todd_coxeter(&p, &[word(&[1])], 200).unwrap();
        let q = normal_core_quotient(&t).unwrap();
        assert_eq!(q.order(), &BigUint::from(60u32));
        assert!(q.group().is_transitive());
        assert_eq!(q.image_of(&word(&[1])).order(), 2);
    }

    #[test]
    fn commutator_table_of_small_groups() {
        // Z/3 x Z/3 from <a, b | a^3, b^3, [a,b]>
        let p = parse_presentation("gens a b\nrel a^3\nrel b^3\nrel a^-1 b^-1 a b\n").unwrap();
        let t = commutator_subgroup_table(&p, 1000).unwrap();
        assert_eq!(t.n_cosets(), 9);
        assert!(t.verify().is_ok());
        assert!(is_normal(&t).unwrap());

        // S3: commutator subgroup A3 has index 2
        let s3 = parse_presentation("gens s t\nrel s^2\nrel t^3\nrel s t s t\n").unwrap();
        let t = commutator_subgroup_table(&s3, 1000).unwrap();
        assert_eq!(t.n_cosets(), 2);

        // free group: infinite abelianization
        assert!(matches!(
            commutator_subgroup_table(&Presentation::free(2), 1000),
            Err(EnumeratorError::InfiniteAbelianization)
        ));
    }

    #[test]
    fn commutator_table_cross_checks() {
        // index equals the abelianization order, stabilizer is normal, and
        // the coset action is the abelianization itself
        for (name, h1_order) in [("triangle(2,3,3)", 3u32), ("gamma4", 45)] {
            let p = corpus::get(name).unwrap().presentation;
            assert_eq!(h1(&p).order(), Some(h1_order.into()));
            let t = commutator_subgroup_table(&p, 100_000).unwrap();
            assert_eq!(t.n_cosets(), h1_order as usize);
            assert!(is_normal(&t).unwrap());
            let q = normal_core_quotient(&t).unwrap();
            assert_eq!(q.order(), &BigUint::from(h1_order));
            assert_eq!(
                q.group().derived_series_orders(100_000).unwrap(),
                vec![BigUint::from(h1_order), BigUint::one()]
            );
            assert_eq!(q.group().abelianization(100_000).unwrap(), h1(&p));
        }
    }
}
