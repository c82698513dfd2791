//! Exact integer matrices: Smith normal form with recorded unimodular
//! transforms, integer left kernels, and a fraction-free determinant.
//!
//! Everything is arbitrary precision; intermediate growth is handled by
//! `BigInt`, never by floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix over the integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds from i64 rows; `cols` disambiguates the zero-row case.
    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = IntMatrix::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.at(k, j);
                    let cur = out.at(i, j) + t;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    /// Decimal-string rows, the JSON form used by the command line.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_string()).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row a += c * row b
    fn row_addmul(&mut self, a: usize, b: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = c * self.at(b, j);
            let v = self.at(a, j) + t;
            self.set(a, j, v);
        }
    }

    /// col a += c * col b
    fn col_addmul(&mut self, a: usize, b: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = c * self.at(i, b);
            let v = self.at(i, a) + t;
            self.set(i, a, v);
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.at(a, j);
            self.set(a, j, v);
        }
    }
}

/// `u * m * v = diag(d)` with `u`, `v` unimodular. `diag` has length
/// `min(rows, cols)`; nonzero entries come first, are positive, and each
/// divides the next. `rank` counts them.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let mut a = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let lim = m.rows().min(m.cols());
    let mut t = 0usize;
    while t < lim {
        let Some((pi, pj)) = min_abs_entry(&a, t) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..a.rows() {
                if !a.at(i, t).is_zero() {
                    let q = -(a.at(i, t) / a.at(t, t));
                    a.row_addmul(i, t, &q);
                    u.row_addmul(i, t, &q);
                    if !a.at(i, t).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..a.cols() {
                if !a.at(t, j).is_zero() {
                    let q = -(a.at(t, j) / a.at(t, t));
                    a.col_addmul(j, t, &q);
                    v.col_addmul(j, t, &q);
                    if !a.at(t, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // a residue got smaller than the pivot somewhere; re-pick
                let (pi, pj) = min_abs_entry(&a, t).expect("pivot region nonzero");
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // pivot row and column are clear; force pivot | submatrix
            match non_divisible(&a, t) {
                Some(i) => {
                    a.row_addmul(t, i, &BigInt::one());
                    u.row_addmul(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        t += 1;
    }
    let rank = t;
    for k in 0..rank {
        if a.at(k, k).is_negative() {
            a.negate_row(k);
            u.negate_row(k);
        }
    }
    let diag = (0..lim).map(|k| a.at(k, k).clone()).collect();
    SmithNormalForm { diag, rank, u, v }
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.at(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.at(bi, bj).abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// First row i > t whose row has an entry not divisible by the pivot.
fn non_divisible(a: &IntMatrix, t: usize) -> Option<usize> {
    let p = a.at(t, t).clone();
    for i in t + 1..a.rows() {
        for j in t + 1..a.cols() {
            if !a.at(i, j).mod_floor(&p).is_zero() {
                return Some(i);
            }
        }
    }
    None
}

/// Basis for the left kernel `{ x : x m = 0 }` as matrix rows, each divided
/// by its content with the first nonzero entry positive.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let mut out = IntMatrix::zero(m.rows() - snf.rank, m.rows());
    for (k, i) in (snf.rank..m.rows()).enumerate() {
        let mut row: Vec<BigInt> = snf.u.row(i).to_vec();
        let mut content = BigInt::zero();
        for x in &row {
            content = content.gcd(x);
        }
        if !content.is_zero() && !content.is_one() {
            for x in &mut row {
                *x = &*x / &content;
            }
        }
        if let Some(first) = row.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in &mut row {
                    *x = -&*x;
                }
            }
        }
        for (j, x) in row.into_iter().enumerate() {
            out.set(k, j, x);
        }
    }
    out
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn bareiss_determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant needs a square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.at(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.at(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j);
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division is exact");
                let _ = r;
                a.set(i, j, q);
            }
            a.set(i, k, BigInt::zero());
        }
        prev = a.at(k, k).clone();
    }
    sign * a.at(n - 1, n - 1).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
        IntMatrix::from_i64_rows(rows, cols)
    }

    fn check_snf(mat: &IntMatrix) -> SmithNormalForm {
        let snf = smith_normal_form(mat);
        let prod = snf.u.mul(mat).mul(&snf.v);
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                let want = if i == j && i < snf.diag.len() {
                    snf.diag[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(*prod.at(i, j), want, "u m v is not the stated diagonal");
            }
        }
        assert_eq!(bareiss_determinant(&snf.u).abs(), BigInt::one());
        assert_eq!(bareiss_determinant(&snf.v).abs(), BigInt::one());
        for k in 0..snf.diag.len() {
            if k < snf.rank {
                assert!(snf.diag[k] > BigInt::zero());
                if k + 1 < snf.rank {
                    assert!(snf.diag[k + 1].mod_floor(&snf.diag[k]).is_zero());
                }
            } else {
                assert!(snf.diag[k].is_zero());
            }
        }
        snf
    }

    #[test]
    fn snf_coprime_diagonal_merges() {
        let snf = check_snf(&m(&[vec![2, 0], vec![0, 3]], 2));
        assert_eq!(snf.diag, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn snf_antidiagonal_five() {
        let snf = check_snf(&m(&[vec![0, 5], vec![5, 0]], 2));
        assert_eq!(snf.diag, vec![BigInt::from(5), BigInt::from(5)]);
    }

    #[test]
    fn snf_mixed_signs() {
        let snf = check_snf(&m(&[vec![-3, 6], vec![6, 3]], 2));
        assert_eq!(snf.diag, vec![BigInt::from(3), BigInt::from(15)]);
    }

    #[test]
    fn snf_rank_deficient_and_rectangular() {
        let snf = check_snf(&m(&[vec![1, 2, 3], vec![2, 4, 6]], 3));
        assert_eq!(snf.rank, 1);
        assert_eq!(snf.diag, vec![BigInt::from(1), BigInt::zero()]);
        let snf = check_snf(&m(&[], 3));
        assert_eq!(snf.rank, 0);
        assert!(snf.diag.is_empty());
    }

    #[test]
    fn left_kernel_examples() {
        // duplicate rows: kernel is (1, -1)
        let k = left_kernel(&m(&[vec![1, 0], vec![1, 0]], 2));
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row(0), &[BigInt::from(1), BigInt::from(-1)]);
        // full row rank: no kernel
        let k = left_kernel(&m(&[vec![2, 4]], 2));
        assert_eq!(k.rows(), 0);
        // 2 x 1 column (2, 4): kernel is (2, -1)
        let k = left_kernel(&m(&[vec![2], vec![4]], 1));
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row(0), &[BigInt::from(2), BigInt::from(-1)]);
        // no columns: everything is in the kernel
        let k = left_kernel(&IntMatrix::zero(2, 0));
        assert_eq!(k.rows(), 2);
    }

    #[test]
    fn kernel_rows_annihilate() {
        let mat = m(&[vec![2, 4, 6], vec![1, 2, 3], vec![0, 1, 1], vec![3, 7, 10]], 3);
        let k = left_kernel(&mat);
        assert_eq!(k.rows(), 2);
        let prod = k.mul(&mat);
        assert!(prod.to_string_rows().iter().flatten().all(|s| s == "0"));
    }

    #[test]
    fn bareiss_known_values() {
        assert_eq!(bareiss_determinant(&m(&[vec![3]], 1)), BigInt::from(3));
        assert_eq!(
            bareiss_determinant(&m(&[vec![1, 2], vec![3, 4]], 2)),
            BigInt::from(-2)
        );
        assert_eq!(
            bareiss_determinant(&m(&[vec![0, 1], vec![1, 0]], 2)),
            BigInt::from(-1)
        );
        assert_eq!(
            bareiss_determinant(&m(&[vec![2, 0, 1], vec![1, 1, 0], vec![0, 3, 1]], 3)),
            BigInt::from(5)
        );
        assert_eq!(bareiss_determinant(&IntMatrix::identity(0)), BigInt::one());
    }

    proptest! {
        #[test]
        fn snf_properties_random(rows in 0usize..4, cols in 0usize..4,
                                 entries in proptest::collection::vec(-9i64..=9, 16)) {
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| entries[i * 4 + j]).collect())
                .collect();
            let mat = m(&data, cols);
            let snf = check_snf(&mat);
            if rows == cols && rows > 0 {
                let det = bareiss_determinant(&mat).abs();
                let prod: BigInt = snf.diag.iter().product();
                prop_assert_eq!(det, prod.abs());
            }
        }

        #[test]
        fn kernel_times_matrix_is_zero(rows in 1usize..5, cols in 1usize..4,
                                       entries in proptest::collection::vec(-6i64..=6, 20)) {
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| entries[i * 4 + j]).collect())
                .collect();
            let mat = m(&data, cols);
            let k = left_kernel(&mat);
            let prod = k.mul(&mat);
            for i in 0..prod.rows() {
                for j in 0..prod.cols() {
                    prop_assert!(prod.at(i, j).is_zero());
                }
            }
            // kernel rank + matrix rank = number of rows
            prop_assert_eq!(k.rows() + smith_normal_form(&mat).rank, rows);
        }
    }
}
