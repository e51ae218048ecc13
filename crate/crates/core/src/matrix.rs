//! Dense integer and rational matrices with exact arithmetic.
//!
//! Everything here is arbitrary precision. The matrices involved are small
//! (rank at most ~20), so clarity wins over cache tricks.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    /// Leading principal minors `det(A[..k, ..k])` for `k = 1..=n`.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        (1..=self.rows).map(|k| self.submatrix(k).determinant()).collect()
    }

    fn submatrix(&self, k: usize) -> IntMatrix {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn to_rational(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect()
    }

    /// Exact inverse over the rationals; `None` when singular.
    pub fn rational_inverse(&self) -> Option<Vec<Vec<BigRational>>> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_rational();
        let mut inv: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] = &a[col][j] / &p;
                inv[col][j] = &inv[col][j] / &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
        Some(inv)
    }

    /// Inverse of a unimodular matrix. Panics if the inverse is not integral.
    pub fn unimodular_inverse(&self) -> IntMatrix {
        let inv = self.rational_inverse().expect("matrix is singular");
        let rows = inv
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| {
                        assert!(x.is_integer(), "matrix is not unimodular");
                        x.to_integer()
                    })
                    .collect()
            })
            .collect();
        IntMatrix::from_big_rows(rows, self.rows)
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

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let t = k * &self[(src, j)];
            self[(dst, j)] += t;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let t = k * &self[(i, src)];
            self[(i, dst)] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// `u * g * v = diag(d)` with `d[i] | d[i + 1]`.
///
/// `d` has `min(rows, cols)` entries; trailing zeros mark the rank defect.
/// `v_inv` is carried along because presentations of subquotients need it.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.d.iter().take_while(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(g: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (g.rows(), g.cols());
    let mut a = g.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        // pivot: smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if a[(i, j)].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);

        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in t + 1..m {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                let k = -q;
                a.add_row(i, t, &k);
                u.add_row(i, t, &k);
                if !a[(i, t)].is_zero() {
                    // remainder is smaller than the pivot: promote it
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..n {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                let k = -&q;
                a.add_col(j, t, &k);
                v.add_col(j, t, &k);
                // inverse of (col j += k col t) is (row t -= k row j) on the left
                v_inv.add_row(t, j, &q);
                if !a[(t, j)].is_zero() {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                    v_inv.swap_rows(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let mut fix = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !a[(i, j)].is_multiple_of(&a[(t, t)]) {
                        fix = Some(i);
                        break 'scan;
                    }
                }
            }
            match fix {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    let d = (0..m.min(n)).map(|i| a[(i, i)].clone()).collect();
    SmithDecomposition { d, u, v, v_inv }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Returns a basis in upper echelon form with positive pivots and entries
/// above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_basis(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut work: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut col = 0;
    while col < cols && !work.is_empty() {
        // gcd-combine all rows with a nonzero entry in `col`
        loop {
            let nz: Vec<usize> = (0..work.len()).filter(|&i| !work[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| work[i][col].abs()).unwrap();
            for &i in &nz {
                if i == p {
                    continue;
                }
                let q = work[i][col].div_floor(&work[p][col]);
                for j in col..cols {
                    let t = &q * &work[p][j];
                    work[i][j] -= t;
                }
            }
        }
        if let Some(p) = (0..work.len()).find(|&i| !work[i][col].is_zero()) {
            let mut r = work.swap_remove(p);
            if r[col].is_negative() {
                r.iter_mut().for_each(|x| *x = -&*x);
            }
            basis.push(r);
            pivots.push(col);
        }
        work.retain(|r| r.iter().any(|x| !x.is_zero()));
        col += 1;
    }
    // reduce entries above pivots
    for k in (0..basis.len()).rev() {
        let c = pivots[k];
        for i in 0..k {
            let q = basis[i][c].div_floor(&basis[k][c]);
            if q.is_zero() {
                continue;
            }
            for j in c..cols {
                let t = &q * &basis[k][j];
                basis[i][j] -= t;
            }
        }
    }
    basis
}

/// Basis of the right kernel `{x : m x = 0}` over the rationals.
pub fn rational_nullspace(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.to_rational();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for j in 0..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); cols];
            x[f] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = -a[i][f].clone();
            }
            x
        })
        .collect()
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Reduces `x` into `[0, m)`.
pub fn rational_mod(x: &BigRational, m: &BigInt) -> BigRational {
    let m = BigRational::from_integer(m.clone());
    let q = (x / &m).floor();
    x - q * m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(g: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(g);
        let prod = s.u.mul(g).mul(&s.v);
        let mut expected = IntMatrix::zeros(g.rows(), g.cols());
        for (i, d) in s.d.iter().enumerate() {
            expected[(i, i)] = d.clone();
        }
        assert_eq!(prod, expected, "u g v != diag(d) for {g:?}");
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(g.cols()));
        assert!(s.u.determinant().abs().is_one());
        for w in s.d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero());
        }
        s
    }

    #[test]
    fn snf_small_cases() {
        let s = check_snf(&IntMatrix::identity(2));
        assert_eq!(s.d, vec![BigInt::from(1), BigInt::from(1)]);
        let s = check_snf(&IntMatrix::from_rows(&[[2, 0], [0, 2]]));
        assert_eq!(s.d, vec![BigInt::from(2), BigInt::from(2)]);
        let s = check_snf(&IntMatrix::from_rows(&[[-2, 1], [1, -2]]));
        assert_eq!(s.d, vec![BigInt::from(1), BigInt::from(3)]);
        let s = check_snf(&IntMatrix::from_rows(&[[2, 4], [6, 8], [10, 12]]));
        assert_eq!(s.d, vec![BigInt::from(2), BigInt::from(4)]);
        let s = check_snf(&IntMatrix::from_rows(&[[0, 0], [0, 0]]));
        assert_eq!(s.rank(), 0);
        // diag(4, 6) -> (2, 12)
        let s = check_snf(&IntMatrix::from_rows(&[[4, 0], [0, 6]]));
        assert_eq!(s.d, vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntMatrix::from_rows(&[[2, -1, 0], [-1, 2, -1], [0, -1, 2]]);
        assert_eq!(m.determinant(), BigInt::from(4));
        let m = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(m.determinant(), BigInt::from(-1));
        let m = IntMatrix::from_rows(&[[1, 2], [2, 4]]);
        assert!(m.determinant().is_zero());
    }

    #[test]
    fn hermite_of_overlattice_rows() {
        // 2 Z^2 + Z (1, 1)
        let rows = vec![
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(2)],
            vec![BigInt::from(1), BigInt::from(1)],
        ];
        let h = hermite_basis(&rows, 2);
        assert_eq!(h, vec![vec![BigInt::from(1), BigInt::from(1)], vec![BigInt::from(0), BigInt::from(2)]]);
    }

    #[test]
    fn nullspace_of_affine_a2() {
        let m = IntMatrix::from_rows(&[[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]);
        let k = rational_nullspace(&m);
        assert_eq!(k.len(), 1);
        assert!(k[0].iter().all(|x| x == &BigRational::one()));
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let m = IntMatrix::from_rows(&[[2, 1], [1, 1]]);
        assert_eq!(m.mul(&m.unimodular_inverse()), IntMatrix::identity(2));
    }
}
