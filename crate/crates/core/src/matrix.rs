//! Dense integer matrices with Hermite and Smith normal forms.
//!
//! Everything here is exact: entries are arbitrary-precision integers and
//! every transform is tracked so callers can verify `M·U = H` and
//! `S·M·T = D` after the fact.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row-major data. Panics if the length is wrong.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        Self::from_vec(rows, cols, data.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Builds a matrix from a slice of equal-length rows.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| BigInt::from(v)));
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        let data = self.data.iter().map(|a| a * k).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(&int(-1))
    }

    /// Horizontal concatenation. All blocks must share the row count `rows`.
    pub fn hstack(rows: usize, blocks: &[&IntMatrix]) -> IntMatrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, offset + j, b.get(i, j).clone());
                }
            }
            offset += b.cols;
        }
        out
    }

    /// Vertical concatenation. All blocks must share the column count `cols`.
    pub fn vstack(cols: usize, blocks: &[&IntMatrix]) -> IntMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        IntMatrix { rows, cols, data }
    }

    pub fn block_diag(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend(self.data[i * self.cols..(i + 1) * self.cols].iter().cloned());
        }
        IntMatrix { rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn row_range(&self, start: usize, end: usize) -> IntMatrix {
        self.select_rows(&(start..end).collect::<Vec<_>>())
    }

    pub fn column_range(&self, start: usize, end: usize) -> IntMatrix {
        self.select_columns(&(start..end).collect::<Vec<_>>())
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    /// Replaces columns (a, b) by (x·a + y·b, u·a + v·b).
    fn combine_cols(&mut self, a: usize, b: usize, [x, y, u, v]: [&BigInt; 4]) {
        for i in 0..self.rows {
            let ca = self.data[i * self.cols + a].clone();
            let cb = self.data[i * self.cols + b].clone();
            self.data[i * self.cols + a] = x * &ca + y * &cb;
            self.data[i * self.cols + b] = u * &ca + v * &cb;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    /// Compact row-major rendering `RxC [a b c ...]`, the exchange format.
    pub fn to_exchange(&self) -> String {
        let entries: Vec<String> = self.data.iter().map(|v| v.to_string()).collect();
        format!("{}x{} [{}]", self.rows, self.cols, entries.join(" "))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Column-style Hermite normal form: `M·U = H` with `U` unimodular.
///
/// The first `rank` columns of `H` are nonzero and in echelon form: column
/// `k` has its leading (positive) entry in row `pivot_rows[k]`, and entries
/// left of a pivot in the pivot row are reduced into `[0, pivot)`. This is
/// the unique reduced basis of the column lattice of `M`.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
}

pub fn hnf(m: &IntMatrix) -> Hnf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);
    let mut pivot_rows = Vec::new();
    let mut col = 0;
    for r in 0..rows {
        if col == cols {
            break;
        }
        // Fold every entry of row r in columns col.. into column col.
        if h.get(r, col).is_zero() {
            if let Some(j) = (col + 1..cols).find(|&j| !h.get(r, j).is_zero()) {
                h.swap_cols(col, j);
                u.swap_cols(col, j);
            } else {
                continue;
            }
        }
        for k in col + 1..cols {
            if h.get(r, k).is_zero() {
                continue;
            }
            let a = h.get(r, col).clone();
            let b = h.get(r, k).clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let u_coef = -(&b / &g);
            let v_coef = &a / &g;
            h.combine_cols(col, k, [&x, &y, &u_coef, &v_coef]);
            u.combine_cols(col, k, [&x, &y, &u_coef, &v_coef]);
        }
        if h.get(r, col).is_negative() {
            h.negate_col(col);
            u.negate_col(col);
        }
        let pivot = h.get(r, col).clone();
        for c in 0..col {
            let q = h.get(r, c).div_floor(&pivot);
            if !q.is_zero() {
                let nq = -q;
                h.add_col_multiple(c, col, &nq);
                u.add_col_multiple(c, col, &nq);
            }
        }
        pivot_rows.push(r);
        col += 1;
    }
    Hnf { h, u, rank: col, pivot_rows }
}

impl Hnf {
    /// Solves `M·x = b` over the integers, if a solution exists.
    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let rows = self.h.rows();
        assert_eq!(b.len(), rows, "rhs length mismatch");
        let mut res = b.to_vec();
        let mut y = vec![BigInt::zero(); self.u.rows()];
        let mut next_row = 0;
        for (k, &pr) in self.pivot_rows.iter().enumerate() {
            if res[next_row..pr].iter().any(|v| !v.is_zero()) {
                return None;
            }
            let (q, rem) = res[pr].div_rem(self.h.get(pr, k));
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for i in pr..rows {
                    let hv = self.h.get(i, k);
                    if !hv.is_zero() {
                        res[i] -= &q * hv;
                    }
                }
            }
            y[k] = q;
            next_row = pr + 1;
        }
        if res[next_row..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        Some(self.u.mul_vec(&y))
    }

    /// Basis of the integer kernel of `M`, as columns.
    pub fn kernel_basis(&self) -> IntMatrix {
        self.u.column_range(self.rank, self.u.cols())
    }

    /// Canonical basis of the column lattice of `M`, as columns.
    pub fn image_basis(&self) -> IntMatrix {
        self.h.column_range(0, self.rank)
    }
}

/// Smith normal form `S·M·T = D` with `D` diagonal, `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub s: IntMatrix,
    pub s_inv: IntMatrix,
    pub t: IntMatrix,
}

impl Snf {
    /// Diagonal entries, `min(rows, cols)` of them, nonnegative.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }
}

pub fn snf(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut s = IntMatrix::identity(rows);
    let mut s_inv = IntMatrix::identity(rows);
    let mut t = IntMatrix::identity(cols);

    for k in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let v = a.get(i, j);
                    if v.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Snf { d: a, s, s_inv, t };
            };
            a.swap_rows(k, pi);
            s.swap_rows(k, pi);
            s_inv.swap_cols(k, pi);
            a.swap_cols(k, pj);
            t.swap_cols(k, pj);

            let mut clean = true;
            for i in k + 1..rows {
                let q = a.get(i, k) / a.get(k, k);
                if !q.is_zero() {
                    let nq = -&q;
                    a.add_row_multiple(i, k, &nq);
                    s.add_row_multiple(i, k, &nq);
                    s_inv.add_col_multiple(k, i, &q);
                }
                if !a.get(i, k).is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                let q = a.get(k, j) / a.get(k, k);
                if !q.is_zero() {
                    let nq = -q;
                    a.add_col_multiple(j, k, &nq);
                    t.add_col_multiple(j, k, &nq);
                }
                if !a.get(k, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let pivot = a.get(k, k).clone();
            let offender = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            if let Some(i) = offender {
                let one = BigInt::one();
                a.add_row_multiple(k, i, &one);
                s.add_row_multiple(k, i, &one);
                s_inv.add_col_multiple(i, k, &-one);
                continue;
            }
            break;
        }
        if a.get(k, k).is_negative() {
            a.negate_row(k);
            s.negate_row(k);
            s_inv.negate_col(k);
        }
    }
    Snf { d: a, s, s_inv, t }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_unimodular(m: &IntMatrix) -> bool {
        m.determinant().abs().is_one()
    }

    #[test]
    fn hnf_of_small_matrix() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let r = hnf(&m);
        assert_eq!(r.h.get(0, 0), &int(2));
        assert_eq!(m.mul(&r.u), r.h);
        assert!(is_unimodular(&r.u));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn hnf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        let r = hnf(&id);
        assert_eq!(r.h, id);
        assert_eq!(r.u, id);
        let z = IntMatrix::zeros(2, 3);
        let r = hnf(&z);
        assert!(r.h.is_zero());
        assert_eq!(r.rank, 0);
        assert_eq!(r.kernel_basis().cols(), 3);
    }

    #[test]
    fn snf_examples() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let r = snf(&m);
        assert_eq!(r.diagonal(), vec![int(2), int(4)]);
        assert_eq!(r.s.mul(&m).mul(&r.t), r.d);
        assert_eq!(snf(&IntMatrix::identity(2)).diagonal(), vec![int(1), int(1)]);
        assert_eq!(snf(&IntMatrix::from_rows(&[vec![6]])).diagonal(), vec![int(6)]);
    }

    #[test]
    fn solve_detects_unsolvable() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let h = hnf(&m);
        assert_eq!(h.solve(&[int(4), int(9)]), Some(vec![int(2), int(3)]));
        assert_eq!(h.solve(&[int(1), int(0)]), None);
    }

    #[test]
    fn kernel_of_row() {
        // 2x + y = 0
        let m = IntMatrix::from_rows(&[vec![2, 1]]);
        let k = hnf(&m).kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        let g = k.get(0, 0).gcd(k.get(1, 0));
        assert!(g.is_one());
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(-6i64..=6, r * c).prop_map(move |v| IntMatrix::from_i64(r, c, &v))
        })
    }

    proptest! {
        #[test]
        fn hnf_transform_is_exact(m in small_matrix()) {
            let r = hnf(&m);
            prop_assert_eq!(m.mul(&r.u), r.h.clone());
            prop_assert!(is_unimodular(&r.u));
            prop_assert!(m.mul(&r.kernel_basis()).is_zero());
            for (k, &pr) in r.pivot_rows.iter().enumerate() {
                prop_assert!(r.h.get(pr, k).is_positive());
                for i in 0..pr {
                    prop_assert!(r.h.get(i, k).is_zero());
                }
            }
        }

        #[test]
        fn snf_transform_is_exact(m in small_matrix()) {
            let r = snf(&m);
            prop_assert_eq!(r.s.mul(&m).mul(&r.t), r.d.clone());
            prop_assert!(is_unimodular(&r.s));
            prop_assert!(is_unimodular(&r.t));
            prop_assert_eq!(r.s.mul(&r.s_inv), IntMatrix::identity(m.rows()));
            let d = r.diagonal();
            for w in d.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero());
            }
            for i in 0..r.d.rows() {
                for j in 0..r.d.cols() {
                    if i != j {
                        prop_assert!(r.d.get(i, j).is_zero());
                    }
                }
            }
        }

        #[test]
        fn solve_round_trips(m in small_matrix(), seed in prop::collection::vec(-4i64..=4, 5)) {
            let x: Vec<BigInt> = seed.iter().take(m.cols()).map(|&v| int(v)).collect();
            prop_assume!(x.len() == m.cols());
            let b = m.mul_vec(&x);
            let sol = hnf(&m).solve(&b);
            prop_assert!(sol.is_some());
            prop_assert_eq!(m.mul_vec(&sol.unwrap()), b);
        }
    }
}
