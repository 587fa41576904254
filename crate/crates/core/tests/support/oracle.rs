//! Integer linear algebra over `i128`, written independently of the
//! engine's normal forms, for use as a test oracle.

#![allow(dead_code, clippy::needless_range_loop)]

use exactcat::IntMatrix;

pub type Mat = Vec<Vec<i128>>;

pub fn from_int_matrix(m: &IntMatrix) -> Mat {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| i128::try_from(x).expect("entry fits in i128")).collect())
        .collect()
}

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![0; cols]; rows]
}

/// Columns of `blocks` side by side; every block has `rows` rows.
pub fn hstack(rows: usize, blocks: &[&Mat]) -> Mat {
    (0..rows).map(|i| blocks.iter().flat_map(|b| b[i].iter().copied()).collect()).collect()
}

pub fn cols(m: &Mat) -> usize {
    m.first().map_or(0, |r| r.len())
}

/// Nonzero diagonal entries of the Smith form, positive and each dividing
/// the next.
pub fn invariant_factors(m: &Mat) -> Vec<i128> {
    let mut a = m.clone();
    let (rows, ncols) = (a.len(), cols(m));
    let mut diag = Vec::new();
    for t in 0..rows.min(ncols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..ncols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { return diag };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..ncols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..ncols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..ncols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..ncols {
                        a[t][j] += a[i][j];
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    diag
}

pub fn rank(m: &Mat) -> usize {
    invariant_factors(m).len()
}

/// `Z^rows / colspan(m)` as (free rank, torsion coefficients > 1).
pub fn quotient(rows: usize, m: &Mat) -> (usize, Vec<i128>) {
    let f = invariant_factors(m);
    (rows - f.len(), f.into_iter().filter(|&d| d > 1).collect())
}

/// A basis of `{x ∈ Z^n : m x = 0}` as the columns of the returned matrix.
pub fn kernel_basis(m: &Mat, n: usize) -> Mat {
    let mut a = m.clone();
    let mut v: Mat = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let col_op = |a: &mut Mat, v: &mut Mat, dst: usize, src: usize, q: i128| {
        for row in a.iter_mut() {
            row[dst] -= q * row[src];
        }
        for row in v.iter_mut() {
            row[dst] -= q * row[src];
        }
    };
    let swap = |a: &mut Mat, v: &mut Mat, x: usize, y: usize| {
        for row in a.iter_mut().chain(v.iter_mut()) {
            row.swap(x, y);
        }
    };
    let mut pivot = 0;
    for r in 0..a.len() {
        if pivot == n {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (pivot..n).filter(|&j| a[r][j] != 0).collect();
            if nonzero.is_empty() {
                break;
            }
            let j0 = *nonzero.iter().min_by_key(|&&j| a[r][j].abs()).unwrap();
            swap(&mut a, &mut v, pivot, j0);
            let mut done = true;
            for j in pivot + 1..n {
                let q = a[r][j] / a[r][pivot];
                if q != 0 {
                    col_op(&mut a, &mut v, j, pivot, q);
                }
                done &= a[r][j] == 0;
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    v.iter().map(|row| row[pivot..].to_vec()).collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    a.iter()
        .map(|row| (0..cols(b)).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}
