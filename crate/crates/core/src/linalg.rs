//! Small dense matrices over a [`Scalar`].
//!
//! The kernel never sees anything larger than 5×5, so everything here is a
//! plain row-major `Vec` with Gaussian elimination. Pivots are chosen by
//! approximate magnitude but accepted only when exactly nonzero under the
//! scalar's own zero test, which keeps the same code path valid in exact
//! mode.

use crate::scalar::Scalar;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularMatrix;

impl fmt::Display for SingularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "matrix is singular within tolerance")
    }
}

impl std::error::Error for SingularMatrix {}

impl<S: Scalar> Matrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn diagonal(entries: &[S]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = entries[i].clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = S::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, s: &S) -> Matrix<S> {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn add(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (o, x) in out.data.iter_mut().zip(other.data.iter()) {
            *o = o.clone() + x.clone();
        }
        out
    }

    pub fn sub(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (o, x) in out.data.iter_mut().zip(other.data.iter()) {
            *o = o.clone() - x.clone();
        }
        out
    }

    /// Largest absolute entry, as f64.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Gauss-Jordan inverse. `tol` only affects the float instantiation.
    pub fn inverse(&self, tol: f64) -> Result<Matrix<S>, SingularMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv: Matrix<S> = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[(r, col)].is_zero_tol(tol))
                .max_by(|&r1, &r2| {
                    a[(r1, col)]
                        .to_f64()
                        .abs()
                        .total_cmp(&a[(r2, col)].to_f64().abs())
                })
                .ok_or(SingularMatrix)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() / p.clone();
                inv[(col, j)] = inv[(col, j)].clone() / p.clone();
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)].clone();
                if f.is_zero_tol(0.0) {
                    continue;
                }
                for j in 0..n {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(col, j)].clone();
                    inv[(r, j)] = inv[(r, j)].clone() - f.clone() * inv[(col, j)].clone();
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }

    /// Row-echelon rank with relative pivot tolerance.
    pub fn rank(&self, tol: f64) -> usize {
        let scale = self.max_abs().max(1.0);
        let mut a = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.cols {
            let pivot = (row..self.rows)
                .filter(|&r| !a[(r, col)].is_zero_tol(tol * scale))
                .max_by(|&r1, &r2| {
                    a[(r1, col)]
                        .to_f64()
                        .abs()
                        .total_cmp(&a[(r2, col)].to_f64().abs())
                });
            let Some(p) = pivot else { continue };
            a.swap_rows(row, p);
            let pv = a[(row, col)].clone();
            for r in row + 1..self.rows {
                let f = a[(r, col)].clone() / pv.clone();
                for j in col..self.cols {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(row, j)].clone();
                }
            }
            rank += 1;
            row += 1;
            if row == self.rows {
                break;
            }
        }
        rank
    }

    /// Basis of the right nullspace, via reduced row echelon form.
    pub fn nullspace(&self, tol: f64) -> Vec<Vec<S>> {
        let scale = self.max_abs().max(1.0);
        let mut a = self.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let pivot = (row..self.rows)
                .filter(|&r| !a[(r, col)].is_zero_tol(tol * scale))
                .max_by(|&r1, &r2| {
                    a[(r1, col)]
                        .to_f64()
                        .abs()
                        .total_cmp(&a[(r2, col)].to_f64().abs())
                });
            let Some(p) = pivot else { continue };
            a.swap_rows(row, p);
            let pv = a[(row, col)].clone();
            for j in 0..self.cols {
                a[(row, j)] = a[(row, j)].clone() / pv.clone();
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = a[(r, col)].clone();
                if f.is_zero_tol(0.0) {
                    continue;
                }
                for j in 0..self.cols {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(row, j)].clone();
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == self.rows {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for &(r, c) in &pivots {
                v[c] = -a[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                write!(f, "{}{}", if j > 0 { ", " } else { "" }, self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Real eigenvalues of a 2×2 float matrix, if the discriminant allows.
pub fn eig2_real(m: &Matrix<f64>) -> Option<(f64, f64)> {
    let tr = m[(0, 0)] + m[(1, 1)];
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = tr * tr - 4.0 * det;
    if disc < 0.0 {
        return None;
    }
    let s = disc.sqrt();
    Some(((tr + s) / 2.0, (tr - s) / 2.0))
}

/// Eigenvalues of a 3×3 float matrix: the real roots and, when the
/// characteristic cubic has a complex pair, that pair as `(re, im)`.
pub fn eig3(m: &Matrix<f64>) -> (Vec<f64>, Option<(f64, f64)>) {
    assert_eq!((m.nrows(), m.ncols()), (3, 3));
    let tr = m[(0, 0)] + m[(1, 1)] + m[(2, 2)];
    let m2 = m.mul(m);
    let tr2 = m2[(0, 0)] + m2[(1, 1)] + m2[(2, 2)];
    let c1 = (tr * tr - tr2) / 2.0; // sum of 2x2 principal minors
    let det = m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
        - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
        + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)]);
    // λ³ − tr·λ² + c1·λ − det = 0. Find a real root by bisection on a
    // bracketing interval, then deflate.
    let p = |x: f64| ((x - tr) * x + c1) * x - det;
    let bound = 1.0 + tr.abs() + c1.abs() + det.abs();
    let (mut lo, mut hi) = (-bound, bound);
    debug_assert!(p(lo) <= 0.0 && p(hi) >= 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if p(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r = 0.5 * (lo + hi);
    // Deflate: λ² + q·λ + s with q = r − tr, s = det / r (or c1 + r·q).
    let q = r - tr;
    let s = c1 + r * q;
    let disc = q * q - 4.0 * s;
    if disc >= 0.0 {
        let d = disc.sqrt();
        (vec![r, (-q + d) / 2.0, (-q - d) / 2.0], None)
    } else {
        (vec![r], Some((-q / 2.0, (-disc).sqrt() / 2.0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Exact, Rational};

    #[test]
    fn inverse_roundtrip_f64() {
        let m = Matrix::from_rows(vec![
            vec![2.0, 1.0, 0.0],
            vec![0.0, 1.0, -1.0],
            vec![1.0, 0.0, 3.0],
        ]);
        let inv = m.inverse(1e-12).unwrap();
        let id = m.mul(&inv);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((id[(i, j)] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn inverse_exact() {
        let s2 = Exact::sqrt2();
        let m = Matrix::from_rows(vec![
            vec![Exact::integer(1), s2],
            vec![s2, Exact::integer(1)],
        ]);
        let inv = m.inverse(0.0).unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
    }

    #[test]
    fn nullspace_of_rank_two() {
        let m = Matrix::from_rows(vec![
            vec![1.0, 0.0, -1.0, 0.0],
            vec![0.0, 1.0, 0.0, -2.0],
        ]);
        let ns = m.nullspace(1e-12);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in 0..2 {
                let dot: f64 = (0..4).map(|j| m[(r, j)] * v[j]).sum();
                assert!(dot.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn exact_nullspace_of_wall_triple() {
        // Three walls of the ideal octahedron meeting in a vertex.
        let s2 = Exact::sqrt2();
        let m = Matrix::from_rows(vec![
            vec![Exact::integer(-1), -s2, Exact::integer(0), Exact::integer(-1)],
            vec![Exact::integer(-1), -s2, Exact::integer(0), Exact::integer(1)],
            vec![Exact::integer(-1), Exact::integer(0), -s2, Exact::integer(1)],
        ]);
        let ns = m.nullspace(0.0);
        assert_eq!(ns.len(), 1);
        // The kernel is spanned by (1, -√2/2, -√2/2, 0) up to scale.
        let v = &ns[0];
        let half = Exact::new(Rational::ZERO, Rational::new(-1, 2));
        let scale = v[0];
        assert_eq!(v[1] / scale, half);
        assert_eq!(v[2] / scale, half);
        assert!(v[3].is_zero());
    }

    #[test]
    fn eig3_rotation_block() {
        // Rotation by 0.7 around the first axis: eigenvalues 1, e^{±0.7i}.
        let (c, s) = (0.7f64.cos(), 0.7f64.sin());
        let m = Matrix::from_rows(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, c, -s],
            vec![0.0, s, c],
        ]);
        let (real, pair) = eig3(&m);
        assert_eq!(real.len(), 1);
        assert!((real[0] - 1.0).abs() < 1e-9);
        let (re, im) = pair.unwrap();
        assert!((re - c).abs() < 1e-9);
        assert!((im.abs() - s).abs() < 1e-9);
    }
}
