//! Small dense and sparse matrices over exact rationals or `f64`.
//!
//! Everything here is generic over [`Scalar`] so the same projection and
//! representation code runs on Young's seminormal form (exact) and on Young's
//! orthogonal form (floating point).

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use crate::rational::{fmt_q, to_f64, Q};

pub trait Scalar: Clone + Debug + PartialEq + PartialOrd + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;
    fn from_q(x: &Q) -> Self;
    fn to_f64(&self) -> f64;
    /// Rendering used in reports: `"p/q"` for rationals, decimal for floats.
    fn render(&self) -> String;
    fn to_json(&self) -> serde_json::Value;
}

impl Scalar for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn from_q(x: &Q) -> Self {
        x.clone()
    }
    fn to_f64(&self) -> f64 {
        to_f64(self)
    }
    fn render(&self) -> String {
        fmt_q(self)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(fmt_q(self))
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn from_q(x: &Q) -> Self {
        to_f64(x)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn render(&self) -> String {
        format!("{self:e}")
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self)
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
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
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.sub(b).abs())
            .fold(T::zero(), |m, x| if x > m { x } else { m })
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).map(<[T]>::to_vec).collect()
    }
}

impl Matrix<Q> {
    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.to_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| !Zero::is_zero(&m[r][col])) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = m[rank][col].recip();
            for r in (rank + 1)..rows {
                if Zero::is_zero(&m[r][col]) {
                    continue;
                }
                let factor = &m[r][col] * &inv;
                for c in col..cols {
                    let delta = &factor * &m[rank][c];
                    m[r][c] -= delta;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Determinant by exact Gaussian elimination.
    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.to_rows();
        let mut det = <Q as One>::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !Zero::is_zero(&m[r][col])) else {
                return <Q as Zero>::zero();
            };
            if pivot != col {
                m.swap(col, pivot);
                det = -det;
            }
            det *= &m[col][col];
            let inv = m[col][col].recip();
            for r in (col + 1)..n {
                if Zero::is_zero(&m[r][col]) {
                    continue;
                }
                let factor = &m[r][col] * &inv;
                for c in col..n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
        det
    }
}

/// Column-oriented sparse matrix; column `j` holds the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: Vec<BTreeMap<usize, T>>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols: vec![BTreeMap::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.add_to(i, i, &T::one());
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.cols[j].get(&i).cloned().unwrap_or_else(T::zero)
    }

    pub fn column(&self, j: usize) -> &BTreeMap<usize, T> {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &T) {
        if v.is_zero() {
            return;
        }
        let col = &mut self.cols[j];
        let entry = col.entry(i).or_insert_with(T::zero);
        *entry = entry.add(v);
        if entry.is_zero() {
            col.remove(&i);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols(), other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.ncols());
        for (j, col) in other.cols.iter().enumerate() {
            for (k, b) in col {
                for (i, a) in &self.cols[*k] {
                    out.add_to(*i, j, &a.mul(b));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.ncols());
        let mut out = vec![T::zero(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, a) in col {
                out[*i] = out[*i].add(&a.mul(&v[j]));
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (j, col) in other.cols.iter().enumerate() {
            for (i, v) in col {
                out.add_to(*i, j, v);
            }
        }
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zeros(self.rows, self.ncols());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                out.add_to(*i, j, &v.mul(s));
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.ncols(), self.rows);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                out.add_to(j, *i, v);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    /// Largest entrywise |self − other|, optionally restricted to some columns.
    pub fn max_abs_diff_on(&self, other: &Self, columns: impl Iterator<Item = usize>) -> T {
        let mut worst = T::zero();
        for j in columns {
            let (a, b) = (&self.cols[j], &other.cols[j]);
            for i in a.keys().chain(b.keys()) {
                let d = self.get(*i, j).sub(&other.get(*i, j)).abs();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.ncols()), (other.rows, other.ncols()));
        self.max_abs_diff_on(other, 0..self.ncols())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn exact_rank_and_det() {
        let m = Matrix::from_rows(vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(1), q(0), q(1)],
        ]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.det(), q(0));
        let m = Matrix::from_rows(vec![vec![q(2), q(1)], vec![qf(1, 2), q(3)]]);
        assert_eq!(m.det(), qf(11, 2));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn sparse_product_matches_dense() {
        let mut a = SparseMatrix::<Q>::zeros(2, 3);
        a.add_to(0, 0, &q(1));
        a.add_to(1, 2, &q(2));
        a.add_to(0, 1, &qf(1, 3));
        let mut b = SparseMatrix::<Q>::zeros(3, 2);
        b.add_to(0, 1, &q(5));
        b.add_to(2, 0, &q(-1));
        b.add_to(1, 0, &q(3));
        let c = a.mul(&b);
        assert_eq!(c.get(0, 0), q(1));
        assert_eq!(c.get(1, 0), q(-2));
        assert_eq!(c.get(0, 1), q(5));
        assert_eq!(c.get(1, 1), q(0));
        assert_eq!(c.apply(&[q(1), q(1)]), vec![q(6), q(-2)]);
    }

    #[test]
    fn add_to_drops_cancelled_entries() {
        let mut a = SparseMatrix::<f64>::zeros(1, 1);
        a.add_to(0, 0, &1.5);
        a.add_to(0, 0, &-1.5);
        assert!(a.is_zero());
        assert_eq!(a.nnz(), 0);
    }
}
