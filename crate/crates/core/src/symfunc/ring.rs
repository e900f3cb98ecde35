use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::rational::Q;

use super::SparsePoly;

/// The commutative-ring operations needed by permanents and determinants.
///
/// `zero_like`/`one_like` take a sample element because some rings (e.g.
/// polynomials in a fixed number of variables) carry shape information.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Ring for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
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
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Ring for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn one_like(&self) -> Self {
        1.0
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
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Ring for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::zero()
    }
    fn one_like(&self) -> Self {
        Complex64::one()
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
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Ring for SparsePoly {
    fn zero_like(&self) -> Self {
        SparsePoly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        SparsePoly::one(self.nvars())
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
    fn is_zero(&self) -> bool {
        SparsePoly::is_zero(self)
    }
}

/// Determinant by Laplace expansion over column subsets.
///
/// Rows are assigned in order; a state is the set of columns used so far.
/// States that leave a column unused which no later row can fill are
/// dropped, so banded matrices (such as Giambelli matrices in few variables)
/// stay cheap even for large sides. The 0×0 determinant is 1; `unit`
/// supplies the ring's 1.
pub fn det<R: Ring>(matrix: &[Vec<R>], unit: &R) -> R {
    let r = matrix.len();
    assert!(matrix.iter().all(|row| row.len() == r), "determinant of a non-square matrix");
    assert!(r < u128::BITS as usize, "matrix too large");
    let one = unit.one_like();
    // first_nz[i]: first column with a nonzero entry in row i.
    let first_nz: Vec<usize> = matrix
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).unwrap_or(r))
        .collect();
    // low[i]: every column below it must be used before row i is placed.
    let mut low = vec![r; r + 1];
    for i in (0..r).rev() {
        low[i] = low[i + 1].min(first_nz[i]);
    }
    let mut states: BTreeMap<u128, R> = BTreeMap::from([(0, one.clone())]);
    for (row, entries) in matrix.iter().enumerate() {
        let mut next: BTreeMap<u128, R> = BTreeMap::new();
        for (mask, acc) in &states {
            for (c, entry) in entries.iter().enumerate() {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                let m = mask | (1 << c);
                let required = low[row + 1].min(r);
                if required > 0 && (!m) & ((1u128 << required) - 1) != 0 {
                    continue;
                }
                // Inversions added: previously used columns to the right of c.
                let above = (mask >> (c + 1)).count_ones();
                let term = acc.mul(entry);
                let slot = next.entry(m).or_insert_with(|| one.zero_like());
                *slot = if above % 2 == 0 { slot.add(&term) } else { slot.sub(&term) };
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    let full = if r == 0 { 0 } else { u128::MAX >> (128 - r) };
    states.remove(&full).unwrap_or_else(|| one.zero_like())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn brute_det(m: &[Vec<Q>]) -> Q {
        let n = m.len();
        crate::permgroup::Permutation::all_unchecked(n)
            .iter()
            .map(|s| (0..n).fold(q(s.sign()), |acc, i| acc * &m[i][s.apply(i)]))
            .sum()
    }

    #[test]
    fn subset_dp_matches_leibniz() {
        let m: Vec<Vec<Q>> = (0..5)
            .map(|i| (0..5).map(|j| q(((i * 7 + j * 3) % 5) as i64 - 2 + (i == j) as i64)).collect())
            .collect();
        assert_eq!(det(&m, &q(1)), brute_det(&m));
        assert_eq!(det::<Q>(&[], &q(1)), q(1));
        assert_eq!(det(&[vec![q(2), q(3)], vec![q(5), q(7)]], &q(1)), q(-1));
    }

    #[test]
    fn large_banded_matrix() {
        // upper bidiagonal plus ones on the subdiagonal
        let r = 60;
        let m: Vec<Vec<Q>> = (0..r)
            .map(|i| (0..r).map(|j| if j == i { q(2) } else if j == i + 1 || j + 1 == i { q(1) } else { q(0) }).collect())
            .collect();
        // tridiagonal (1, 2, 1): det = r + 1
        assert_eq!(det(&m, &q(1)), q(r as i64 + 1));
    }

    proptest::proptest! {
        #[test]
        fn sparse_matrices_match_leibniz(entries in proptest::collection::vec(-2i64..3, 36), side in 0usize..6) {
            let m: Vec<Vec<Q>> = (0..side).map(|i| (0..side).map(|j| q(entries[i * 6 + j])).collect()).collect();
            proptest::prop_assert_eq!(det(&m, &q(1)), brute_det(&m));
        }
    }
}
