use crate::config::max_n;
use crate::error::{Error, Result};
use crate::permgroup::Permutation;

use super::Ring;

fn check_square<R>(matrix: &[Vec<R>]) -> Result<usize> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput("permanent needs a square matrix".into()));
    }
    let cap = max_n();
    if n > cap {
        return Err(Error::limit("permanent side", n, cap));
    }
    Ok(n)
}

/// Permanent by Ryser's formula with Gray-code column updates:
/// `per(A) = Σ_{S ⊆ cols} (−1)^{n−|S|} Π_i Σ_{j∈S} a_ij`.
///
/// `unit` supplies the ring's 1 (needed for the empty matrix and for the
/// shape of zero in polynomial rings).
pub fn permanent<R: Ring>(matrix: &[Vec<R>], unit: &R) -> Result<R> {
    let n = check_square(matrix)?;
    let zero = unit.zero_like();
    if n == 0 {
        return Ok(unit.one_like());
    }
    let mut row_sums = vec![zero.clone(); n];
    let mut in_set = vec![false; n];
    let mut size = 0usize;
    let mut total = zero.clone();
    for step in 1u64..(1u64 << n) {
        // Gray code: toggle the column of the lowest set bit of `step`.
        let col = step.trailing_zeros() as usize;
        in_set[col] = !in_set[col];
        for (i, sum) in row_sums.iter_mut().enumerate() {
            *sum = if in_set[col] { sum.add(&matrix[i][col]) } else { sum.sub(&matrix[i][col]) };
        }
        size = if in_set[col] { size + 1 } else { size - 1 };
        let mut prod = row_sums[0].clone();
        for s in &row_sums[1..] {
            if prod.is_zero() {
                break;
            }
            prod = prod.mul(s);
        }
        total = if (n - size).is_multiple_of(2) { total.add(&prod) } else { total.sub(&prod) };
    }
    Ok(total)
}

/// Permanent by the defining sum over 𝔖ₙ; the oracle for small sides.
pub fn permanent_naive<R: Ring>(matrix: &[Vec<R>], unit: &R) -> Result<R> {
    let n = check_square(matrix)?;
    let mut total = unit.zero_like();
    for sigma in Permutation::all_unchecked(n) {
        let prod = (0..n).fold(unit.one_like(), |acc, k| acc.mul(&matrix[k][sigma.apply(k)]));
        total = total.add(&prod);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf, Q};
    use crate::symfunc::{monomial_sym, MultiplicityProfile, SparsePoly};
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        let ones = vec![vec![q(1); 2]; 2];
        assert_eq!(permanent(&ones, &q(1)).unwrap(), q(2));
        for n in 0..6 {
            let id: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| q((i == j) as i64)).collect()).collect();
            assert_eq!(permanent(&id, &q(1)).unwrap(), q(1));
        }
        let j3 = vec![vec![q(1); 3]; 3];
        assert_eq!(permanent(&j3, &q(1)).unwrap(), q(6));
    }

    #[test]
    fn rejects_oversized_and_ragged() {
        let big = vec![vec![q(1); 40]; 40];
        assert!(matches!(permanent(&big, &q(1)), Err(Error::ResourceLimit { .. })));
        let ragged = vec![vec![q(1); 2], vec![q(1)]];
        assert!(matches!(permanent(&ragged, &q(1)), Err(Error::InvalidInput(_))));
    }

    fn power_matrix(m: &[u32]) -> Vec<Vec<SparsePoly>> {
        let n = m.len();
        (0..n)
            .map(|i| (0..n).map(|j| SparsePoly::var(n, i).pow(m[j])).collect())
            .collect()
    }

    #[test]
    fn power_matrix_permanent() {
        let m = [2, 0, 0];
        let per = permanent(&power_matrix(&m), &SparsePoly::one(3)).unwrap();
        assert_eq!(per, monomial_sym(&m).scale(&q(2)));
    }

    proptest! {
        #[test]
        fn ryser_matches_definition(side in 0usize..5, entries in prop::collection::vec((-6i64..7, 1i64..4), 16)) {
            let a: Vec<Vec<Q>> = (0..side)
                .map(|i| (0..side).map(|j| { let (n, d) = entries[i * 4 + j]; qf(n, d) }).collect())
                .collect();
            prop_assert_eq!(permanent(&a, &q(1)).unwrap(), permanent_naive(&a, &q(1)).unwrap());
        }

        #[test]
        fn power_matrix_permanent_is_alpha_factorial_times_monomial(m in prop::collection::vec(0u32..4, 1..6)) {
            let n = m.len();
            let per = permanent(&power_matrix(&m), &SparsePoly::one(n)).unwrap();
            let alpha = MultiplicityProfile::of(&m).factorial();
            prop_assert_eq!(per, monomial_sym(&m).scale(&alpha));
        }
    }
}
