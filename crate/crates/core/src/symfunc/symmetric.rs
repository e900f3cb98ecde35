use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use crate::error::{Error, Result};
use crate::permgroup::{Partition, Permutation};
use crate::rational::{q, Q};

use super::{det, SparsePoly};

/// Elementary symmetric polynomial `e_k(z_1..z_n)`; `1` for `k = 0`, `0` for `k > n`.
pub fn elementary(k: usize, n: usize) -> SparsePoly {
    let mut out = SparsePoly::zero(n);
    if k > n {
        return out;
    }
    let mut exp = vec![0u32; n];
    fn choose(start: usize, left: usize, exp: &mut Vec<u32>, out: &mut SparsePoly) {
        if left == 0 {
            out.add_term(exp.clone(), Q::one());
            return;
        }
        for i in start..=exp.len() - left {
            exp[i] = 1;
            choose(i + 1, left - 1, exp, out);
            exp[i] = 0;
        }
    }
    choose(0, k, &mut exp, &mut out);
    out
}

/// `Δ(z) = Π_{i<j} (z_i − z_j)`.
pub fn vandermonde(n: usize) -> SparsePoly {
    let mut out = SparsePoly::one(n);
    for i in 0..n {
        for j in i + 1..n {
            out = &out * &(&SparsePoly::var(n, i) - &SparsePoly::var(n, j));
        }
    }
    out
}

/// Distinct rearrangements of `m`, in increasing lexicographic order.
pub fn orbit(m: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = m.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // Standard next-permutation walk over the multiset.
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// `M_m(z)`: every distinct rearrangement of `z^m` with coefficient 1.
pub fn monomial_sym(m: &[u32]) -> SparsePoly {
    SparsePoly::from_terms(m.len(), orbit(m).into_iter().map(|e| (e, Q::one())))
}

/// Repetition counts of the distinct entries of an exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityProfile {
    alpha: Vec<usize>,
}

impl MultiplicityProfile {
    /// Counts are listed by decreasing entry value.
    pub fn of(m: &[u32]) -> Self {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for &x in m {
            *counts.entry(x).or_default() += 1;
        }
        Self {
            alpha: counts.into_values().rev().collect(),
        }
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn n(&self) -> usize {
        self.alpha.iter().sum()
    }

    /// `α! = α_1!⋯α_k!`.
    pub fn factorial(&self) -> Q {
        self.alpha
            .iter()
            .map(|&a| crate::rational::factorial(a as u32))
            .fold(Q::one(), |acc, x| acc * x)
    }

    /// `n!/α!`.
    pub fn orbit_size(&self) -> Q {
        crate::rational::factorial(self.n() as u32) / self.factorial()
    }
}

/// `a_m(z) = det(z_i^{m_j})` for strictly decreasing `m`.
pub fn alternant(m: &[u32]) -> Result<SparsePoly> {
    if m.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidInput(format!("alternant exponents must strictly decrease: {m:?}")));
    }
    let n = m.len();
    crate::config::check_n(n.max(1))?;
    let mut out = SparsePoly::zero(n);
    for sigma in Permutation::all_unchecked(n) {
        // row i takes exponent m_{σ(i)}
        let exp: Vec<u32> = (0..n).map(|i| m[sigma.apply(i)]).collect();
        out.add_term(exp, q(sigma.sign()));
    }
    Ok(out)
}

fn staircase(n: usize) -> Vec<u32> {
    (0..n).map(|i| (n - 1 - i) as u32).collect()
}

/// `S_p = a_{p+δ} / a_δ` in `n` variables.
pub fn schur_bialternant(p: &Partition, n: usize) -> Result<SparsePoly> {
    let padded = p.padded(n)?;
    let shifted: Vec<u32> = padded.iter().zip(staircase(n)).map(|(&a, d)| a as u32 + d).collect();
    let numerator = alternant(&shifted)?;
    numerator.div_exact(&vandermonde(n))
}

/// Giambelli's dual form `S_p = det(e_{p′_i + j − i})` as a polynomial in
/// abstract variables `e_1..e_n` (variable `k−1` stands for `e_k`).
pub fn schur_giambelli(p: &Partition, n: usize) -> Result<SparsePoly> {
    if p.len() > n {
        return Err(Error::InvalidInput(format!("partition {p} has more than {n} parts")));
    }
    let conj = p.conjugate();
    let r = conj.len();
    let e = |k: i64| -> SparsePoly {
        match k {
            0 => SparsePoly::one(n),
            k if k < 0 || k as usize > n => SparsePoly::zero(n),
            k => SparsePoly::var(n, k as usize - 1),
        }
    };
    let matrix: Vec<Vec<SparsePoly>> = (0..r)
        .map(|i| (0..r).map(|j| e(conj.parts()[i] as i64 + j as i64 - i as i64)).collect())
        .collect();
    Ok(det(&matrix, &SparsePoly::one(n)))
}

pub fn conjugate_partition(p: &Partition) -> Partition {
    p.conjugate()
}

/// Rewrites a symmetric polynomial in the elementary basis.
///
/// The result has one variable per elementary polynomial (`e_k` is variable
/// `k−1`). Elimination proceeds on the graded-lex leading term, whose
/// exponent `a` is weakly decreasing; it is cancelled by
/// `Π_k e_k^{a_k − a_{k+1}}`.
pub fn to_elementary_basis(f: &SparsePoly) -> Result<SparsePoly> {
    if !f.is_symmetric() {
        return Err(Error::InvalidInput("polynomial is not symmetric".into()));
    }
    let n = f.nvars();
    let e: Vec<SparsePoly> = (1..=n).map(|k| elementary(k, n)).collect();
    let mut cache: BTreeMap<Vec<u32>, SparsePoly> = BTreeMap::new();
    let mut rem = f.clone();
    let mut out = SparsePoly::zero(n);
    while let Some((lead, c)) = rem.leading_grlex() {
        let (lead, c) = (lead.clone(), c.clone());
        let b: Vec<u32> = (0..n).map(|k| lead[k] - lead.get(k + 1).copied().unwrap_or(0)).collect();
        let product = cache
            .entry(b.clone())
            .or_insert_with(|| {
                b.iter()
                    .zip(&e)
                    .filter(|(&k, _)| k > 0)
                    .fold(SparsePoly::one(n), |acc, (&k, ek)| &acc * &ek.pow(k))
            })
            .clone();
        rem = &rem - &product.scale(&c);
        out.add_term(b, c);
    }
    Ok(out)
}

/// Substitutes `e_k ↦ elementary(k, n)` into a polynomial in elementary
/// coordinates (one variable per `e_k`, `k = 1..g.nvars()`).
pub fn from_elementary_basis(g: &SparsePoly, n: usize) -> Result<SparsePoly> {
    let images: Vec<SparsePoly> = (1..=g.nvars()).map(|k| elementary(k, n)).collect();
    if images.is_empty() {
        return Ok(SparsePoly::constant(n, g.constant_term()));
    }
    g.substitute(&images)
}

/// Rising factorial `(x)_m = x(x+1)⋯(x+m−1)`.
pub fn pochhammer(x: &Q, m: u32) -> Q {
    (0..m).fold(Q::one(), |acc, k| acc * (x + q(k as i64)))
}

/// `(x)_m = Π_j (x)_{m_j}`.
pub fn pochhammer_multi(x: &Q, m: &[u32]) -> Q {
    m.iter().fold(Q::one(), |acc, &k| acc * pochhammer(x, k))
}

/// Exponent vectors in `[n]`: weakly decreasing, length `n`, total degree
/// at most `d`. Returned in increasing lexicographic order.
pub(crate) fn decreasing_exponents(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = BTreeSet::new();
    for total in 0..=d {
        for p in Partition::all_bounded(total as usize, n) {
            let v: Vec<u32> = p.padded(n).expect("bounded length").into_iter().map(|x| x as u32).collect();
            out.insert(v);
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;
    use proptest::prelude::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn e_poly(n: usize, terms: &[(&[u32], i64)]) -> SparsePoly {
        SparsePoly::from_terms(n, terms.iter().map(|(e, c)| (e.to_vec(), q(*c))))
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(elementary(0, 3), SparsePoly::one(3));
        assert_eq!(elementary(2, 3).to_string(), "x1*x2 + x1*x3 + x2*x3");
        assert!(elementary(4, 3).is_zero());
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(vandermonde(1), SparsePoly::one(1));
        assert_eq!(vandermonde(2).to_string(), "x1 - x2");
        assert_eq!(vandermonde(3).eval_q(&[q(3), q(2), q(1)]), q(2));
        let v = vandermonde(4);
        assert_eq!(v.swap_vars(0, 2), -&v);
        // δ-alternant is the Vandermonde
        assert_eq!(alternant(&[3, 2, 1, 0]).unwrap(), v);
    }

    #[test]
    fn monomial_symmetric_examples() {
        assert_eq!(monomial_sym(&[1, 0, 0, 0]), elementary(1, 4));
        assert_eq!(monomial_sym(&[1, 1, 0, 0]), elementary(2, 4));
        assert_eq!(monomial_sym(&[2, 0, 0]).to_string(), "x1^2 + x2^2 + x3^2");
        assert_eq!(orbit(&[2, 0, 0]), vec![vec![0, 0, 2], vec![0, 2, 0], vec![2, 0, 0]]);
    }

    #[test]
    fn multiplicity_profile() {
        let a = MultiplicityProfile::of(&[2, 0, 0]);
        assert_eq!(a.alpha(), &[1, 2]);
        assert_eq!(a.factorial(), q(2));
        assert_eq!(a.orbit_size(), q(3));
    }

    #[test]
    fn alternant_examples() {
        assert_eq!(alternant(&[2, 0]).unwrap().to_string(), "x1^2 - x2^2");
        assert_eq!(alternant(&[1, 0]).unwrap(), vandermonde(2));
        assert!(matches!(alternant(&[1, 1]), Err(Error::InvalidInput(_))));
        assert!(matches!(alternant(&[0, 1]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur_bialternant(&Partition::empty(), 3).unwrap(), SparsePoly::one(3));
        assert_eq!(schur_giambelli(&Partition::empty(), 3).unwrap(), SparsePoly::one(3));
        let s2 = schur_bialternant(&part(&[2]), 3).unwrap();
        assert_eq!(to_elementary_basis(&s2).unwrap(), e_poly(3, &[(&[2, 0, 0], 1), (&[0, 1, 0], -1)]));
        let s11 = schur_bialternant(&part(&[1, 1]), 3).unwrap();
        assert_eq!(to_elementary_basis(&s11).unwrap(), e_poly(3, &[(&[0, 1, 0], 1)]));
        assert_eq!(schur_giambelli(&part(&[1]), 3).unwrap(), e_poly(3, &[(&[1, 0, 0], 1)]));
        assert_eq!(
            schur_giambelli(&part(&[2]), 3).unwrap(),
            e_poly(3, &[(&[2, 0, 0], 1), (&[0, 1, 0], -1)])
        );
        assert_eq!(schur_giambelli(&part(&[1, 1]), 3).unwrap(), e_poly(3, &[(&[0, 1, 0], 1)]));
        let s21 = schur_bialternant(&part(&[2, 1]), 3).unwrap();
        let expect = e_poly(3, &[(&[1, 1, 0], 1), (&[0, 0, 1], -1)]);
        assert_eq!(to_elementary_basis(&s21).unwrap(), expect);
        assert_eq!(schur_giambelli(&part(&[2, 1]), 3).unwrap(), expect);
        assert!(schur_bialternant(&part(&[1, 1, 1, 1]), 3).is_err());
    }

    #[test]
    fn elementary_basis_examples() {
        assert_eq!(to_elementary_basis(&elementary(2, 3)).unwrap(), e_poly(3, &[(&[0, 1, 0], 1)]));
        let p2 = monomial_sym(&[2, 0, 0]);
        assert_eq!(
            to_elementary_basis(&p2).unwrap(),
            e_poly(3, &[(&[2, 0, 0], 1), (&[0, 1, 0], -2)])
        );
        assert!(matches!(
            to_elementary_basis(&SparsePoly::var(2, 0)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn conjugates() {
        assert_eq!(conjugate_partition(&part(&[3, 3, 2, 1, 1])), part(&[5, 3, 2]));
        assert_eq!(conjugate_partition(&part(&[4])), part(&[1, 1, 1, 1]));
        assert_eq!(conjugate_partition(&part(&[2, 1])), part(&[2, 1]));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&qf(7, 3), 0), q(1));
        assert_eq!(pochhammer(&q(2), 3), q(24));
        assert_eq!(pochhammer_multi(&q(3), &[1, 0]), q(3));
    }

    #[test]
    fn giambelli_matches_bialternant_small() {
        for total in 0..=4 {
            for p in Partition::all_bounded(total, 3) {
                let g = schur_giambelli(&p, 3).unwrap();
                let b = schur_bialternant(&p, 3).unwrap();
                assert_eq!(from_elementary_basis(&g, 3).unwrap(), b, "partition {p}");
                assert_eq!(b.homogeneous_degree().unwrap_or(0), total as u32);
                assert!(b.is_symmetric());
            }
        }
    }

    fn arb_sym() -> impl Strategy<Value = SparsePoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -3i64..4), 0..3).prop_map(|terms| {
            terms.into_iter().fold(SparsePoly::zero(3), |acc, (m, c)| &acc + &monomial_sym(&m).scale(&q(c)))
        })
    }

    proptest! {
        #[test]
        fn monomial_sym_constant_on_orbits(m in prop::collection::vec(0u32..4, 1..5), seed in 0usize..120) {
            let perms = Permutation::all_unchecked(m.len());
            let s = &perms[seed % perms.len()];
            prop_assert_eq!(monomial_sym(&s.act(&m)), monomial_sym(&m));
        }

        #[test]
        fn elementary_round_trip(f in arb_sym()) {
            let g = to_elementary_basis(&f).unwrap();
            prop_assert_eq!(from_elementary_basis(&g, 3).unwrap(), f);
        }

        #[test]
        fn elementary_conversion_is_multiplicative(f in arb_sym(), g in arb_sym()) {
            let lhs = to_elementary_basis(&(&f * &g)).unwrap();
            let rhs = &to_elementary_basis(&f).unwrap() * &to_elementary_basis(&g).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn alternant_divisible_by_vandermonde(n in 1usize..5, raw in prop::collection::vec(0u32..6, 4)) {
            let mut m: Vec<u32> = raw.into_iter().take(n).collect();
            m.sort_unstable_by(|a, b| b.cmp(a));
            m.dedup();
            prop_assume!(m.len() == n);
            let a = alternant(&m).unwrap();
            let quo = a.div_exact(&vandermonde(n)).unwrap();
            prop_assert_eq!(&quo * &vandermonde(n), a);
        }
    }
}
