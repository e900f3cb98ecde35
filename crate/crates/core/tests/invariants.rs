use num_complex::Complex64;
use num_traits::Zero;
use proptest::prelude::*;
use symmod::hilbmod::{build_module, projection};
use symmod::kernels::{kernel_bergman_gn, kernel_gn_monomial, kernel_polydisc, kernel_sym, witness_inequivalence};
use symmod::permgroup::{character_table, irrep_seminormal, Partition, Permutation};
use symmod::points::{symmetrize_c, to_c64, PointSampler};
use symmod::rational::{q, qf, to_f64};
use symmod::Q;

/// Exponent vectors of total degree exactly `k` in `n` variables.
fn degree_k(n: usize, k: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![k]];
    }
    (0..=k)
        .flat_map(|first| {
            degree_k(n - 1, k - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

// The isotype of p in degree-k polynomials has dimension
// χ_p(1)/n! · Σ_σ χ_p(σ) · #{monomials fixed by σ}.
#[test]
fn isotype_traces_match_characters() {
    for (n, d) in [(2usize, 5u32), (3, 4)] {
        let module = build_module(&q(1), n, d).unwrap();
        let table = character_table(n).unwrap();
        let group = Permutation::all(n).unwrap();
        for p in Partition::all(n) {
            let irrep = irrep_seminormal(&p).unwrap();
            let chi1 = irrep.dim();
            let mut projections = Vec::new();
            for i in 0..chi1 {
                projections.push(projection(&irrep, i, i, &module).unwrap().matrix);
            }
            for k in 0..=d {
                let monomials = degree_k(n, k);
                let mut sum = Q::zero();
                for sigma in &group {
                    let fixed = monomials.iter().filter(|m| sigma.act(m) == **m).count() as i64;
                    sum += q(table.value(&p, sigma).unwrap() * fixed);
                }
                let expected = sum * q(chi1 as i64) / q(group.len() as i64);
                let mut trace = Q::zero();
                for m in &monomials {
                    let j = module.index_of(m).unwrap();
                    for proj in &projections {
                        trace += proj.get(j, j);
                    }
                }
                assert_eq!(trace, expected, "n={n} p={p} degree {k}");
            }
        }
    }
}

#[test]
fn polydisc_kernel_matches_closed_form() {
    let lambda = qf(3, 2);
    let k = kernel_polydisc(&lambda, 2, 40).unwrap();
    let z = [Complex64::new(0.2, -0.1), Complex64::new(-0.15, 0.25)];
    let w = [Complex64::new(0.1, 0.3), Complex64::new(0.05, -0.2)];
    let closed: Complex64 = z
        .iter()
        .zip(&w)
        .map(|(a, b)| (Complex64::new(1.0, 0.0) - a * b.conj()).powf(-to_f64(&lambda)))
        .product();
    assert!((k.eval(&z, &w) - closed).norm() < 1e-12);
}

#[test]
fn symmetric_kernel_averages_the_polydisc_kernel() {
    let lambda = q(2);
    let ks = kernel_sym(&lambda, 3, 24).unwrap();
    let kp = kernel_polydisc(&lambda, 3, 24).unwrap();
    let z = [Complex64::new(0.1, 0.05), Complex64::new(-0.2, 0.1), Complex64::new(0.15, -0.1)];
    let w = [Complex64::new(0.05, -0.1), Complex64::new(0.2, 0.0), Complex64::new(-0.1, 0.15)];
    let group = Permutation::all(3).unwrap();
    let avg: Complex64 = group.iter().map(|s| kp.eval(&s.act(&z), &w)).sum::<Complex64>() / group.len() as f64;
    assert!((ks.eval(&z, &w) - avg).norm() < 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn kernel_grams_are_positive(seed in any::<u64>(), n in 2usize..=3, num in 1i64..=12, den in 1i64..=4) {
        let lambda = qf(num, den);
        let mut sampler = PointSampler::new(seed);
        let points: Vec<Vec<Complex64>> =
            (0..5).map(|_| symmetrize_c(&to_c64(&sampler.complex_point(n)))).collect();
        for k in [kernel_gn_monomial(&lambda, n, 8).unwrap(), kernel_bergman_gn(&lambda, n, 8).unwrap()] {
            prop_assert!(k.gram_min_eigenvalue(&points) > -1e-8);
        }
    }

    #[test]
    fn witness_separates_for_every_weight(num in 1i64..=30, den in 1i64..=7, n in 2usize..=4) {
        let r = witness_inequivalence(&qf(num, den), n).unwrap();
        prop_assert!(r.differ && !r.system_solvable && r.pass);
    }
}
