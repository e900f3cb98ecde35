//! Acceptance suite: every criterion runs at its stated size and tolerance
//! and prints one PASS/FAIL line with its wall time. Expected values come
//! from oracles written here (hook lengths, tableau counts, closed forms),
//! not from the library routine under test.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use symmod::geometry::{compare_curvatures, curvature, default_degree, sample_radius, SectionEvaluator, DEFAULT_STEP};
use symmod::hilbmod::{
    all_projections, artin_determinant_check, build_module, verify_projection_algebra, verify_ranks, verify_reducing,
    TruncatedModule,
};
use symmod::kernels::{
    extract_e1_coefficient, kernel_bergman_gn, kernel_gn_monomial, kernel_polydisc, kernel_sym, normalize_at_zero,
    witness_inequivalence,
};
use symmod::linalg::SparseMatrix;
use symmod::permgroup::{character_table, irrep_orthogonal, irrep_seminormal, verify_orthogonality, Form, Partition, Permutation};
use symmod::points::seeded_complex_points;
use symmod::points::seeded_weights;
use symmod::rational::{q, qf, to_f64};
use symmod::symfunc::{from_elementary_basis, schur_bialternant, schur_giambelli, SparsePoly};
use symmod::Q;

const SEED: u64 = 2024;

struct Outcome {
    id: u32,
    name: &'static str,
    budget: Duration,
    elapsed: Duration,
    failures: Vec<String>,
}

impl Outcome {
    fn pass(&self) -> bool {
        self.failures.is_empty() && self.elapsed <= self.budget
    }

    fn line(&self) -> String {
        let mut s = format!(
            "{} criterion {:>2} {:<28} {:>8.2?} (budget {:?})",
            if self.pass() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed,
            self.budget
        );
        if self.elapsed > self.budget {
            s.push_str(" over budget");
        }
        for f in &self.failures {
            s.push_str("\n    ");
            s.push_str(f);
        }
        s
    }
}

fn run(id: u32, name: &'static str, budget_s: u64, body: impl FnOnce(&mut Vec<String>)) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    body(&mut failures);
    Outcome {
        id,
        name,
        budget: Duration::from_secs(budget_s),
        elapsed: start.elapsed(),
        failures,
    }
}

macro_rules! ensure {
    ($f:expr, $cond:expr, $($msg:tt)+) => {
        if !$cond {
            $f.push(format!($($msg)+));
        }
    };
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `n! / Π hook lengths`, computed from the diagram.
fn hook_dimension(p: &[usize]) -> u64 {
    let n: usize = p.iter().sum();
    let mut hooks = 1u64;
    for (r, &len) in p.iter().enumerate() {
        for c in 0..len {
            let arm = len - c - 1;
            let leg = p[r + 1..].iter().filter(|&&l| l > c).count();
            hooks *= (arm + leg + 1) as u64;
        }
    }
    factorial(n) / hooks
}

fn partitions(n: usize, max_part: usize, max_len: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    if max_len == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max_part)).rev() {
        for mut rest in partitions(n - first, first, max_len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Schur polynomial as the sum of `x^T` over semistandard tableaux with
/// entries in `0..n`.
fn schur_by_tableaux(shape: &[usize], n: usize) -> SparsePoly {
    let cells: Vec<(usize, usize)> = shape.iter().enumerate().flat_map(|(r, &l)| (0..l).map(move |c| (r, c))).collect();
    let mut filling: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut acc = SparsePoly::zero(n);
    fn fill(
        k: usize,
        cells: &[(usize, usize)],
        n: usize,
        filling: &mut BTreeMap<(usize, usize), usize>,
        acc: &mut SparsePoly,
    ) {
        if k == cells.len() {
            let mut exp = vec![0u32; n];
            for v in filling.values() {
                exp[*v] += 1;
            }
            acc.add_term(exp, Q::one());
            return;
        }
        let (r, c) = cells[k];
        let lo_row = if c > 0 { filling[&(r, c - 1)] } else { 0 };
        let lo_col = if r > 0 { filling[&(r - 1, c)] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..n {
            filling.insert((r, c), v);
            fill(k + 1, cells, n, filling, acc);
        }
        filling.remove(&(r, c));
    }
    fill(0, &cells, n, &mut filling, &mut acc);
    acc
}

fn criterion_1(f: &mut Vec<String>) {
    for n in 2..=6 {
        let table = character_table(n).expect("table");
        let dims: Vec<i64> = table.values.iter().map(|row| row[0]).collect();
        let oracle: Vec<i64> = table.partitions.iter().map(|p| hook_dimension(p.parts()) as i64).collect();
        ensure!(f, dims == oracle, "n={n}: dimensions {dims:?} differ from hook lengths {oracle:?}");
        let sum: i64 = dims.iter().map(|d| d * d).sum();
        ensure!(f, sum == factorial(n) as i64, "n={n}: sum of squares {sum}");
        ensure!(f, table.partitions.len() == partitions(n, n, n).len(), "n={n}: wrong number of partitions");
    }
    let t3 = character_table(3).unwrap();
    let row = t3.row_of(&Partition::new(vec![2, 1]).unwrap()).unwrap();
    ensure!(f, t3.values[row][0].pow(2) == 4, "χ_(2,1)(1)² = {}", t3.values[row][0].pow(2));
}

fn criterion_2(f: &mut Vec<String>) {
    for n in [3, 4] {
        let group = Permutation::all(n).unwrap();
        let order = factorial(n) as i64;
        let parts = Partition::all(n);
        let semi: Vec<_> = parts.iter().map(|p| irrep_seminormal(p).unwrap()).collect();
        let orth: Vec<_> = parts.iter().map(|p| irrep_orthogonal(p).unwrap()).collect();
        let mut worst_exact = Q::zero();
        let mut worst_float = 0.0f64;
        for a in 0..parts.len() {
            for b in 0..parts.len() {
                let (da, db) = (semi[a].dim(), semi[b].dim());
                for i in 0..da {
                    for j in 0..da {
                        for k in 0..db {
                            for l in 0..db {
                                let expected = if a == b && i == l && j == k {
                                    qf(order, da as i64)
                                } else {
                                    Q::zero()
                                };
                                let mut s = Q::zero();
                                let mut x = 0.0;
                                for sigma in &group {
                                    let inv = sigma.inverse();
                                    s += semi[a].entry(sigma, i, j) * semi[b].entry(&inv, k, l);
                                    x += orth[a].entry(sigma, i, j) * orth[b].entry(&inv, k, l);
                                }
                                let dev = (s - &expected).abs();
                                if dev > worst_exact {
                                    worst_exact = dev;
                                }
                                worst_float = worst_float.max((x - to_f64(&expected)).abs());
                            }
                        }
                    }
                }
                for form in [Form::Seminormal, Form::Orthogonal] {
                    let r = verify_orthogonality(&parts[a], &parts[b], form).unwrap();
                    ensure!(f, r.pass, "n={n} {} {} {form}: library check failed ({})", parts[a], parts[b], r.max_deviation);
                }
            }
        }
        ensure!(f, worst_exact.is_zero(), "n={n}: seminormal deviation {worst_exact}");
        ensure!(f, worst_float <= 1e-10, "n={n}: orthogonal deviation {worst_float:e}");
    }
}

fn products_and_completeness(module: &TruncatedModule, f: &mut Vec<String>) {
    let n = module.n();
    let irreps: Vec<_> = Partition::all(n).iter().map(|p| irrep_seminormal(p).unwrap()).collect();
    let projections = all_projections(&irreps, module).unwrap();
    let dim = module.dim();
    let mut sum = SparseMatrix::<Q>::zeros(dim, dim);
    let mut bad = 0;
    for a in &projections {
        if a.i == a.j {
            sum = sum.add(&a.matrix);
        }
        for b in &projections {
            let product = a.matrix.mul(&b.matrix);
            let expected = if a.partition == b.partition && a.j == b.i {
                projections
                    .iter()
                    .find(|c| c.partition == a.partition && c.i == a.i && c.j == b.j)
                    .unwrap()
                    .matrix
                    .clone()
            } else {
                SparseMatrix::zeros(dim, dim)
            };
            if !product.max_abs_diff(&expected).is_zero() {
                bad += 1;
            }
        }
    }
    ensure!(f, bad == 0, "n={n}: {bad} products P^ij P^kl differ from δ_jk P^il");
    ensure!(f, sum.max_abs_diff(&SparseMatrix::identity(dim)).is_zero(), "n={n}: Σ P^ii ≠ I");
}

fn self_adjoint_defect(module: &TruncatedModule) -> f64 {
    let irreps: Vec<_> = Partition::all(module.n()).iter().map(|p| irrep_orthogonal(p).unwrap()).collect();
    let norms: Vec<f64> = module.norms_sq().iter().map(to_f64).collect();
    let mut worst = 0.0f64;
    for p in all_projections(&irreps, module).unwrap().iter().filter(|p| p.i == p.j) {
        for a in 0..module.dim() {
            for b in 0..module.dim() {
                let lhs = p.matrix.get(b, a) * norms[b];
                let rhs = p.matrix.get(a, b) * norms[a];
                worst = worst.max((lhs - rhs).abs());
            }
        }
    }
    worst
}

fn criterion_3(f: &mut Vec<String>) {
    for (n, d) in [(2, 6), (3, 4)] {
        let module = build_module(&q(2), n, d).unwrap();
        products_and_completeness(&module, f);
        let defect = self_adjoint_defect(&module);
        ensure!(f, defect <= 1e-10, "n={n}: self-adjointness defect {defect:e}");
        let semi = verify_projection_algebra(&module, Form::Seminormal).unwrap();
        ensure!(f, semi.pass && semi.max_deviation == "0", "n={n}: library seminormal check {}", semi.max_deviation);
        let orth = verify_projection_algebra(&module, Form::Orthogonal).unwrap();
        ensure!(f, orth.pass, "n={n}: library orthogonal check {}", orth.max_deviation);
    }
}

fn criterion_4(f: &mut Vec<String>) {
    for (n, d) in [(2, 6), (3, 4)] {
        let module = build_module(&q(1), n, d).unwrap();
        let irreps: Vec<_> = Partition::all(n).iter().map(|p| irrep_seminormal(p).unwrap()).collect();
        let projections = all_projections(&irreps, &module).unwrap();
        for k in 1..=n {
            let m = module.mult_op(k);
            for p in &projections {
                let mp = m.mul(&p.matrix);
                let pm = p.matrix.mul(m);
                let dev = mp.max_abs_diff_on(&pm, module.columns_up_to(d as i64 - k as i64));
                ensure!(f, dev.is_zero(), "n={n}: [M_s{k}, P_{}^{}{}] = {dev}", p.partition, p.i, p.j);
            }
        }
        let r = verify_reducing(&module, Form::Seminormal).unwrap();
        ensure!(f, r.pass, "n={n}: library reducing check {}", r.max_deviation);
    }
}

fn criterion_5(f: &mut Vec<String>) {
    for n in [2, 3] {
        let module = build_module(&q(2), n, 6).unwrap();
        let r = verify_ranks(&module, Form::Seminormal, 10, SEED).unwrap();
        let points = r.details["points"].as_array().unwrap();
        ensure!(f, points.len() == 10, "n={n}: {} points", points.len());
        ensure!(f, r.details["exact"] == true, "n={n}: ranks not computed exactly");
        let expected: BTreeMap<Vec<usize>, u64> =
            partitions(n, n, n).into_iter().map(|p| (p.clone(), hook_dimension(&p).pow(2))).collect();
        for rec in points {
            let orbit = rec["orbit_rank"].as_u64().unwrap();
            ensure!(f, orbit == factorial(n), "n={n}: orbit rank {orbit} at {}", rec["w"]);
            for pair in rec["isotype_ranks"].as_array().unwrap() {
                let p: Vec<usize> = serde_json::from_value(pair[0].clone()).unwrap();
                let rank = pair[1].as_u64().unwrap();
                ensure!(f, expected[&p] == rank, "n={n}: isotype {p:?} rank {rank} at {}", rec["w"]);
            }
        }
        ensure!(f, r.pass, "n={n}: library rank check failed");
    }
}

fn criterion_6(f: &mut Vec<String>) {
    let r2 = artin_determinant_check(2, 5, SEED).unwrap();
    ensure!(f, r2.ratios.len() == 5 && r2.ratios.iter().all(|x| x == "-1"), "n=2 ratios {:?}", r2.ratios);
    let r3 = artin_determinant_check(3, 5, SEED).unwrap();
    ensure!(f, r3.ratios.len() == 5, "n=3: {} ratios", r3.ratios.len());
    ensure!(f, r3.ratios.windows(2).all(|w| w[0] == w[1]) && r3.ratios[0] != "0", "n=3 ratios {:?}", r3.ratios);
    let expected = (factorial(3) / 2 * binomial(3, 2)) as u32;
    ensure!(f, r3.degree == Some(expected), "n=3 degree {:?}, expected {expected}", r3.degree);
    ensure!(f, r2.pass && r3.pass, "library determinant check failed");
}

fn criterion_7(f: &mut Vec<String>) {
    for (n, lambda, d) in [(2, q(1), 6), (2, qf(5, 2), 6), (3, q(2), 4), (4, q(1), 3)] {
        let sym = kernel_sym(&lambda, n, d).unwrap().bivariate();
        let pulled = kernel_gn_monomial(&lambda, n, d).unwrap().pullback().unwrap().bivariate();
        let diff = &sym - &pulled;
        ensure!(f, diff.is_zero(), "(n, λ, d) = ({n}, {lambda}, {d}): {} mismatched terms", diff.len());
        ensure!(f, !sym.is_zero(), "(n, λ, d) = ({n}, {lambda}, {d}): empty kernel");
    }
}

fn criterion_8(f: &mut Vec<String>) {
    let weights = seeded_weights(SEED, 10, 6);
    ensure!(f, weights.len() == 10 && weights.iter().all(|w| *w > Q::zero()), "bad weights {weights:?}");
    let one = Q::one();
    for n in [2usize, 3, 4] {
        let nq = q(n as i64);
        for w in &weights {
            let k = kernel_gn_monomial(w, n, 4).unwrap();
            let b = normalize_at_zero(&kernel_bergman_gn(w, n, 4).unwrap()).unwrap();
            let cases = [
                ("λ/n", extract_e1_coefficient(&k, 1).unwrap(), w / &nq),
                ("λ(λ+1)/(2n)", extract_e1_coefficient(&k, 2).unwrap(), w * (w + &one) / (q(2) * &nq)),
                ("(μ+n−1)/n", extract_e1_coefficient(&b, 1).unwrap(), (w + &nq - &one) / &nq),
                (
                    "(μ+n−1)(μ+n)/(n(n+1))",
                    extract_e1_coefficient(&b, 2).unwrap(),
                    (w + &nq - &one) * (w + &nq) / (&nq * (&nq + &one)),
                ),
            ];
            for (name, got, want) in cases {
                ensure!(f, got == want, "n={n}, weight {w}: {name} gave {got}, expected {want}");
            }
        }
    }
}

fn criterion_9(f: &mut Vec<String>) {
    for n in 1..=5 {
        for lambda in [q(1), qf(5, 2), q(4)] {
            let r = witness_inequivalence(&lambda, n).unwrap();
            if n == 1 {
                ensure!(f, !r.differ && r.system_solvable, "n=1, λ={lambda}: differ={} solvable={}", r.differ, r.system_solvable);
            } else {
                ensure!(f, r.differ && !r.system_solvable, "n={n}, λ={lambda}: differ={} solvable={}", r.differ, r.system_solvable);
            }
            ensure!(f, r.pass, "n={n}, λ={lambda}: library witness failed");
        }
    }
}

fn criterion_10(f: &mut Vec<String>) {
    let n = 4;
    let mut count = 0;
    for size in 0..=6 {
        for parts in partitions(size, size, 4) {
            let p = Partition::new(parts.clone()).unwrap();
            let giambelli = from_elementary_basis(&schur_giambelli(&p, n).unwrap(), n).unwrap();
            let bialternant = schur_bialternant(&p, n).unwrap();
            let tableaux = schur_by_tableaux(&parts, n);
            ensure!(f, giambelli == bialternant, "{p}: Giambelli ≠ bialternant");
            ensure!(f, bialternant == tableaux, "{p}: bialternant ≠ tableau sum");
            count += 1;
        }
    }
    ensure!(f, count == 1 + 1 + 2 + 3 + 5 + 6 + 9, "{count} partitions checked");
}

fn criterion_11(f: &mut Vec<String>) {
    for lambda in [q(1), q(2), qf(5, 2)] {
        let ev = SectionEvaluator::new(&kernel_polydisc(&lambda, 1, default_degree(1)).unwrap());
        for u in [Complex64::new(0.3, 0.0), Complex64::new(0.2, 0.4), Complex64::new(0.0, -0.5)] {
            let r = curvature(&ev, &[u], DEFAULT_STEP).unwrap();
            let oracle = -to_f64(&lambda) / (1.0 - u.norm_sqr()).powi(2);
            let rel = (r.matrix[0][0] - oracle).norm() / oracle.abs();
            ensure!(f, rel <= 1e-4, "n=1, λ={lambda}, u={u}: relative error {rel:e}");
        }
    }
    for lambda in [q(1), q(2)] {
        let points = seeded_complex_points(SEED, 2, 3, &sample_radius(2));
        let r = compare_curvatures(2, &lambda, &points, DEFAULT_STEP, default_degree(2)).unwrap();
        let distinguished = r
            .points
            .iter()
            .filter(|p| p.resolved && p.max_diff > 10.0 * p.richardson_err)
            .count();
        ensure!(f, distinguished >= 1, "n=2, λ={lambda}: no point distinguished ({})", r.verdict);
        ensure!(f, r.hermitian_defect <= 1e-6, "n=2, λ={lambda}: hermitian defect {:e}", r.hermitian_defect);
    }
}

#[test]
fn acceptance_criteria() {
    let outcomes = [
        run(1, "character dimensions", 10, criterion_1),
        run(2, "orthogonality", 60, criterion_2),
        run(3, "projection algebra", 60, criterion_3),
        run(4, "reducing commutation", 30, criterion_4),
        run(5, "joint-kernel ranks", 120, criterion_5),
        run(6, "determinant identity", 60, criterion_6),
        run(7, "kernel equivalence", 120, criterion_7),
        run(8, "coefficient formulas", 30, criterion_8),
        run(9, "inequivalence witness", 5, criterion_9),
        run(10, "giambelli = bialternant", 60, criterion_10),
        run(11, "curvature", 120, criterion_11),
    ];
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.pass()).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
