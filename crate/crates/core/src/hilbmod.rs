//! Degree-truncated weighted Bergman modules on the polydisc.
//!
//! The truncation keeps the monomials `z^m` with `|m| ≤ d`. They are
//! mutually orthogonal with `‖z^m‖² = m!/(λ)_m`, so every inner product and
//! adjoint below is taken against that diagonal weight.

use std::collections::HashMap;

use nalgebra::{Complex, DMatrix};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::check_n;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, SparseMatrix};
use crate::permgroup::{
    character_table, inversion_counts, irrep_orthogonal, irrep_seminormal, Form, Irrep, Partition, Permutation,
    FLOAT_TOL,
};
use crate::points::{on_diagonal, real_parts, to_c64, ComplexQ, Point, PointSampler};
use crate::rational::{check_weight, factorial, fmt_q, q, to_f64, Q};
use crate::symfunc::{pochhammer_multi, vandermonde};

/// Largest `n` for the determinant check (matrix side `n!`).
pub const ARTIN_MAX_N: usize = 4;
/// Caps for the projection-algebra and commutation checks.
pub const ALGEBRA_MAX_N: usize = 4;
pub const ALGEBRA_MAX_D: u32 = 6;
/// Relative singular-value cutoff for floating-point ranks.
pub const RANK_RTOL: f64 = 1e-8;

/// Degree from which kernel-orbit Grams are expected to reach full rank.
pub fn sufficient_degree(n: usize) -> u32 {
    (n * (n.saturating_sub(1)) / 2 + 2) as u32
}

/// Smallest degree in which the isotype of `p` occurs: `Σ_i (i−1) p_i`.
pub fn first_degree(p: &Partition) -> u32 {
    p.parts().iter().enumerate().map(|(i, &x)| (i * x) as u32).sum()
}

#[derive(Clone, Debug)]
pub struct TruncatedModule {
    n: usize,
    lambda: Q,
    d: u32,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    norms_sq: Vec<Q>,
    /// `mult_ops[k-1]` is multiplication by `e_k` on the full basis, with
    /// products of degree above `d` dropped.
    mult_ops: Vec<SparseMatrix<Q>>,
    /// `overflow[k-1][j]` is set when that drop happened for basis vector `j`.
    overflow: Vec<Vec<bool>>,
}

pub fn build_module(lambda: &Q, n: usize, d: u32) -> Result<TruncatedModule> {
    check_n(n)?;
    check_weight(lambda)?;
    if (d as usize) < n {
        return Err(Error::InvalidInput(format!("degree cap {d} is below n = {n}")));
    }
    let basis = exponents_up_to(n, d);
    let index: HashMap<Vec<u32>, usize> = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let norms_sq: Vec<Q> = basis
        .iter()
        .map(|m| m.iter().fold(<Q as One>::one(), |acc, &k| acc * factorial(k)) / pochhammer_multi(lambda, m))
        .collect();
    let dim = basis.len();
    let mut mult_ops = Vec::with_capacity(n);
    let mut overflow = Vec::with_capacity(n);
    for k in 1..=n {
        let subsets = index_subsets(n, k);
        let mut op = SparseMatrix::zeros(dim, dim);
        let mut lost = vec![false; dim];
        for (j, m) in basis.iter().enumerate() {
            for s in &subsets {
                let mut e = m.clone();
                for &i in s {
                    e[i] += 1;
                }
                match index.get(&e) {
                    Some(&row) => op.add_to(row, j, &<Q as One>::one()),
                    None => lost[j] = true,
                }
            }
        }
        mult_ops.push(op);
        overflow.push(lost);
    }
    Ok(TruncatedModule {
        n,
        lambda: lambda.clone(),
        d,
        basis,
        index,
        norms_sq,
        mult_ops,
        overflow,
    })
}

fn exponents_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn exact(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            exact(i + 1, left - k, cur, out);
        }
    }
    let mut out = Vec::new();
    for total in 0..=d {
        exact(0, total, &mut vec![0; n], &mut out);
    }
    out
}

fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

impl TruncatedModule {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &Q {
        &self.lambda
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis exponents, grouped by increasing total degree.
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn norms_sq(&self) -> &[Q] {
        &self.norms_sq
    }

    pub fn degree(&self, j: usize) -> u32 {
        self.basis[j].iter().sum()
    }

    /// Multiplication by `e_k`, `k = 1..=n`.
    pub fn mult_op(&self, k: usize) -> &SparseMatrix<Q> {
        &self.mult_ops[k - 1]
    }

    /// Basis indices whose product with `e_k` left the truncation.
    pub fn overflow_columns(&self, k: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&j| self.overflow[k - 1][j]).collect()
    }

    /// Basis indices of degree at most `max`.
    pub fn columns_up_to(&self, max: i64) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(move |&j| self.degree(j) as i64 <= max)
    }

    /// `⟨x, y⟩ = Σ_m ‖z^m‖² x_m conj(y_m)` for real coefficient vectors.
    pub fn inner_q(&self, x: &[Q], y: &[Q]) -> Q {
        self.norms_sq.iter().zip(x).zip(y).map(|((w, a), b)| w * a * b).sum()
    }

    pub fn inner_c(&self, x: &[Complex64], y: &[Complex64]) -> Complex64 {
        self.norms_sq
            .iter()
            .zip(x)
            .zip(y)
            .map(|((w, a), b)| a * b.conj() * to_f64(w))
            .sum()
    }

    /// Coefficients of the truncated kernel `K^(λ)(·, w)`: `(λ)_m/m! · w̄^m`.
    pub fn kernel_vector_q(&self, w: &[Q]) -> Vec<Q> {
        self.basis
            .iter()
            .zip(&self.norms_sq)
            .map(|(m, nrm)| m.iter().zip(w).fold(nrm.recip(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize)))
            .collect()
    }

    pub fn kernel_vector_c(&self, w: &[Complex64]) -> Vec<Complex64> {
        self.basis
            .iter()
            .zip(&self.norms_sq)
            .map(|(m, nrm)| {
                m.iter()
                    .zip(w)
                    .fold(Complex64::new(1.0 / to_f64(nrm), 0.0), |acc, (&k, x)| acc * x.conj().powu(k))
            })
            .collect()
    }

    /// Matrix of the coordinate permutation `f ↦ f(σ⁻¹·z)`, i.e. `z^m ↦ z^{σ·m}`.
    pub fn permutation_matrix<T: Scalar>(&self, sigma: &Permutation) -> SparseMatrix<T> {
        let mut out = SparseMatrix::zeros(self.dim(), self.dim());
        for (j, m) in self.basis.iter().enumerate() {
            out.add_to(self.index[&sigma.act(m)], j, &T::one());
        }
        out
    }
}

/// `P_p^{ij} = (χ_p(1)/n!) Σ_σ π_p^{ji}(σ⁻¹) R_σ` on the monomial basis.
/// Indices `i, j` are 0-based.
#[derive(Clone, Debug)]
pub struct ProjectionMatrix<T> {
    pub partition: Partition,
    pub i: usize,
    pub j: usize,
    pub matrix: SparseMatrix<T>,
}

pub fn projection<T: Scalar>(irrep: &Irrep<T>, i: usize, j: usize, module: &TruncatedModule) -> Result<ProjectionMatrix<T>> {
    if irrep.n() != module.n {
        return Err(Error::InvalidInput(format!(
            "representation of 𝔖_{} applied to a module in {} variables",
            irrep.n(),
            module.n
        )));
    }
    let dim = irrep.dim();
    if i >= dim || j >= dim {
        return Err(Error::IndexOutOfRange(format!(
            "({i}, {j}) for {} of dimension {dim}",
            irrep.partition()
        )));
    }
    let scale = T::from_q(&(q(dim as i64) / factorial(module.n as u32)));
    let mut out = SparseMatrix::zeros(module.dim(), module.dim());
    for sigma in Permutation::all_unchecked(module.n) {
        let c = irrep.entry(&sigma.inverse(), j, i).mul(&scale);
        if c.is_zero() {
            continue;
        }
        for (col, m) in module.basis.iter().enumerate() {
            out.add_to(module.index[&sigma.act(m)], col, &c);
        }
    }
    Ok(ProjectionMatrix {
        partition: irrep.partition().clone(),
        i,
        j,
        matrix: out,
    })
}

/// Every `P_p^{ij}` for every `p ⊢ n`, partitions in decreasing lex order.
pub fn all_projections<T: Scalar>(irreps: &[Irrep<T>], module: &TruncatedModule) -> Result<Vec<ProjectionMatrix<T>>> {
    let mut out = Vec::new();
    for irrep in irreps {
        for i in 0..irrep.dim() {
            for j in 0..irrep.dim() {
                out.push(projection(irrep, i, j, module)?);
            }
        }
    }
    Ok(out)
}

fn irreps_seminormal(n: usize) -> Result<Vec<Irrep<Q>>> {
    Partition::all(n).iter().map(irrep_seminormal).collect()
}

fn irreps_orthogonal(n: usize) -> Result<Vec<Irrep<f64>>> {
    Partition::all(n).iter().map(irrep_orthogonal).collect()
}

/// Uniform report shape for module-level checks.
#[derive(Clone, Debug, Serialize)]
pub struct ModuleReport {
    pub check: &'static str,
    pub n: usize,
    pub d: u32,
    pub form: Form,
    pub max_deviation: String,
    pub pass: bool,
    #[serde(flatten)]
    pub details: Map<String, Value>,
}

struct Worst<T> {
    value: T,
}

impl<T: Scalar> Worst<T> {
    fn new() -> Self {
        Self { value: T::zero() }
    }

    fn update(&mut self, x: T) -> T {
        if x > self.value {
            self.value = x.clone();
        }
        x
    }
}

fn passes<T: Scalar>(x: &T, form: Form) -> bool {
    match form {
        Form::Seminormal => x.is_zero(),
        Form::Orthogonal => x.to_f64() <= FLOAT_TOL,
    }
}

/// Projection algebra on the truncation: the full δ-product table
/// `P_p^{ij} P_q^{lm} = δ_pq δ_jl P_p^{im}` (which contains idempotence),
/// completeness `Σ_p Σ_i P_p^{ii} = id`, and nonvanishing of each `P_p^{ii}`
/// once the truncation reaches the first degree where `p` occurs. In
/// orthogonal form it also checks weighted self-adjointness of `P_p^{ii}` and
/// orthogonality of distinct isotypes on seeded random vectors.
pub fn verify_projection_algebra(module: &TruncatedModule, form: Form) -> Result<ModuleReport> {
    check_algebra_caps(module)?;
    match form {
        Form::Seminormal => algebra_generic(module, &irreps_seminormal(module.n)?, form),
        Form::Orthogonal => algebra_generic(module, &irreps_orthogonal(module.n)?, form),
    }
}

fn check_algebra_caps(module: &TruncatedModule) -> Result<()> {
    if module.n > ALGEBRA_MAX_N {
        return Err(Error::limit("module n", module.n, ALGEBRA_MAX_N));
    }
    if module.d > ALGEBRA_MAX_D {
        return Err(Error::limit("module degree", module.d as usize, ALGEBRA_MAX_D as usize));
    }
    Ok(())
}

fn algebra_generic<T: Scalar>(module: &TruncatedModule, irreps: &[Irrep<T>], form: Form) -> Result<ModuleReport> {
    let projections = all_projections(irreps, module)?;
    let dim = module.dim();
    let zero = SparseMatrix::<T>::zeros(dim, dim);
    let mut products = Worst::<T>::new();
    let mut product_count = 0usize;
    for a in &projections {
        for b in &projections {
            let lhs = a.matrix.mul(&b.matrix);
            let target = if a.partition == b.partition && a.j == b.i {
                &projections
                    .iter()
                    .find(|c| c.partition == a.partition && c.i == a.i && c.j == b.j)
                    .expect("block present")
                    .matrix
            } else {
                &zero
            };
            products.update(lhs.max_abs_diff(target));
            product_count += 1;
        }
    }
    let mut sum = SparseMatrix::<T>::zeros(dim, dim);
    for p in projections.iter().filter(|p| p.i == p.j) {
        sum = sum.add(&p.matrix);
    }
    let completeness = sum.max_abs_diff(&SparseMatrix::identity(dim));

    let mut nonzero_ok = true;
    let mut nonzero = Vec::new();
    for p in projections.iter().filter(|p| p.i == p.j) {
        let required = module.d >= first_degree(&p.partition);
        let is_nonzero = !p.matrix.is_zero();
        nonzero_ok &= is_nonzero || !required;
        nonzero.push(json!({
            "partition": p.partition, "i": p.i + 1, "nonzero": is_nonzero, "required": required,
        }));
    }

    let mut worst = Worst::<T>::new();
    worst.update(products.value.clone());
    worst.update(completeness.clone());
    let mut details = Map::new();
    details.insert("lambda".into(), json!(fmt_q(&module.lambda)));
    details.insert("products_checked".into(), json!(product_count));
    details.insert("product_deviation".into(), json!(products.value.render()));
    details.insert("completeness_deviation".into(), json!(completeness.render()));
    details.insert("diagonal_blocks".into(), json!(nonzero));

    let mut pass = passes(&worst.value, form) && nonzero_ok;
    if form == Form::Orthogonal {
        let norms: Vec<f64> = module.norms_sq.iter().map(to_f64).collect();
        let mut adjoint = 0.0f64;
        for p in projections.iter().filter(|p| p.i == p.j) {
            adjoint = adjoint.max(self_adjoint_deviation(&p.matrix, &norms));
        }
        let ortho = isotype_orthogonality(module, &projections, &norms);
        details.insert("self_adjoint_deviation".into(), json!(adjoint));
        details.insert("isotype_orthogonality_deviation".into(), json!(ortho));
        pass &= adjoint <= FLOAT_TOL && ortho <= FLOAT_TOL;
        let overall = worst.value.to_f64().max(adjoint).max(ortho);
        return Ok(ModuleReport {
            check: "projection_algebra",
            n: module.n,
            d: module.d,
            form,
            max_deviation: format!("{overall:e}"),
            pass,
            details,
        });
    }
    Ok(ModuleReport {
        check: "projection_algebra",
        n: module.n,
        d: module.d,
        form,
        max_deviation: worst.value.render(),
        pass,
        details,
    })
}

/// `max |A − A*|` with `A* = N⁻¹ Aᵀ N` the adjoint for the weight `N`.
fn self_adjoint_deviation<T: Scalar>(a: &SparseMatrix<T>, norms: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..a.ncols() {
        for (&i, v) in a.column(j) {
            // (A*)[j][i] = A[i][j] N_i / N_j must equal A[j][i]
            let adj = v.to_f64() * norms[i] / norms[j];
            worst = worst.max((a.get(j, i).to_f64() - adj).abs());
        }
    }
    worst
}

fn isotype_orthogonality<T: Scalar>(module: &TruncatedModule, projections: &[ProjectionMatrix<T>], norms: &[f64]) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let dim = module.dim();
    let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let y: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let apply = |p: &SparseMatrix<T>, v: &[f64]| {
        let mut out = vec![0.0; dim];
        for (j, vj) in v.iter().enumerate() {
            for (&i, a) in p.column(j) {
                out[i] += a.to_f64() * vj;
            }
        }
        out
    };
    let diag: Vec<&ProjectionMatrix<T>> = projections.iter().filter(|p| p.i == p.j).collect();
    let mut worst = 0.0f64;
    for a in &diag {
        let pa = apply(&a.matrix, &x);
        for b in diag.iter().filter(|b| b.partition != a.partition) {
            let pb = apply(&b.matrix, &y);
            let ip: f64 = pa.iter().zip(&pb).zip(norms).map(|((u, v), w)| u * v * w).sum();
            worst = worst.max(ip.abs());
        }
    }
    worst
}

/// Commutation `M_{e_k} P_p^{ij} = P_p^{ij} M_{e_k}` on the columns of
/// degree at most `d − k`, where neither product leaves the truncation. That
/// range contains the uniform range `d − n`.
pub fn verify_reducing(module: &TruncatedModule, form: Form) -> Result<ModuleReport> {
    check_algebra_caps(module)?;
    match form {
        Form::Seminormal => reducing_generic(module, &irreps_seminormal(module.n)?, form),
        Form::Orthogonal => reducing_generic(module, &irreps_orthogonal(module.n)?, form),
    }
}

fn reducing_generic<T: Scalar>(module: &TruncatedModule, irreps: &[Irrep<T>], form: Form) -> Result<ModuleReport> {
    let projections = all_projections(irreps, module)?;
    let mut worst = Worst::<T>::new();
    let mut ranges = Vec::new();
    for k in 1..=module.n {
        let mk: SparseMatrix<T> = convert(module.mult_op(k));
        let max_deg = module.d as i64 - k as i64;
        for p in &projections {
            let left = mk.mul(&p.matrix);
            let right = p.matrix.mul(&mk);
            worst.update(left.max_abs_diff_on(&right, module.columns_up_to(max_deg)));
        }
        ranges.push(json!({"k": k, "max_degree": max_deg}));
    }
    let mut details = Map::new();
    details.insert("lambda".into(), json!(fmt_q(&module.lambda)));
    details.insert("blocks".into(), json!(projections.len()));
    details.insert("verified_degree_ranges".into(), json!(ranges));
    details.insert("uniform_range_max_degree".into(), json!(module.d as i64 - module.n as i64));
    Ok(ModuleReport {
        check: "reducing",
        n: module.n,
        d: module.d,
        form,
        max_deviation: worst.value.render(),
        pass: passes(&worst.value, form),
        details,
    })
}

fn convert<T: Scalar>(m: &SparseMatrix<Q>) -> SparseMatrix<T> {
    let mut out = SparseMatrix::zeros(m.nrows(), m.ncols());
    for j in 0..m.ncols() {
        for (&i, v) in m.column(j) {
            out.add_to(i, j, &T::from_q(v));
        }
    }
    out
}

/// A Gram matrix computed exactly (real rational data) or in floating point.
#[derive(Clone, Debug)]
pub enum Gram {
    Exact(Matrix<Q>),
    Float(DMatrix<Complex<f64>>),
}

impl Gram {
    pub fn rank(&self) -> usize {
        match self {
            Gram::Exact(m) => m.rank(),
            Gram::Float(m) => float_rank(m),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Gram::Exact(_))
    }

    /// Entries as `[re, im]` pairs in floating point.
    pub fn to_c64_rows(&self) -> Vec<Vec<Complex64>> {
        match self {
            Gram::Exact(m) => m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|x| Complex64::new(to_f64(x), 0.0)).collect())
                .collect(),
            Gram::Float(m) => (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect(),
        }
    }

    /// Largest `|G − G*|` entry.
    pub fn hermitian_defect(&self) -> f64 {
        let rows = self.to_c64_rows();
        let mut worst = 0.0f64;
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                worst = worst.max((x - rows[j][i].conj()).norm());
            }
        }
        worst
    }
}

fn float_rank(m: &DMatrix<Complex<f64>>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_RTOL * top).count()
}

fn gram_exact(module: &TruncatedModule, vectors: &[Vec<Q>]) -> Gram {
    let k = vectors.len();
    let mut g = Matrix::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            g.set(a, b, module.inner_q(&vectors[b], &vectors[a]));
        }
    }
    Gram::Exact(g)
}

fn gram_float(module: &TruncatedModule, vectors: &[Vec<Complex64>]) -> Gram {
    let k = vectors.len();
    Gram::Float(DMatrix::from_fn(k, k, |a, b| module.inner_c(&vectors[b], &vectors[a])))
}

/// The orbit `w_σ = σ·w`, `σ` in lexicographic order.
pub fn orbit_points(w: &[ComplexQ]) -> Vec<Point> {
    Permutation::all_unchecked(w.len()).iter().map(|s| s.act(w)).collect()
}

#[derive(Clone, Debug)]
pub struct JointKernelBasis {
    pub w: Point,
    pub orbit: Vec<Point>,
    pub gram: Gram,
    pub rank: usize,
    /// Whether the truncation meets [`sufficient_degree`].
    pub sufficient: bool,
}

/// Truncated kernel vectors `K^(λ)(·, w_σ)` over the orbit of `w` and the rank
/// of their Gram: exact when `w` is real, otherwise by singular values.
pub fn joint_kernel(w: &[ComplexQ], module: &TruncatedModule) -> Result<JointKernelBasis> {
    check_point(w, module)?;
    let orbit = orbit_points(w);
    let gram = match real_parts(w) {
        Some(_) => {
            let vectors: Vec<Vec<Q>> = orbit
                .iter()
                .map(|p| module.kernel_vector_q(&real_parts(p).expect("real orbit")))
                .collect();
            gram_exact(module, &vectors)
        }
        None => {
            let vectors: Vec<Vec<Complex64>> = orbit.iter().map(|p| module.kernel_vector_c(&to_c64(p))).collect();
            gram_float(module, &vectors)
        }
    };
    let rank = gram.rank();
    Ok(JointKernelBasis {
        w: w.to_vec(),
        orbit,
        gram,
        rank,
        sufficient: module.d >= sufficient_degree(module.n),
    })
}

fn check_point(w: &[ComplexQ], module: &TruncatedModule) -> Result<()> {
    if w.len() != module.n {
        return Err(Error::InvalidInput(format!("point has {} coordinates, expected {}", w.len(), module.n)));
    }
    if !crate::points::in_polydisc(w) {
        return Err(Error::Domain("point lies outside the polydisc".into()));
    }
    Ok(())
}

/// Rank of the Gram of `{P_p K(·, w_σ)}_σ` with `P_p = Σ_i P_p^{ii}`.
/// Exact for real `w` in seminormal form.
pub fn isotype_dimension(p: &Partition, w: &[ComplexQ], module: &TruncatedModule, form: Form) -> Result<usize> {
    check_point(w, module)?;
    if p.size() != module.n {
        return Err(Error::InvalidInput(format!("{p} is not a partition of {}", module.n)));
    }
    let orbit = orbit_points(w);
    let gram = match (form, real_parts(w)) {
        (Form::Seminormal, Some(_)) => {
            let proj = isotype_projection(&irrep_seminormal(p)?, module)?;
            let vectors: Vec<Vec<Q>> = orbit
                .iter()
                .map(|pt| proj.apply(&module.kernel_vector_q(&real_parts(pt).expect("real orbit"))))
                .collect();
            gram_exact(module, &vectors)
        }
        (Form::Seminormal, None) => {
            let proj = isotype_projection(&irrep_seminormal(p)?, module)?;
            float_projected_gram(module, &proj, &orbit)
        }
        (Form::Orthogonal, _) => {
            let proj = isotype_projection(&irrep_orthogonal(p)?, module)?;
            float_projected_gram(module, &proj, &orbit)
        }
    };
    Ok(gram.rank())
}

fn isotype_projection<T: Scalar>(irrep: &Irrep<T>, module: &TruncatedModule) -> Result<SparseMatrix<T>> {
    let mut sum = SparseMatrix::zeros(module.dim(), module.dim());
    for i in 0..irrep.dim() {
        sum = sum.add(&projection(irrep, i, i, module)?.matrix);
    }
    Ok(sum)
}

fn apply_c<T: Scalar>(m: &SparseMatrix<T>, v: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::zero(); m.nrows()];
    for (j, vj) in v.iter().enumerate() {
        for (&i, a) in m.column(j) {
            out[i] += vj * a.to_f64();
        }
    }
    out
}

fn float_projected_gram<T: Scalar>(module: &TruncatedModule, proj: &SparseMatrix<T>, orbit: &[Point]) -> Gram {
    let vectors: Vec<Vec<Complex64>> = orbit
        .iter()
        .map(|pt| apply_c(proj, &module.kernel_vector_c(&to_c64(pt))))
        .collect();
    gram_float(module, &vectors)
}

/// Gram matrix of the frame `{P_p^{ii} K(·, w_σ)}_σ` in orthogonal form. Its
/// rank is `χ_p(1)`, the rank of the bundle the frame spans.
#[derive(Clone, Debug)]
pub struct FrameGram {
    pub partition: Partition,
    pub i: usize,
    pub gram: Gram,
    pub rank: usize,
    pub expected_rank: usize,
}

pub fn frame_gram(p: &Partition, i: usize, w: &[ComplexQ], module: &TruncatedModule) -> Result<FrameGram> {
    check_point(w, module)?;
    let irrep = irrep_orthogonal(p)?;
    let proj = projection(&irrep, i, i, module)?;
    let gram = float_projected_gram(module, &proj.matrix, &orbit_points(w));
    let rank = gram.rank();
    Ok(FrameGram {
        partition: p.clone(),
        i,
        gram,
        rank,
        expected_rank: irrep.dim(),
    })
}

/// Per-point outcome of [`joint_kernel`] and [`isotype_dimension`].
#[derive(Clone, Debug, Serialize)]
pub struct RankRecord {
    pub w: Point,
    pub orbit_rank: usize,
    pub isotype_ranks: Vec<(Partition, usize)>,
    pub pass: bool,
}

/// Orbit and isotype Gram ranks at `trials` seeded off-diagonal real points.
pub fn verify_ranks(module: &TruncatedModule, form: Form, trials: usize, seed: u64) -> Result<ModuleReport> {
    let n = module.n;
    let order = crate::rational::factorial_u64(n) as usize;
    let table = character_table(n)?;
    let mut sampler = PointSampler::new(seed);
    let mut records = Vec::with_capacity(trials);
    let mut all_pass = true;
    for _ in 0..trials {
        let w = sampler.real_point(n);
        let jk = joint_kernel(&w, module)?;
        let mut isotypes = Vec::new();
        let mut ok = jk.rank == order;
        let mut total = 0;
        for (row, p) in table.partitions.iter().enumerate() {
            let r = isotype_dimension(p, &w, module, form)?;
            let chi1 = table.values[row][0] as usize;
            ok &= r == chi1 * chi1;
            total += r;
            isotypes.push((p.clone(), r));
        }
        ok &= total == order;
        all_pass &= ok;
        records.push(RankRecord {
            w,
            orbit_rank: jk.rank,
            isotype_ranks: isotypes,
            pass: ok,
        });
    }
    let mut details = Map::new();
    details.insert("lambda".into(), json!(fmt_q(&module.lambda)));
    details.insert("seed".into(), json!(seed));
    details.insert("trials".into(), json!(trials));
    details.insert("expected_orbit_rank".into(), json!(order));
    details.insert("sufficient_degree".into(), json!(sufficient_degree(n)));
    details.insert("exact".into(), json!(form == Form::Seminormal));
    details.insert("points".into(), serde_json::to_value(&records).expect("serializable"));
    Ok(ModuleReport {
        check: "joint_kernel_ranks",
        n,
        d: module.d,
        form,
        max_deviation: "0".into(),
        pass: all_pass,
        details,
    }
    .with_deviation(records_failed(&records)))
}

fn records_failed(records: &[RankRecord]) -> usize {
    records.iter().filter(|r| !r.pass).count()
}

impl ModuleReport {
    fn with_deviation(mut self, failures: usize) -> Self {
        self.max_deviation = failures.to_string();
        self
    }
}

/// Artin monomials `z^a`, `0 ≤ a_i ≤ n − i`, in lexicographic order.
pub fn artin_basis(n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for i in 0..n {
        let bound = (n - 1 - i) as u32;
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=bound).map(move |a| {
                    let mut v = prefix.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

/// `det((p_b(w_τ)))` over the Artin basis and the orbit of `w`.
pub fn artin_determinant(w: &[Q]) -> Result<Q> {
    let n = w.len();
    if n > ARTIN_MAX_N {
        return Err(Error::limit("determinant check n", n, ARTIN_MAX_N));
    }
    check_n(n)?;
    let basis = artin_basis(n);
    let orbit: Vec<Vec<Q>> = Permutation::all_unchecked(n).iter().map(|s| s.act(w)).collect();
    let rows: Vec<Vec<Q>> = basis
        .iter()
        .map(|a| {
            orbit
                .iter()
                .map(|pt| a.iter().zip(pt).fold(<Q as One>::one(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize)))
                .collect()
        })
        .collect();
    Ok(Matrix::from_rows(rows).det())
}

#[derive(Clone, Debug, Serialize)]
pub struct ArtinReport {
    pub check: &'static str,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub points: Vec<Point>,
    /// `det / Δ(w)^{n!/2}` at each point.
    pub ratios: Vec<String>,
    pub constant: bool,
    pub degree: Option<u32>,
    pub expected_degree: u32,
    pub degree_distribution_matches: bool,
    pub pass: bool,
}

/// The orbit-evaluation determinant of the Artin basis is a nonzero constant
/// multiple of `Δ(w)^{n!/2}`: checked at `trials` seeded points, with the
/// degree read off from `det(2w) / det(w)`.
pub fn artin_determinant_check(n: usize, trials: usize, seed: u64) -> Result<ArtinReport> {
    if n > ARTIN_MAX_N {
        return Err(Error::limit("determinant check n", n, ARTIN_MAX_N));
    }
    check_n(n)?;
    let order = crate::rational::factorial_u64(n);
    let pairs = (n * (n - 1) / 2) as u32;
    let expected_degree = (order / 2) as u32 * pairs;
    let delta = vandermonde(n);

    // degrees of the basis versus the inversion statistics
    let counts = inversion_counts(n)?;
    let mut distribution = vec![0u64; counts.len()];
    for a in artin_basis(n) {
        distribution[a.iter().sum::<u32>() as usize] += 1;
    }
    let degree_distribution_matches = distribution == counts;

    let mut sampler = PointSampler::new(seed);
    let mut points = Vec::with_capacity(trials);
    let mut ratios = Vec::with_capacity(trials);
    let mut degree = None;
    let mut degree_ok = true;
    for t in 0..trials {
        let w = sampler.real_point(n);
        let wq = real_parts(&w).expect("real point");
        debug_assert!(!on_diagonal(&w));
        let det = artin_determinant(&wq)?;
        let vdm = num_traits::pow(delta.eval_q(&wq), (order / 2) as usize);
        ratios.push(det / vdm);
        if t == 0 {
            let scaled: Vec<Q> = wq.iter().map(|x| x * q(2)).collect();
            let factor = artin_determinant(&scaled)? / artin_determinant(&wq)?;
            degree = power_of_two(&factor);
        }
        points.push(w);
    }
    if trials > 0 {
        degree_ok = degree == Some(expected_degree);
    }
    let constant = ratios.windows(2).all(|w| w[0] == w[1]) && ratios.iter().all(|r| !Zero::is_zero(r));
    let pass = constant && degree_ok && degree_distribution_matches && (n != 2 || ratios.iter().all(|r| *r == q(-1)));
    Ok(ArtinReport {
        check: "artin_determinant",
        n,
        trials,
        seed,
        points,
        ratios: ratios.iter().map(fmt_q).collect(),
        constant,
        degree,
        expected_degree,
        degree_distribution_matches,
        pass,
    })
}

fn power_of_two(x: &Q) -> Option<u32> {
    if !x.denom().is_one() {
        return None;
    }
    let mut v = x.numer().clone();
    let two = num_bigint::BigInt::from(2);
    let mut k = 0;
    while v > num_bigint::BigInt::one() {
        if (&v % &two) != num_bigint::BigInt::zero() {
            return None;
        }
        v /= &two;
        k += 1;
    }
    (v == num_bigint::BigInt::one()).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn rpoint(v: &[(i64, i64)]) -> Point {
        v.iter().map(|&(a, b)| ComplexQ::real(qf(a, b))).collect()
    }

    #[test]
    fn module_basics() {
        let m = build_module(&q(2), 1, 4).unwrap();
        // unilateral shift
        let shift = m.mult_op(1);
        for j in 0..4 {
            assert_eq!(shift.get(j + 1, j), q(1));
        }
        assert!(shift.column(4).is_empty());
        assert_eq!(m.overflow_columns(1), vec![4]);
        let lam = qf(3, 2);
        let m = build_module(&lam, 2, 2).unwrap();
        assert_eq!(m.norms_sq()[m.index_of(&[1, 1]).unwrap()], q(1) / (&lam * &lam));
        assert_eq!(m.norms_sq()[m.index_of(&[0, 0]).unwrap()], q(1));
        assert!(matches!(build_module(&q(0), 2, 2), Err(Error::InvalidWeight(_))));
        assert!(build_module(&q(1), 3, 2).is_err());
    }

    #[test]
    fn small_projections() {
        let m = build_module(&q(1), 2, 2).unwrap();
        let z1 = m.index_of(&[1, 0]).unwrap();
        let z2 = m.index_of(&[0, 1]).unwrap();
        let sym = projection(&irrep_seminormal(&part(&[2])).unwrap(), 0, 0, &m).unwrap();
        assert_eq!(sym.matrix.get(z1, z1), qf(1, 2));
        assert_eq!(sym.matrix.get(z2, z1), qf(1, 2));
        let anti = projection(&irrep_seminormal(&part(&[1, 1])).unwrap(), 0, 0, &m).unwrap();
        assert_eq!(anti.matrix.get(z1, z1), qf(1, 2));
        assert_eq!(anti.matrix.get(z2, z1), qf(-1, 2));
        let err = projection(&irrep_seminormal(&part(&[2])).unwrap(), 1, 0, &m);
        assert!(matches!(err, Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn standard_isotype_in_degree_one() {
        // ℂ³ = trivial ⊕ standard: the (2,1)-isotype has rank 2 on linear forms
        let m = build_module(&q(1), 3, 3).unwrap();
        let irrep = irrep_seminormal(&part(&[2, 1])).unwrap();
        let p = isotype_projection(&irrep, &m).unwrap();
        let cols: Vec<usize> = (0..m.dim()).filter(|&j| m.degree(j) == 1).collect();
        let block: Vec<Vec<Q>> = cols.iter().map(|&i| cols.iter().map(|&j| p.get(i, j)).collect()).collect();
        assert_eq!(Matrix::from_rows(block).rank(), 2);
    }

    #[test]
    fn algebra_and_reducing_small() {
        let m = build_module(&q(2), 2, 4).unwrap();
        for form in [Form::Seminormal, Form::Orthogonal] {
            let r = verify_projection_algebra(&m, form).unwrap();
            assert!(r.pass, "{r:?}");
            let r = verify_reducing(&m, form).unwrap();
            assert!(r.pass, "{r:?}");
        }
        let r = verify_projection_algebra(&m, Form::Seminormal).unwrap();
        assert_eq!(r.max_deviation, "0");
        assert_eq!(r.details["products_checked"], 4);
    }

    #[test]
    fn joint_kernel_ranks() {
        let m = build_module(&q(1), 2, 6).unwrap();
        let jk = joint_kernel(&rpoint(&[(1, 2), (1, 3)]), &m).unwrap();
        assert!(jk.gram.is_exact());
        assert_eq!(jk.rank, 2);
        let diag = joint_kernel(&rpoint(&[(1, 2), (1, 2)]), &m).unwrap();
        assert_eq!(diag.rank, 1);
        let m1 = build_module(&q(3), 1, 3).unwrap();
        assert_eq!(joint_kernel(&rpoint(&[(-2, 7)]), &m1).unwrap().rank, 1);
        let c = vec![
            ComplexQ { re: qf(1, 4), im: qf(1, 5) },
            ComplexQ { re: qf(-1, 3), im: qf(0, 1) },
        ];
        let jk = joint_kernel(&c, &m).unwrap();
        assert!(!jk.gram.is_exact());
        assert_eq!(jk.rank, 2);
        assert!(jk.gram.hermitian_defect() < 1e-12);
    }

    #[test]
    fn isotype_dimensions_n3() {
        let m = build_module(&q(2), 3, 6).unwrap();
        let w = rpoint(&[(1, 2), (-1, 3), (1, 5)]);
        assert_eq!(isotype_dimension(&part(&[3]), &w, &m, Form::Seminormal).unwrap(), 1);
        assert_eq!(isotype_dimension(&part(&[2, 1]), &w, &m, Form::Seminormal).unwrap(), 4);
        assert_eq!(isotype_dimension(&part(&[1, 1, 1]), &w, &m, Form::Seminormal).unwrap(), 1);
        assert_eq!(isotype_dimension(&part(&[2, 1]), &w, &m, Form::Orthogonal).unwrap(), 4);
        let f = frame_gram(&part(&[2, 1]), 0, &w, &m).unwrap();
        assert_eq!((f.rank, f.expected_rank), (2, 2));
    }

    #[test]
    fn artin_basis_and_determinant() {
        assert_eq!(artin_basis(2), vec![vec![0, 0], vec![1, 0]]);
        assert_eq!(artin_basis(3).len(), 6);
        // det [[1, 1], [w1, w2]] = w2 − w1 = −Δ(w)
        assert_eq!(artin_determinant(&[qf(1, 2), qf(1, 3)]).unwrap(), qf(-1, 6));
        assert_eq!(artin_determinant(&[qf(1, 2), qf(1, 2), qf(1, 5)]).unwrap(), q(0));
        let r = artin_determinant_check(2, 5, 1).unwrap();
        assert!(r.pass && r.ratios.iter().all(|x| x == "-1"));
        let r = artin_determinant_check(3, 5, 1).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.degree, Some(9));
        assert!(matches!(artin_determinant_check(5, 1, 1), Err(Error::ResourceLimit { .. })));
        assert_eq!(power_of_two(&q(512)), Some(9));
        assert_eq!(power_of_two(&q(12)), None);
    }
}
