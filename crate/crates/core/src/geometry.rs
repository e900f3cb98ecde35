//! Curvature of the rank-one isotypes.
//!
//! For the symmetric and anti-symmetric parts the squared norm of the
//! spanning section at `u` is the diagonal value of `K_Gn` resp. `B_Gn`, so
//! the curvature `−∂_j ∂̄_k log ‖γ(u)‖²` is computed directly in
//! `u`-coordinates by central differences on the real and imaginary parts.

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hilbmod::{build_module, frame_gram};
use crate::kernels::{kernel_bergman_gn, kernel_gn_monomial, normalize_at_zero, KernelSeries};
use crate::permgroup::Partition;
use crate::points::{on_diagonal, symmetrize_c, to_c64, unsymmetrize, Point};
use crate::rational::{to_f64, Q};

pub const DEFAULT_STEP: f64 = 1e-3;
/// Largest share of the gram value allowed in the top retained degree.
pub const DEFAULT_TAIL_TOL: f64 = 1e-6;
/// Relative change under step halving beyond which a point is unresolved.
pub const RICHARDSON_RTOL: f64 = 1e-4;
pub const HERMITIAN_TOL: f64 = 1e-6;
/// A difference counts only when it exceeds this multiple of the error estimate.
pub const DISTINCTION_FACTOR: f64 = 10.0;

/// Default truncation degree for curvature work.
pub fn default_degree(n: usize) -> u32 {
    match n {
        1 => 60,
        2 => 12,
        3 => 8,
        _ => 6,
    }
}

/// Radius for seeded curvature sample points: small enough that the default
/// truncation passes the tail test and stencils stay inside the domain.
pub fn sample_radius(n: usize) -> Q {
    match n {
        0..=2 => Q::new(2.into(), 5.into()),
        3 => Q::new(3.into(), 10.into()),
        _ => Q::new(1.into(), 5.into()),
    }
}

/// One factor with float coefficients, ready for repeated evaluation.
#[derive(Clone, Debug)]
struct FloatTerm {
    coef: f64,
    degree: u32,
    monomials: Vec<(Vec<u32>, f64)>,
}

/// Evaluates `‖γ(u)‖² = K(u, u)` for a kernel series.
#[derive(Clone, Debug)]
pub struct SectionEvaluator {
    label: String,
    n: usize,
    degree_cap: u32,
    tail_tol: f64,
    terms: Vec<FloatTerm>,
}

impl SectionEvaluator {
    pub fn new(kernel: &KernelSeries) -> Self {
        let terms = kernel
            .terms()
            .iter()
            .map(|t| FloatTerm {
                coef: to_f64(&t.coef),
                degree: t.degree,
                monomials: t.factor.terms().map(|(e, c)| (e.clone(), to_f64(c))).collect(),
            })
            .collect();
        Self {
            label: kernel.kind().label().to_string(),
            n: kernel.n(),
            degree_cap: kernel.degree_cap(),
            tail_tol: DEFAULT_TAIL_TOL,
            terms,
        }
    }

    pub fn with_tail_tol(mut self, tol: f64) -> Self {
        self.tail_tol = tol;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(total, top-degree shell)` of `Σ c_t |f_t(u)|²`.
    fn diagonal_parts(&self, u: &[Complex64]) -> (f64, f64) {
        let mut total = 0.0;
        let mut top = 0.0;
        for t in &self.terms {
            let f: Complex64 = t
                .monomials
                .iter()
                .map(|(e, c)| e.iter().zip(u).fold(Complex64::new(*c, 0.0), |acc, (&k, x)| acc * x.powu(k)))
                .sum();
            let v = t.coef * f.norm_sqr();
            total += v;
            if t.degree == self.degree_cap {
                top += v;
            }
        }
        (total, top)
    }

    /// `‖γ(u)‖²`; errors when the value is not positive or the top retained
    /// degree still carries more than the tail tolerance.
    pub fn gram(&self, u: &[Complex64]) -> Result<f64> {
        if u.len() != self.n {
            return Err(Error::InvalidInput(format!("point has {} coordinates, expected {}", u.len(), self.n)));
        }
        let (total, top) = self.diagonal_parts(u);
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::InsufficientTruncation(format!(
                "{} diagonal value {total} at {u:?} is not positive",
                self.label
            )));
        }
        if top / total > self.tail_tol {
            return Err(Error::InsufficientTruncation(format!(
                "{}: degree {} still carries {:.2e} of the value at {u:?}; raise the degree cap",
                self.label,
                self.degree_cap,
                top / total
            )));
        }
        Ok(total)
    }
}

fn serialize_complex_vec<S: Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
    pairs.serialize(s)
}

fn serialize_complex_matrix<S: Serializer>(m: &[Vec<Complex64>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<[f64; 2]>> = m.iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect();
    rows.serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureReport {
    pub kernel: String,
    #[serde(serialize_with = "serialize_complex_vec")]
    pub point: Vec<Complex64>,
    pub step: f64,
    /// `−∂_j ∂̄_k log ‖γ(u)‖²` at step `h`.
    #[serde(serialize_with = "serialize_complex_matrix")]
    pub matrix: Vec<Vec<Complex64>>,
    /// `max |C_h − C_{h/2}|`.
    pub richardson_err: f64,
    pub relative_change: f64,
    pub hermitian_defect: f64,
    pub resolved: bool,
}

/// Rejects points whose neighbourhood of radius `4h` (along every real and
/// imaginary coordinate direction) leaves `s(𝔻ⁿ)`.
fn check_margin(u: &[Complex64], h: f64) -> Result<()> {
    let inside = |v: &[Complex64]| unsymmetrize(v).iter().all(|r| r.norm() < 1.0);
    if !inside(u) {
        return Err(Error::Domain(format!("{u:?} is not in the image of the polydisc")));
    }
    for j in 0..u.len() {
        for dir in [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)] {
            let mut v = u.to_vec();
            v[j] += dir * (4.0 * h);
            if !inside(&v) {
                return Err(Error::Domain(format!(
                    "finite-difference stencil of radius {} around {u:?} leaves the domain",
                    4.0 * h
                )));
            }
        }
    }
    Ok(())
}

/// `−∂_j ∂̄_k log G` by central differences with step `h`.
fn curvature_matrix(ev: &SectionEvaluator, u: &[Complex64], h: f64) -> Result<Vec<Vec<Complex64>>> {
    let n = u.len();
    let f = |v: &[Complex64]| ev.gram(v).map(f64::ln);
    // real coordinate a: 2j for Re u_j, 2j+1 for Im u_j
    let shift = |a: usize, t: f64| {
        let mut d = vec![Complex64::new(0.0, 0.0); n];
        d[a / 2] = if a.is_multiple_of(2) { Complex64::new(t, 0.0) } else { Complex64::new(0.0, t) };
        d
    };
    let at = |steps: &[(usize, f64)]| -> Result<f64> {
        let mut v = u.to_vec();
        for &(a, t) in steps {
            for (x, d) in v.iter_mut().zip(shift(a, t)) {
                *x += d;
            }
        }
        f(&v)
    };
    let f0 = f(u)?;
    let mut hess = vec![vec![0.0; 2 * n]; 2 * n];
    for a in 0..2 * n {
        hess[a][a] = (at(&[(a, h)])? - 2.0 * f0 + at(&[(a, -h)])?) / (h * h);
        for b in a + 1..2 * n {
            let v = (at(&[(a, h), (b, h)])? - at(&[(a, h), (b, -h)])? - at(&[(a, -h), (b, h)])?
                + at(&[(a, -h), (b, -h)])?)
                / (4.0 * h * h);
            hess[a][b] = v;
            hess[b][a] = v;
        }
    }
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for j in 0..n {
        for k in 0..n {
            let (xj, yj, xk, yk) = (2 * j, 2 * j + 1, 2 * k, 2 * k + 1);
            let w = Complex64::new(hess[xj][xk] + hess[yj][yk], hess[xj][yk] - hess[yj][xk]) * 0.25;
            out[j][k] = -w;
        }
    }
    Ok(out)
}

fn max_abs_diff(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn max_abs(a: &[Vec<Complex64>]) -> f64 {
    a.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
}

fn hermitian_defect(a: &[Vec<Complex64>]) -> f64 {
    let mut worst = 0.0f64;
    for (j, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            worst = worst.max((x - a[k][j].conj()).norm());
        }
    }
    worst
}

/// Curvature at `u` with step `h`, checked against step `h/2`.
pub fn curvature(ev: &SectionEvaluator, u: &[Complex64], h: f64) -> Result<CurvatureReport> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidInput(format!("step {h} must be positive")));
    }
    if u.len() != ev.n {
        return Err(Error::InvalidInput(format!("point has {} coordinates, expected {}", u.len(), ev.n)));
    }
    check_margin(u, h)?;
    let coarse = curvature_matrix(ev, u, h)?;
    let fine = curvature_matrix(ev, u, h / 2.0)?;
    let err = max_abs_diff(&coarse, &fine);
    let scale = max_abs(&fine);
    let relative_change = if scale > 0.0 { err / scale } else { err };
    Ok(CurvatureReport {
        kernel: ev.label.clone(),
        point: u.to_vec(),
        step: h,
        hermitian_defect: hermitian_defect(&coarse),
        matrix: coarse,
        richardson_err: err,
        relative_change,
        resolved: relative_change < RICHARDSON_RTOL,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PointComparison {
    pub z: Point,
    #[serde(serialize_with = "serialize_complex_vec")]
    pub u: Vec<Complex64>,
    pub sym: CurvatureReport,
    pub anti: CurvatureReport,
    pub max_diff: f64,
    pub richardson_err: f64,
    pub resolved: bool,
    pub distinguished: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub check: &'static str,
    pub n: usize,
    #[serde(serialize_with = "crate::rational::serde_q::serialize")]
    pub lambda: Q,
    pub degree: u32,
    pub step: f64,
    pub points: Vec<PointComparison>,
    pub max_diff: f64,
    pub richardson_err: f64,
    pub hermitian_defect: f64,
    /// `distinguished`, `not distinguished` or `unresolved`.
    pub verdict: &'static str,
    /// Distinction expected exactly when `n ≥ 2`.
    pub pass: bool,
}

/// Compares the curvature of the symmetric part (`K_Gn`) with that of the
/// anti-symmetric part (`B_Gn`, weight `λ`) at `s(z)` for each `z`.
pub fn compare_curvatures(n: usize, lambda: &Q, points: &[Point], h: f64, d: u32) -> Result<CompareReport> {
    let sym = SectionEvaluator::new(&normalize_at_zero(&kernel_gn_monomial(lambda, n, d)?)?);
    let anti = SectionEvaluator::new(&normalize_at_zero(&kernel_bergman_gn(lambda, n, d)?)?);
    let mut records = Vec::with_capacity(points.len());
    for z in points {
        if z.len() != n {
            return Err(Error::InvalidInput(format!("point has {} coordinates, expected {n}", z.len())));
        }
        if on_diagonal(z) {
            return Err(Error::Domain(format!("point {} lies on the diagonal", fmt_point(z))));
        }
        let u = symmetrize_c(&to_c64(z));
        let cs = curvature(&sym, &u, h)?;
        let ca = curvature(&anti, &u, h)?;
        let max_diff = max_abs_diff(&cs.matrix, &ca.matrix);
        let richardson_err = cs.richardson_err.max(ca.richardson_err);
        let resolved = cs.resolved && ca.resolved;
        records.push(PointComparison {
            z: z.clone(),
            u,
            max_diff,
            richardson_err,
            resolved,
            distinguished: resolved && max_diff > DISTINCTION_FACTOR * richardson_err,
            sym: cs,
            anti: ca,
        });
    }
    let max_diff = records.iter().map(|r| r.max_diff).fold(0.0, f64::max);
    let richardson_err = records.iter().map(|r| r.richardson_err).fold(0.0, f64::max);
    let hermitian_defect = records
        .iter()
        .map(|r| r.sym.hermitian_defect.max(r.anti.hermitian_defect))
        .fold(0.0, f64::max);
    let verdict = if records.iter().any(|r| r.distinguished) {
        "distinguished"
    } else if records.iter().all(|r| r.resolved) {
        "not distinguished"
    } else {
        "unresolved"
    };
    let expected = if n >= 2 { "distinguished" } else { "not distinguished" };
    Ok(CompareReport {
        check: "curvature_compare",
        n,
        lambda: lambda.clone(),
        degree: d,
        step: h,
        pass: verdict == expected && hermitian_defect <= HERMITIAN_TOL && !records.is_empty(),
        points: records,
        max_diff,
        richardson_err,
        hermitian_defect,
        verdict,
    })
}

fn fmt_point(z: &[crate::points::ComplexQ]) -> String {
    let parts: Vec<String> = z.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

#[derive(Clone, Debug, Serialize)]
pub struct FrameGramReport {
    pub partition: Partition,
    pub i: usize,
    pub z: Point,
    #[serde(serialize_with = "serialize_complex_matrix")]
    pub gram: Vec<Vec<Complex64>>,
    pub rank: usize,
    pub expected_rank: usize,
}

/// Gram matrix of the `P_p^{ii}`-projected kernel orbit at `z` (the frame of
/// a possibly higher-rank isotype). Only reported; no curvature is derived.
pub fn frame_gram_report(p: &Partition, i: usize, z: &Point, lambda: &Q, d: u32) -> Result<FrameGramReport> {
    let module = build_module(lambda, z.len(), d)?;
    let f = frame_gram(p, i, z, &module)?;
    Ok(FrameGramReport {
        partition: p.clone(),
        i: i + 1,
        z: z.clone(),
        gram: f.gram.to_c64_rows(),
        rank: f.rank,
        expected_rank: f.expected_rank,
    })
}
