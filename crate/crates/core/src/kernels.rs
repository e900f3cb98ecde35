//! Truncated reproducing-kernel series.
//!
//! A [`KernelSeries`] stores `Σ_t c_t f_t(x) conj(f_t(y))` with positive
//! rational `c_t` and polynomial factors `f_t`, either in polydisc
//! coordinates `z` or in elementary-symmetric coordinates `u = s(z)`. The
//! degree cap bounds the `z`-degree of each factor (for `u`-factors, the
//! weighted degree with `deg u_k = k`).

use std::collections::BTreeMap;

use nalgebra::{DMatrix, Complex};
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::permgroup::{Partition, Permutation};
use crate::rational::{check_weight, factorial, fmt_q, q, Q};
use crate::symfunc::{
    decreasing_exponents, from_elementary_basis, monomial_sym, permanent, pochhammer, pochhammer_multi,
    schur_giambelli, to_elementary_basis, MultiplicityProfile, Ring, SparsePoly,
};

/// Caps for the symbolic permanent expansion.
pub const CROSSCHECK_MAX_N: usize = 4;
pub const CROSSCHECK_MAX_D: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coordinates {
    #[serde(rename = "polydisc-z")]
    PolydiscZ,
    #[serde(rename = "symmetrized-u")]
    SymmetrizedU,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelKind {
    /// `Π (1 − z_j w̄_j)^{−λ}` on the polydisc.
    #[serde(rename = "K_lambda")]
    Polydisc,
    /// Symmetric part of the polydisc kernel, factors `M_m(z)`.
    #[serde(rename = "K_sym")]
    Sym,
    /// The same kernel written on 𝔾ₙ, factors `M_m` in `u`.
    #[serde(rename = "K_Gn")]
    GnMonomial,
    /// Weighted Bergman kernel of 𝔾ₙ, factors `S_p` in `u`.
    #[serde(rename = "B_Gn")]
    BergmanGn,
}

impl KernelKind {
    pub fn label(self) -> &'static str {
        match self {
            KernelKind::Polydisc => "K_lambda",
            KernelKind::Sym => "K_sym",
            KernelKind::GnMonomial => "K_Gn",
            KernelKind::BergmanGn => "B_Gn",
        }
    }

    fn weight_name(self) -> &'static str {
        match self {
            KernelKind::BergmanGn => "mu",
            _ => "lambda",
        }
    }
}

/// What a term is indexed by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermIndex {
    /// A single monomial exponent `m`.
    Monomial(Vec<u32>),
    /// The 𝔖ₙ-orbit with weakly decreasing representative `m`.
    Orbit(Vec<u32>),
    Partition(Partition),
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelTerm {
    pub index: TermIndex,
    pub coef: Q,
    pub factor: SparsePoly,
    /// `z`-degree of the factor.
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KernelSeries {
    kind: KernelKind,
    coordinates: Coordinates,
    weight: Q,
    n: usize,
    degree_cap: u32,
    normalized: bool,
    terms: Vec<KernelTerm>,
}

impl KernelSeries {
    fn new(kind: KernelKind, coordinates: Coordinates, weight: Q, n: usize, degree_cap: u32, terms: Vec<KernelTerm>) -> Result<Self> {
        if let Some(bad) = terms.iter().find(|t| !t.coef.is_positive()) {
            return Err(Error::Internal(format!("non-positive kernel coefficient {}", fmt_q(&bad.coef))));
        }
        Ok(Self {
            kind,
            coordinates,
            weight,
            n,
            degree_cap,
            normalized: false,
            terms,
        })
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn coordinates(&self) -> Coordinates {
        self.coordinates
    }

    pub fn weight(&self) -> &Q {
        &self.weight
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn terms(&self) -> &[KernelTerm] {
        &self.terms
    }

    /// Coefficient of the term with the given index, if retained.
    pub fn coefficient(&self, index: &TermIndex) -> Option<&Q> {
        self.terms.iter().find(|t| &t.index == index).map(|t| &t.coef)
    }

    /// `K(x, y) = Σ c_t f_t(x) conj(f_t(y))`, in this series' coordinates.
    pub fn eval(&self, x: &[Complex64], y: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|t| {
                let c = crate::rational::to_f64(&t.coef);
                t.factor.eval_c(x) * t.factor.eval_c(y).conj() * c
            })
            .sum()
    }

    /// `K(x, x)`; real by construction.
    pub fn eval_diagonal(&self, x: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|t| crate::rational::to_f64(&t.coef) * t.factor.eval_c(x).norm_sqr())
            .sum()
    }

    /// `K(0, 0)` exactly.
    pub fn value_at_origin(&self) -> Q {
        self.terms
            .iter()
            .map(|t| {
                let f0 = t.factor.constant_term();
                &t.coef * &f0 * &f0
            })
            .sum()
    }

    /// Substitutes `u_k = e_k(z)` into every factor.
    pub fn pullback(&self) -> Result<KernelSeries> {
        if self.coordinates == Coordinates::PolydiscZ {
            return Ok(self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(KernelTerm {
                    factor: from_elementary_basis(&t.factor, self.n)?,
                    ..t.clone()
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(KernelSeries {
            coordinates: Coordinates::PolydiscZ,
            terms,
            ..self.clone()
        })
    }

    /// The series as one polynomial in `2n` variables `(x, ȳ)`: the first
    /// `n` carry the factor, the last `n` its conjugate copy.
    pub fn bivariate(&self) -> SparsePoly {
        let n = self.n;
        let mut out = SparsePoly::zero(2 * n);
        for t in &self.terms {
            let left = SparsePoly::from_terms(
                2 * n,
                t.factor.terms().map(|(e, c)| {
                    let mut v = e.clone();
                    v.resize(2 * n, 0);
                    (v, c.clone())
                }),
            );
            let right = SparsePoly::from_terms(
                2 * n,
                t.factor.terms().map(|(e, c)| {
                    let mut v = vec![0; n];
                    v.extend_from_slice(e);
                    (v, c.clone())
                }),
            );
            out = &out + &(&left * &right).scale(&t.coef);
        }
        out
    }

    /// Gram matrix `((K(x_a, x_b)))` for points in this series' coordinates.
    pub fn gram_matrix(&self, points: &[Vec<Complex64>]) -> DMatrix<Complex<f64>> {
        let k = points.len();
        DMatrix::from_fn(k, k, |a, b| self.eval(&points[a], &points[b]))
    }

    /// Smallest eigenvalue of the (hermitian) Gram matrix at `points`.
    pub fn gram_min_eigenvalue(&self, points: &[Vec<Complex64>]) -> f64 {
        let g = self.gram_matrix(points);
        let h = (&g + g.adjoint()) * Complex::new(0.5, 0.0);
        h.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|t| match &t.index {
                TermIndex::Monomial(m) => json!({"exp": m, "coef": fmt_q(&t.coef)}),
                TermIndex::Orbit(m) => json!({"orbit": m, "coef": fmt_q(&t.coef), "factor": t.factor.to_json()}),
                TermIndex::Partition(p) => json!({"partition": p, "gamma_sq": fmt_q(&t.coef), "factor": t.factor.to_json()}),
            })
            .collect();
        let mut obj = serde_json::Map::new();
        obj.insert("kernel".into(), json!(self.kind.label()));
        obj.insert(self.kind.weight_name().into(), json!(fmt_q(&self.weight)));
        obj.insert("n".into(), json!(self.n));
        obj.insert("degree_cap".into(), json!(self.degree_cap));
        obj.insert("coordinates".into(), json!(self.coordinates));
        obj.insert("normalized".into(), json!(self.normalized));
        obj.insert("terms".into(), json!(terms));
        serde_json::Value::Object(obj)
    }
}

/// Exponent vectors of length `n` with total degree at most `d`, in
/// graded-lex order.
fn all_exponents(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn exact(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            exact(i + 1, left - k, cur, out);
        }
    }
    let mut out = Vec::new();
    for total in 0..=d {
        let start = out.len();
        exact(0, total, &mut vec![0; n], &mut out);
        out[start..].sort();
    }
    out
}

fn multi_factorial(m: &[u32]) -> Q {
    m.iter().fold(Q::one(), |acc, &k| acc * factorial(k))
}

fn check_n_and_weight(n: usize, weight: &Q) -> Result<()> {
    crate::config::check_n(n)?;
    check_weight(weight)
}

/// `K^(λ)(z, w) = Π_j (1 − z_j w̄_j)^{−λ}` truncated to `|m| ≤ d`.
pub fn kernel_polydisc(lambda: &Q, n: usize, d: u32) -> Result<KernelSeries> {
    check_n_and_weight(n, lambda)?;
    let terms = all_exponents(n, d)
        .into_iter()
        .map(|m| KernelTerm {
            coef: pochhammer_multi(lambda, &m) / multi_factorial(&m),
            factor: SparsePoly::monomial(m.clone(), Q::one()),
            degree: m.iter().sum(),
            index: TermIndex::Monomial(m),
        })
        .collect();
    KernelSeries::new(KernelKind::Polydisc, Coordinates::PolydiscZ, lambda.clone(), n, d, terms)
}

/// Symmetrization `(1/n!) Σ_σ K^(λ)(σ·z, w)`, grouped by orbit. Coefficients
/// are obtained by counting stabilizers directly.
pub fn kernel_sym(lambda: &Q, n: usize, d: u32) -> Result<KernelSeries> {
    check_n_and_weight(n, lambda)?;
    let group = Permutation::all(n)?;
    let n_fact = factorial(n as u32);
    let terms = decreasing_exponents(n, d)
        .into_iter()
        .map(|m| {
            let stabilizer = group.iter().filter(|s| s.act(&m) == m).count();
            KernelTerm {
                coef: q(stabilizer as i64) / &n_fact * pochhammer_multi(lambda, &m) / multi_factorial(&m),
                factor: monomial_sym(&m),
                degree: m.iter().sum(),
                index: TermIndex::Orbit(m),
            }
        })
        .collect();
    KernelSeries::new(KernelKind::Sym, Coordinates::PolydiscZ, lambda.clone(), n, d, terms)
}

/// `K_Gn(u, v) = Σ_{m∈[n]} α!(λ)_m/(m!·n!) M_m(u) conj(M_m(v))` with each
/// `M_m` rewritten in elementary coordinates.
pub fn kernel_gn_monomial(lambda: &Q, n: usize, d: u32) -> Result<KernelSeries> {
    check_n_and_weight(n, lambda)?;
    let n_fact = factorial(n as u32);
    let terms = decreasing_exponents(n, d)
        .into_iter()
        .map(|m| {
            let alpha = MultiplicityProfile::of(&m).factorial();
            Ok(KernelTerm {
                coef: alpha * pochhammer_multi(lambda, &m) / (multi_factorial(&m) * &n_fact),
                factor: to_elementary_basis(&monomial_sym(&m))?,
                degree: m.iter().sum(),
                index: TermIndex::Orbit(m),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    KernelSeries::new(KernelKind::GnMonomial, Coordinates::SymmetrizedU, lambda.clone(), n, d, terms)
}

/// `γ_p² = (μ)_{p+δ}/(p+δ)!`.
pub fn gamma_sq(mu: &Q, p: &Partition, n: usize) -> Result<Q> {
    let shifted: Vec<u32> = p
        .padded(n)?
        .into_iter()
        .enumerate()
        .map(|(i, x)| (x + n - 1 - i) as u32)
        .collect();
    Ok(pochhammer_multi(mu, &shifted) / multi_factorial(&shifted))
}

/// `B_Gn(u, v) = Σ_p γ_p² S_p(u) conj(S_p(v))`, factors by Giambelli.
pub fn kernel_bergman_gn(mu: &Q, n: usize, d: u32) -> Result<KernelSeries> {
    check_n_and_weight(n, mu)?;
    let mut terms = Vec::new();
    for total in 0..=d as usize {
        for p in Partition::all_bounded(total, n).into_iter().rev() {
            terms.push(KernelTerm {
                coef: gamma_sq(mu, &p, n)?,
                factor: schur_giambelli(&p, n)?,
                degree: total as u32,
                index: TermIndex::Partition(p),
            });
        }
    }
    KernelSeries::new(KernelKind::BergmanGn, Coordinates::SymmetrizedU, mu.clone(), n, d, terms)
}

/// Divides every coefficient by `K(0, 0)`, so the result is 1 against the origin.
pub fn normalize_at_zero(k: &KernelSeries) -> Result<KernelSeries> {
    let c0 = k.value_at_origin();
    if Zero::is_zero(&c0) {
        return Err(Error::NotNormalizable);
    }
    let mut out = k.clone();
    for t in &mut out.terms {
        t.coef = &t.coef / &c0;
    }
    out.normalized = true;
    Ok(out)
}

/// Coefficient of `u_1^q ⊗ ū_1^q` in a `u`-coordinate kernel.
pub fn extract_e1_coefficient(k: &KernelSeries, q_pow: u32) -> Result<Q> {
    if k.coordinates != Coordinates::SymmetrizedU {
        return Err(Error::InvalidInput("e_1 coefficients are defined in u-coordinates".into()));
    }
    if q_pow == 0 {
        return Err(Error::InvalidInput("power must be positive".into()));
    }
    if 2 * q_pow > k.degree_cap {
        return Err(Error::InsufficientTruncation(format!(
            "u_1^{q_pow} needs degree cap at least {}, have {}",
            2 * q_pow,
            k.degree_cap
        )));
    }
    let mut exp = vec![0u32; k.n];
    exp[0] = q_pow;
    Ok(k.terms
        .iter()
        .map(|t| {
            let a = t.factor.coeff(&exp);
            &t.coef * &a * &a
        })
        .sum())
}

/// Polynomials in `2n` variables, truncated to `z`-degree at most `cap`
/// (the first `n` variables) after every product.
#[derive(Clone, Debug)]
struct Truncated {
    poly: SparsePoly,
    n: usize,
    cap: u32,
}

impl Truncated {
    fn wrap(&self, poly: SparsePoly) -> Self {
        Self { poly, ..self.clone() }
    }
}

impl Ring for Truncated {
    fn zero_like(&self) -> Self {
        self.wrap(SparsePoly::zero(self.poly.nvars()))
    }
    fn one_like(&self) -> Self {
        self.wrap(SparsePoly::one(self.poly.nvars()))
    }
    fn add(&self, other: &Self) -> Self {
        self.wrap(&self.poly + &other.poly)
    }
    fn sub(&self, other: &Self) -> Self {
        self.wrap(&self.poly - &other.poly)
    }
    fn mul(&self, other: &Self) -> Self {
        let full = &self.poly * &other.poly;
        let n = self.n;
        let cap = self.cap;
        self.wrap(SparsePoly::from_terms(
            full.nvars(),
            full.terms()
                .filter(|(e, _)| e[..n].iter().sum::<u32>() <= cap)
                .map(|(e, c)| (e.clone(), c.clone())),
        ))
    }
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrosscheckReport {
    pub check: &'static str,
    pub n: usize,
    #[serde(with = "crate::rational::serde_q")]
    pub lambda: Q,
    pub d: u32,
    pub terms_compared: usize,
    pub max_degree_verified: u32,
    pub pass: bool,
}

/// Expands `(1/n!) per((1 − z_j w̄_k)^{−λ})` over truncated series and
/// compares it term by term with [`kernel_sym`].
pub fn crosscheck_permanent(lambda: &Q, n: usize, d: u32) -> Result<CrosscheckReport> {
    check_weight(lambda)?;
    if n > CROSSCHECK_MAX_N {
        return Err(Error::limit("crosscheck n", n, CROSSCHECK_MAX_N));
    }
    if d > CROSSCHECK_MAX_D {
        return Err(Error::limit("crosscheck degree", d as usize, CROSSCHECK_MAX_D as usize));
    }
    crate::config::check_n(n)?;
    let unit = Truncated {
        poly: SparsePoly::one(2 * n),
        n,
        cap: d,
    };
    // (1 − x)^{−λ} = Σ_t (λ)_t/t! x^t with x = z_j w̄_k
    let entry = |j: usize, k: usize| {
        let mut terms = Vec::new();
        for t in 0..=d {
            let mut e = vec![0u32; 2 * n];
            e[j] = t;
            e[n + k] = t;
            terms.push((e, pochhammer(lambda, t) / factorial(t)));
        }
        unit.wrap(SparsePoly::from_terms(2 * n, terms))
    };
    let matrix: Vec<Vec<Truncated>> = (0..n).map(|j| (0..n).map(|k| entry(j, k)).collect()).collect();
    let per = permanent(&matrix, &unit)?.poly.scale(&(Q::one() / factorial(n as u32)));
    let reference = kernel_sym(lambda, n, d)?.bivariate();
    let mut diff: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
    for (e, c) in per.terms() {
        *diff.entry(e.clone()).or_insert_with(Q::zero) += c;
    }
    for (e, c) in reference.terms() {
        *diff.entry(e.clone()).or_insert_with(Q::zero) -= c;
    }
    let pass = diff.values().all(Zero::is_zero);
    Ok(CrosscheckReport {
        check: "permanent_crosscheck",
        n,
        lambda: lambda.clone(),
        d,
        terms_compared: diff.len(),
        max_degree_verified: if pass { d } else { 0 },
        pass,
    })
}

/// Exact univariate polynomial (ascending coefficients) through the given
/// points, by Lagrange interpolation.
fn interpolate(xs: &[Q], ys: &[Q]) -> Vec<Q> {
    let k = xs.len();
    let mut out = vec![Q::zero(); k];
    for i in 0..k {
        // basis polynomial ℓ_i
        let mut basis = vec![Q::one()];
        let mut denom = Q::one();
        for j in (0..k).filter(|&j| j != i) {
            let mut next = vec![Q::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &xs[j];
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        for (d, c) in basis.iter().enumerate() {
            out[d] += c * &ys[i] / &denom;
        }
    }
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn poly_eval(coeffs: &[Q], x: &Q) -> Q {
    coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

fn poly_add(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `p(r(x))` for univariate `p` and `r`.
fn poly_compose(p: &[Q], r: &[Q]) -> Vec<Q> {
    p.iter().rev().fold(vec![Q::zero()], |acc, c| poly_add(&poly_mul(&acc, r), std::slice::from_ref(c)))
}

/// Open interval `(lo, hi)`; `None` bounds are infinite.
#[derive(Clone, Debug)]
struct Interval {
    lo: Option<Q>,
    hi: Option<Q>,
}

impl Interval {
    fn contains(&self, x: &Q) -> bool {
        self.lo.as_ref().is_none_or(|lo| x > lo) && self.hi.as_ref().is_none_or(|hi| x < hi)
    }

    fn is_empty(&self) -> bool {
        matches!((&self.lo, &self.hi), (Some(lo), Some(hi)) if lo >= hi)
    }
}

/// Is `(b + s·√disc) / den` (with `den > 0`, `s = ±1`) strictly greater than `t`?
fn surd_greater(b: &Q, s: i32, disc: &Q, den: &Q, t: &Q) -> bool {
    // ⇔ s·√disc > t·den − b =: r
    let r = t * den - b;
    if s > 0 {
        r.is_negative() || *disc > &r * &r
    } else {
        r.is_negative() && *disc < &r * &r
    }
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Q::new(n, d))
}

/// Does the polynomial (degree ≤ 2, ascending coefficients) vanish somewhere
/// in the open interval? The zero polynomial vanishes everywhere.
fn has_root_in(coeffs: &[Q], iv: &Interval) -> Result<bool> {
    if iv.is_empty() {
        return Ok(false);
    }
    match coeffs.len() {
        0 => Ok(true),
        1 => Ok(Zero::is_zero(&coeffs[0])),
        2 => Ok(iv.contains(&(-&coeffs[0] / &coeffs[1]))),
        3 => {
            let (c, b, a) = (&coeffs[0], &coeffs[1], &coeffs[2]);
            let disc = b * b - q(4) * a * c;
            if disc.is_negative() {
                return Ok(false);
            }
            // roots (−b ± √disc)/(2a); normalize to a positive denominator
            let (num_b, sign_flip, den) = if a.is_positive() {
                (-b.clone(), 1, q(2) * a)
            } else {
                (b.clone(), -1, q(-2) * a)
            };
            if let Some(root) = rational_sqrt(&disc) {
                return Ok([1, -1]
                    .iter()
                    .any(|&s| iv.contains(&((&num_b + q(s) * &root) / &den))));
            }
            Ok([1, -1].iter().any(|&s| {
                let s = s * sign_flip;
                let above = iv.lo.as_ref().is_none_or(|lo| surd_greater(&num_b, s, &disc, &den, lo));
                let below = iv.hi.as_ref().is_none_or(|hi| !surd_greater(&num_b, s, &disc, &den, hi));
                above && below
            }))
        }
        _ => Err(Error::Internal("residual polynomial has degree above 2".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessReport {
    pub check: &'static str,
    pub n: usize,
    #[serde(with = "crate::rational::serde_q")]
    pub lambda: Q,
    /// Coefficient of `u_1 ⊗ ū_1` in the symmetric kernel `K_Gn`.
    #[serde(with = "crate::rational::serde_q")]
    pub sym_e1: Q,
    /// The same coefficient in the normalized anti-symmetric kernel.
    #[serde(with = "crate::rational::serde_q")]
    pub anti_e1: Q,
    pub differ: bool,
    /// `μ` as a function of `λ` forced by the `u_1` equation: `[β, α]` for `μ = αλ + β`.
    pub mu_of_lambda: Vec<String>,
    /// The `u_1²` equation after substituting `μ(λ)`, ascending coefficients in `λ`.
    pub residual: Vec<String>,
    /// Whether some `λ, μ > 0` satisfy both equations.
    pub system_solvable: bool,
    pub pass: bool,
}

/// Coefficients of `u_1^q ⊗ ū_1^q` as exact polynomials in the weight,
/// recovered by interpolation from four weights and checked against a fifth.
fn coefficient_polynomial(n: usize, q_pow: u32, anti: bool) -> Result<Vec<Q>> {
    let sample = |w: &Q| -> Result<Q> {
        let k = if anti {
            normalize_at_zero(&kernel_bergman_gn(w, n, 2 * q_pow)?)?
        } else {
            kernel_gn_monomial(w, n, 2 * q_pow)?
        };
        extract_e1_coefficient(&k, q_pow)
    };
    let xs: Vec<Q> = (1..=4).map(q).collect();
    let ys = xs.iter().map(sample).collect::<Result<Vec<_>>>()?;
    let poly = interpolate(&xs, &ys);
    let probe = Q::new(7.into(), 2.into());
    if poly_eval(&poly, &probe) != sample(&probe)? {
        return Err(Error::Internal("coefficient is not polynomial of degree ≤ 3 in the weight".into()));
    }
    Ok(poly)
}

/// Compares the `u_1 ⊗ ū_1` coefficients of the symmetric part (`K_Gn`
/// with weight `λ`) and the normalized anti-symmetric part (`B_Gn` with
/// weight `λ`), and decides whether the two-equation system
/// `K_Gn^(λ)[u_1^q] = B̃^(μ)[u_1^q]`, `q = 1, 2`, has a solution `λ, μ > 0`.
pub fn witness_inequivalence(lambda: &Q, n: usize) -> Result<WitnessReport> {
    check_n_and_weight(n, lambda)?;
    let sym_e1 = extract_e1_coefficient(&kernel_gn_monomial(lambda, n, 2)?, 1)?;
    let anti_e1 = extract_e1_coefficient(&normalize_at_zero(&kernel_bergman_gn(lambda, n, 2)?)?, 1)?;
    let differ = sym_e1 != anti_e1;

    let s1 = coefficient_polynomial(n, 1, false)?;
    let a1 = coefficient_polynomial(n, 1, true)?;
    let s2 = coefficient_polynomial(n, 2, false)?;
    let a2 = coefficient_polynomial(n, 2, true)?;
    if a1.len() != 2 || s1.len() > 2 {
        return Err(Error::Internal("first-order coefficients are not linear in the weight".into()));
    }
    // s1(λ) = a1(μ)  ⇒  μ = (s1(λ) − a1[0]) / a1[1]
    let mut mu = s1.clone();
    mu.resize(2, Q::zero());
    mu[0] -= &a1[0];
    let mu: Vec<Q> = mu.iter().map(|c| c / &a1[1]).collect();
    let neg_a2: Vec<Q> = poly_compose(&a2, &mu).into_iter().map(|c| -c).collect();
    let residual = poly_add(&s2, &neg_a2);
    let residual = if residual.len() == 1 && Zero::is_zero(&residual[0]) { Vec::new() } else { residual };
    // λ > 0 and μ(λ) = α λ + β > 0
    let (beta, alpha) = (&mu[0], &mu[1]);
    let zero = Q::zero();
    let mut iv = Interval { lo: Some(zero.clone()), hi: None };
    if Zero::is_zero(alpha) {
        if !beta.is_positive() {
            iv.hi = Some(zero);
        }
    } else {
        let cut = -beta / alpha;
        if alpha.is_positive() {
            if cut > zero {
                iv.lo = Some(cut);
            }
        } else {
            iv.hi = Some(cut);
        }
    }
    let system_solvable = has_root_in(&residual, &iv)?;
    let pass = differ == (n >= 2) && system_solvable == (n == 1);
    Ok(WitnessReport {
        check: "inequivalence_witness",
        n,
        lambda: lambda.clone(),
        sym_e1,
        anti_e1,
        differ,
        mu_of_lambda: mu.iter().map(fmt_q).collect(),
        residual: residual.iter().map(fmt_q).collect(),
        system_solvable,
        pass,
    })
}
