//! The verification suite behind `symmod verify`.
//!
//! Each check returns a [`CheckOutcome`] holding its JSON report. Checks
//! whose inputs exceed a module cap are skipped with the cap recorded;
//! errors inside a check count as failures.

use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{compare_curvatures, default_degree, sample_radius, DEFAULT_STEP};
use crate::hilbmod::{
    artin_determinant_check, build_module, verify_projection_algebra, verify_ranks, verify_reducing, ALGEBRA_MAX_D,
    ALGEBRA_MAX_N, ARTIN_MAX_N,
};
use crate::kernels::{
    crosscheck_permanent, extract_e1_coefficient, kernel_bergman_gn, kernel_gn_monomial, kernel_sym,
    normalize_at_zero, witness_inequivalence, CROSSCHECK_MAX_D, CROSSCHECK_MAX_N,
};
use crate::permgroup::{character_table, verify_orthogonality, Form, Partition};
use crate::points::{seeded_complex_points, seeded_weights, symmetrize_c, to_c64, PointSampler};
use crate::rational::{factorial_u64, fmt_q, q, Q};
use crate::symfunc::{from_elementary_basis, schur_bialternant, schur_giambelli};

/// Gram-positivity tolerance on the smallest eigenvalue.
pub const GRAM_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n: usize,
    pub lambda: Q,
    pub degree: u32,
    pub form: Form,
    pub seed: u64,
    pub trials: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub status: Status,
    pub report: Value,
}

impl CheckOutcome {
    fn from_result(check: &str, result: Result<(bool, Value)>) -> Self {
        match result {
            Ok((pass, report)) => Self {
                check: check.to_string(),
                status: if pass { Status::Pass } else { Status::Fail },
                report,
            },
            Err(e) => Self {
                check: check.to_string(),
                status: Status::Error,
                report: error_json(&e),
            },
        }
    }

    fn skipped(check: &str, reason: String) -> Self {
        Self {
            check: check.to_string(),
            status: Status::Skipped,
            report: json!({ "reason": reason }),
        }
    }

    pub fn failed(&self) -> bool {
        matches!(self.status, Status::Fail | Status::Error)
    }

    /// One-line summary for tabular output.
    pub fn summary(&self) -> String {
        for key in ["max_deviation", "verdict", "reason", "error"] {
            if let Some(v) = self.report.get(key) {
                return match v {
                    Value::String(s) => format!("{key}={s}"),
                    other => format!("{key}={other}"),
                };
            }
        }
        String::new()
    }
}

pub fn error_json(e: &Error) -> Value {
    match e {
        Error::ResourceLimit { what, value, cap } => {
            json!({ "error": e.to_string(), "limit": what, "value": value, "cap": cap })
        }
        other => json!({ "error": other.to_string() }),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// `Σ_p χ_p(1)² = n!` and column orthogonality of the character table.
pub fn check_character_dimensions(n: usize) -> Result<(bool, Value)> {
    let table = character_table(n)?;
    let sum: i64 = table.dimensions().iter().map(|d| d * d).sum();
    let order = factorial_u64(n) as i64;
    let defect = table.column_orthogonality_defect();
    Ok((
        sum == order && defect == 0,
        json!({
            "n": n, "dimensions": table.dimensions(), "sum_of_squares": sum, "group_order": order,
            "column_orthogonality_defect": defect,
        }),
    ))
}

/// Orthogonality relations for every pair of irreducibles of 𝔖ₙ.
pub fn check_orthogonality(n: usize, form: Form) -> Result<(bool, Value)> {
    let parts = Partition::all(n);
    let mut pass = true;
    let mut reports = Vec::new();
    for p in &parts {
        for q in &parts {
            let r = verify_orthogonality(p, q, form)?;
            pass &= r.pass;
            reports.push(r);
        }
    }
    let worst = reports
        .iter()
        .map(|r| r.max_deviation.clone())
        .max_by(|a, b| deviation_key(a).total_cmp(&deviation_key(b)))
        .unwrap_or_else(|| "0".into());
    Ok((pass, json!({ "n": n, "form": form, "pairs": reports.len(), "max_deviation": worst, "pairs_detail": reports })))
}

fn deviation_key(s: &str) -> f64 {
    crate::rational::parse_q(s)
        .map(|x| crate::rational::to_f64(&x))
        .or_else(|_| s.parse::<f64>().map_err(|_| ()))
        .unwrap_or(f64::INFINITY)
}

/// `kernel_sym` equals the pull-back of `K_Gn`, term by term.
pub fn check_kernel_equivalence(lambda: &Q, n: usize, d: u32) -> Result<(bool, Value)> {
    let sym = kernel_sym(lambda, n, d)?.bivariate();
    let pulled = kernel_gn_monomial(lambda, n, d)?.pullback()?.bivariate();
    let diff = &sym - &pulled;
    Ok((
        diff.is_zero(),
        json!({ "n": n, "lambda": fmt_q(lambda), "d": d, "terms": sym.len(), "mismatched_terms": diff.len() }),
    ))
}

/// The four `u_1^q` coefficient formulas at each weight.
pub fn check_coefficients(n: usize, weights: &[Q]) -> Result<(bool, Value)> {
    let nq = q(n as i64);
    let one = Q::one();
    let mut pass = true;
    let mut rows = Vec::new();
    for w in weights {
        let k = kernel_gn_monomial(w, n, 4)?;
        let b = normalize_at_zero(&kernel_bergman_gn(w, n, 4)?)?;
        let got = [
            extract_e1_coefficient(&k, 1)?,
            extract_e1_coefficient(&k, 2)?,
            extract_e1_coefficient(&b, 1)?,
            extract_e1_coefficient(&b, 2)?,
        ];
        let want = [
            w / &nq,
            w * (w + &one) / (q(2) * &nq),
            (w + &nq - &one) / &nq,
            (w + &nq - &one) * (w + &nq) / (&nq * (&nq + &one)),
        ];
        let ok = got == want;
        pass &= ok;
        rows.push(json!({
            "weight": fmt_q(w),
            "extracted": got.iter().map(fmt_q).collect::<Vec<_>>(),
            "expected": want.iter().map(fmt_q).collect::<Vec<_>>(),
            "pass": ok,
        }));
    }
    Ok((pass, json!({ "n": n, "weights": rows })))
}

/// Giambelli determinant equals the bialternant for `|p| ≤ max_size`, at most `n` parts.
pub fn check_giambelli(n: usize, max_size: usize) -> Result<(bool, Value)> {
    let mut count = 0;
    let mut mismatches = Vec::new();
    for size in 0..=max_size {
        for p in Partition::all_bounded(size, n) {
            let g = from_elementary_basis(&schur_giambelli(&p, n)?, n)?;
            if g != schur_bialternant(&p, n)? {
                mismatches.push(p);
            }
            count += 1;
        }
    }
    Ok((
        mismatches.is_empty(),
        json!({ "n": n, "max_size": max_size, "partitions": count, "mismatches": mismatches }),
    ))
}

/// Smallest Gram eigenvalue of `K_Gn` and `B_Gn` at up to six seeded points
/// `u = s(z)`, truncated at degree 8.
pub fn check_gram_positivity(lambda: &Q, n: usize, seed: u64, count: usize) -> Result<(bool, Value)> {
    let mut sampler = PointSampler::new(seed);
    let points: Vec<Vec<num_complex::Complex64>> = (0..count.min(6))
        .map(|_| symmetrize_c(&to_c64(&sampler.complex_point(n))))
        .collect();
    let mut pass = true;
    let mut rows = Vec::new();
    for k in [kernel_gn_monomial(lambda, n, 8)?, kernel_bergman_gn(lambda, n, 8)?] {
        let min = k.gram_min_eigenvalue(&points);
        let ok = min >= -GRAM_TOL;
        pass &= ok;
        rows.push(json!({ "kernel": k.kind().label(), "min_eigenvalue": min, "pass": ok }));
    }
    Ok((pass, json!({ "n": n, "lambda": fmt_q(lambda), "seed": seed, "points": points.len(), "kernels": rows })))
}

/// Runs every check in declaration order.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    let n = cfg.n;
    let d = cfg.degree;
    let lam = &cfg.lambda;
    let mut out = Vec::new();

    out.push(CheckOutcome::from_result("character_dimensions", check_character_dimensions(n)));
    out.push(CheckOutcome::from_result("orthogonality", check_orthogonality(n, cfg.form)));

    let module = build_module(lam, n, d);
    let within_algebra_caps = n <= ALGEBRA_MAX_N && d <= ALGEBRA_MAX_D;
    for form in [Form::Seminormal, Form::Orthogonal] {
        let name = format!("projection_algebra_{form}");
        if !within_algebra_caps {
            out.push(CheckOutcome::skipped(&name, caps_reason(n, d)));
            continue;
        }
        let r = module.clone().and_then(|m| verify_projection_algebra(&m, form)).map(|r| (r.pass, to_value(&r)));
        out.push(CheckOutcome::from_result(&name, r));
    }
    if within_algebra_caps {
        let r = module.clone().and_then(|m| verify_reducing(&m, cfg.form)).map(|r| (r.pass, to_value(&r)));
        out.push(CheckOutcome::from_result("reducing", r));
    } else {
        out.push(CheckOutcome::skipped("reducing", caps_reason(n, d)));
    }
    let r = module
        .and_then(|m| verify_ranks(&m, cfg.form, cfg.trials, cfg.seed))
        .map(|r| (r.pass, to_value(&r)));
    out.push(CheckOutcome::from_result("joint_kernel_ranks", r));

    if n <= ARTIN_MAX_N {
        let r = artin_determinant_check(n, cfg.trials, cfg.seed).map(|r| (r.pass, to_value(&r)));
        out.push(CheckOutcome::from_result("artin_determinant", r));
    } else {
        out.push(CheckOutcome::skipped("artin_determinant", format!("n = {n} exceeds cap {ARTIN_MAX_N}")));
    }

    out.push(CheckOutcome::from_result("kernel_equivalence", check_kernel_equivalence(lam, n, d)));
    if n <= CROSSCHECK_MAX_N {
        let r = crosscheck_permanent(lam, n, d.min(CROSSCHECK_MAX_D)).map(|r| (r.pass, to_value(&r)));
        out.push(CheckOutcome::from_result("permanent_crosscheck", r));
    } else {
        out.push(CheckOutcome::skipped("permanent_crosscheck", format!("n = {n} exceeds cap {CROSSCHECK_MAX_N}")));
    }

    let mut weights = vec![lam.clone()];
    weights.extend(seeded_weights(cfg.seed, cfg.trials, 4));
    out.push(CheckOutcome::from_result("coefficient_formulas", check_coefficients(n, &weights)));
    let r = witness_inequivalence(lam, n).map(|r| (r.pass, to_value(&r)));
    out.push(CheckOutcome::from_result("inequivalence_witness", r));
    out.push(CheckOutcome::from_result("giambelli", check_giambelli(n, d as usize)));
    out.push(CheckOutcome::from_result("gram_positivity", check_gram_positivity(lam, n, cfg.seed, 6)));

    if n <= 3 {
        let points = seeded_complex_points(cfg.seed, n, 3, &sample_radius(n));
        let r = compare_curvatures(n, lam, &points, DEFAULT_STEP, default_degree(n)).map(|r| (r.pass, to_value(&r)));
        out.push(CheckOutcome::from_result("curvature_compare", r));
    } else {
        out.push(CheckOutcome::skipped("curvature_compare", format!("n = {n} exceeds 3")));
    }
    out
}

fn caps_reason(n: usize, d: u32) -> String {
    format!("(n, d) = ({n}, {d}) exceeds caps ({ALGEBRA_MAX_N}, {ALGEBRA_MAX_D})")
}
