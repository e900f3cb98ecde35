//! One function per subcommand. Each validates its configuration, builds a
//! [`Report`], writes it and returns whether every check passed.

use serde_json::{json, Value};
use symmod::config::check_n;
use symmod::geometry::{compare_curvatures, default_degree, sample_radius};
use symmod::kernels::{kernel_bergman_gn, kernel_gn_monomial, kernel_polydisc, kernel_sym, KernelSeries, TermIndex};
use symmod::linalg::Scalar;
use symmod::permgroup::{character_table, irrep_orthogonal, irrep_seminormal, Form, Irrep, Partition, Permutation};
use symmod::points::{parse_points, seeded_complex_points};
use symmod::rational::{fmt_q, parse_weight};
use symmod::suite::{run_suite, SuiteConfig};
use symmod::symfunc::{from_elementary_basis, schur_bialternant, schur_giambelli};
use symmod::{Result, Q};

use crate::sink::Report;
use crate::{Common, KindArg};

const DEFAULT_DEGREE: u32 = 4;

fn weight(common: &Common) -> Result<Q> {
    parse_weight(&common.lambda)
}

fn degree(common: &Common) -> u32 {
    common.degree.unwrap_or(DEFAULT_DEGREE)
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn chartable(common: &Common) -> Result<bool> {
    check_n(common.n)?;
    let table = character_table(common.n)?;
    let mut report = Report::new(vec!["partition", "class", "class_size", "value"]);
    for (p, row) in table.partitions.iter().zip(&table.values) {
        for ((class, size), value) in table.classes.iter().zip(&table.class_sizes).zip(row) {
            report.rows.push(vec![p.to_string(), class.to_string(), size.to_string(), value.to_string()]);
        }
    }
    report.lines.push(json!(table));
    report.write(common)?;
    Ok(true)
}

pub fn irreps(common: &Common) -> Result<bool> {
    check_n(common.n)?;
    let mut report = Report::new(vec!["partition", "form", "permutation", "row", "col", "value"]);
    for p in Partition::all(common.n) {
        match Form::from(common.form) {
            Form::Seminormal => push_irrep(&mut report, &irrep_seminormal(&p)?),
            Form::Orthogonal => push_irrep(&mut report, &irrep_orthogonal(&p)?),
        }
    }
    report.write(common)?;
    Ok(true)
}

fn push_irrep<T: Scalar>(report: &mut Report, irrep: &Irrep<T>) {
    for sigma in Permutation::all(irrep.n()).expect("n already checked") {
        for (i, row) in irrep.matrix(&sigma).to_rows().iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                report.rows.push(vec![
                    irrep.partition().to_string(),
                    irrep.form().to_string(),
                    sigma.to_string(),
                    i.to_string(),
                    j.to_string(),
                    cell(&x.to_json()),
                ]);
            }
        }
    }
    report.lines.push(irrep.to_json());
}

pub fn schur(common: &Common) -> Result<bool> {
    let n = common.n;
    check_n(n)?;
    let d = common.degree.unwrap_or(n as u32) as usize;
    let mut report = Report::new(vec!["partition", "n", "terms", "agree", "polynomial"]);
    let mut all_agree = true;
    for size in 0..=d {
        for p in Partition::all_bounded(size, n) {
            let s = schur_bialternant(&p, n)?;
            let g = schur_giambelli(&p, n)?;
            let agree = from_elementary_basis(&g, n)? == s;
            all_agree &= agree;
            report
                .rows
                .push(vec![p.to_string(), n.to_string(), s.len().to_string(), agree.to_string(), s.to_string()]);
            report.lines.push(json!({
                "partition": p, "n": n, "schur": s.to_json(), "giambelli": g.to_json(), "agree": agree,
            }));
        }
    }
    report.write(common)?;
    Ok(all_agree)
}

pub fn kernel(common: &Common, kind: KindArg) -> Result<bool> {
    let w = weight(common)?;
    let d = degree(common);
    let series: KernelSeries = match kind {
        KindArg::Klambda => kernel_polydisc(&w, common.n, d)?,
        KindArg::Ksym => kernel_sym(&w, common.n, d)?,
        KindArg::KGn => kernel_gn_monomial(&w, common.n, d)?,
        KindArg::BGn => kernel_bergman_gn(&w, common.n, d)?,
    };
    let mut report = Report::new(vec!["kernel", "index", "coef", "degree", "factor"]);
    for t in series.terms() {
        let index = match &t.index {
            TermIndex::Monomial(m) | TermIndex::Orbit(m) => json!(m).to_string(),
            TermIndex::Partition(p) => json!(p).to_string(),
        };
        report.rows.push(vec![
            series.kind().label().to_string(),
            index,
            fmt_q(&t.coef),
            t.degree.to_string(),
            t.factor.to_string(),
        ]);
    }
    report.lines.push(series.to_json());
    report.write(common)?;
    Ok(true)
}

pub fn verify(common: &Common) -> Result<bool> {
    check_n(common.n)?;
    let cfg = SuiteConfig {
        n: common.n,
        lambda: weight(common)?,
        degree: degree(common),
        form: common.form.into(),
        seed: common.seed,
        trials: common.trials,
    };
    let outcomes = run_suite(&cfg);
    let mut report = Report::new(vec!["check", "status", "seed", "summary"]);
    for o in &outcomes {
        report.rows.push(vec![
            o.check.clone(),
            cell(&json!(o.status)),
            common.seed.to_string(),
            o.summary(),
        ]);
        report.lines.push(json!({
            "check": o.check, "status": o.status, "seed": common.seed, "report": o.report,
        }));
    }
    report.write(common)?;
    Ok(outcomes.iter().all(|o| !o.failed()))
}

pub fn curvature(common: &Common, points: Option<&str>, step: f64) -> Result<bool> {
    let n = common.n;
    check_n(n)?;
    let w = weight(common)?;
    if !(step.is_finite() && step > 0.0) {
        return Err(symmod::Error::InvalidInput(format!("step must be positive, got {step}")));
    }
    let points = match points {
        Some(json) => parse_points(json, n)?,
        None => seeded_complex_points(common.seed, n, common.trials, &sample_radius(n)),
    };
    let d = common.degree.unwrap_or_else(|| default_degree(n));
    let r = compare_curvatures(n, &w, &points, step, d)?;
    let mut report = Report::new(vec![
        "point", "z", "max_diff", "richardson_err", "resolved", "distinguished", "verdict",
    ]);
    for (k, p) in r.points.iter().enumerate() {
        let z: Vec<String> = p.z.iter().map(ToString::to_string).collect();
        report.rows.push(vec![
            k.to_string(),
            format!("({})", z.join(", ")),
            format!("{:e}", p.max_diff),
            format!("{:e}", p.richardson_err),
            p.resolved.to_string(),
            p.distinguished.to_string(),
            r.verdict.to_string(),
        ]);
    }
    let mut line = json!(r);
    line["seed"] = json!(common.seed);
    report.lines.push(line);
    report.write(common)?;
    Ok(r.pass)
}
