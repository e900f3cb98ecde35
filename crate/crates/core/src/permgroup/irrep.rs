use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::config::check_n;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::rational::{factorial_u64, qf, Q};

use super::{standard_tableaux, Partition, Permutation, Tableau};

/// Upper bound on `n! · dim²` stored matrix entries for one irrep.
pub const MAX_IRREP_ENTRIES: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// Young's seminormal form: exact rational entries, not unitary.
    Seminormal,
    /// Young's orthogonal form: real orthogonal matrices in `f64`.
    Orthogonal,
}

impl std::str::FromStr for Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "seminormal" => Ok(Form::Seminormal),
            "orthogonal" => Ok(Form::Orthogonal),
            _ => Err(Error::Parse(format!("unknown form {s:?}"))),
        }
    }
}

impl std::fmt::Display for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Form::Seminormal => "seminormal",
            Form::Orthogonal => "orthogonal",
        })
    }
}

/// An irreducible representation `π_p` of 𝔖ₙ on the span of the standard
/// Young tableaux of shape `p`, with one matrix per group element.
#[derive(Clone, Debug)]
pub struct Irrep<T> {
    partition: Partition,
    form: Form,
    tableaux: Vec<Tableau>,
    /// Indexed by [`Permutation::lex_rank`].
    matrices: Vec<Matrix<T>>,
}

/// Young's seminormal form over the rationals.
pub fn irrep_seminormal(p: &Partition) -> Result<Irrep<Q>> {
    build(p, Form::Seminormal, |r| {
        let rho = qf(1, r);
        let other = Q::from_integer(1.into()) - &rho * &rho;
        // Column T gets (1 − ρ²)·e_T' when r > 0 and 1·e_T' when r < 0; this is
        // the orthogonal form conjugated by a diagonal matrix.
        let below = if r > 0 { other } else { Scalar::one() };
        (rho, below)
    })
}

/// Young's orthogonal form in double precision.
pub fn irrep_orthogonal(p: &Partition) -> Result<Irrep<f64>> {
    build(p, Form::Orthogonal, |r| {
        let rho = 1.0 / r as f64;
        (rho, (1.0 - rho * rho).sqrt())
    })
}

/// `gen(r)` returns `(diagonal, off_diagonal)` for axial distance `r`, where
/// the off-diagonal value is the coefficient of `e_{s_k T}` in `s_k e_T`.
fn build<T: Scalar>(p: &Partition, form: Form, gen: impl Fn(i64) -> (T, T)) -> Result<Irrep<T>> {
    let n = p.size();
    check_n(n)?;
    let tableaux = standard_tableaux(p);
    let dim = tableaux.len();
    let order = factorial_u64(n) as usize;
    if order.saturating_mul(dim * dim) > MAX_IRREP_ENTRIES {
        return Err(Error::limit("irrep matrix entries", order * dim * dim, MAX_IRREP_ENTRIES));
    }
    let index: HashMap<&Tableau, usize> = tableaux.iter().enumerate().map(|(i, t)| (t, i)).collect();

    // Generators s_k, k = 0..n-2.
    let generators: Vec<Matrix<T>> = (0..n.saturating_sub(1))
        .map(|k| {
            let mut m = Matrix::zeros(dim, dim);
            for (a, t) in tableaux.iter().enumerate() {
                let (ra, ca) = t.cell(k);
                let (rb, cb) = t.cell(k + 1);
                if ra == rb {
                    m.set(a, a, T::one());
                } else if ca == cb {
                    m.set(a, a, T::one().neg());
                } else {
                    let r = t.content(k + 1) - t.content(k);
                    let (diag, off) = gen(r);
                    let b = index[&t.swapped(k)];
                    m.set(a, a, diag);
                    m.set(b, a, off);
                }
            }
            m
        })
        .collect();

    let mut matrices: Vec<Option<Matrix<T>>> = vec![None; order];
    let id = Permutation::identity(n);
    matrices[id.lex_rank()] = Some(Matrix::identity(dim));
    let mut queue = VecDeque::from([id]);
    while let Some(sigma) = queue.pop_front() {
        let current = matrices[sigma.lex_rank()].clone().expect("visited");
        for (k, g) in generators.iter().enumerate() {
            let tau = sigma.compose(&Permutation::adjacent(n, k));
            let slot = &mut matrices[tau.lex_rank()];
            if slot.is_none() {
                *slot = Some(current.mul(g));
                queue.push_back(tau);
            }
        }
    }
    Ok(Irrep {
        partition: p.clone(),
        form,
        tableaux,
        matrices: matrices.into_iter().map(|m| m.expect("𝔖ₙ is generated by adjacent transpositions")).collect(),
    })
}

impl<T: Scalar> Irrep<T> {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn n(&self) -> usize {
        self.partition.size()
    }

    /// `χ_p(1)`.
    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    pub fn matrix(&self, sigma: &Permutation) -> &Matrix<T> {
        &self.matrices[sigma.lex_rank()]
    }

    /// `π_p^{ij}(σ)`, 0-based indices.
    pub fn entry(&self, sigma: &Permutation, i: usize, j: usize) -> &T {
        self.matrix(sigma).get(i, j)
    }

    pub fn trace(&self, sigma: &Permutation) -> T {
        let m = self.matrix(sigma);
        (0..self.dim()).fold(T::zero(), |acc, i| acc.add(m.get(i, i)))
    }

    /// `{"n":…,"partition":[…],"dim":…,"form":…,"matrices":{"[2,1,3]":[[…]]}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut matrices = serde_json::Map::new();
        for sigma in Permutation::all_unchecked(self.n()) {
            let rows: Vec<Vec<serde_json::Value>> = self
                .matrix(&sigma)
                .to_rows()
                .iter()
                .map(|row| row.iter().map(Scalar::to_json).collect())
                .collect();
            matrices.insert(sigma.to_string(), serde_json::json!(rows));
        }
        serde_json::json!({
            "n": self.n(),
            "partition": self.partition,
            "dim": self.dim(),
            "form": self.form,
            "matrices": matrices,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityReport {
    pub check: &'static str,
    pub n: usize,
    pub p: Partition,
    pub q: Partition,
    pub form: Form,
    pub max_deviation: String,
    pub pass: bool,
}

/// Tolerance for orthogonal-form identities.
pub const FLOAT_TOL: f64 = 1e-10;

/// Checks `Σ_σ π_p^{ij}(σ⁻¹) π_q^{lm}(σ) = (n!/χ_p(1)) δ_pq δ_im δ_jl` over all
/// index tuples.
pub fn verify_orthogonality(p: &Partition, q: &Partition, form: Form) -> Result<OrthogonalityReport> {
    if p.size() != q.size() {
        return Err(Error::InvalidInput(format!("{p} and {q} partition different integers")));
    }
    let (dev, pass) = match form {
        Form::Seminormal => {
            let dev = orthogonality_deviation(&irrep_seminormal(p)?, &irrep_seminormal(q)?);
            let pass = dev.is_zero();
            (dev.render(), pass)
        }
        Form::Orthogonal => {
            let dev = orthogonality_deviation(&irrep_orthogonal(p)?, &irrep_orthogonal(q)?);
            (dev.render(), dev <= FLOAT_TOL)
        }
    };
    Ok(OrthogonalityReport {
        check: "orthogonality",
        n: p.size(),
        p: p.clone(),
        q: q.clone(),
        form,
        max_deviation: dev,
        pass,
    })
}

fn orthogonality_deviation<T: Scalar>(a: &Irrep<T>, b: &Irrep<T>) -> T {
    let n = a.n();
    let (da, db) = (a.dim(), b.dim());
    let mut sums = vec![T::zero(); da * da * db * db];
    for sigma in Permutation::all_unchecked(n) {
        let left = a.matrix(&sigma.inverse());
        let right = b.matrix(&sigma);
        for i in 0..da {
            for j in 0..da {
                let x = left.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for l in 0..db {
                    for m in 0..db {
                        let idx = ((i * da + j) * db + l) * db + m;
                        sums[idx] = sums[idx].add(&x.mul(right.get(l, m)));
                    }
                }
            }
        }
    }
    let same = a.partition() == b.partition();
    let target = T::from_q(&qf(factorial_u64(n) as i64, da as i64));
    let mut worst = T::zero();
    for i in 0..da {
        for j in 0..da {
            for l in 0..db {
                for m in 0..db {
                    let expected = if same && i == m && j == l { target.clone() } else { T::zero() };
                    let idx = ((i * da + j) * db + l) * db + m;
                    let d = sums[idx].sub(&expected).abs();
                    if d > worst {
                        worst = d;
                    }
                }
            }
        }
    }
    worst
}
