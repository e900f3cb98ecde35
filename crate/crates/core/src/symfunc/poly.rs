use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgroup::Permutation;
use crate::rational::{fmt_q, parse_q, to_f64, Q};

/// Exact multivariate polynomial over ℚ.
///
/// Terms map dense exponent vectors (length `nvars`) to nonzero rational
/// coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        Self::monomial(exp, Q::one())
    }

    pub fn monomial(exp: Vec<u32>, c: Q) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Q)>) -> Self {
        let mut p = Self::zero(nvars);
        for (exp, c) in terms {
            assert_eq!(exp.len(), nvars, "exponent length mismatch");
            p.add_term(exp, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Same as [`SparsePoly::is_zero`]: no stored terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Largest total degree of a stored term (0 for the zero polynomial).
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Terms of total degree at most `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// `f ↦ f∘σ⁻¹`, i.e. `(R_σ f)(z) = f(σ⁻¹·z)`; exponent `m` becomes `σ·m`.
    pub fn permute(&self, sigma: &Permutation) -> Self {
        assert_eq!(sigma.n(), self.nvars);
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (sigma.act(e), c.clone())).collect(),
        }
    }

    /// Exchanges variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(i, j);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Invariance under every adjacent transposition, hence under 𝔖ₙ.
    pub fn is_symmetric(&self) -> bool {
        (0..self.nvars.saturating_sub(1)).all(|i| self.swap_vars(i, i + 1) == *self)
    }

    /// Replaces variable `i` by `images[i]`; all images share one variable set.
    pub fn substitute(&self, images: &[SparsePoly]) -> Result<SparsePoly> {
        if images.len() != self.nvars {
            return Err(Error::InvalidInput(format!(
                "substitution needs {} images, got {}",
                self.nvars,
                images.len()
            )));
        }
        let target = images.first().map_or(0, SparsePoly::nvars);
        if images.iter().any(|p| p.nvars != target) {
            return Err(Error::InvalidInput("substitution images differ in variable count".into()));
        }
        let mut powers: HashMap<(usize, u32), SparsePoly> = HashMap::new();
        let mut out = SparsePoly::zero(target);
        for (exp, c) in &self.terms {
            let mut term = SparsePoly::constant(target, c.clone());
            for (i, &k) in exp.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = powers.entry((i, k)).or_insert_with(|| images[i].pow(k));
                term = &term * pw;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn eval_q(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize))
            })
            .sum()
    }

    pub fn eval_c(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(Complex64::new(to_f64(c), 0.0), |acc, (&k, x)| acc * x.powu(k))
            })
            .sum()
    }

    /// Leading term in lexicographic order (`x₁ > x₂ > …`).
    pub fn leading_lex(&self) -> Option<(&Vec<u32>, &Q)> {
        self.terms.iter().next_back()
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_grlex(&self) -> Option<(&Vec<u32>, &Q)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    /// Exact quotient `self / divisor`; errors if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &SparsePoly) -> Result<SparsePoly> {
        let (lead_exp, lead_c) = divisor
            .leading_lex()
            .ok_or_else(|| Error::InvalidInput("division by the zero polynomial".into()))?;
        let mut rem = self.clone();
        let mut quotient = SparsePoly::zero(self.nvars);
        while let Some((exp, c)) = rem.leading_lex() {
            let Some(shift) = exp
                .iter()
                .zip(lead_exp)
                .map(|(a, b)| a.checked_sub(*b))
                .collect::<Option<Vec<u32>>>()
            else {
                return Err(Error::Internal("polynomial division left a nonzero remainder".into()));
            };
            let step = SparsePoly::monomial(shift, c / lead_c);
            rem = &rem - &(&step * divisor);
            quotient = &quotient + &step;
        }
        Ok(quotient)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    coef: fmt_q(c),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self> {
        let mut p = SparsePoly::zero(json.nvars);
        for t in &json.terms {
            if t.exp.len() != json.nvars {
                return Err(Error::Parse(format!("exponent {:?} has wrong length", t.exp)));
            }
            p.add_term(t.exp.clone(), parse_q(&t.coef)?);
        }
        Ok(p)
    }
}

/// Graded lexicographic comparison of exponent vectors.
pub(crate) fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Serialized form: `{"nvars":3,"terms":[{"exp":[2,0,0],"coef":"1"}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

impl Serialize for SparsePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparsePoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = PolyJson::deserialize(d)?;
        SparsePoly::from_json(&json).map_err(serde::de::Error::custom)
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut acc: HashMap<Vec<u32>, Q> = HashMap::with_capacity(self.len() * other.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Q::zero) += ca * cb;
            }
        }
        SparsePoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex(b.0, a.0));
        for (idx, (exp, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                .collect();
            let neg = c.is_negative();
            let mag = c.abs();
            if idx > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            if mono.is_empty() {
                write!(f, "{}", fmt_q(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_q(&mag), mono.join("*"))?;
            }
        }
        Ok(())
    }
}
