//! Sample points in the polydisc and their images in the symmetrized polydisc.
//!
//! Points carry exact rational real and imaginary parts; floating-point
//! copies are derived on demand.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, q, qf, to_f64, Q};

/// Largest numerator or denominator used when sampling coordinates.
pub const MAX_DENOMINATOR: i64 = 32;

/// A complex number with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexQ {
    pub re: Q,
    pub im: Q,
}

impl ComplexQ {
    pub fn real(re: Q) -> Self {
        Self { re, im: Q::zero() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn norm_sq(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
}

impl fmt::Display for ComplexQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            f.write_str(&fmt_q(&self.re))
        } else {
            write!(f, "[{},{}]", fmt_q(&self.re), fmt_q(&self.im))
        }
    }
}

/// Real coordinates serialize as `"p/q"`, complex ones as `["re","im"]`.
impl Serialize for ComplexQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_real() {
            s.serialize_str(&fmt_q(&self.re))
        } else {
            [fmt_q(&self.re), fmt_q(&self.im)].serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for ComplexQ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        coordinate_from_json(&v).map_err(serde::de::Error::custom)
    }
}

fn scalar_from_json(v: &serde_json::Value) -> Result<Q> {
    match v {
        serde_json::Value::String(s) => parse_q(s),
        serde_json::Value::Number(n) => parse_q(&n.to_string()),
        other => Err(Error::Parse(format!("expected a number or \"p/q\" string, got {other}"))),
    }
}

fn coordinate_from_json(v: &serde_json::Value) -> Result<ComplexQ> {
    match v {
        serde_json::Value::Array(parts) if parts.len() == 2 => Ok(ComplexQ {
            re: scalar_from_json(&parts[0])?,
            im: scalar_from_json(&parts[1])?,
        }),
        serde_json::Value::Array(_) => Err(Error::Parse("complex coordinates are [re, im] pairs".into())),
        other => Ok(ComplexQ::real(scalar_from_json(other)?)),
    }
}

/// A point of ℂⁿ with rational coordinates.
pub type Point = Vec<ComplexQ>;

pub fn to_c64(point: &[ComplexQ]) -> Vec<Complex64> {
    point.iter().map(ComplexQ::to_c64).collect()
}

/// Real parts, if every coordinate is real.
pub fn real_parts(point: &[ComplexQ]) -> Option<Vec<Q>> {
    point.iter().map(|c| c.is_real().then(|| c.re.clone())).collect()
}

pub fn in_polydisc(point: &[ComplexQ]) -> bool {
    point.iter().all(|c| c.norm_sq() < Q::one())
}

/// True when two coordinates coincide (the point lies on the diagonal set).
pub fn on_diagonal(point: &[ComplexQ]) -> bool {
    point.iter().enumerate().any(|(i, a)| point[i + 1..].contains(a))
}

/// Parses a JSON list of points, e.g. `[["1/4","-1/3"],[0.5,[0.1,0.2]]]`.
pub fn parse_points(json: &str, n: usize) -> Result<Vec<Point>> {
    let value: serde_json::Value =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("points: {e}")))?;
    let serde_json::Value::Array(points) = value else {
        return Err(Error::Parse("points must be a JSON list".into()));
    };
    points
        .iter()
        .map(|p| {
            let serde_json::Value::Array(coords) = p else {
                return Err(Error::Parse(format!("point {p} is not a list")));
            };
            if coords.len() != n {
                return Err(Error::InvalidInput(format!("point {p} has {} coordinates, expected {n}", coords.len())));
            }
            let point: Point = coords.iter().map(coordinate_from_json).collect::<Result<_>>()?;
            if !in_polydisc(&point) {
                return Err(Error::Domain(format!("point {p} lies outside the polydisc")));
            }
            Ok(point)
        })
        .collect()
}

/// Deterministic sampler for off-diagonal rational points in the polydisc.
pub struct PointSampler {
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn rational_in_unit_interval(&mut self) -> Q {
        let den = self.rng.gen_range(2..=MAX_DENOMINATOR);
        let num = self.rng.gen_range(-(den - 1)..=den - 1);
        qf(num, den)
    }

    /// Real rational point with pairwise-distinct coordinates in (−1, 1).
    pub fn real_point(&mut self, n: usize) -> Point {
        loop {
            let p: Point = (0..n).map(|_| ComplexQ::real(self.rational_in_unit_interval())).collect();
            if !on_diagonal(&p) {
                return p;
            }
        }
    }

    /// Complex rational point with pairwise-distinct coordinates of modulus < 1.
    pub fn complex_point(&mut self, n: usize) -> Point {
        loop {
            let p: Point = (0..n)
                .map(|_| loop {
                    let c = ComplexQ {
                        re: self.rational_in_unit_interval(),
                        im: self.rational_in_unit_interval(),
                    };
                    if c.norm_sq() < Q::one() {
                        break c;
                    }
                })
                .collect();
            if !on_diagonal(&p) {
                return p;
            }
        }
    }

    /// Complex point scaled into the polydisc of radius `radius` (a float
    /// bound, used to keep finite-difference stencils well inside).
    pub fn complex_point_within(&mut self, n: usize, radius: &Q) -> Point {
        loop {
            let p = self.complex_point(n);
            if p.iter().all(|c| c.norm_sq() < radius * radius) {
                return p;
            }
        }
    }
}

/// `s(z) = (e_1(z), …, e_n(z))` in floating point.
pub fn symmetrize_c(z: &[Complex64]) -> Vec<Complex64> {
    // Coefficients of Π (1 + z_i t).
    let mut e = vec![Complex64::one()];
    for &zi in z {
        let mut next = e.clone();
        next.push(Complex64::zero());
        for k in 1..next.len() {
            next[k] += e[k - 1] * zi;
        }
        e = next;
    }
    e.remove(0);
    e
}

/// `s(z)` exactly, for real rational `z`.
pub fn symmetrize_q(z: &[Q]) -> Vec<Q> {
    let mut e = vec![Q::one()];
    for zi in z {
        let mut next = e.clone();
        next.push(Q::zero());
        for k in 1..next.len() {
            next[k] += &e[k - 1] * zi;
        }
        e = next;
    }
    e.remove(0);
    e
}

/// Roots of `tⁿ − u_1 tⁿ⁻¹ + u_2 tⁿ⁻² − …` by Durand–Kerner iteration, i.e.
/// a preimage of `u` under `s`, up to ordering.
pub fn unsymmetrize(u: &[Complex64]) -> Vec<Complex64> {
    let n = u.len();
    if n == 0 {
        return Vec::new();
    }
    // Monic coefficients, highest degree first: c_k = (−1)^k u_k.
    let coeffs: Vec<Complex64> = std::iter::once(Complex64::one())
        .chain(u.iter().enumerate().map(|(k, &uk)| if k % 2 == 0 { -uk } else { uk }))
        .collect();
    let eval = |t: Complex64| coeffs.iter().fold(Complex64::zero(), |acc, &c| acc * t + c);
    let bound = 1.0 + coeffs.iter().skip(1).map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * bound.min(2.0)).collect();
    for _ in 0..500 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(Complex64::one(), |acc, j| acc * (roots[i] - roots[j]));
            if denom.norm() == 0.0 {
                roots[i] += Complex64::new(1e-9, 1e-9);
                continue;
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

/// Picks `count` seeded complex points with moduli at most `radius`; used by
/// the curvature checks where stencils need headroom inside the polydisc.
pub fn seeded_complex_points(seed: u64, n: usize, count: usize, radius: &Q) -> Vec<Point> {
    let mut sampler = PointSampler::new(seed);
    (0..count).map(|_| sampler.complex_point_within(n, radius)).collect()
}

/// Positive rationals `num/den` with `num, den ≤ 32` and value in `(0, max]`.
pub fn seeded_weights(seed: u64, count: usize, max: i64) -> Vec<Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let den = rng.gen_range(1..=MAX_DENOMINATOR);
            let num = rng.gen_range(1..=MAX_DENOMINATOR);
            let w = qf(num, den);
            if w <= q(max) && w.is_positive() {
                break w;
            }
        })
        .collect()
}
