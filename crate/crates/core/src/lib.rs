//! Exact isotypic decomposition of weighted Bergman modules on the polydisc.
//!
//! The symmetric group 𝔖ₙ acts on the weighted Bergman space `A^(λ)(𝔻ⁿ)` by
//! permuting coordinates. This crate computes, in exact rational arithmetic
//! wherever possible, the pieces needed to study the resulting decomposition:
//!
//! - [`permgroup`]: permutations, partitions, characters and Young's
//!   seminormal/orthogonal irreducible representations.
//! - [`symfunc`]: sparse rational polynomials, elementary/monomial/Schur
//!   symmetric polynomials, permanents and the elementary-basis conversion.
//! - [`kernels`]: truncated reproducing-kernel series on the polydisc and on
//!   the symmetrized polydisc 𝔾ₙ.
//! - [`hilbmod`]: degree-truncated Hilbert modules, isotypic projections,
//!   multiplication operators and joint-kernel rank counts.
//! - [`geometry`]: curvature of the rank-one isotypes via Wirtinger finite
//!   differences.
//! - [`suite`]: the verification checks driven by the `symmod` CLI.

pub mod config;
pub mod error;
pub mod geometry;
pub mod hilbmod;
pub mod kernels;
pub mod linalg;
pub mod permgroup;
pub mod points;
pub mod rational;
pub mod suite;
pub mod symfunc;

pub use error::{Error, Result};
pub use rational::Q;
