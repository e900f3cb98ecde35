//! Exact multivariate polynomials over ℚ and the symmetric-function toolbox
//! built on them.

mod permanent;
mod poly;
mod ring;
mod symmetric;

pub use permanent::{permanent, permanent_naive};
pub use poly::{PolyJson, SparsePoly, TermJson};
pub use ring::{det, Ring};
pub use symmetric::{
    alternant, conjugate_partition, elementary, from_elementary_basis, monomial_sym, orbit, pochhammer,
    pochhammer_multi, schur_bialternant, schur_giambelli, to_elementary_basis, vandermonde, MultiplicityProfile,
};
pub(crate) use symmetric::decreasing_exponents;
