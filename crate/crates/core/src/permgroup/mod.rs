//! The symmetric group 𝔖ₙ: permutations, partitions, characters and
//! irreducible matrix representations.

mod characters;
mod irrep;
mod partition;
mod permutation;

pub use characters::{character_table, CharacterTable};
pub use irrep::{
    irrep_orthogonal, irrep_seminormal, verify_orthogonality, Form, Irrep, OrthogonalityReport, FLOAT_TOL, MAX_IRREP_ENTRIES,
};
pub use partition::{standard_tableaux, Partition, Tableau};
pub use permutation::{inversion_counts, Permutation};
