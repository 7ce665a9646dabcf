//! Exact integer linear algebra: Smith normal form and finitely generated
//! abelian groups with their maps.

mod group;
pub mod json_int;
mod matrix;
mod snf;

pub use group::{
    coinvariants, is_prime, prime_to_ell_torsion, torsion_and_primary, FgAbelianGroup,
    GaloisModule, ModuleMap, NormalForm, Quotient, Subgroup,
};
pub use matrix::{int_vec, IntMatrix};
pub use snf::{snf, SnfDecomposition};
