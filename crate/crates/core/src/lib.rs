//! Exact computations on simple normal crossing configurations: dual
//! complexes, their homology, norm maps between extension levels, and the
//! reciprocity-kernel prediction for `Y = (Y₀×0) ∪ (Y₀×∞) ∪ (D×ℙ¹)`.

pub mod complex;
pub mod document;
pub mod error;
pub mod fixtures;
pub mod galois;
pub mod homology;
pub mod linalg;
pub mod random;
pub mod reciprocity;

pub use error::{Error, Result};
