//! Exact linear algebra over the rationals.

pub mod jordan;
pub mod matrix;
pub mod poly;
pub mod sparse;

pub use jordan::{
    char_poly, generalized_eigenspace, is_semisimple, nilpotent_part, rational_eigenvalues,
    semisimple_part, Spectrum,
};
pub use matrix::{add_scaled, dot, is_zero_vector, RatMatrix, Rref};
pub use poly::RatPolynomial;
pub use sparse::{EchelonBasis, SparseMatrix, SparseVec};
