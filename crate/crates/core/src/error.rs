use thiserror::Error;

use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("Jacobi identity fails on basis triple ({}, {}, {}) (1-based); residual [{}]", i + 1, j + 1, k + 1, join(residual))]
    JacobiViolation { i: usize, j: usize, k: usize, residual: Vec<Rational> },
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("not split over the rationals: {0}")]
    NonSplit(String),
    #[error("no regular element found within the search budget of {0} candidates")]
    SearchExhausted(usize),
    #[error("matrix {0} is not a derivation")]
    NotADerivation(usize),
    #[error("matrices {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("matrix {0} is not semisimple")]
    NotSemisimple(usize),
    #[error("module does not match the algebra: {0}")]
    ModuleMismatch(String),
    #[error("Lie derivative does not commute with the coboundary in degree {0}")]
    CommutationFailure(usize),
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("ideal has codimension {0}, expected 1")]
    WrongCodimension(usize),
    #[error("cochain complex too large: algebra dimension {0} exceeds 16")]
    TooLarge(usize),
    #[error("character does not vanish on the derived subalgebra")]
    NotACharacter,
    #[error("bracket tensor is not alternating at ({0}, {1})")]
    NotAlternating(usize, usize),
    #[error("extension identity [alpha(X), alpha(Y)] fails at ({0}, {1})")]
    Eq12Violation(usize, usize),
    #[error("extension cocycle identity fails at ({0}, {1}, {2})")]
    Eq13Violation(usize, usize, usize),
    #[error("direction has a nonzero tau component")]
    TauNonzero,
    #[error("direction is not elementary")]
    NotElementary,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogEntry(String),
    #[error("theorem check failed: {0}")]
    TheoremCheck(String),
    #[error("internal error: {0}")]
    Internal(String),
}

fn join(v: &[Rational]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
}
