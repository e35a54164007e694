//! Exact cohomology of solvable Lie algebras with coefficients in characters.

pub mod catalog;
pub mod cohomology;
pub mod corpus;
pub mod deformations;
pub mod error;
pub mod filiform;
pub mod gamma;
pub mod liealg;
pub mod linalg;
pub mod module;
pub mod rational;
pub mod rootsys;
pub mod weights;

pub use catalog::Built;
pub use cohomology::{CochainComplex, Cohomology, CohomologySpace};
pub use corpus::{CorpusSummary, MemberReport};
pub use deformations::{DeformationDirection, ExtensionData, NilshadowResult};
pub use error::{Error, Result};
pub use filiform::{FiliformDiagram, SnGamma};
pub use gamma::GammaReport;
pub use module::{Character, LieModule};
pub use weights::WeightMultiset;
pub use liealg::{LieAlgebra, Subspace};
pub use linalg::{RatMatrix, RatPolynomial, SparseMatrix};
pub use rational::Rational;
pub use rootsys::{ChiPolytope, KostantReport, RootSystem, RootType, WeylElement};
