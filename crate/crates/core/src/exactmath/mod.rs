//! Exact rational arithmetic, Γ bookkeeping at half-integers and exact linear algebra.

pub mod gamma;
pub mod matrix;
pub mod modp;
pub mod rational;
pub mod sparse;

pub use gamma::{gamma, gamma_ratio, gen_binomial, GammaValue, HalfInt};
pub use matrix::{contains, subspace_intersect, subspace_sum, RatMatrix};
pub use rational::{binomial, factorial, Rational};
pub use sparse::{sparse_nullspace, sparse_nullspace_keyed, sparse_rank, SparseEchelon, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MathError {
    #[error("gamma ratio needs an integer difference, got {top} - {bottom}")]
    NonIntegerGammaRatio { top: HalfInt, bottom: HalfInt },
    #[error("uncancelled pole of gamma at {0}")]
    GammaPole(HalfInt),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
}
