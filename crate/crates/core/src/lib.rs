//! Exact harmonic analysis on the superspace `R^{m|2n}`.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactmath`]: rationals, gamma values at half-integers, exact linear algebra.
//! - [`superalgebra`]: superpolynomials with Grassmann signs, derivatives and a parser.
//! - [`operators`]: the super Laplacian, `R^2`, Euler operator and `osp(m|2n)` generators.
//! - [`harmonic`]: graded spaces, spherical harmonics, Fischer decomposition, projectors.
//! - [`sphereint`]: supersphere integration (Pizzetti series and a Berezin-form oracle).
//! - [`repr`]: invariant subspaces, irreducibility, dimensions and branching.
//! - [`verify`]: the invariant suites shared by the CLI and the test harness.

pub mod exactmath;
pub mod harmonic;
pub mod operators;
pub mod repr;
pub mod sphereint;
pub mod superalgebra;
pub mod verify;

pub use exactmath::{HalfInt, MathError, RatMatrix, Rational};
pub use harmonic::GradedSpace;
pub use operators::{LinearOp, Metric, Superspace};
pub use sphereint::ScaledScalar;
pub use superalgebra::{parse, Parity, SuperMonomial, SuperPolynomial, Var, VarSpec};
