//! Finite-dimensional Z2-graded nonassociative algebras over the rationals,
//! with exact checkers for Poisson superalgebra identities expressed through
//! a single fused product.

pub mod classify;
pub mod cli;
pub mod error;
pub mod format;
pub mod graded;
pub mod identities;
pub mod poly;
pub mod powers;
pub mod presentation;
pub mod scalar;
pub mod symbolic;

pub use error::{Error, Result};
pub use graded::{koszul_sign, Degree, Element, GradedBasis, Homogeneity, SuperAlgebra};
pub use poly::Poly;
pub use scalar::{Ring, Scalar};
