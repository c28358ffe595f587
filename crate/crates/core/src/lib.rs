//! Exact computational toolkit for induction of interior algebras and Hopf
//! module algebras over finite-dimensional Hopf algebras.

pub mod error;
pub mod linalg;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use report::Report;
pub use scalar::{Field, Scalar};
pub mod algebra;
pub mod group;
pub mod hopf;
pub mod modules;
pub mod frobenius;
pub mod interior;
pub mod smash;
pub mod duality;
