//! Rational Dunkl theory for finite reflection groups.

pub mod asymptotics;
pub mod dunkl_calculus;
pub mod error;
pub mod hermite;
pub mod intertwiner;
pub mod kernel;
pub mod linalg;
pub mod polynomial;
pub mod quadrature;
pub mod random;
pub mod report;
pub mod root_system;
pub mod scalar;
pub mod special;
pub mod transform_heat;
pub mod verify;

pub use error::{DunklError, Result};
pub use scalar::{Rational, Scalar};
