//! Harmonic analysis on the superspace `R^{m|2n}` in exact arithmetic.

pub mod diffops;
pub mod error;
pub mod harmonic;
pub mod integration;
pub mod linalg;
pub mod modules;
pub mod report;
pub mod suites;
pub mod superalgebra;

pub use error::{Error, Result};
pub use harmonic::{HarmonicPiece, PolySubspace};
pub use integration::ScaledRational;
pub use linalg::{SparseVec, Subspace};
pub use report::{Cell, Outcome, Record, Report, Status};
pub use superalgebra::{Parity, Rational, SuperMonomial, SuperPolynomial, Superspace, Var};
