//! Exact evaluation of second-order linear recurrences
//! `G_n = p·G_{n-1} + q·G_{n-2}` at any integer index, and zero-residual
//! verification of identities relating them.

pub mod catalog;
pub mod cli;
pub mod dsl;
pub mod error;
pub mod grid;
pub mod kernel;
pub mod report;
pub mod scalar;
pub mod sequence;

pub use error::{Error, Result};
pub use grid::GridSpec;
pub use report::{Outcome, VerificationCase, VerificationReport};
pub use scalar::{binom, mat_pow, rat, Mat2, Rational};
pub use sequence::{make_sequence, Named, NamedRegistry, RecurrenceParams, Sequence, TermTable, Terms};
