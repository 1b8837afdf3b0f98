//! Exact linear algebra over Q and Z.

mod matrix;
mod rational;
mod saturate;
mod smith;
mod sparse;
mod subspace;

use thiserror::Error;

pub use matrix::{IntMatrix, QMatrix};
pub use rational::{abs, factorial, from_bigint, int, is_integer, parse_rational, pow, rat, sign_power, Rational};
pub use saturate::{saturate_vectors, subspace_saturate, ClosureMap};
pub use smith::{alternating_normal_form, integer_kernel, smith_normal_form, AlternatingForm, SmithForm};
pub use sparse::SparseVec;
pub use subspace::{rref, SubspaceBasis};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("cannot parse `{0}` as a rational number")]
    ParseRational(String),
    #[error("matrix rows have different lengths")]
    RaggedRows,
    #[error("form is not alternating")]
    NotAlternating,
}
