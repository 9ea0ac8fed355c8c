//! Exact arithmetic over ℚ and simple extensions ℚ(α), plus dense linear algebra.

mod matrix;
mod modular;
mod number_field;
mod rational;
mod scalar;

pub use matrix::{kernel_basis, rank, Matrix};
pub(crate) use matrix::{kernel_elems, rank_elems};
pub use number_field::{make_field, Elem, Field, FieldDescriptor, MAX_DEGREE};
pub use rational::{format_rational, parse_rational, rational_from_int, Rational};
pub use scalar::{scalar_arith, ArithOp, CoordText, Scalar, ScalarText};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("minimal polynomial is not monic")]
    NonMonic,
    #[error("minimal polynomial is reducible over Q")]
    Reducible,
    #[error("unsupported extension degree {0} (supported: 1..=4)")]
    UnsupportedDegree(usize),
    #[error("minimal polynomial coefficients too large for the irreducibility check")]
    MinpolyTooLarge,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("bad scalar: {0}")]
    BadScalar(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}
