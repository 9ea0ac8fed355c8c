//! Exact decision procedures for freeness of line arrangements in the
//! projective plane.
//!
//! An arrangement is a list of lines `a x + b y + c z = 0` over ℚ or a small
//! number field. The crate computes its intersection lattice and numerical
//! invariants, evaluates a collection of combinatorial and geometric freeness
//! criteria, and checks each of them against a brute-force computation of the
//! module of logarithmic derivations.

pub mod arrangement;
pub mod criteria;
pub mod error;
pub mod field;
pub mod freeness;
pub mod invariants;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod splitting;

pub use arrangement::Arrangement;
pub use error::{Error, Result};
pub use freeness::{Certificate, Criterion, FreenessResult, Status};
pub use invariants::ExponentPair;
