use thiserror::Error;

use crate::field::FieldError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("DuplicateLine: lines {first} and {second} coincide")]
    DuplicateLine { first: usize, second: usize },
    #[error("ZeroVector: line {index} has all coordinates zero")]
    ZeroVector { index: usize },
    #[error("BadScalar: {0}")]
    BadScalar(String),
    #[error("BadField: {0}")]
    BadField(String),
    #[error("BadDimension: line {index} has {len} coordinates; only the plane (3 coordinates) is supported")]
    BadDimension { index: usize, len: usize },
    #[error("EmptyArrangement: an arrangement needs at least one line")]
    EmptyArrangement,
    #[error("BadDocument: {0}")]
    BadDocument(String),
    #[error("UnknownName: no catalog entry named `{0}`")]
    UnknownName(String),
    #[error("BadParams: {0}")]
    BadParams(String),
    #[error("IndexOutOfRange: index {index} but the arrangement has {m} lines")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("PointInZ: the point is one of the dual points of the arrangement")]
    PointInZ,
    #[error("TrisecantThroughY: the point lies on a line through three or more dual points")]
    TrisecantThroughY,
    #[error("SamplingExhausted: {rejected} sample points rejected before {wanted} usable ones were found")]
    SamplingExhausted { wanted: usize, rejected: usize },
    #[error("InternalBoundExceeded: {0}")]
    InternalBoundExceeded(String),
    #[error("FieldNotReal: this operation needs an arrangement over Q")]
    FieldNotReal,
    #[error("PointNotInLattice: the point is not an intersection point of the arrangement")]
    PointNotInLattice,
    #[error("Io: {0}")]
    Io(String),
}

impl Error {
    /// Stable short name used in diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Field(FieldError::NonMonic) => "NonMonic",
            Error::Field(FieldError::Reducible) => "Reducible",
            Error::Field(FieldError::UnsupportedDegree(_)) => "UnsupportedDegree",
            Error::Field(FieldError::MinpolyTooLarge) => "MinpolyTooLarge",
            Error::Field(FieldError::DivisionByZero) => "DivisionByZero",
            Error::Field(FieldError::FieldMismatch) => "FieldMismatch",
            Error::Field(FieldError::BadScalar(_)) => "BadScalar",
            Error::Field(FieldError::Shape(_)) => "Shape",
            Error::DuplicateLine { .. } => "DuplicateLine",
            Error::ZeroVector { .. } => "ZeroVector",
            Error::BadScalar(_) => "BadScalar",
            Error::BadField(_) => "BadField",
            Error::BadDimension { .. } => "BadDimension",
            Error::EmptyArrangement => "EmptyArrangement",
            Error::BadDocument(_) => "BadDocument",
            Error::UnknownName(_) => "UnknownName",
            Error::BadParams(_) => "BadParams",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::PointInZ => "PointInZ",
            Error::TrisecantThroughY => "TrisecantThroughY",
            Error::SamplingExhausted { .. } => "SamplingExhausted",
            Error::InternalBoundExceeded(_) => "InternalBoundExceeded",
            Error::FieldNotReal => "FieldNotReal",
            Error::PointNotInLattice => "PointNotInLattice",
            Error::Io(_) => "Io",
        }
    }
}
