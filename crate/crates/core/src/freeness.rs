//! Verdicts and the certificates attached to them.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::invariants::ExponentPair;

/// Which procedure produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    /// All lines concurrent.
    Pencil,
    /// `c2` admits no exponent pair.
    Chern,
    Concurrent,
    Facile,
    UsaUngar,
    Deletion,
    ResToLine,
    Oracle,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::Pencil => "pencil",
            Criterion::Chern => "chern",
            Criterion::Concurrent => "concurrent",
            Criterion::Facile => "facile",
            Criterion::UsaUngar => "usa-ungar",
            Criterion::Deletion => "deletion",
            Criterion::ResToLine => "res-to-line",
            Criterion::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Status {
    Free(ExponentPair),
    NotFree,
    Undecided,
}

impl Status {
    pub fn is_decided(&self) -> bool {
        !matches!(self, Status::Undecided)
    }

    pub fn exponents(&self) -> Option<ExponentPair> {
        match self {
            Status::Free(p) => Some(*p),
            _ => None,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Free(p) => write!(f, "Free{p}"),
            Status::NotFree => write!(f, "NotFree"),
            Status::Undecided => write!(f, "Undecided"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub criterion: Criterion,
    /// One-line human-readable justification.
    pub detail: String,
    /// Points, degrees and dimensions that back the verdict.
    pub witness: Value,
    /// The verdict rests on random sampling being generic.
    pub probabilistic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreenessResult {
    #[serde(flatten)]
    pub status: Status,
    pub certificate: Certificate,
}

impl FreenessResult {
    pub fn new(status: Status, criterion: Criterion, detail: impl Into<String>, witness: Value) -> Self {
        FreenessResult {
            status,
            certificate: Certificate {
                criterion,
                detail: detail.into(),
                witness,
                probabilistic: false,
            },
        }
    }

    pub fn undecided(criterion: Criterion, detail: impl Into<String>) -> Self {
        FreenessResult::new(Status::Undecided, criterion, detail, Value::Null)
    }

    pub fn probabilistic(mut self) -> Self {
        self.certificate.probabilistic = true;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn status_serialises_with_tag() {
        let free = Status::Free(ExponentPair::new(7, 4));
        assert_eq!(serde_json::to_value(free).unwrap(), json!({"status": "free", "a": 4, "b": 7}));
        assert_eq!(serde_json::to_value(Status::NotFree).unwrap(), json!({"status": "not-free"}));
        let r = FreenessResult::new(free, Criterion::ResToLine, "d = 4", json!({"d": 4}));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "free");
        assert_eq!(v["certificate"]["criterion"], "res-to-line");
        assert_eq!(serde_json::from_value::<FreenessResult>(v).unwrap(), r);
    }

    #[test]
    fn display() {
        assert_eq!(Status::Free(ExponentPair::new(1, 1)).to_string(), "Free(1, 1)");
        assert_eq!(Criterion::UsaUngar.to_string(), "usa-ungar");
    }
}
