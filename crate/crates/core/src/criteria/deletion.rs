use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{CriterionReport, Hypothesis};
use crate::arrangement::{intersection_lattice, Arrangement};
use crate::error::Result;
use crate::freeness::{Criterion, FreenessResult, Status};
use crate::invariants::{c2_of, exponent_candidates, t_from_lattice, ExponentPair};

/// What the number `t` of line `index` says about the arrangement and, when
/// its exponents are known, about the arrangement without that line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeletionReport {
    pub index: usize,
    pub t: usize,
    /// Verdict on the arrangement itself from `c2` and `t` alone.
    pub report: CriterionReport,
    /// Predicted status of the arrangement with line `index` removed, given
    /// that the arrangement is known to be free.
    pub deleted_prediction: Option<Status>,
    /// `t` lies strictly between `k - 1` and `k + r - 1`, which cannot happen
    /// when `c2 = k(k + r)`.
    pub inconsistent: bool,
}

/// `known` is the status of the arrangement if already established.
pub fn deletion_decision(a: &Arrangement, index: usize, known: Option<&Status>) -> Result<DeletionReport> {
    a.line(index)?;
    let lattice = intersection_lattice(a);
    let t = t_from_lattice(&lattice, index);
    let c2 = c2_of(a).c2;
    let (report, inconsistent) = from_t(a.m(), c2, index, t);
    let deleted_prediction = match known {
        Some(Status::Free(p)) => Some(predict_deleted(*p, t)),
        _ => None,
    };
    Ok(DeletionReport {
        index,
        t,
        report,
        deleted_prediction,
        inconsistent,
    })
}

/// For `A` free with exponents `(k, k + r)`: `t = k - 1` gives `(k - 1, k + r)`,
/// `t = k + r - 1` gives `(k, k + r - 1)`, and `t >= k + r` makes the deleted
/// arrangement not free. Any other `t` is impossible and is reported as
/// undecided.
pub fn predict_deleted(p: ExponentPair, t: usize) -> Status {
    let (k, b) = (p.a, p.b);
    if k >= 1 && t == k - 1 {
        Status::Free(ExponentPair::new(k - 1, b))
    } else if b >= 1 && t == b - 1 {
        Status::Free(ExponentPair::new(k, b - 1))
    } else if t >= b {
        Status::NotFree
    } else {
        Status::Undecided
    }
}

fn from_t(m: usize, c2: i64, index: usize, t: usize) -> (CriterionReport, bool) {
    let crit = Criterion::Deletion;
    let line = json!({ "line": index, "t": t });
    let Some(p) = exponent_candidates(m, c2).into_iter().next() else {
        return (
            CriterionReport::new(
                FreenessResult::undecided(crit, "c2 admits no exponents"),
                vec![Hypothesis::new("c2 = k(k+r)", false, json!({ "c2": c2 }))],
            ),
            false,
        );
    };
    let (k, r) = (p.a as i64, p.r() as i64);
    let cand = Hypothesis::new(format!("c2 = {c2} = k(k+r), (k, r) = ({k}, {r})"), true, json!({ "k": k, "r": r }));
    if k < 1 {
        return (
            CriterionReport::new(
                FreenessResult::undecided(crit, "candidate exponents have k = 0"),
                vec![cand, Hypothesis::new("k >= 1", false, json!({ "k": k }))],
            ),
            false,
        );
    }
    let ti = t as i64;
    if ti == k - 1 || ti == k + r - 1 {
        let hyp = Hypothesis::new(format!("t = {t} is k - 1 or k + r - 1"), true, line.clone());
        return (
            CriterionReport::new(
                FreenessResult::new(Status::Free(p), crit, format!("line {index} has t = {t}"), line),
                vec![cand, hyp],
            ),
            false,
        );
    }
    if ti < k - 1 {
        let hyp = Hypothesis::new(format!("t = {t} < k - 1 = {}", k - 1), true, line.clone());
        return (
            CriterionReport::new(
                FreenessResult::new(Status::NotFree, crit, format!("line {index} has t = {t} < k - 1"), line),
                vec![cand, hyp],
            ),
            false,
        );
    }
    let inside = ti < k + r - 1;
    let detail = if inside {
        format!("line {index} has t = {t} strictly inside ({}, {}), which is impossible", k - 1, k + r - 1)
    } else {
        format!("line {index} has t = {t} >= k + r")
    };
    (
        CriterionReport::new(
            FreenessResult::undecided(crit, detail),
            vec![cand, Hypothesis::new("t = k - 1, t = k + r - 1 or t < k - 1", false, line)],
        ),
        inside,
    )
}

/// Every line's `t` checked against `c2`; the first decisive line wins.
/// Lines with `t` inside the forbidden interval are listed in the report.
pub fn deletion_all(a: &Arrangement) -> (CriterionReport, Vec<usize>) {
    let lattice = intersection_lattice(a);
    let c2 = c2_of(a).c2;
    let mut undecided = None;
    let mut inconsistent = Vec::new();
    let mut decided = None;
    for i in 0..a.m() {
        let (report, bad) = from_t(a.m(), c2, i, t_from_lattice(&lattice, i));
        if bad {
            inconsistent.push(i);
        }
        if report.outcome.status.is_decided() {
            decided.get_or_insert(report);
        } else {
            undecided.get_or_insert(report);
        }
    }
    let report = decided.or(undecided).unwrap_or_else(|| {
        CriterionReport::new(FreenessResult::undecided(Criterion::Deletion, "no lines"), Vec::new())
    });
    (report, inconsistent)
}
