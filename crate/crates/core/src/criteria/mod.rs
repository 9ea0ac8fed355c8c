//! Freeness criteria and the procedure that combines them.

mod concurrent;
mod deletion;
mod facile;
mod terao;
mod ungar;

pub use concurrent::concurrent_decision;
pub use deletion::{deletion_all, deletion_decision, predict_deleted, DeletionReport};
pub use facile::{facile_check, facile_decision};
pub use terao::{terao_compare, terao_compare_with, TeraoComparison};
pub use ungar::{direction_count, ungar_decision};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arrangement::{is_pencil, Arrangement};
use crate::error::Result;
use crate::freeness::{Criterion, FreenessResult, Status};
use crate::invariants::{c2_of, exponent_candidates, ExponentPair};
use crate::oracle::oracle_freeness_with;
use crate::par::Exec;
use crate::splitting::{res_to_line_decision, SamplingParams};

/// A precondition a criterion relied on, or found missing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub statement: String,
    pub holds: bool,
    pub witness: Value,
}

impl Hypothesis {
    pub fn new(statement: impl Into<String>, holds: bool, witness: Value) -> Hypothesis {
        Hypothesis {
            statement: statement.into(),
            holds,
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub outcome: FreenessResult,
    pub hypotheses: Vec<Hypothesis>,
}

impl CriterionReport {
    pub fn new(outcome: FreenessResult, hypotheses: Vec<Hypothesis>) -> CriterionReport {
        let report = CriterionReport {
            criterion: outcome.certificate.criterion,
            outcome,
            hypotheses,
        };
        debug_assert!(
            !report.outcome.status.is_decided() || report.hypotheses.iter().all(|h| h.holds),
            "decided with a failed hypothesis: {report:?}"
        );
        report
    }

    /// Free arrangements have `c2 = a b` with `a + b = m - 1`.
    pub(crate) fn chern_obstruction(criterion: Criterion, m: usize, c2: i64) -> CriterionReport {
        let statement = format!("c2 = {c2} is not a*b with a + b = {}", m.saturating_sub(1));
        CriterionReport::new(
            FreenessResult::new(Status::NotFree, criterion, statement.clone(), json!({ "c2": c2, "m": m })),
            vec![Hypothesis::new(statement, true, json!({ "c2": c2 }))],
        )
    }

    pub fn status(&self) -> Status {
        self.outcome.status
    }
}

pub fn pencil_decision(a: &Arrangement) -> CriterionReport {
    let m = a.m();
    if is_pencil(a) {
        let p = ExponentPair::new(0, m - 1);
        CriterionReport::new(
            FreenessResult::new(Status::Free(p), Criterion::Pencil, "all lines pass through one point", json!({ "m": m })),
            vec![Hypothesis::new("all lines concurrent", true, Value::Null)],
        )
    } else {
        CriterionReport::new(
            FreenessResult::undecided(Criterion::Pencil, "not a pencil"),
            vec![Hypothesis::new("all lines concurrent", false, Value::Null)],
        )
    }
}

pub fn chern_decision(a: &Arrangement) -> CriterionReport {
    let m = a.m();
    let c2 = c2_of(a).c2;
    let cands = exponent_candidates(m, c2);
    match cands.first() {
        None => CriterionReport::chern_obstruction(Criterion::Chern, m, c2),
        Some(p) => CriterionReport::new(
            FreenessResult::undecided(Criterion::Chern, format!("c2 = {c2} allows exponents {p}")),
            vec![Hypothesis::new(
                "c2 admits no exponent pair",
                false,
                json!({ "c2": c2, "candidate": p }),
            )],
        ),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    /// Run every criterion and the oracle, and compare them. Without it the
    /// first decisive criterion is final and the oracle is not consulted.
    pub verify: bool,
    pub sampling: SamplingParams,
    pub exec: Exec,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            verify: true,
            sampling: SamplingParams::default(),
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disagreement {
    pub criterion: Criterion,
    pub claimed: Status,
    pub oracle: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub status: Status,
    /// The first criterion in pipeline order that reached a verdict.
    pub decided_by: Criterion,
    pub result: FreenessResult,
    /// Every criterion consulted, in pipeline order, the oracle last.
    pub reports: Vec<CriterionReport>,
    /// Lines whose `t` falls in the interval excluded by `c2`.
    pub deletion_inconsistencies: Vec<usize>,
    /// Criteria whose verdict differs from the oracle. Always empty unless a
    /// criterion or the oracle is wrong.
    pub disagreements: Vec<Disagreement>,
}

impl Decision {
    pub fn report(&self, c: Criterion) -> Option<&CriterionReport> {
        self.reports.iter().find(|r| r.criterion == c)
    }

    pub fn oracle(&self) -> Option<&FreenessResult> {
        self.report(Criterion::Oracle).map(|r| &r.outcome)
    }
}

fn failed(criterion: Criterion, err: &crate::error::Error) -> CriterionReport {
    CriterionReport::new(
        FreenessResult::undecided(criterion, format!("not applicable: {err}")),
        vec![Hypothesis::new("criterion applicable", false, json!({ "error": err.kind() }))],
    )
}

/// Pencil, Chern obstruction, concurrent point, facile point, deletion over
/// all lines, Ungar (over Q), restriction to a generic line and finally the
/// oracle.
pub fn decide(a: &Arrangement, opts: &DecideOptions) -> Result<Decision> {
    type Step<'a> = Box<dyn Fn() -> Result<CriterionReport> + 'a>;
    let (deletion, inconsistencies) = deletion_all(a);
    let steps: Vec<(Criterion, Step)> = vec![
        (Criterion::Pencil, Box::new(|| Ok(pencil_decision(a)))),
        (Criterion::Chern, Box::new(|| Ok(chern_decision(a)))),
        (Criterion::Concurrent, Box::new(|| Ok(concurrent_decision(a)))),
        (Criterion::Facile, Box::new(|| Ok(facile_decision(a)))),
        (Criterion::Deletion, Box::new(|| Ok(deletion.clone()))),
        (Criterion::UsaUngar, Box::new(|| ungar_decision(a))),
        (Criterion::ResToLine, Box::new(|| {
            res_to_line_decision(a, opts.sampling).map(|outcome| CriterionReport::new(outcome, Vec::new()))
        })),
    ];
    let mut reports = Vec::new();
    for (criterion, step) in &steps {
        let report = step().unwrap_or_else(|e| failed(*criterion, &e));
        let decisive = report.status().is_decided();
        reports.push(report);
        if decisive && !opts.verify {
            break;
        }
    }
    let first = reports.iter().find(|r| r.status().is_decided()).cloned();
    if !opts.verify {
        let (status, decided_by, result) = match first {
            Some(r) => (r.status(), r.criterion, r.outcome),
            None => (
                Status::Undecided,
                Criterion::Oracle,
                FreenessResult::undecided(Criterion::Oracle, "no criterion applies and verification is off"),
            ),
        };
        return Ok(Decision {
            status,
            decided_by,
            result,
            reports,
            deletion_inconsistencies: inconsistencies,
            disagreements: Vec::new(),
        });
    }
    let oracle = oracle_freeness_with(a, opts.exec)?;
    let disagreements: Vec<Disagreement> = reports
        .iter()
        .filter(|r| r.status().is_decided() && r.status() != oracle.status)
        .map(|r| Disagreement {
            criterion: r.criterion,
            claimed: r.status(),
            oracle: oracle.status,
        })
        .collect();
    reports.push(CriterionReport::new(oracle.clone(), Vec::new()));
    let (decided_by, result) = match first {
        Some(r) if disagreements.is_empty() => (r.criterion, r.outcome),
        _ => (Criterion::Oracle, oracle.clone()),
    };
    Ok(Decision {
        status: oracle.status,
        decided_by,
        result,
        reports,
        deletion_inconsistencies: inconsistencies,
        disagreements,
    })
}

#[cfg(test)]
mod tests;
