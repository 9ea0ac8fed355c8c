use serde_json::json;

use super::{CriterionReport, Hypothesis};
use crate::arrangement::{intersection_lattice, Arrangement, LatticePoint, ProjPoint};
use crate::error::{Error, Result};
use crate::freeness::{Criterion, FreenessResult, Status};
use crate::invariants::{c2_of, exponent_candidates, ExponentPair};

/// For a point `x` of multiplicity `k + 1`: the arrangement is free with
/// exponents `(k, m - k - 1)` iff every multiple point of the lines missing
/// `x` lies on exactly one line through `x`.
pub fn facile_check(a: &Arrangement, x: &ProjPoint) -> Result<CriterionReport> {
    let lattice = intersection_lattice(a);
    let idx = lattice
        .iter()
        .position(|p| &p.point == x)
        .ok_or(Error::PointNotInLattice)?;
    Ok(check(a, &lattice, idx))
}

fn check(a: &Arrangement, lattice: &[LatticePoint], idx: usize) -> CriterionReport {
    let m = a.m();
    let x = &lattice[idx];
    let k = x.multiplicity() - 1;
    let pair = ExponentPair::new(k, m - k - 1);
    let through_x = |i: usize| x.contains_line(i);
    // A multiple point of A' with h lines of A' must carry exactly one more
    // line of A, necessarily through x.
    let bad: Vec<&LatticePoint> = lattice
        .iter()
        .filter(|p| {
            let rest = p.incident.iter().filter(|&&i| !through_x(i)).count();
            rest >= 2 && p.multiplicity() != rest + 1
        })
        .collect();
    let point = json!({ "point": x.point.to_text(), "multiplicity": k + 1, "lines": x.incident });
    let crit = Criterion::Facile;
    if bad.is_empty() {
        let cond = Hypothesis::new(
            "every multiple point off x gains exactly one line through x",
            true,
            point.clone(),
        );
        return CriterionReport::new(
            FreenessResult::new(
                Status::Free(pair),
                crit,
                format!("condition (ii) holds at a point of multiplicity {}", k + 1),
                point,
            ),
            vec![cond],
        );
    }
    let failing = &bad[0];
    let cond = Hypothesis::new(
        "every multiple point off x gains exactly one line through x",
        false,
        json!({
            "x": point,
            "counterexample": { "point": failing.point.to_text(), "lines": failing.incident },
        }),
    );
    let c2 = c2_of(a).c2;
    let cands = exponent_candidates(m, c2);
    if cands == [pair] {
        let unique = Hypothesis::new(
            format!("{pair} is the only exponent pair compatible with c2 = {c2}"),
            true,
            json!({ "c2": c2 }),
        );
        CriterionReport::new(
            FreenessResult::new(
                Status::NotFree,
                crit,
                format!("condition (ii) fails, refuting the only candidate {pair}"),
                cond.witness.clone(),
            ),
            vec![unique, Hypothesis { holds: true, statement: format!("not free with exponents {pair}"), ..cond }],
        )
    } else {
        CriterionReport::new(
            FreenessResult::undecided(crit, format!("condition (ii) fails; only exponents {pair} are refuted")),
            vec![cond],
        )
    }
}

/// Runs [`facile_check`] at every multiple point, highest multiplicity first.
/// Free as soon as one point satisfies the condition.
pub fn facile_decision(a: &Arrangement) -> CriterionReport {
    let lattice = intersection_lattice(a);
    let mut order: Vec<usize> = (0..lattice.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(lattice[i].multiplicity()));
    let mut refuted = None;
    for &i in &order {
        let report = check(a, &lattice, i);
        match report.outcome.status {
            Status::Free(_) => return report,
            Status::NotFree if refuted.is_none() => refuted = Some(report),
            _ => {}
        }
    }
    refuted.unwrap_or_else(|| {
        CriterionReport::new(
            FreenessResult::undecided(Criterion::Facile, "no multiple point satisfies condition (ii)"),
            vec![Hypothesis::new(
                "some point satisfies condition (ii)",
                false,
                json!({ "points_checked": lattice.len() }),
            )],
        )
    })
}
