use serde_json::json;

use super::{CriterionReport, Hypothesis};
use crate::arrangement::{intersection_lattice, Arrangement};
use crate::freeness::{Criterion, FreenessResult, Status};
use crate::invariants::{c2_of, exponent_candidates, ExponentPair};

/// With `c2 = k(k + r)` and `m = 2k + r + 1`, a point of multiplicity
/// `h` in `[k, k + r + 1]` makes the arrangement free with exponents
/// `(k, k + r)`; a point with `h >= k + r + 2` rules freeness out.
pub fn concurrent_decision(a: &Arrangement) -> CriterionReport {
    let m = a.m();
    let crit = Criterion::Concurrent;
    if m < 3 {
        return CriterionReport::new(
            FreenessResult::undecided(crit, "needs at least 3 lines"),
            vec![Hypothesis::new("m >= 3", false, json!({ "m": m }))],
        );
    }
    let c2 = c2_of(a).c2;
    let Some(p) = exponent_candidates(m, c2).into_iter().next() else {
        return CriterionReport::chern_obstruction(crit, m, c2);
    };
    let (k, r) = (p.a, p.r());
    let cand = Hypothesis::new(
        format!("c2 = {c2} = k(k+r) with (k, r) = ({k}, {r})"),
        true,
        json!({ "k": k, "r": r }),
    );
    if k == 0 {
        return CriterionReport::new(
            FreenessResult::undecided(crit, "candidate exponents have k = 0"),
            vec![cand, Hypothesis::new("k >= 1", false, json!({ "k": k }))],
        );
    }
    let lattice = intersection_lattice(a);
    if let Some(x) = lattice
        .iter()
        .find(|x| (k..=k + r + 1).contains(&x.multiplicity()))
    {
        let h = x.multiplicity();
        let witness = json!({ "point": x.point.to_text(), "multiplicity": h, "lines": x.incident });
        return CriterionReport::new(
            FreenessResult::new(
                Status::Free(ExponentPair::new(k, k + r)),
                crit,
                format!("c2 = k(k+r) and a point of multiplicity {h} in [{k}, {}]", k + r + 1),
                witness.clone(),
            ),
            vec![
                cand,
                Hypothesis::new(format!("a point of multiplicity in [{k}, {}]", k + r + 1), true, witness),
            ],
        );
    }
    if let Some(x) = lattice.iter().find(|x| x.multiplicity() >= k + r + 2) {
        let h = x.multiplicity();
        let witness = json!({ "point": x.point.to_text(), "multiplicity": h, "lines": x.incident });
        return CriterionReport::new(
            FreenessResult::new(
                Status::NotFree,
                crit,
                format!("a point of multiplicity {h} >= k + r + 2 = {}", k + r + 2),
                witness.clone(),
            ),
            vec![
                cand,
                Hypothesis::new(format!("a point of multiplicity >= {}", k + r + 2), true, witness),
            ],
        );
    }
    let max = lattice.iter().map(|x| x.multiplicity()).max().unwrap_or(1);
    CriterionReport::new(
        FreenessResult::undecided(crit, format!("largest multiplicity {max} is below k = {k}")),
        vec![
            cand,
            Hypothesis::new(
                format!("a point of multiplicity in [{k}, {}]", k + r + 1),
                false,
                json!({ "max_multiplicity": max }),
            ),
        ],
    )
}
