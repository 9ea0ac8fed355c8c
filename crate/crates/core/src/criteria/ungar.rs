use std::collections::BTreeSet;

use serde_json::json;

use super::{CriterionReport, Hypothesis};
use crate::arrangement::{intersection_lattice, Arrangement, LatticePoint};
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::freeness::{Criterion, FreenessResult, Status};
use crate::invariants::{c2_of, exponent_candidates, ExponentPair};

/// Number of distinct directions among the segments joining pairs of
/// points; vertical segments count as one direction.
pub fn direction_count(points: &[[Rational; 2]]) -> usize {
    let mut slopes: BTreeSet<Option<Rational>> = BTreeSet::new();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let dx = &q[0] - &p[0];
            let dy = &q[1] - &p[1];
            if dx == Rational::from_integer(0.into()) {
                if dy != Rational::from_integer(0.into()) {
                    slopes.insert(None);
                }
            } else {
                slopes.insert(Some(dy / dx));
            }
        }
    }
    slopes.len()
}

/// Real arrangements with a point `x0` of multiplicity `k - 1` and two
/// multiple points `x1`, `x2` such that `x0, x1, x2` lie on a line outside
/// the arrangement: free with exponents `(k, k + r)` iff `c2 = k(k + r)`.
///
/// Only multiple points are considered for `x0`, so `k >= 3`. The lines
/// missing `x0` must not all pass through one point (their dual points must
/// span the plane for the direction bound behind the theorem).
pub fn ungar_decision(a: &Arrangement) -> Result<CriterionReport> {
    if !a.field().is_rational() {
        return Err(Error::FieldNotReal);
    }
    let m = a.m();
    let crit = Criterion::UsaUngar;
    let c2 = c2_of(a).c2;
    let Some(p) = exponent_candidates(m, c2).into_iter().next() else {
        return Ok(CriterionReport::chern_obstruction(crit, m, c2));
    };
    let (k, r) = (p.a, p.r());
    let cand = Hypothesis::new(format!("c2 = {c2} = k(k+r), (k, r) = ({k}, {r})"), true, json!({ "k": k, "r": r }));
    if k < 3 {
        return Ok(CriterionReport::new(
            FreenessResult::undecided(crit, format!("k = {k}: no multiple point can have multiplicity k - 1")),
            vec![cand, Hypothesis::new("k >= 3", false, json!({ "k": k }))],
        ));
    }
    let lattice = intersection_lattice(a);
    for x0 in lattice.iter().filter(|x| x.multiplicity() == k - 1) {
        if rest_concurrent(a, &lattice, x0) {
            continue;
        }
        if let Some((x1, x2, h)) = aligned_pair(a, &lattice, x0) {
            let witness = json!({
                "x0": { "point": x0.point.to_text(), "lines": x0.incident },
                "x1": { "point": x1.point.to_text(), "lines": x1.incident },
                "x2": { "point": x2.point.to_text(), "lines": x2.incident },
                "line": h,
            });
            return Ok(CriterionReport::new(
                FreenessResult::new(
                    Status::Free(ExponentPair::new(k, k + r)),
                    crit,
                    format!("a point of multiplicity {} aligned with two multiple points off the arrangement", k - 1),
                    witness.clone(),
                ),
                vec![
                    cand,
                    Hypothesis::new("x0 of multiplicity k - 1 with x1, x2 on a line not in A", true, witness),
                ],
            ));
        }
    }
    Ok(CriterionReport::new(
        FreenessResult::undecided(crit, "no configuration x0, x1, x2 found"),
        vec![cand, Hypothesis::new("x0 of multiplicity k - 1 with x1, x2 on a line not in A", false, json!(null))],
    ))
}

/// The lines not through `x0` all meet in one point.
fn rest_concurrent(a: &Arrangement, lattice: &[LatticePoint], x0: &LatticePoint) -> bool {
    let rest: Vec<usize> = (0..a.m()).filter(|&i| !x0.contains_line(i)).collect();
    rest.len() < 2 || lattice.iter().any(|p| rest.iter().all(|&i| p.contains_line(i)))
}

fn aligned_pair<'a>(
    a: &Arrangement,
    lattice: &'a [LatticePoint],
    x0: &LatticePoint,
) -> Option<(&'a LatticePoint, &'a LatticePoint, [crate::field::ScalarText; 3])> {
    for (i, x1) in lattice.iter().enumerate() {
        if x1.point == x0.point {
            continue;
        }
        let h = x0.point.join(&x1.point).expect("distinct points");
        if a.lines().contains(&h) {
            continue;
        }
        if let Some(x2) = lattice[i + 1..]
            .iter()
            .find(|x2| x2.point != x0.point && h.incident(&x2.point))
        {
            return Some((x1, x2, h.to_text()));
        }
    }
    None
}
