use std::collections::BTreeMap;

use super::*;
use crate::arrangement::{catalog, intersection_lattice, multiplicity_profile, ProjPoint};
use crate::field::{rational_from_int, Field};
use crate::oracle::oracle_freeness;

fn cat(name: &str, params: &[i64]) -> Arrangement {
    catalog(name, params).unwrap()
}

fn ints(lines: &[[i64; 3]]) -> Arrangement {
    Arrangement::from_int_triples(&Field::rationals(), lines).unwrap()
}

fn free(a: usize, b: usize) -> Status {
    Status::Free(ExponentPair::new(a, b))
}

/// Seven lines through the origin and four further lines, five of whose six
/// crossings sit on the seven.
fn hub_with_crossings() -> Arrangement {
    ints(&[
        [1, -1, 0],
        [2, -1, 0],
        [2, 1, 0],
        [1, -2, 0],
        [1, -7, 0],
        [1, 0, 0],
        [0, 1, 0],
        [1, 0, -1],
        [0, 1, -1],
        [1, 1, -3],
        [1, -2, -5],
    ])
}

#[test]
fn hub_example_profile() {
    let a = hub_with_crossings();
    assert_eq!(multiplicity_profile(&a).counts, BTreeMap::from([(2, 19), (3, 5), (7, 1)]));
    assert_eq!(c2_of(&a).c2, 25);
}

#[test]
fn concurrent_examples() {
    assert_eq!(concurrent_decision(&cat("hesse12", &[])).status(), free(4, 7));
    assert_eq!(concurrent_decision(&cat("dual_hesse9", &[])).status(), Status::Undecided);
    let hub = concurrent_decision(&hub_with_crossings());
    assert_eq!(hub.status(), Status::NotFree);
    assert!(hub.outcome.certificate.detail.contains("multiplicity 7"));
    assert_eq!(oracle_freeness(&hub_with_crossings()).unwrap().status, Status::NotFree);
    assert_eq!(concurrent_decision(&cat("generic_random", &[6, 1])).status(), Status::NotFree);
    assert_eq!(concurrent_decision(&cat("pencil", &[2])).status(), Status::Undecided);
}

#[test]
fn res_to_line_secant_clause() {
    let r = res_to_line_decision(&hub_with_crossings(), SamplingParams::default()).unwrap();
    assert_eq!(r.status, Status::NotFree);
    assert!(!r.certificate.probabilistic);
    assert!(r.certificate.detail.contains(">= k + r + 2"));
}

#[test]
fn facile_examples() {
    for m in 3..8 {
        let a = cat("near_pencil", &[m]);
        let hub = ProjPoint::from_ints(a.field(), [0, 0, 1]).unwrap();
        let r = facile_check(&a, &hub).unwrap();
        assert_eq!(r.status(), free(1, m as usize - 2));
    }
    let h = cat("hesse12", &[]);
    let lattice = intersection_lattice(&h);
    let four = lattice.iter().find(|p| p.multiplicity() == 4).unwrap();
    let r = facile_check(&h, &four.point).unwrap();
    assert_eq!(r.status(), Status::Undecided);
    assert!(r.outcome.certificate.detail.contains("(3, 8)"));
    let t = cat("triangle", &[]);
    let p = intersection_lattice(&t)[0].point.clone();
    assert_eq!(facile_check(&t, &p).unwrap().status(), free(1, 1));
    let off = ProjPoint::from_ints(t.field(), [1, 1, 1]).unwrap();
    assert_eq!(facile_check(&t, &off).unwrap_err().kind(), "PointNotInLattice");
}

#[test]
fn facile_refutes_unique_candidate() {
    // Braid arrangement: the three lines missing a triple point meet in
    // triple points, so it is free with exponents (2, 3).
    let a = cat("braid", &[]);
    assert_eq!(facile_decision(&a).status(), free(2, 3));
    // Near pencil with one extra line through no multiple point: m = 6,
    // a 4-fold point; c2 = 10 - 3 = 7? Computed, not assumed.
    let b = ints(&[[1, 0, 0], [1, -1, 0], [1, -2, 0], [1, -3, 0], [0, 0, 1], [1, 5, 7]]);
    let c2 = c2_of(&b).c2;
    let cands = exponent_candidates(b.m(), c2);
    let report = facile_decision(&b);
    let oracle = oracle_freeness(&b).unwrap().status;
    if report.status().is_decided() {
        assert_eq!(report.status(), oracle);
    }
    if cands == [ExponentPair::new(3, 2)] {
        assert_eq!(report.status(), Status::NotFree);
    }
}

#[test]
fn direction_counts() {
    let pts = |v: &[[i64; 2]]| -> Vec<[crate::field::Rational; 2]> {
        v.iter().map(|p| p.map(rational_from_int)).collect()
    };
    assert_eq!(direction_count(&pts(&[[0, 0], [1, 1], [2, 2]])), 1);
    assert_eq!(direction_count(&pts(&[[0, 0], [1, 0], [0, 1], [1, 1]])), 4);
    assert_eq!(direction_count(&pts(&[[0, 0], [3, 0], [0, 5]])), 3);
}

#[test]
fn ungar_rejects_extension_fields() {
    assert_eq!(ungar_decision(&cat("hesse12", &[])).unwrap_err().kind(), "FieldNotReal");
}

#[test]
fn deletion_examples() {
    let h = cat("hesse12", &[]);
    for i in [0, 5, 11] {
        let d = deletion_decision(&h, i, Some(&free(4, 7))).unwrap();
        assert_eq!(d.t, 6);
        assert_eq!(d.report.status(), free(4, 7));
        assert_eq!(d.deleted_prediction, Some(free(4, 6)));
        assert!(!d.inconsistent);
    }
    let t = cat("triangle", &[]);
    let d = deletion_decision(&t, 1, Some(&free(1, 1))).unwrap();
    assert_eq!((d.t, d.report.status(), d.deleted_prediction), (0, free(1, 1), Some(free(0, 1))));
    assert_eq!(deletion_decision(&t, 5, None).unwrap_err().kind(), "IndexOutOfRange");
}

#[test]
fn deleted_predictions() {
    assert_eq!(predict_deleted(ExponentPair::new(2, 3), 1), free(1, 3));
    assert_eq!(predict_deleted(ExponentPair::new(2, 3), 2), free(2, 2));
    assert_eq!(predict_deleted(ExponentPair::new(2, 3), 5), Status::NotFree);
    assert_eq!(predict_deleted(ExponentPair::new(0, 4), 3), free(0, 3));
}

#[test]
fn decide_examples() {
    let opts = DecideOptions::default();
    let h = decide(&cat("hesse12", &[]), &opts).unwrap();
    assert_eq!((h.status, h.decided_by), (free(4, 7), Criterion::Concurrent));
    assert!(h.disagreements.is_empty());
    let dh = decide(&cat("dual_hesse9", &[]), &opts).unwrap();
    assert_eq!(dh.status, free(4, 4));
    assert!(matches!(dh.decided_by, Criterion::ResToLine | Criterion::Deletion | Criterion::Oracle));
    let g = decide(&cat("generic_random", &[6, 4]), &opts).unwrap();
    assert_eq!((g.status, g.decided_by), (Status::NotFree, Criterion::Chern));
    let p = decide(&cat("pencil", &[6]), &opts).unwrap();
    assert_eq!((p.status, p.decided_by), (free(0, 5), Criterion::Pencil));
    assert_eq!(p.oracle().unwrap().status, free(0, 5));
}

#[test]
fn decide_without_verification_stops_early() {
    let opts = DecideOptions { verify: false, ..DecideOptions::default() };
    let h = decide(&cat("hesse12", &[]), &opts).unwrap();
    assert_eq!(h.status, free(4, 7));
    assert_eq!(h.reports.last().unwrap().criterion, Criterion::Concurrent);
    assert!(h.oracle().is_none());
}

#[test]
fn terao_examples() {
    let opts = DecideOptions::default();
    let h = cat("hesse12", &[]);
    let f = h.field().clone();
    let w = f.generator();
    let g = [
        [f.from_int(1), w.clone(), f.from_int(0)],
        [f.from_int(0), f.from_int(2), f.from_int(1)],
        [f.from_int(3), f.from_int(0), f.from_int(1)],
    ];
    let h2 = h.transform(&g).unwrap();
    let c = terao_compare(&h, &h2, &opts).unwrap();
    assert!(c.same_type && c.conforming);
    assert_eq!(c.freeness_b, free(4, 7));
    let c = terao_compare(&cat("triangle", &[]), &cat("pencil", &[3]), &opts).unwrap();
    assert!(!c.same_type && c.conforming);
}

#[test]
fn terao_flags_disagreement() {
    let a = cat("near_pencil", &[5]);
    let b = a.permute(&[4, 3, 2, 1, 0]).unwrap();
    let mut calls = 0;
    let c = terao_compare_with(&a, &b, |_| {
        calls += 1;
        Ok(if calls == 1 { free(1, 3) } else { Status::NotFree })
    })
    .unwrap();
    assert!(c.same_type);
    assert!(!c.conforming);
}
