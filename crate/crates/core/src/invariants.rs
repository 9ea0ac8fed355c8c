//! Numerical invariants read off the intersection lattice.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangement::{
    intersection_lattice, is_pencil, Arrangement, LatticePoint, MultiplicityProfile,
};
use crate::error::Result;

fn choose2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// First and second Chern classes of the logarithmic tangent sheaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernData {
    pub m: usize,
    pub c1: i64,
    pub c2: i64,
    /// All lines pass through one point. The count formula still gives the
    /// right value (0) in that case.
    pub pencil: bool,
}

/// Exponents `a <= b` of a split bundle `O(-a) + O(-b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExponentPair {
    pub a: usize,
    pub b: usize,
}

impl ExponentPair {
    /// Orders the two exponents.
    pub fn new(a: usize, b: usize) -> ExponentPair {
        ExponentPair { a: a.min(b), b: a.max(b) }
    }

    /// The gap `r = b - a`.
    pub fn r(&self) -> usize {
        self.b - self.a
    }

    pub fn product(&self) -> i64 {
        (self.a * self.b) as i64
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

pub fn c2_of(a: &Arrangement) -> ChernData {
    c2_from_profile(&MultiplicityProfile::from_lattice(a.m(), &intersection_lattice(a)), is_pencil(a))
}

pub fn c2_from_profile(profile: &MultiplicityProfile, pencil: bool) -> ChernData {
    let m = profile.m as i64;
    let high: i64 = profile
        .counts
        .iter()
        .filter(|(&h, _)| h >= 3)
        .map(|(&h, &b)| choose2(h as i64 - 1) * b as i64)
        .sum();
    ChernData {
        m: profile.m,
        c1: 1 - m,
        c2: choose2(m - 1) - high,
        pencil,
    }
}

/// Sum of `mult - 2` over the lattice points on line `i`.
pub fn t_of_line(a: &Arrangement, i: usize) -> Result<usize> {
    a.line(i)?;
    Ok(t_from_lattice(&intersection_lattice(a), i))
}

pub fn t_from_lattice(lattice: &[LatticePoint], i: usize) -> usize {
    lattice
        .iter()
        .filter(|p| p.contains_line(i))
        .map(|p| p.multiplicity() - 2)
        .sum()
}

/// `t` for every line, in line order.
pub fn t_values(a: &Arrangement) -> Vec<usize> {
    let lattice = intersection_lattice(a);
    (0..a.m()).map(|i| t_from_lattice(&lattice, i)).collect()
}

/// Largest number of lines through one point, i.e. the largest number of
/// collinear dual points. A single line counts as a 1-secant.
pub fn secant_max(a: &Arrangement) -> usize {
    intersection_lattice(a)
        .iter()
        .map(LatticePoint::multiplicity)
        .max()
        .unwrap_or(a.m().min(1))
}

pub fn has_secant_at_least(a: &Arrangement, h: usize) -> bool {
    secant_max(a) >= h
}

/// Pairs `a <= b` with `a + b = m - 1` and `a b = c2`.
pub fn exponent_candidates(m: usize, c2: i64) -> Vec<ExponentPair> {
    if m == 0 {
        return Vec::new();
    }
    let s = m - 1;
    (0..=s / 2)
        .map(|a| ExponentPair::new(a, s - a))
        .filter(|p| p.product() == c2)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HirzebruchCheck {
    /// No point has multiplicity `m`, `m - 1` or `m - 2`.
    pub applicable: bool,
    /// `applicable` and the inequality holds.
    pub holds: bool,
    /// `4 b_2 + 3 b_3`
    pub lhs_times_4: i64,
    /// `4 m + 4 sum_{h >= 5} (2h - 9) b_h`
    pub rhs_times_4: i64,
}

/// The inequality `b_2 + 3/4 b_3 >= m + sum_{h>=5} (2h - 9) b_h`, scaled by 4.
pub fn hirzebruch_check(profile: &MultiplicityProfile) -> HirzebruchCheck {
    let m = profile.m;
    let applicable = (m.saturating_sub(2)..=m).all(|h| profile.b(h) == 0);
    let lhs = 4 * profile.b(2) as i64 + 3 * profile.b(3) as i64;
    let rhs = 4 * m as i64
        + 4 * profile
            .counts
            .iter()
            .filter(|(&h, _)| h >= 5)
            .map(|(&h, &b)| (2 * h as i64 - 9) * b as i64)
            .sum::<i64>();
    HirzebruchCheck {
        applicable,
        holds: applicable && lhs >= rhs,
        lhs_times_4: lhs,
        rhs_times_4: rhs,
    }
}

/// The number of double points a free arrangement with exponents
/// `(k, k + r)` and only double and triple points would need to have.
/// A negative value rules such an arrangement out.
pub fn classify_no_foursecant_b2(k: i64, r: i64) -> i64 {
    -k * k - k * r - r * r + 4 * k + 2 * r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{catalog, multiplicity_profile};

    fn cat(name: &str, params: &[i64]) -> Arrangement {
        catalog(name, params).unwrap()
    }

    #[test]
    fn chern_classes_of_catalog() {
        assert_eq!(c2_of(&cat("hesse12", &[])).c2, 28);
        assert_eq!(c2_of(&cat("dual_hesse9", &[])).c2, 16);
        let t = c2_of(&cat("triangle", &[]));
        assert_eq!((t.c1, t.c2, t.pencil), (-2, 1, false));
        let p = c2_of(&cat("pencil", &[5]));
        assert_eq!((p.c2, p.pencil), (0, true));
    }

    #[test]
    fn t_values_of_catalog() {
        assert!(t_values(&cat("hesse12", &[])).iter().all(|&t| t == 6));
        assert_eq!(t_values(&cat("triangle", &[])), vec![0, 0, 0]);
        let np = cat("near_pencil", &[5]);
        assert_eq!(t_of_line(&np, 4).unwrap(), 0);
        assert_eq!(t_of_line(&np, 0).unwrap(), 2);
        assert_eq!(t_of_line(&np, 5).unwrap_err().kind(), "IndexOutOfRange");
    }

    #[test]
    fn t_counts_points_on_the_line() {
        for a in [cat("hesse12", &[]), cat("b3", &[]), cat("random_grid", &[9, 4, 1])] {
            let lattice = intersection_lattice(&a);
            for i in 0..a.m() {
                let on = lattice.iter().filter(|p| p.contains_line(i)).count();
                assert_eq!(t_from_lattice(&lattice, i), a.m() - 1 - on);
            }
        }
    }

    #[test]
    fn secants() {
        assert_eq!(secant_max(&cat("hesse12", &[])), 4);
        assert_eq!(secant_max(&cat("pencil", &[4])), 4);
        assert_eq!(secant_max(&cat("generic_random", &[6, 1])), 2);
        assert!(has_secant_at_least(&cat("b3", &[]), 4));
        assert!(!has_secant_at_least(&cat("b3", &[]), 5));
    }

    #[test]
    fn candidates() {
        assert_eq!(exponent_candidates(12, 28), vec![ExponentPair::new(4, 7)]);
        assert!(exponent_candidates(4, 3).is_empty());
        assert_eq!(exponent_candidates(9, 16), vec![ExponentPair::new(4, 4)]);
        assert!(exponent_candidates(5, 6).is_empty());
        assert_eq!(exponent_candidates(6, 0), vec![ExponentPair::new(0, 5)]);
    }

    #[test]
    fn hirzebruch_examples() {
        let dh = hirzebruch_check(&multiplicity_profile(&cat("dual_hesse9", &[])));
        assert_eq!((dh.applicable, dh.holds, dh.lhs_times_4, dh.rhs_times_4), (true, true, 36, 36));
        let h = hirzebruch_check(&multiplicity_profile(&cat("hesse12", &[])));
        assert_eq!((h.applicable, h.holds, h.lhs_times_4, h.rhs_times_4), (true, true, 48, 48));
        assert!(!hirzebruch_check(&multiplicity_profile(&cat("pencil", &[5]))).applicable);
    }

    #[test]
    fn classify_closed_form_matches_counts() {
        for k in 1..=10i64 {
            for r in 0..=10 - k {
                let m = 2 * k + r + 1;
                let b3 = choose2(m - 1) - k * (k + r);
                let b2 = choose2(m) - 3 * b3;
                assert_eq!(classify_no_foursecant_b2(k, r), b2, "k={k} r={r}");
            }
        }
        assert_eq!(classify_no_foursecant_b2(4, 0), 0);
        assert_eq!(classify_no_foursecant_b2(1, 1), 3);
        assert_eq!(classify_no_foursecant_b2(4, 1), -3);
    }

    #[test]
    fn classify_nonnegative_set() {
        let mut found = Vec::new();
        for k in 1..=10i64 {
            for r in 0..=10 - k {
                if classify_no_foursecant_b2(k, r) >= 0 {
                    found.push((k, r));
                }
            }
        }
        // The allowed list plus (1,2) and (2,2), whose counts are
        // nonnegative but which no arrangement realises.
        assert_eq!(
            found,
            vec![(1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (4, 0)]
        );
    }
}
