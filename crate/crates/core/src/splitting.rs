//! Splitting type of `T_Z` on a line `H_y`, through the invariant `d_{Z,y}`.
//!
//! `d_{Z,y}` is the least `d >= 1` such that some curve of degree `d + 1` in
//! the dual plane passes through every point of `Z` and has multiplicity at
//! least `d` at `y`. When `y` lies on no line through three points of `Z`, the
//! restriction of `T_Z` to `H_y` is `O(-d) + O(-(m - 1 - d))`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arrangement::{intersection_lattice, Arrangement, LatticePoint, ProjPoint};
use crate::error::{Error, Result};
use crate::field::{kernel_elems, Elem, Field, FieldError};
use crate::freeness::{Criterion, FreenessResult, Status};
use crate::invariants::{c2_of, exponent_candidates, ExponentPair};
use crate::par::{self, Exec};
use crate::poly::{monomial_count, monomials, TernaryForm};

/// How random points of the dual plane are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingParams {
    pub trials: usize,
    pub seed: u64,
    /// Coordinates are drawn from `[-bound, bound]`.
    pub bound: i64,
}

impl Default for SamplingParams {
    fn default() -> Self {
        SamplingParams {
            trials: 5,
            seed: 42,
            bound: 1000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DzResult {
    pub d: usize,
    /// Degree `d + 1`, through `Z`, multiplicity `>= d` at `y`.
    pub witness: TernaryForm,
    pub y: ProjPoint,
    /// Number of points tried (1 for a single point).
    pub trials: usize,
    /// `d_{Z,y}` at every sampled point, in sampling order.
    pub sample_ds: Vec<usize>,
    /// The value comes from random points and is only a lower bound for `d_Z`.
    pub probabilistic: bool,
}

impl DzResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "d": self.d,
            "y": self.y.to_text(),
            "trials": self.trials,
            "sample_ds": self.sample_ds,
            "probabilistic": self.probabilistic,
            "witness": self.witness.to_terms(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitType {
    pub a_y: usize,
    pub b_y: usize,
    pub y: ProjPoint,
}

fn check_point(a: &Arrangement, y: &ProjPoint) -> Result<()> {
    if y.field() != a.field() {
        return Err(FieldError::FieldMismatch.into());
    }
    if a.dual_points().contains(y) {
        return Err(Error::PointInZ);
    }
    Ok(())
}

/// `prod_i e_i (e_i - 1) ... (e_i - alpha_i + 1) * y^(e - alpha)`, the value at
/// `y` of the `alpha` derivative of the monomial `x^e`.
fn monomial_derivative_at(field: &Field, e: [usize; 3], alpha: [usize; 3], y: &[Elem; 3]) -> Elem {
    if (0..3).any(|i| alpha[i] > e[i]) {
        return field.zero();
    }
    let mut factor: i64 = 1;
    let mut value = field.one();
    for i in 0..3 {
        for j in 0..alpha[i] {
            factor *= (e[i] - j) as i64;
        }
        value = field.mul(&value, &field.pow(&y[i], (e[i] - alpha[i]) as u32));
    }
    field.mul(&value, &field.from_int(factor))
}

/// Every partial derivative of order `< d` vanishes at `y`, checked by
/// differentiating the form itself.
fn has_multiplicity(form: &TernaryForm, y: &ProjPoint, d: usize) -> bool {
    // Each derivative is reached along a nondecreasing sequence of variables,
    // so every multi-index appears once.
    let mut level = vec![(0usize, form.clone())];
    for order in 0..d {
        if level.iter().any(|(_, g)| !g.vanishes_at(y)) {
            return false;
        }
        if order + 1 < d {
            level = level
                .iter()
                .flat_map(|(last, g)| (*last..3).map(move |v| (v, g.partial(v))))
                .collect();
        }
    }
    true
}

/// Re-checks a `d_{Z,y}` witness without the linear system that produced it.
pub fn verify_witness(a: &Arrangement, y: &ProjPoint, d: usize, form: &TernaryForm) -> bool {
    form.degree() == d + 1
        && !form.is_zero()
        && a.dual_points().iter().all(|z| form.vanishes_at(z))
        && has_multiplicity(form, y, d)
}

pub fn dzy(a: &Arrangement, y: &ProjPoint) -> Result<DzResult> {
    check_point(a, y)?;
    let f = a.field();
    let max_d = a.m().saturating_sub(1).max(1);
    for d in 1..=max_d {
        let monos = monomials(d + 1);
        let mut rows: Vec<Vec<Elem>> = a
            .dual_points()
            .iter()
            .map(|z| {
                monos
                    .iter()
                    .map(|&e| monomial_derivative_at(f, e, [0, 0, 0], z.elems()))
                    .collect()
            })
            .collect();
        for alpha in monomials(d - 1) {
            rows.push(
                monos
                    .iter()
                    .map(|&e| monomial_derivative_at(f, e, alpha, y.elems()))
                    .collect(),
            );
        }
        let kernel = kernel_elems(f, rows, monomial_count(d + 1), Exec::Sequential);
        if let Some(v) = kernel.into_iter().next() {
            let witness = TernaryForm::from_coeffs(f, d + 1, v);
            if !verify_witness(a, y, d, &witness) {
                return Err(Error::InternalBoundExceeded(format!(
                    "d_Z,y witness of degree {} failed re-verification",
                    d + 1
                )));
            }
            return Ok(DzResult {
                d,
                witness,
                y: y.clone(),
                trials: 1,
                sample_ds: vec![d],
                probabilistic: false,
            });
        }
    }
    Err(Error::InternalBoundExceeded(format!("no d_Z,y witness with d <= {max_d}")))
}

/// `y` lies on a line through three or more points of `Z`, i.e. on the dual
/// line of a point of multiplicity at least 3.
pub fn on_trisecant(a: &Arrangement, y: &ProjPoint) -> bool {
    on_dual_line(&intersection_lattice(a), y, 3)
}

fn on_dual_line(lattice: &[LatticePoint], y: &ProjPoint, min_mult: usize) -> bool {
    lattice
        .iter()
        .any(|p| p.multiplicity() >= min_mult && p.point.incident(y))
}

pub fn restriction_splitting(a: &Arrangement, y: &ProjPoint) -> Result<SplitType> {
    check_point(a, y)?;
    if on_trisecant(a, y) {
        return Err(Error::TrisecantThroughY);
    }
    let d = dzy(a, y)?.d;
    Ok(SplitType {
        a_y: d,
        b_y: a.m() - 1 - d,
        y: y.clone(),
    })
}

/// Seeded integer points of the dual plane avoiding `Z` and every line
/// through two of its points.
pub fn sample_generic_points(a: &Arrangement, params: SamplingParams) -> Result<Vec<ProjPoint>> {
    if params.trials == 0 || params.bound < 1 {
        return Err(Error::BadParams("sampling needs trials >= 1 and bound >= 1".into()));
    }
    let lattice = intersection_lattice(a);
    let f = a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut points = Vec::with_capacity(params.trials);
    let mut rejected = 0;
    while points.len() < params.trials {
        if rejected > 100 * params.trials {
            return Err(Error::SamplingExhausted {
                wanted: params.trials,
                rejected,
            });
        }
        let c: [i64; 3] = std::array::from_fn(|_| rng.random_range(-params.bound..=params.bound));
        match ProjPoint::from_ints(f, c) {
            Some(y) if !a.dual_points().contains(&y) && !on_dual_line(&lattice, &y, 2) => {
                points.push(y)
            }
            _ => rejected += 1,
        }
    }
    Ok(points)
}

pub fn dz_generic(a: &Arrangement, params: SamplingParams) -> Result<DzResult> {
    dz_generic_with(a, params, Exec::default())
}

/// `d_{Z,y}` at `params.trials` sampled points; the result carries the
/// largest value and the first point attaining it.
pub fn dz_generic_with(a: &Arrangement, params: SamplingParams, exec: Exec) -> Result<DzResult> {
    let points = sample_generic_points(a, params)?;
    let results = par::map(exec, &points, |y| dzy(a, y));
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    let sample_ds: Vec<usize> = results.iter().map(|r| r.d).collect();
    let max = *sample_ds.iter().max().expect("trials >= 1");
    let best = results.into_iter().find(|r| r.d == max).expect("max is attained");
    Ok(DzResult {
        trials: params.trials,
        sample_ds,
        probabilistic: true,
        ..best
    })
}

pub fn res_to_line_decision(a: &Arrangement, params: SamplingParams) -> Result<FreenessResult> {
    let m = a.m();
    let c2 = c2_of(a).c2;
    let Some(p) = exponent_candidates(m, c2).into_iter().next() else {
        return Ok(FreenessResult::new(
            Status::NotFree,
            Criterion::ResToLine,
            format!("c2 = {c2} is not a*b with a + b = {}", m.saturating_sub(1)),
            json!({ "c2": c2 }),
        ));
    };
    let (k, r) = (p.a, p.r());
    if k == 0 {
        return Ok(FreenessResult::undecided(
            Criterion::ResToLine,
            "candidate exponents (0, m-1) are outside the range k >= 1",
        ));
    }
    let lattice = intersection_lattice(a);
    if let Some(x) = lattice.iter().find(|x| x.multiplicity() >= k + r + 2) {
        return Ok(FreenessResult::new(
            Status::NotFree,
            Criterion::ResToLine,
            format!(
                "a point of multiplicity {} >= k + r + 2 = {}",
                x.multiplicity(),
                k + r + 2
            ),
            json!({ "k": k, "r": r, "point": x.point.to_text(), "lines": x.incident }),
        ));
    }
    let dz = dz_generic(a, params)?;
    let d = dz.d;
    let witness = json!({ "k": k, "r": r, "c2": c2, "seed": params.seed, "dz": dz.to_json() });
    Ok(if d == k {
        FreenessResult::new(
            Status::Free(ExponentPair::new(k, k + r)),
            Criterion::ResToLine,
            format!("d_Z,y = {d} = k at a point off all trisecants"),
            witness,
        )
    } else if d < k {
        FreenessResult::new(
            Status::NotFree,
            Criterion::ResToLine,
            format!("d_Z,y = {d} < k = {k}: the restriction to H_y is not (k, k+r)"),
            witness,
        )
    } else {
        FreenessResult::new(
            Status::NotFree,
            Criterion::ResToLine,
            format!("sampled d_Z = {d} > k = {k}"),
            witness,
        )
        .probabilistic()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::catalog;

    fn cat(name: &str, params: &[i64]) -> Arrangement {
        catalog(name, params).unwrap()
    }

    fn pt(a: &Arrangement, c: [i64; 3]) -> ProjPoint {
        ProjPoint::from_ints(a.field(), c).unwrap()
    }

    #[test]
    fn triangle_and_pencil() {
        let t = cat("triangle", &[]);
        let r = dzy(&t, &pt(&t, [2, 3, 7])).unwrap();
        assert_eq!(r.d, 1);
        assert!(verify_witness(&t, &r.y, 1, &r.witness));
        let p = cat("pencil", &[5]);
        assert_eq!(dzy(&p, &pt(&p, [2, 3, 7])).unwrap().d, 1);
    }

    #[test]
    fn hesse_dz_is_four() {
        let h = cat("hesse12", &[]);
        let r = dz_generic(&h, SamplingParams::default()).unwrap();
        assert_eq!(r.d, 4);
        assert_eq!(r.sample_ds, vec![4; 5]);
        let s = restriction_splitting(&h, &r.y).unwrap();
        assert_eq!((s.a_y, s.b_y), (4, 7));
    }

    #[test]
    fn near_pencil_dz() {
        let np = cat("near_pencil", &[6]);
        let params = SamplingParams { trials: 5, seed: 3, bound: 1000 };
        assert_eq!(dz_generic(&np, params).unwrap().d, 1);
    }

    #[test]
    fn point_in_z_and_trisecants() {
        let dh = cat("dual_hesse9", &[]);
        let z = dh.lines()[0].clone();
        assert_eq!(dzy(&dh, &z).unwrap_err().kind(), "PointInZ");
        assert!(on_trisecant(&dh, &z));
        let samples = sample_generic_points(&dh, SamplingParams::default()).unwrap();
        assert!(samples.iter().all(|y| !on_trisecant(&dh, y)));
    }

    #[test]
    fn trisecant_is_rejected() {
        let b3 = cat("b3", &[]);
        // Lines x = 0, x + y = 0, x - y = 0 meet at [0:0:1]; its dual line is
        // c = 0 in the dual plane.
        let y = pt(&b3, [3, 5, 0]);
        assert!(on_trisecant(&b3, &y));
        assert_eq!(restriction_splitting(&b3, &y).unwrap_err().kind(), "TrisecantThroughY");
    }

    #[test]
    fn sampling_exhaustion() {
        let p = cat("pencil", &[4]);
        let params = SamplingParams { trials: 3, seed: 1, bound: 0 };
        assert_eq!(sample_generic_points(&p, params).unwrap_err().kind(), "BadParams");
        // With bound 1 every candidate lies on one of the many bisecants.
        let dense = cat("random_grid", &[13, 0, 1]);
        let params = SamplingParams { trials: 3, seed: 1, bound: 1 };
        assert_eq!(sample_generic_points(&dense, params).unwrap_err().kind(), "SamplingExhausted");
    }

    #[test]
    fn res_to_line_examples() {
        let h = res_to_line_decision(&cat("hesse12", &[]), SamplingParams::default()).unwrap();
        assert_eq!(h.status, Status::Free(ExponentPair::new(4, 7)));
        let g = res_to_line_decision(&cat("generic_random", &[5, 9]), SamplingParams::default()).unwrap();
        assert_eq!(g.status, Status::NotFree);
        let dh = res_to_line_decision(&cat("dual_hesse9", &[]), SamplingParams::default()).unwrap();
        assert_eq!(dh.status, Status::Free(ExponentPair::new(4, 4)));
    }

    #[test]
    fn multiplicity_check_counts_all_derivatives() {
        let q = Field::rationals();
        let x = TernaryForm::variable(&q, 0);
        let y = TernaryForm::variable(&q, 1);
        let z = TernaryForm::variable(&q, 2);
        let origin = ProjPoint::from_ints(&q, [0, 0, 1]).unwrap();
        // x^2 y z vanishes to order 3 at [0:0:1]; x^2 z^2 + y^3 z only to order 2.
        let g = x.mul(&x).mul(&y).mul(&z);
        assert!(has_multiplicity(&g, &origin, 3));
        assert!(!has_multiplicity(&g, &origin, 4));
        let h = x.mul(&x).mul(&z).mul(&z).add(&y.mul(&y).mul(&y).mul(&z));
        assert!(has_multiplicity(&h, &origin, 2));
        assert!(!has_multiplicity(&h, &origin, 3));
    }

    #[test]
    fn sequential_matches_parallel() {
        let a = cat("b3", &[]);
        let p = SamplingParams { trials: 4, seed: 8, bound: 50 };
        assert_eq!(
            dz_generic_with(&a, p, Exec::Sequential).unwrap(),
            dz_generic_with(&a, p, Exec::Parallel).unwrap()
        );
    }
}
