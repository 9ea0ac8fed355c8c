//! Brute-force freeness test.
//!
//! A degree-`t` section of `T_Z(t)` is a triple `(a0, a1, a2)` of degree-`t`
//! forms with `a0 f_x + a1 f_y + a2 f_z = 0`, where `f` is the product of the
//! line forms. The space of such triples is found by exact linear algebra.
//! If `a*` is the least degree with a nonzero section, the bundle splits iff
//! `a* (m - 1 - a*) = c2`: a minimal section vanishes on a scheme of length
//! `c2 - a* (m - 1 - a*)`, and a nowhere vanishing section splits off.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::field::{kernel_elems, rank_elems, Elem, Field};
use crate::freeness::{Criterion, FreenessResult, Status};
use crate::invariants::{c2_of, ExponentPair};
use crate::par::{self, Exec};
use crate::poly::{monomial_count, monomial_index, monomials, TernaryForm, Term};

/// Product of the line forms.
pub fn defining_poly(a: &Arrangement) -> TernaryForm {
    let f = a.field();
    a.lines()
        .iter()
        .fold(TernaryForm::constant(f, f.one()), |acc, l| acc.mul(&TernaryForm::linear(l)))
}

pub fn jacobian_partials(f: &TernaryForm) -> [TernaryForm; 3] {
    [f.partial(0), f.partial(1), f.partial(2)]
}

/// `h^0(T_Z(t))` for `t = 0..m-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims {
    pub dims: Vec<usize>,
}

impl GradedDims {
    /// The value predicted for a bundle `O(-a) + O(-b)`.
    pub fn split_prediction(m: usize, p: ExponentPair) -> GradedDims {
        let sections = |t: usize, e: usize| if t >= e { (t - e + 2) * (t - e + 1) / 2 } else { 0 };
        GradedDims {
            dims: (0..m).map(|t| sections(t, p.a) + sections(t, p.b)).collect(),
        }
    }
}

/// A nonzero section of `T_Z(t)` of minimal degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Syzygy {
    pub degree: usize,
    pub components: [TernaryForm; 3],
}

impl Syzygy {
    /// Re-checks `sum a_i f_i = 0` by polynomial multiplication.
    pub fn annihilates(&self, f: &TernaryForm) -> bool {
        let partials = jacobian_partials(f);
        let mut sum = TernaryForm::zero(f.field(), self.degree + partials[0].degree());
        for (a, p) in self.components.iter().zip(&partials) {
            sum = sum.add(&a.mul(p));
        }
        sum.is_zero() && self.components.iter().any(|c| !c.is_zero())
    }

    pub fn to_terms(&self) -> [Vec<Term>; 3] {
        [0, 1, 2].map(|i| self.components[i].to_terms())
    }
}

/// The linear system behind `h^0(T_Z(t))`, built once per arrangement.
pub struct SyzygySystem {
    field: Field,
    m: usize,
    partials: [TernaryForm; 3],
}

impl SyzygySystem {
    pub fn new(a: &Arrangement) -> SyzygySystem {
        SyzygySystem {
            field: a.field().clone(),
            m: a.m(),
            partials: jacobian_partials(&defining_poly(a)),
        }
    }

    /// Coefficient vectors of `mu * f_i` for every degree-`t` monomial `mu`,
    /// block `i` after block `i - 1`.
    fn products(&self, t: usize) -> Vec<Vec<Elem>> {
        let width = monomial_count(t + self.m - 1);
        let mut rows = Vec::with_capacity(3 * monomial_count(t));
        for p in &self.partials {
            let terms: Vec<_> = p.terms().collect();
            for mu in monomials(t) {
                let mut row = vec![self.field.zero(); width];
                for (e, c) in &terms {
                    row[monomial_index([e[0] + mu[0], e[1] + mu[1], e[2] + mu[2]])] = (*c).clone();
                }
                rows.push(row);
            }
        }
        rows
    }

    pub fn h0(&self, t: usize, exec: Exec) -> usize {
        let rows = self.products(t);
        let n = rows.len();
        n - rank_elems(&self.field, rows, monomial_count(t + self.m - 1), exec)
    }

    /// A basis of the degree-`t` sections.
    pub fn sections(&self, t: usize, exec: Exec) -> Vec<Syzygy> {
        let products = self.products(t);
        let height = monomial_count(t + self.m - 1);
        let mut rows = vec![Vec::with_capacity(products.len()); height];
        for col in &products {
            for (r, v) in col.iter().enumerate() {
                rows[r].push(v.clone());
            }
        }
        let block = monomial_count(t);
        kernel_elems(&self.field, rows, products.len(), exec)
            .into_iter()
            .map(|v| Syzygy {
                degree: t,
                components: [0, 1, 2].map(|i| {
                    TernaryForm::from_coeffs(&self.field, t, v[i * block..(i + 1) * block].to_vec())
                }),
            })
            .collect()
    }
}

pub fn h0_tz(a: &Arrangement, t: usize) -> usize {
    h0_tz_with(a, t, Exec::default())
}

pub fn h0_tz_with(a: &Arrangement, t: usize, exec: Exec) -> usize {
    SyzygySystem::new(a).h0(t, exec)
}

pub fn graded_dims(a: &Arrangement) -> GradedDims {
    graded_dims_with(a, Exec::default())
}

/// Degrees are independent and are spread over the pool along with the
/// row updates inside each elimination.
pub fn graded_dims_with(a: &Arrangement, exec: Exec) -> GradedDims {
    let sys = SyzygySystem::new(a);
    // Largest degrees first so the longest jobs start early.
    let mut dims = par::map_range(exec, 0..a.m(), |i| {
        let t = a.m() - 1 - i;
        sys.h0(t, exec)
    });
    dims.reverse();
    GradedDims { dims }
}

pub fn minimal_section_degree(a: &Arrangement) -> Result<usize> {
    minimal_section_degree_with(a, Exec::default())
}

pub fn minimal_section_degree_with(a: &Arrangement, exec: Exec) -> Result<usize> {
    let sys = SyzygySystem::new(a);
    (0..a.m()).find(|&t| sys.h0(t, exec) > 0).ok_or_else(|| no_section(a))
}

fn no_section(a: &Arrangement) -> Error {
    Error::InternalBoundExceeded(format!("no logarithmic derivation of degree < {}", a.m()))
}

/// `T_Z(k - 1)` has a nonzero section.
pub fn unstable_section(a: &Arrangement, k: usize) -> bool {
    k >= 1 && h0_tz(a, k - 1) > 0
}

/// The least-degree section together with the dimension in that degree.
pub fn minimal_syzygy(a: &Arrangement, exec: Exec) -> Result<(Syzygy, usize)> {
    let sys = SyzygySystem::new(a);
    let t = (0..a.m()).find(|&t| sys.h0(t, exec) > 0).ok_or_else(|| no_section(a))?;
    let basis = sys.sections(t, exec);
    let dim = basis.len();
    let first = basis.into_iter().next().ok_or_else(|| no_section(a))?;
    Ok((first, dim))
}

pub fn oracle_freeness(a: &Arrangement) -> Result<FreenessResult> {
    oracle_freeness_with(a, Exec::default())
}

pub fn oracle_freeness_with(a: &Arrangement, exec: Exec) -> Result<FreenessResult> {
    let m = a.m();
    let c2 = c2_of(a).c2;
    let (syz, dim) = minimal_syzygy(a, exec)?;
    let t = syz.degree;
    let split = (t * (m - 1 - t)) as i64;
    let witness = json!({
        "a_star": t,
        "c2": c2,
        "h0_at_a_star": dim,
        "zero_scheme_length": c2 - split,
        "syzygy": syz.to_terms(),
    });
    Ok(if split == c2 {
        let p = ExponentPair::new(t, m - 1 - t);
        FreenessResult::new(
            Status::Free(p),
            Criterion::Oracle,
            format!("minimal section in degree {t} has no zeros: a*(m-1-a*) = {c2} = c2"),
            witness,
        )
    } else {
        FreenessResult::new(
            Status::NotFree,
            Criterion::Oracle,
            format!("minimal section in degree {t} vanishes on a scheme of length {}", c2 - split),
            witness,
        )
    })
}
