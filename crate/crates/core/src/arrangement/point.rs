use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::{Elem, Field, Rational, Scalar, ScalarText};

/// A point of the projective plane (or of its dual), stored with its first
/// nonzero coordinate scaled to 1, so equality is coordinate-wise.
///
/// Lines are the same triples read in the dual plane: `[a:b:c]` is the line
/// `a x + b y + c z = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    field: Field,
    coords: [Elem; 3],
}

pub type ProjLine = ProjPoint;

impl ProjPoint {
    /// Canonicalises the triple; `None` for the zero vector.
    pub fn from_elems(field: &Field, coords: [Elem; 3]) -> Option<ProjPoint> {
        let lead = coords.iter().position(|c| !field.is_zero(c))?;
        let coords = if field.is_one(&coords[lead]) {
            coords
        } else {
            let inv = field.inv(&coords[lead]).expect("nonzero");
            coords.map(|c| field.mul(&c, &inv))
        };
        Some(ProjPoint {
            field: field.clone(),
            coords,
        })
    }

    pub fn new(coords: [Scalar; 3]) -> Option<ProjPoint> {
        let field = coords[0].field().clone();
        assert!(
            coords.iter().all(|c| c.field() == &field),
            "coordinates from different fields"
        );
        ProjPoint::from_elems(&field, coords.map(Scalar::into_elem))
    }

    pub fn from_ints(field: &Field, coords: [i64; 3]) -> Option<ProjPoint> {
        ProjPoint::from_elems(field, coords.map(|c| field.from_int(c)))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elems(&self) -> &[Elem; 3] {
        &self.coords
    }

    /// The representative whose rational coordinates (over the power basis)
    /// are coprime integers. Products of such forms keep coefficients small.
    pub fn integral_elems(&self) -> [Elem; 3] {
        let parts = || self.coords.iter().flat_map(|e| e.iter());
        let den = parts().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = parts().fold(BigInt::zero(), |acc, q| acc.gcd(&(q.numer() * (&den / q.denom()))));
        let scale = Rational::new(den, num);
        self.coords.clone().map(|e| self.field.scale(&e, &scale))
    }

    pub fn coords(&self) -> [Scalar; 3] {
        self.coords
            .clone()
            .map(|e| Scalar::from_elem(self.field.clone(), e))
    }

    /// Bilinear pairing `Σ pᵢ qᵢ`; zero iff the point lies on the line.
    pub fn dot_elem(&self, other: &ProjPoint) -> Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (a, b) in self.coords.iter().zip(&other.coords) {
            if !f.is_zero(a) && !f.is_zero(b) {
                acc = f.add(&acc, &f.mul(a, b));
            }
        }
        acc
    }

    pub fn incident(&self, other: &ProjPoint) -> bool {
        self.field.is_zero(&self.dot_elem(other))
    }

    /// The point where two lines meet, or the line through two points.
    /// `None` when the two are equal.
    pub fn join(&self, other: &ProjPoint) -> Option<ProjPoint> {
        let f = &self.field;
        let [a0, a1, a2] = &self.coords;
        let [b0, b1, b2] = &other.coords;
        let det = |x: &Elem, y: &Elem, u: &Elem, v: &Elem| f.sub(&f.mul(x, v), &f.mul(y, u));
        ProjPoint::from_elems(f, [det(a1, a2, b1, b2), det(a2, a0, b2, b0), det(a0, a1, b0, b1)])
    }

    /// Coordinates after the linear change `p ↦ p·M` (row vector times 3×3 matrix).
    pub fn transform(&self, m: &[[Elem; 3]; 3]) -> Option<ProjPoint> {
        let f = &self.field;
        let out = std::array::from_fn(|j| {
            self.coords
                .iter()
                .zip(m)
                .fold(f.zero(), |acc, (c, row)| f.add(&acc, &f.mul(c, &row[j])))
        });
        ProjPoint::from_elems(f, out)
    }

    pub fn to_text(&self) -> [ScalarText; 3] {
        self.coords
            .clone()
            .map(|e| ScalarText::encode(&self.field, &e))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| self.field.format_elem(c)).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

/// Exact 3×3 determinant of three triples.
pub fn det3(field: &Field, a: &[Elem; 3], b: &[Elem; 3], c: &[Elem; 3]) -> Elem {
    let f = field;
    let minor = |x: &Elem, y: &Elem, u: &Elem, v: &Elem| f.sub(&f.mul(x, v), &f.mul(y, u));
    let t0 = f.mul(&a[0], &minor(&b[1], &b[2], &c[1], &c[2]));
    let t1 = f.mul(&a[1], &minor(&b[0], &b[2], &c[0], &c[2]));
    let t2 = f.mul(&a[2], &minor(&b[0], &b[1], &c[0], &c[1]));
    f.add(&f.sub(&t0, &t1), &t2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_scaling() {
        let q = Field::rationals();
        let a = ProjPoint::from_ints(&q, [2, 4, -6]).unwrap();
        let b = ProjPoint::from_ints(&q, [-1, -2, 3]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "[1 : 2 : -3]");
        assert!(ProjPoint::from_ints(&q, [0, 0, 0]).is_none());
        let c = ProjPoint::from_ints(&q, [0, 3, 0]).unwrap();
        assert_eq!(c.to_string(), "[0 : 1 : 0]");
    }

    #[test]
    fn join_of_coordinate_lines() {
        let q = Field::rationals();
        let x = ProjPoint::from_ints(&q, [1, 0, 0]).unwrap();
        let y = ProjPoint::from_ints(&q, [0, 1, 0]).unwrap();
        let p = x.join(&y).unwrap();
        assert_eq!(p, ProjPoint::from_ints(&q, [0, 0, 1]).unwrap());
        assert!(p.incident(&x) && p.incident(&y));
        assert!(x.join(&x).is_none());
    }

    #[test]
    fn determinant_detects_concurrence() {
        let q = Field::rationals();
        let l = |v: [i64; 3]| v.map(|c| q.from_int(c));
        assert!(q.is_zero(&det3(&q, &l([1, 0, 0]), &l([1, -1, 0]), &l([1, -2, 0]))));
        assert!(!q.is_zero(&det3(&q, &l([1, 0, 0]), &l([0, 1, 0]), &l([0, 0, 1]))));
    }
}
