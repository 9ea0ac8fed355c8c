//! Simple algebraic extensions ℚ(α) = ℚ[x]/(p) with deg p ≤ 4.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::{smallvec, SmallVec};

use super::rational::{format_rational, Rational};
use super::FieldError;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 4;

/// Coordinates of an element in the power basis `1, α, …, α^{d-1}`.
pub type Elem = SmallVec<[Rational; 2]>;

/// A monic irreducible minimal polynomial, constant term first.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    minpoly: Vec<Rational>,
}

/// Shared handle to a [`FieldDescriptor`]. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldDescriptor>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

/// Builds a field from a monic minimal polynomial after checking irreducibility.
pub fn make_field(minpoly: &[Rational]) -> Result<Field, FieldError> {
    if minpoly.len() < 2 {
        return Err(FieldError::UnsupportedDegree(0));
    }
    let degree = minpoly.len() - 1;
    if !minpoly[degree].is_one() {
        return Err(FieldError::NonMonic);
    }
    if degree > MAX_DEGREE {
        return Err(FieldError::UnsupportedDegree(degree));
    }
    if degree > 1 && is_reducible(minpoly)? {
        return Err(FieldError::Reducible);
    }
    Ok(Field(Arc::new(FieldDescriptor {
        minpoly: minpoly.to_vec(),
    })))
}

impl Field {
    /// The rational numbers, encoded by the minimal polynomial `x`.
    pub fn rationals() -> Field {
        Field(Arc::new(FieldDescriptor {
            minpoly: vec![Rational::zero(), Rational::one()],
        }))
    }

    pub fn degree(&self) -> usize {
        self.0.minpoly.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn minpoly(&self) -> &[Rational] {
        &self.0.minpoly
    }

    pub fn zero(&self) -> Elem {
        smallvec![Rational::zero(); self.degree()]
    }

    pub fn one(&self) -> Elem {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, q: Rational) -> Elem {
        let mut e = self.zero();
        e[0] = q;
        e
    }

    pub fn from_int(&self, n: i64) -> Elem {
        self.from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// The class of `x` modulo the minimal polynomial.
    pub fn generator(&self) -> Elem {
        if self.is_rational() {
            return self.from_rational(-self.0.minpoly[0].clone());
        }
        let mut e = self.zero();
        e[1] = Rational::one();
        e
    }

    /// Builds an element from power-basis coordinates, padding with zeros.
    pub fn elem_from_coeffs(&self, coeffs: &[Rational]) -> Result<Elem, FieldError> {
        if coeffs.len() > self.degree() {
            return Err(FieldError::BadScalar(format!(
                "{} coordinates for a degree-{} field",
                coeffs.len(),
                self.degree()
            )));
        }
        let mut e = self.zero();
        for (slot, c) in e.iter_mut().zip(coeffs) {
            *slot = c.clone();
        }
        Ok(e)
    }

    #[inline]
    pub fn is_zero(&self, a: &Elem) -> bool {
        a.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        a[0].is_one() && a[1..].iter().all(Zero::is_zero)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        a.iter().map(|x| -x).collect()
    }

    pub fn scale(&self, a: &Elem, q: &Rational) -> Elem {
        a.iter().map(|x| x * q).collect()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let d = self.degree();
        if d == 1 {
            return smallvec![&a[0] * &b[0]];
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }

    /// `a -= f * b`, the inner step of row elimination.
    #[inline]
    pub fn sub_mul_assign(&self, a: &mut Elem, f: &Elem, b: &Elem) {
        if self.degree() == 1 {
            a[0] -= &f[0] * &b[0];
        } else {
            let p = self.mul(f, b);
            for (x, y) in a.iter_mut().zip(p.iter()) {
                *x -= y;
            }
        }
    }

    pub fn pow(&self, a: &Elem, mut exp: u32) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        if self.degree() == 1 {
            return Ok(smallvec![a[0].recip()]);
        }
        // Extended Euclid in ℚ[x]: s·a + t·p = g with g a nonzero constant.
        let p: Vec<Rational> = self.0.minpoly.clone();
        let mut r0 = p;
        let mut r1 = trim(a.to_vec());
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant because the minimal polynomial is irreducible.
        let c = r1[0].recip();
        let s: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
        self.elem_from_coeffs(&s)
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// The element represented by a polynomial in `α` of any degree.
    pub(crate) fn reduce_poly(&self, prod: Vec<Rational>) -> Elem {
        if prod.len() < self.degree() {
            let mut e = self.zero();
            for (slot, c) in e.iter_mut().zip(prod) {
                *slot = c;
            }
            return e;
        }
        self.reduce(prod)
    }

    fn reduce(&self, mut prod: Vec<Rational>) -> Elem {
        let d = self.degree();
        let mp = &self.0.minpoly;
        for k in (d..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for i in 0..d {
                if !mp[i].is_zero() {
                    let t = &c * &mp[i];
                    prod[k - d + i] -= t;
                }
            }
        }
        prod.truncate(d);
        prod.into_iter().collect()
    }

    /// Human-readable form, e.g. `-1/2 + α`.
    pub fn format_elem(&self, a: &Elem) -> String {
        if self.is_rational() {
            return format_rational(&a[0]);
        }
        let mut terms = Vec::new();
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coef = format_rational(c);
            terms.push(match i {
                0 => coef,
                _ => {
                    let power = if i == 1 { "α".to_string() } else { format!("α^{i}") };
                    match coef.as_str() {
                        "1" => power,
                        "-1" => format!("-{power}"),
                        _ => format!("{coef}·{power}"),
                    }
                }
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "Q");
        }
        let coeffs: Vec<String> = self.0.minpoly.iter().map(format_rational).collect();
        write!(f, "Q[a]/({})", coeffs.join(","))
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x - y
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Division with remainder; `b` must be nonzero and trimmed.
fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead = b.last().expect("nonzero divisor").recip();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

/// Bound on the constant term of the integral model for the divisor search.
const MAX_CONSTANT_TERM: u64 = 1_000_000_000_000;

/// Deterministic test for degree 2..=4: integer roots and, for quartics, monic
/// quadratic factors of the integral model `D^n p(y/D)`.
fn is_reducible(minpoly: &[Rational]) -> Result<bool, FieldError> {
    let n = minpoly.len() - 1;
    let denom_lcm = minpoly
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    // g_i = p_i · D^{n-i}, monic with integer coefficients.
    let g: Vec<BigInt> = minpoly
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let scaled = c * Rational::from_integer(num_traits::pow(denom_lcm.clone(), n - i));
            scaled.to_integer()
        })
        .collect();
    if g[0].is_zero() {
        return Ok(true);
    }
    let c0 = g[0]
        .abs()
        .to_u64()
        .filter(|&c| c <= MAX_CONSTANT_TERM)
        .ok_or(FieldError::MinpolyTooLarge)?;
    let divisors = divisors(c0);
    let eval = |y: &BigInt| -> BigInt {
        g.iter().rev().fold(BigInt::zero(), |acc, c| acc * y + c)
    };
    for &d in &divisors {
        for y in [BigInt::from(d), -BigInt::from(d)] {
            if eval(&y).is_zero() {
                return Ok(true);
            }
        }
    }
    if n == 4 {
        // (y² + a y + b)(y² + c y + e) with b e = g0, a + c = g3,
        // a c + b + e = g2, a e + b c = g1.
        let (g0, g1, g2, g3) = (&g[0], &g[1], &g[2], &g[3]);
        for &d in &divisors {
            for b in [BigInt::from(d), -BigInt::from(d)] {
                let e = g0 / &b;
                let check = |a: &BigInt| {
                    let c = g3 - a;
                    &(a * &c) + &b + &e == *g2 && &(a * &e) + &(&b * &c) == *g1
                };
                if b != e {
                    let num = g1 - g3 * &b;
                    let den = &e - &b;
                    if (&num % &den).is_zero() && check(&(num / den)) {
                        return Ok(true);
                    }
                } else if *g1 == g3 * &b {
                    // a + c = g3, a c = g2 - 2b: integer roots of z² - g3 z + (g2 - 2b).
                    let disc = g3 * g3 - BigInt::from(4) * (g2 - BigInt::from(2) * &b);
                    if !disc.is_negative() {
                        let s = disc.sqrt();
                        if &s * &s == disc && (g3 + &s).is_even() {
                            return Ok(true);
                        }
                    }
                }
            }
        }
    }
    Ok(false)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{parse_rational, rational_from_int};

    fn poly(cs: &[i64]) -> Vec<Rational> {
        cs.iter().map(|&c| rational_from_int(c)).collect()
    }

    #[test]
    fn degree_one_is_rationals() {
        let f = make_field(&poly(&[0, 1])).unwrap();
        assert_eq!(f.degree(), 1);
        assert!(f.is_rational());
    }

    #[test]
    fn cyclotomic_cube_root_field() {
        let f = make_field(&poly(&[1, 1, 1])).unwrap();
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn rejects_reducible_and_non_monic() {
        assert!(matches!(make_field(&poly(&[-1, 0, 1])), Err(FieldError::Reducible)));
        assert!(matches!(make_field(&poly(&[1, 1, 2])), Err(FieldError::NonMonic)));
        assert!(matches!(
            make_field(&poly(&[1, 0, 0, 0, 0, 1])),
            Err(FieldError::UnsupportedDegree(5))
        ));
        assert!(matches!(make_field(&poly(&[0, 0, 1])), Err(FieldError::Reducible)));
    }

    #[test]
    fn rational_coefficient_minpoly() {
        // x² - 1/4 = (x - 1/2)(x + 1/2)
        let p = vec![parse_rational("-1/4").unwrap(), Rational::zero(), Rational::one()];
        assert!(matches!(make_field(&p), Err(FieldError::Reducible)));
        // x² - 1/2 is irreducible
        let p = vec![parse_rational("-1/2").unwrap(), Rational::zero(), Rational::one()];
        assert!(make_field(&p).is_ok());
    }

    #[test]
    fn quartic_quadratic_factor_search() {
        // x⁴ + 4 = (x² + 2x + 2)(x² - 2x + 2), no rational roots.
        assert!(matches!(make_field(&poly(&[4, 0, 0, 0, 1])), Err(FieldError::Reducible)));
        // x⁴ + 2x² + 9 = (x² + 2x + 3)(x² - 2x + 3)
        assert!(matches!(make_field(&poly(&[9, 0, 2, 0, 1])), Err(FieldError::Reducible)));
        // (x² + 1)² with equal constant terms b = e
        assert!(matches!(make_field(&poly(&[1, 0, 2, 0, 1])), Err(FieldError::Reducible)));
        // x⁴ + x³ + x² + x + 1 (5th cyclotomic) is irreducible.
        assert!(make_field(&poly(&[1, 1, 1, 1, 1])).is_ok());
        // x⁴ - 10x² + 1 (minimal polynomial of √2 + √3) is irreducible.
        assert!(make_field(&poly(&[1, 0, -10, 0, 1])).is_ok());
        // x⁴ - 2 is irreducible.
        assert!(make_field(&poly(&[-2, 0, 0, 0, 1])).is_ok());
    }

    #[test]
    fn cubic_checks() {
        assert!(make_field(&poly(&[-2, 0, 0, 1])).is_ok());
        // x³ - 6x² + 11x - 6 = (x-1)(x-2)(x-3)
        assert!(matches!(make_field(&poly(&[-6, 11, -6, 1])), Err(FieldError::Reducible)));
    }

    #[test]
    fn omega_arithmetic() {
        let f = make_field(&poly(&[1, 1, 1])).unwrap();
        let w = f.generator();
        let w2 = f.mul(&w, &w);
        assert_eq!(w2, f.elem_from_coeffs(&poly(&[-1, -1])).unwrap());
        assert!(f.is_one(&f.mul(&w, &w2)));
        assert_eq!(f.inv(&w).unwrap(), w2);
        assert_eq!(f.pow(&w, 3), f.one());
    }

    #[test]
    fn inverse_in_quartic() {
        let f = make_field(&poly(&[-2, 0, 0, 0, 1])).unwrap();
        let a = f.elem_from_coeffs(&poly(&[1, 2, 0, -3])).unwrap();
        let inv = f.inv(&a).unwrap();
        assert!(f.is_one(&f.mul(&a, &inv)));
        assert!(matches!(f.inv(&f.zero()), Err(FieldError::DivisionByZero)));
    }

    #[test]
    fn formats_elements() {
        let f = make_field(&poly(&[1, 1, 1])).unwrap();
        let e = f
            .elem_from_coeffs(&[parse_rational("-1/2").unwrap(), Rational::one()])
            .unwrap();
        assert_eq!(f.format_elem(&e), "-1/2 + α");
        assert_eq!(f.format_elem(&f.zero()), "0");
    }
}
