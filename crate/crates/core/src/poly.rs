//! Homogeneous polynomials in three variables.
//!
//! Coefficients are stored densely in graded lexicographic order with
//! `x > y > z`: for degree `d` the monomials run `x^d, x^{d-1}y, x^{d-1}z,
//! x^{d-2}y^2, ...`. The position of `x^i y^j z^k` is `(j+k)(j+k+1)/2 + k`,
//! which does not depend on `d`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangement::ProjPoint;
use crate::field::{Elem, Field, ScalarText};

/// Number of monomials of degree `d` in three variables.
pub fn monomial_count(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

/// Index of the monomial with exponents `e` in its degree block.
pub fn monomial_index(e: [usize; 3]) -> usize {
    let s = e[1] + e[2];
    s * (s + 1) / 2 + e[2]
}

/// Exponent triples of degree `d`, in storage order.
pub fn monomials(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(monomial_count(d));
    for s in 0..=d {
        for k in 0..=s {
            out.push([d - s, s - k, k]);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryForm {
    field: Field,
    degree: usize,
    coeffs: Vec<Elem>,
}

/// One nonzero term, as it appears in reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub exponents: [usize; 3],
    pub coeff: ScalarText,
}

impl TernaryForm {
    pub fn zero(field: &Field, degree: usize) -> TernaryForm {
        TernaryForm {
            field: field.clone(),
            degree,
            coeffs: vec![field.zero(); monomial_count(degree)],
        }
    }

    pub fn constant(field: &Field, c: Elem) -> TernaryForm {
        TernaryForm {
            field: field.clone(),
            degree: 0,
            coeffs: vec![c],
        }
    }

    /// Builds a form from coefficients in storage order.
    pub fn from_coeffs(field: &Field, degree: usize, coeffs: Vec<Elem>) -> TernaryForm {
        assert_eq!(coeffs.len(), monomial_count(degree), "coefficient count");
        TernaryForm {
            field: field.clone(),
            degree,
            coeffs,
        }
    }

    /// The linear form `a x + b y + c z` of a line `[a:b:c]`.
    pub fn linear(line: &ProjPoint) -> TernaryForm {
        TernaryForm::from_coeffs(line.field(), 1, line.integral_elems().to_vec())
    }

    /// The coordinate function `x`, `y` or `z`.
    pub fn variable(field: &Field, var: usize) -> TernaryForm {
        let mut f = TernaryForm::zero(field, 1);
        f.coeffs[var] = field.one();
        f
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, e: [usize; 3]) -> &Elem {
        debug_assert_eq!(e.iter().sum::<usize>(), self.degree);
        &self.coeffs[monomial_index(e)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    /// Nonzero terms with their exponents, in storage order.
    pub fn terms(&self) -> impl Iterator<Item = ([usize; 3], &Elem)> + '_ {
        monomials(self.degree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !self.field.is_zero(c))
    }

    pub fn add(&self, other: &TernaryForm) -> TernaryForm {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        TernaryForm::from_coeffs(&self.field, self.degree, coeffs)
    }

    pub fn sub(&self, other: &TernaryForm) -> TernaryForm {
        self.add(&other.scale(&self.field.from_int(-1)))
    }

    pub fn scale(&self, c: &Elem) -> TernaryForm {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        TernaryForm::from_coeffs(&self.field, self.degree, coeffs)
    }

    pub fn mul(&self, other: &TernaryForm) -> TernaryForm {
        let f = &self.field;
        let mut out = TernaryForm::zero(f, self.degree + other.degree);
        let rhs: Vec<_> = other.terms().collect();
        for (ea, ca) in self.terms() {
            for &(eb, cb) in &rhs {
                let idx = monomial_index([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]]);
                let prod = f.mul(ca, cb);
                out.coeffs[idx] = f.add(&out.coeffs[idx], &prod);
            }
        }
        out
    }

    /// Formal partial derivative with respect to variable `var` (0, 1, 2 for
    /// x, y, z). The derivative of a constant is the zero constant.
    pub fn partial(&self, var: usize) -> TernaryForm {
        let f = &self.field;
        if self.degree == 0 {
            return TernaryForm::zero(f, 0);
        }
        let mut out = TernaryForm::zero(f, self.degree - 1);
        for (e, c) in self.terms() {
            if e[var] == 0 {
                continue;
            }
            let mut lowered = e;
            lowered[var] -= 1;
            out.coeffs[monomial_index(lowered)] = f.mul(c, &f.from_int(e[var] as i64));
        }
        out
    }

    pub fn eval(&self, p: &[Elem; 3]) -> Elem {
        let f = &self.field;
        let powers: Vec<Vec<Elem>> = p
            .iter()
            .map(|v| {
                let mut pw = vec![f.one()];
                for _ in 0..self.degree {
                    let next = f.mul(pw.last().unwrap(), v);
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = f.zero();
        for (e, c) in self.terms() {
            let mono = f.mul(&f.mul(&powers[0][e[0]], &powers[1][e[1]]), &powers[2][e[2]]);
            acc = f.add(&acc, &f.mul(c, &mono));
        }
        acc
    }

    pub fn vanishes_at(&self, p: &ProjPoint) -> bool {
        self.field.is_zero(&self.eval(p.elems()))
    }

    pub fn to_terms(&self) -> Vec<Term> {
        self.terms()
            .map(|(e, c)| Term {
                exponents: e,
                coeff: ScalarText::encode(&self.field, c),
            })
            .collect()
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let mono: Vec<String> = ["x", "y", "z"]
                .iter()
                .zip(e)
                .filter(|(_, p)| *p > 0)
                .map(|(v, p)| if p == 1 { v.to_string() } else { format!("{v}^{p}") })
                .collect();
            let coeff = self.field.format_elem(c);
            match (mono.is_empty(), self.field.is_one(c)) {
                (true, _) => write!(out, "{coeff}")?,
                (false, true) => write!(out, "{}", mono.join("*"))?,
                (false, false) => write!(out, "({coeff})*{}", mono.join("*"))?,
            }
        }
        if first {
            write!(out, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::catalog::eisenstein_field;

    fn q() -> Field {
        Field::rationals()
    }

    fn form(d: usize, terms: &[([usize; 3], i64)]) -> TernaryForm {
        let f = q();
        let mut out = TernaryForm::zero(&f, d);
        for &(e, c) in terms {
            out.coeffs[monomial_index(e)] = f.from_int(c);
        }
        out
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        assert_eq!(
            monomials(2),
            vec![[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]]
        );
        for d in 0..6 {
            for (i, e) in monomials(d).into_iter().enumerate() {
                assert_eq!(monomial_index(e), i);
            }
            assert_eq!(monomials(d).len(), monomial_count(d));
        }
    }

    #[test]
    fn products_and_partials() {
        let f = q();
        let x = TernaryForm::variable(&f, 0);
        let y = TernaryForm::variable(&f, 1);
        let g = x.mul(&x.sub(&y));
        assert_eq!(g, form(2, &[([2, 0, 0], 1), ([1, 1, 0], -1)]));
        assert_eq!(g.partial(0), form(1, &[([1, 0, 0], 2), ([0, 1, 0], -1)]));
        assert_eq!(g.partial(1), form(1, &[([1, 0, 0], -1)]));
        assert!(g.partial(2).is_zero());
        assert_eq!(g.to_string(), "x^2 + (-1)*x*y");
    }

    #[test]
    fn eval_matches_hand_computation() {
        let f = q();
        let g = form(3, &[([1, 1, 1], 2), ([0, 0, 3], -1)]);
        let p = [f.from_int(1), f.from_int(2), f.from_int(3)];
        assert_eq!(g.eval(&p), f.from_int(12 - 27));
    }

    #[test]
    fn euler_identity_over_omega() {
        let f = eisenstein_field();
        let w = f.generator();
        let l1 = TernaryForm::from_coeffs(&f, 1, vec![f.one(), w.clone(), f.mul(&w, &w)]);
        let l2 = TernaryForm::from_coeffs(&f, 1, vec![f.zero(), f.one(), f.from_int(-3)]);
        let g = l1.mul(&l2).mul(&l1);
        let mut euler = TernaryForm::zero(&f, 3);
        for v in 0..3 {
            euler = euler.add(&TernaryForm::variable(&f, v).mul(&g.partial(v)));
        }
        assert_eq!(euler, g.scale(&f.from_int(3)));
    }

    #[test]
    fn partial_of_constant() {
        let f = q();
        let c = TernaryForm::constant(&f, f.from_int(5));
        assert!(c.partial(1).is_zero());
        assert_eq!(c.partial(1).degree(), 0);
    }
}
