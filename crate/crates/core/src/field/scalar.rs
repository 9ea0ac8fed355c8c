use std::fmt;

use serde::{Deserialize, Serialize};

use super::number_field::{Elem, Field};
use super::rational::{format_rational, parse_rational, Rational};
use super::FieldError;

/// An element of a [`Field`], reduced modulo its minimal polynomial.
///
/// Two scalars over the same field are equal iff their coordinate lists are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: Field,
    elem: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, FieldError> {
    if a.field != b.field {
        return Err(FieldError::FieldMismatch);
    }
    let f = &a.field;
    let elem = match op {
        ArithOp::Add => f.add(&a.elem, &b.elem),
        ArithOp::Sub => f.sub(&a.elem, &b.elem),
        ArithOp::Mul => f.mul(&a.elem, &b.elem),
        ArithOp::Div => f.div(&a.elem, &b.elem)?,
    };
    Ok(Scalar::from_elem(f.clone(), elem))
}

impl Scalar {
    pub fn from_elem(field: Field, elem: Elem) -> Scalar {
        debug_assert_eq!(elem.len(), field.degree());
        Scalar { field, elem }
    }

    pub fn new(field: &Field, coeffs: &[Rational]) -> Result<Scalar, FieldError> {
        Ok(Scalar::from_elem(field.clone(), field.elem_from_coeffs(coeffs)?))
    }

    pub fn from_rational(field: &Field, q: Rational) -> Scalar {
        Scalar::from_elem(field.clone(), field.from_rational(q))
    }

    pub fn from_int(field: &Field, n: i64) -> Scalar {
        Scalar::from_elem(field.clone(), field.from_int(n))
    }

    pub fn zero(field: &Field) -> Scalar {
        Scalar::from_elem(field.clone(), field.zero())
    }

    pub fn one(field: &Field) -> Scalar {
        Scalar::from_elem(field.clone(), field.one())
    }

    pub fn generator(field: &Field) -> Scalar {
        Scalar::from_elem(field.clone(), field.generator())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elem(&self) -> &Elem {
        &self.elem
    }

    pub fn into_elem(self) -> Elem {
        self.elem
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.elem
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.elem)
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        scalar_arith(self, other, ArithOp::Add)
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        scalar_arith(self, other, ArithOp::Sub)
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        scalar_arith(self, other, ArithOp::Mul)
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        scalar_arith(self, other, ArithOp::Div)
    }

    pub fn neg(&self) -> Scalar {
        Scalar::from_elem(self.field.clone(), self.field.neg(&self.elem))
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        Ok(Scalar::from_elem(self.field.clone(), self.field.inv(&self.elem)?))
    }

    /// Text encoding: a rational string over ℚ, a list of power-basis strings otherwise.
    pub fn to_text(&self) -> ScalarText {
        ScalarText::encode(&self.field, &self.elem)
    }

    pub fn parse(field: &Field, text: &ScalarText) -> Result<Scalar, FieldError> {
        Ok(Scalar::from_elem(field.clone(), text.decode(field)?))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(&self.elem))
    }
}

/// JSON form of a scalar: `"p/q"`, an integer, or `["c0", "c1", …]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Rational(String),
    Coords(Vec<CoordText>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordText {
    Int(i64),
    Rational(String),
}

impl CoordText {
    fn parse(&self) -> Result<Rational, FieldError> {
        match self {
            CoordText::Int(n) => Ok(super::rational::rational_from_int(*n)),
            CoordText::Rational(s) => parse_rational(s),
        }
    }
}

impl ScalarText {
    pub fn encode(field: &Field, elem: &Elem) -> ScalarText {
        if field.is_rational() {
            ScalarText::Rational(format_rational(&elem[0]))
        } else {
            ScalarText::Coords(
                elem.iter()
                    .map(|c| CoordText::Rational(format_rational(c)))
                    .collect(),
            )
        }
    }

    pub fn decode(&self, field: &Field) -> Result<Elem, FieldError> {
        match self {
            ScalarText::Int(n) => Ok(field.from_int(*n)),
            ScalarText::Rational(s) => Ok(field.from_rational(parse_rational(s)?)),
            ScalarText::Coords(cs) => {
                let coeffs = cs.iter().map(CoordText::parse).collect::<Result<Vec<_>, _>>()?;
                field.elem_from_coeffs(&coeffs)
            }
        }
    }
}
