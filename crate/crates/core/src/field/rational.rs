//! Text encoding of rationals: `"p/q"` or `"p"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::FieldError;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rational_from_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` (and tolerates a typographic minus sign `−`).
pub fn parse_rational(text: &str) -> Result<Rational, FieldError> {
    let cleaned: String = text.trim().replace('\u{2212}', "-");
    let bad = || FieldError::BadScalar(text.to_string());
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (cleaned.as_str(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
