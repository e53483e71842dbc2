//! Exact rational arithmetic used for every threshold comparison.
//!
//! Degree thresholds such as `(1 - eps) * |S|` decide which branch an
//! algorithm takes, so they are never evaluated in floating point.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use std::str::FromStr;

pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as a rational number (expected `a/b`, an integer or a decimal)")]
pub struct ParseRationalError(pub String);

/// Parses `"3/4"`, `"2"` or `"0.25"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let t = text.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num = i128::from_str(num.trim()).map_err(|_| err())?;
        let den = i128::from_str(den.trim()).map_err(|_| err())?;
        if den == 0 {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole_val = if whole.is_empty() || whole == "-" {
            0
        } else {
            i128::from_str(whole).map_err(|_| err())?.abs()
        };
        let scale = 10i128.pow(frac.len() as u32);
        let frac_val = i128::from_str(frac).map_err(|_| err())?;
        let value = Rational::new(whole_val * scale + frac_val, scale);
        return Ok(if negative { -value } else { value });
    }
    i128::from_str(t).map(Rational::from_integer).map_err(|_| err())
}

pub fn ceil_to_i64(r: &Rational) -> i64 {
    r.ceil().to_integer() as i64
}

pub fn floor_to_i64(r: &Rational) -> i64 {
    r.floor().to_integer() as i64
}

pub fn int(v: impl Into<i128>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `count < value`, exact.
pub fn lt(count: i128, value: &Rational) -> bool {
    int(count) < *value
}

/// Integer part of `a / b` rounded up, `b > 0`.
pub fn div_ceil(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    Integer::div_ceil(&a, &b)
}

pub fn is_positive(r: &Rational) -> bool {
    !r.is_zero() && r.is_positive()
}

/// Serializes a rational as its `a/b` text form.
pub mod serde_rational {
    use super::{parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}
