//! Arbitrary-precision rational helpers shared by every exact module.

use alloc::string::String;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational number used for every coordinate, scale and measure.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` from machine integers. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `p/q`, `p`, or a signed variant of either. Whitespace around the
/// token is ignored; a zero denominator is rejected.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse(String::from("empty rational")));
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim())
            .map_err(|_| Error::Parse(alloc::format!("bad numerator in `{t}`")))?;
        let q = BigInt::from_str(q.trim())
            .map_err(|_| Error::Parse(alloc::format!("bad denominator in `{t}`")))?;
        if q.is_zero() {
            return Err(Error::Parse(alloc::format!("zero denominator in `{t}`")));
        }
        Ok(Rational::new(p, q))
    } else {
        let p =
            BigInt::from_str(t).map_err(|_| Error::Parse(alloc::format!("bad rational `{t}`")))?;
        Ok(Rational::from_integer(p))
    }
}

/// Canonical `p/q` (or `p` for integers) rendering.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        alloc::format!("{}", q.numer())
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn floor_int(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn ceil_int(q: &Rational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

/// Fractional part in `[0, 1)`.
pub fn frac(q: &Rational) -> Rational {
    q - Rational::from_integer(floor_int(q))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

/// Converts a small integer-valued rational to `i64`.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}
