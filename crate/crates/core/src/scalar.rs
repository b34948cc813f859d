//! Exact scalar arithmetic.
//!
//! All structural results in this crate are computed over arbitrary-precision
//! rationals; floating point only enters in the eigensolver and Monte Carlo
//! paths. The scalar type is re-exported so downstream code never names the
//! backing crate directly.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int<T: Into<i64>>(n: T) -> Rational {
    Rational::from_integer(BigInt::from(n.into()))
}

/// Rational p/q from machine integers. Panics on q = 0; intended for
/// literals in tests and tables, not for user input.
pub fn rat(p: i64, q: i64) -> Rational {
    assert!(q != 0, "rational literal with zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses a rational from `p/q`, integer, or decimal notation.
///
/// Accepted forms: `-3`, `9/49`, `0.25`, `1.5e-3`. Decimals convert exactly
/// (base-ten digits scaled by a power of ten), never through an `f64`.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let p = parse_bigint(num)?;
        let q = parse_bigint(den)?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if s.contains(['.', 'e', 'E']) {
        return parse_decimal(s);
    }
    Ok(Rational::from_integer(parse_bigint(s)?))
}

/// Parses a decimal literal (optional sign, fraction, exponent) to the exact
/// rational it denotes.
pub fn parse_decimal(input: &str) -> Result<Rational> {
    let s = input.trim();
    let bad = || Error::Parse(format!("invalid decimal literal {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }

    let (mantissa, exponent) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, i64::from_str(e).map_err(|_| bad())?),
        None => (s, 0i64),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }

    let joined = format!("{int_part}{frac_part}");
    let unscaled =
        BigInt::from_str(if joined.is_empty() { "0" } else { &joined }).map_err(|_| bad())?;
    let shift = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        Rational::from_integer(unscaled * ten.pow(shift as u32))
    } else {
        Rational::new(unscaled, ten.pow((-shift) as u32))
    };
    Ok(if sign < 0 { -value } else { value })
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("invalid integer {s:?}")))
}

/// Renders a rational as `p/q`, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest `f64`. Values far outside the double range collapse to ±inf.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational equal to the given double. Errors on NaN or infinity.
pub fn from_f64_exact(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Parse(format!("non-finite value {x}")))
}
