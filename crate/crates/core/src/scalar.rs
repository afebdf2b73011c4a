//! Scalar types shared by every module.
//!
//! All closed-form layers are generic over [`Scalar`], which is implemented
//! for `f32`, `f64` and the exact [`Rational`] type. Exact arithmetic is the
//! default path for anything that ends up in a golden file.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Exact rational numbers with arbitrary precision numerator and denominator.
pub type Rational = BigRational;

/// Numeric field used by the closed-form layers.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// True when arithmetic in this type is exact.
    const EXACT: bool;

    /// Largest tolerated deviation from skew-symmetry.
    fn skew_tolerance() -> Self;

    fn from_int(n: i64) -> Self;

    /// Converts a rational number, rounding when the type is inexact.
    fn from_rational(r: &Rational) -> Self;

    /// `floor(self)`, or `None` when it does not fit in an `i64`.
    fn floor_int(&self) -> Option<i64>;

    /// Plain text rendering: `a/b` (or `a` for integers) for rationals,
    /// shortest round-trip decimal for floats.
    fn to_text(&self) -> String;

    /// JSON rendering: strings for rationals, numbers for floats.
    fn to_json(&self) -> Value {
        Value::String(self.to_text())
    }

    fn parse_text(s: &str) -> Result<Self>;

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => Self::parse_text(s),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Self::from_int(i))
                } else {
                    let f = n
                        .as_f64()
                        .ok_or_else(|| Error::Parse(format!("unrepresentable number {n}")))?;
                    Self::from_f64(f).ok_or_else(|| Error::Parse(format!("non-finite number {n}")))
                }
            }
            other => Err(Error::Parse(format!("expected number or \"a/b\" string, got {other}"))),
        }
    }
}

macro_rules! impl_float_scalar {
    ($f:ty) => {
        impl Scalar for $f {
            const EXACT: bool = false;

            fn skew_tolerance() -> Self {
                1e-12
            }

            fn from_int(n: i64) -> Self {
                n as $f
            }

            fn from_rational(r: &Rational) -> Self {
                r.to_f64().unwrap_or(f64::NAN) as $f
            }

            fn floor_int(&self) -> Option<i64> {
                let f = self.floor();
                if f.is_finite() && f.abs() < 9.0e18 {
                    Some(f as i64)
                } else {
                    None
                }
            }

            fn to_text(&self) -> String {
                format!("{}", self)
            }

            fn to_json(&self) -> Value {
                serde_json::Number::from_f64(*self as f64)
                    .map(Value::Number)
                    .unwrap_or(Value::Null)
            }

            fn parse_text(s: &str) -> Result<Self> {
                let s = s.trim();
                if s.contains('/') {
                    Ok(Self::from_rational(&parse_rational(s)?))
                } else {
                    s.parse::<$f>()
                        .map_err(|e| Error::Parse(format!("invalid number {s:?}: {e}")))
                }
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

impl Scalar for Rational {
    const EXACT: bool = true;

    fn skew_tolerance() -> Self {
        Rational::zero()
    }

    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn floor_int(&self) -> Option<i64> {
        self.floor().to_integer().to_i64()
    }

    fn to_text(&self) -> String {
        format_rational(self)
    }

    fn parse_text(s: &str) -> Result<Self> {
        parse_rational(s)
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            // JSON numbers go through their literal text so "0.1" stays 1/10.
            Value::Number(n) => parse_rational(&n.to_string()),
            other => Err(Error::Parse(format!("expected number or \"a/b\" string, got {other}"))),
        }
    }
}

/// Renders `a/b`, or just `a` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders `a/b` with the denominator always present (`2/1`).
pub fn format_fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `a/b`, an integer, or a finite decimal literal (`2.5`, `-1e-3`) exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&digits).map_err(|_| bad())?);
    let shift = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    Ok(if negative { -value } else { value })
}

/// Exact `n/d` helper used in tests and examples.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `x - floor(x)`, the fractional part in `[0, 1)`.
pub fn fract_rational(x: &Rational) -> Rational {
    x - x.floor()
}
