//! Coefficient fields.
//!
//! Everything in the crate is generic over [`Scalar`]. Two backends are
//! provided: `f64` for everyday use and [`Rational`] (arbitrary precision
//! fractions) for bit-exact checks of algebraic identities.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

/// Exact rational backend.
pub type Rational = BigRational;

/// Threshold on `|a0|` below which a float D2 element counts as non-invertible.
pub const EPS_INV: f64 = 1e-12;

/// Componentwise tolerance used by float-mode predicates.
pub const PREDICATE_TOL: f64 = 1e-9;

/// Threshold deciding the `x1 = x2` branch of the Galilean distance.
pub const EPS_DIST: f64 = 1e-12;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` for backends where arithmetic is exact and tolerances are ignored.
    const EXACT: bool;
    const NAME: &'static str;

    fn from_i64(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// `None` for non-finite input.
    fn from_f64(x: f64) -> Option<Self>;

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self;

    fn is_finite(&self) -> bool;

    /// `|x| <= eps` for floats; `x == 0` for exact backends.
    fn is_within(&self, eps: f64) -> bool;

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.clone() - other.clone()).is_within(tol)
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Option<Self>;

    fn parse_str(s: &str) -> Option<Self>;
}

/// Transcendental functions, available only for floating backends.
pub trait Real: Scalar + Copy {
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn powf(self, p: Self) -> Self;
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn is_within(&self, eps: f64) -> bool {
        f64::abs(*self) <= eps
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }

    fn from_json(v: &Value) -> Option<Self> {
        match v {
            Value::Number(n) => n.as_f64(),
            Value::String(s) => Self::parse_str(s),
            _ => None,
        }
    }

    fn parse_str(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: f64 = n.trim().parse().ok()?;
            let d: f64 = d.trim().parse().ok()?;
            return Self::from_f64(n / d);
        }
        s.parse::<f64>().ok().and_then(Self::from_f64)
    }
}

impl Real for f64 {
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn powf(self, p: Self) -> Self {
        f64::powf(self, p)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const NAME: &'static str = "rational";

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn is_within(&self, _eps: f64) -> bool {
        self.is_zero()
    }

    fn to_json(&self) -> Value {
        if self.is_integer() {
            if let Some(n) = self.numer().to_i64() {
                return Value::from(n);
            }
        }
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Option<Self> {
        match v {
            // Number's Display is the shortest round-trip decimal, which parses exactly.
            Value::Number(n) => parse_decimal(&n.to_string()),
            Value::String(s) => Self::parse_str(s),
            _ => None,
        }
    }

    fn parse_str(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.contains('/') {
            let (n, d) = s.split_once('/')?;
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            return Some(BigRational::new(n, d));
        }
        parse_decimal(s)
    }
}

/// Exact conversion of a decimal literal such as `-1.25e-3`.
fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(BigInt::from_str(&digits).ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    Some(if negative { -value } else { value })
}

/// Inner product helper used by the matrix code.
pub(crate) fn sum<T: Scalar>(terms: impl IntoIterator<Item = T>) -> T {
    terms.into_iter().fold(T::zero(), |acc, t| acc + t)
}
