//! The Pimenov algebra D2 and its dual-number subalgebra.
//!
//! An element of D2 is `a0 + a1 i1 + a2 i2 + a3 i1i2` where `i1² = i2² = 0`
//! and `i1 i2 = i2 i1`. The algebra is commutative and associative; an
//! element is invertible exactly when its scalar part `a0` is nonzero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar, EPS_INV};

/// `a0 + a1 i1 + a2 i2 + a3 i1i2`, coefficients in basis order `(1, i1, i2, i1i2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct D2Element<T> {
    pub a0: T,
    pub a1: T,
    pub a2: T,
    pub a3: T,
}

impl<T: Scalar> D2Element<T> {
    pub fn new(a0: T, a1: T, a2: T, a3: T) -> Self {
        Self { a0, a1, a2, a3 }
    }

    pub fn from_coeffs([a0, a1, a2, a3]: [T; 4]) -> Self {
        Self { a0, a1, a2, a3 }
    }

    pub fn coeffs(&self) -> [T; 4] {
        [self.a0.clone(), self.a1.clone(), self.a2.clone(), self.a3.clone()]
    }

    pub fn scalar(r: T) -> Self {
        Self::new(r, T::zero(), T::zero(), T::zero())
    }

    pub fn iota1() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn iota2() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn iota12() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    /// `r * i1`
    pub fn with_iota1(r: T) -> Self {
        Self::new(T::zero(), r, T::zero(), T::zero())
    }

    /// `r * i2`
    pub fn with_iota2(r: T) -> Self {
        Self::new(T::zero(), T::zero(), r, T::zero())
    }

    /// `r * i1i2`
    pub fn with_iota12(r: T) -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), r)
    }

    /// The coefficient of `1`, called the real part.
    pub fn scalar_part(&self) -> &T {
        &self.a0
    }

    /// `a - a0`, the nilpotent (imaginary) part.
    pub fn nilpotent_part(&self) -> Self {
        Self::new(T::zero(), self.a1.clone(), self.a2.clone(), self.a3.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(
            self.a0.clone() * k.clone(),
            self.a1.clone() * k.clone(),
            self.a2.clone() * k.clone(),
            self.a3.clone() * k.clone(),
        )
    }

    pub fn is_invertible(&self) -> bool {
        self.a0.is_finite() && !self.a0.is_within(EPS_INV)
    }

    /// `a⁻¹ = a0⁻²·[a0 − a1 i1 − a2 i2 + (2 a1 a2 / a0 − a3) i1i2]`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::NonInvertible("D2 element has zero scalar part"));
        }
        let a0 = &self.a0;
        let inv_sq = T::one() / (a0.clone() * a0.clone());
        let two = T::from_i64(2);
        let c3 = two * self.a1.clone() * self.a2.clone() / a0.clone() - self.a3.clone();
        Ok(Self::new(a0.clone(), -self.a1.clone(), -self.a2.clone(), c3).scale(&inv_sq))
    }

    /// Conjugation by the generator `i2`: `a0 + a1 i1 − a2 i2 − a3 i1i2`.
    pub fn conj_iota2(&self) -> Self {
        Self::new(
            self.a0.clone(),
            self.a1.clone(),
            -self.a2.clone(),
            -self.a3.clone(),
        )
    }

    /// Evaluates `f` at this element from its second-order jet at the scalar part.
    pub fn eval(&self, jet: &Jet2<T>) -> Self {
        let inc = self.nilpotent_part().scale(&jet.f1);
        let second = jet.f2.clone() * self.a1.clone() * self.a2.clone();
        Self::new(
            jet.f0.clone() + inc.a0,
            inc.a1,
            inc.a2,
            inc.a3 + second,
        )
    }

    /// `e^(a − a0) = 1 + a1 i1 + a2 i2 + (a3 + a1 a2) i1i2`, exact in every backend.
    pub fn unipotent_exp(&self) -> Self {
        Self::new(
            T::one(),
            self.a1.clone(),
            self.a2.clone(),
            self.a3.clone() + self.a1.clone() * self.a2.clone(),
        )
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.a0.approx_eq(&other.a0, tol)
            && self.a1.approx_eq(&other.a1, tol)
            && self.a2.approx_eq(&other.a2, tol)
            && self.a3.approx_eq(&other.a3, tol)
    }

    pub fn is_finite(&self) -> bool {
        self.a0.is_finite() && self.a1.is_finite() && self.a2.is_finite() && self.a3.is_finite()
    }

    /// Largest absolute coefficient, as f64. Used for error reporting.
    pub fn max_abs(&self) -> f64 {
        self.coeffs()
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }
}

impl<T: Real> D2Element<T> {
    pub fn exp(&self) -> Self {
        self.unipotent_exp().scale(&self.a0.exp())
    }
}

impl<T: Scalar> Zero for D2Element<T> {
    fn zero() -> Self {
        Self::scalar(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }
}

impl<T: Scalar> One for D2Element<T> {
    fn one() -> Self {
        Self::scalar(T::one())
    }
}

impl<T: Scalar> Add for &D2Element<T> {
    type Output = D2Element<T>;
    fn add(self, rhs: Self) -> D2Element<T> {
        D2Element::new(
            self.a0.clone() + rhs.a0.clone(),
            self.a1.clone() + rhs.a1.clone(),
            self.a2.clone() + rhs.a2.clone(),
            self.a3.clone() + rhs.a3.clone(),
        )
    }
}

impl<T: Scalar> Sub for &D2Element<T> {
    type Output = D2Element<T>;
    fn sub(self, rhs: Self) -> D2Element<T> {
        D2Element::new(
            self.a0.clone() - rhs.a0.clone(),
            self.a1.clone() - rhs.a1.clone(),
            self.a2.clone() - rhs.a2.clone(),
            self.a3.clone() - rhs.a3.clone(),
        )
    }
}

impl<T: Scalar> Mul for &D2Element<T> {
    type Output = D2Element<T>;
    fn mul(self, b: Self) -> D2Element<T> {
        let a = self;
        D2Element::new(
            a.a0.clone() * b.a0.clone(),
            a.a0.clone() * b.a1.clone() + a.a1.clone() * b.a0.clone(),
            a.a0.clone() * b.a2.clone() + a.a2.clone() * b.a0.clone(),
            a.a0.clone() * b.a3.clone()
                + a.a3.clone() * b.a0.clone()
                + a.a1.clone() * b.a2.clone()
                + a.a2.clone() * b.a1.clone(),
        )
    }
}

impl<T: Scalar> Neg for &D2Element<T> {
    type Output = D2Element<T>;
    fn neg(self) -> D2Element<T> {
        D2Element::new(
            -self.a0.clone(),
            -self.a1.clone(),
            -self.a2.clone(),
            -self.a3.clone(),
        )
    }
}

macro_rules! forward_owned_ops {
    ($ty:ident) => {
        impl<T: Scalar> Add for $ty<T> {
            type Output = $ty<T>;
            fn add(self, rhs: Self) -> $ty<T> {
                &self + &rhs
            }
        }
        impl<T: Scalar> Sub for $ty<T> {
            type Output = $ty<T>;
            fn sub(self, rhs: Self) -> $ty<T> {
                &self - &rhs
            }
        }
        impl<T: Scalar> Mul for $ty<T> {
            type Output = $ty<T>;
            fn mul(self, rhs: Self) -> $ty<T> {
                &self * &rhs
            }
        }
        impl<T: Scalar> Neg for $ty<T> {
            type Output = $ty<T>;
            fn neg(self) -> $ty<T> {
                -&self
            }
        }
    };
}
pub(crate) use forward_owned_ops;

forward_owned_ops!(D2Element);
forward_owned_ops!(DualNumber);

const BASIS_NAMES: [&str; 4] = ["", "i1", "i2", "i1i2"];

/// Text form `a0 + a1*i1 + a2*i2 + a3*i1i2`, zero terms omitted.
impl<T: Scalar> fmt::Display for D2Element<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (coeff, basis) in self.coeffs().iter().zip(BASIS_NAMES) {
            if coeff.is_zero() {
                continue;
            }
            let negative = coeff.to_f64() < 0.0;
            let magnitude = if negative { -coeff.clone() } else { coeff.clone() };
            match (wrote, negative) {
                (false, false) => {}
                (false, true) => write!(f, "-")?,
                (true, false) => write!(f, " + ")?,
                (true, true) => write!(f, " - ")?,
            }
            if basis.is_empty() {
                write!(f, "{magnitude}")?;
            } else {
                write!(f, "{magnitude}*{basis}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<T: Scalar> FromStr for D2Element<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty D2 literal".into()));
        }
        let mut coeffs = [T::zero(), T::zero(), T::zero(), T::zero()];
        for (negative, term) in split_terms(&compact)? {
            let (coeff, slot) = parse_term::<T>(term)?;
            let coeff = if negative { -coeff } else { coeff };
            coeffs[slot] = coeffs[slot].clone() + coeff;
        }
        Ok(Self::from_coeffs(coeffs))
    }
}

/// Splits on top-level `+`/`-`, ignoring signs inside exponents like `1e-3`.
fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut start = 0;
    let mut negative = false;
    if matches!(bytes[0], b'+' | b'-') {
        negative = bytes[0] == b'-';
        start = 1;
    }
    let mut i = start;
    while i < bytes.len() {
        let c = bytes[i];
        let in_exponent = i > start && matches!(bytes[i - 1], b'e' | b'E') && {
            // `e` directly after a digit or '.' is an exponent marker
            i >= 2 && (bytes[i - 2].is_ascii_digit() || bytes[i - 2] == b'.')
        };
        if matches!(c, b'+' | b'-') && !in_exponent {
            terms.push((negative, &s[start..i]));
            negative = c == b'-';
            start = i + 1;
        }
        i += 1;
    }
    terms.push((negative, &s[start..]));
    if terms.iter().any(|(_, t)| t.is_empty()) {
        return Err(Error::Parse(format!("malformed D2 literal `{s}`")));
    }
    Ok(terms)
}

fn parse_term<T: Scalar>(term: &str) -> Result<(T, usize)> {
    let bad = || Error::Parse(format!("malformed D2 term `{term}`"));
    for (slot, basis) in BASIS_NAMES.iter().enumerate().skip(1).rev() {
        if let Some(head) = term.strip_suffix(basis) {
            let head = head.strip_suffix('*').unwrap_or(head);
            let coeff = if head.is_empty() {
                T::one()
            } else {
                T::parse_str(head).ok_or_else(bad)?
            };
            return Ok((coeff, slot));
        }
    }
    Ok((T::parse_str(term).ok_or_else(bad)?, 0))
}

/// A dual number `re + du·ι`, `ι² = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DualNumber<T> {
    pub re: T,
    pub du: T,
}

impl<T: Scalar> DualNumber<T> {
    pub fn new(re: T, du: T) -> Self {
        Self { re, du }
    }

    pub fn real(re: T) -> Self {
        Self::new(re, T::zero())
    }

    pub fn iota() -> Self {
        Self::new(T::zero(), T::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.du.clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.re.is_finite() || self.re.is_within(EPS_INV) {
            return Err(Error::NonInvertible("dual number has zero real part"));
        }
        let inv = T::one() / self.re.clone();
        Ok(Self::new(inv.clone(), -self.du.clone() * inv.clone() * inv))
    }

    pub fn eval(&self, jet: &Jet2<T>) -> Self {
        Self::new(jet.f0.clone(), jet.f1.clone() * self.du.clone())
    }

    /// `e^(du·ι) = 1 + du·ι`; the real part is ignored.
    pub fn unipotent_exp(&self) -> Self {
        Self::new(T::one(), self.du.clone())
    }

    /// Embedding with `ι ↦ i1` (`a2 = a3 = 0`).
    pub fn embed_iota1(&self) -> D2Element<T> {
        D2Element::new(self.re.clone(), self.du.clone(), T::zero(), T::zero())
    }

    /// Embedding with `ι ↦ i2`, used by the dual-number matrix representations.
    pub fn embed_iota2(&self) -> D2Element<T> {
        D2Element::new(self.re.clone(), T::zero(), self.du.clone(), T::zero())
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.re.approx_eq(&other.re, tol) && self.du.approx_eq(&other.du, tol)
    }
}

impl<T: Scalar> From<DualNumber<T>> for D2Element<T> {
    fn from(d: DualNumber<T>) -> Self {
        d.embed_iota1()
    }
}

impl<T: Scalar> Add for &DualNumber<T> {
    type Output = DualNumber<T>;
    fn add(self, rhs: Self) -> DualNumber<T> {
        DualNumber::new(self.re.clone() + rhs.re.clone(), self.du.clone() + rhs.du.clone())
    }
}

impl<T: Scalar> Sub for &DualNumber<T> {
    type Output = DualNumber<T>;
    fn sub(self, rhs: Self) -> DualNumber<T> {
        DualNumber::new(self.re.clone() - rhs.re.clone(), self.du.clone() - rhs.du.clone())
    }
}

impl<T: Scalar> Mul for &DualNumber<T> {
    type Output = DualNumber<T>;
    fn mul(self, rhs: Self) -> DualNumber<T> {
        DualNumber::new(
            self.re.clone() * rhs.re.clone(),
            self.re.clone() * rhs.du.clone() + self.du.clone() * rhs.re.clone(),
        )
    }
}

impl<T: Scalar> Neg for &DualNumber<T> {
    type Output = DualNumber<T>;
    fn neg(self) -> DualNumber<T> {
        DualNumber::new(-self.re.clone(), -self.du.clone())
    }
}

impl<T: Scalar> fmt::Display for DualNumber<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*i", self.re, self.du)
    }
}

/// `(f(x0), f'(x0), f''(x0))`: enough to evaluate `f` on any D2 element with scalar part `x0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet2<T> {
    pub f0: T,
    pub f1: T,
    pub f2: T,
}

impl<T: Scalar> Jet2<T> {
    pub fn new(f0: T, f1: T, f2: T) -> Self {
        Self { f0, f1, f2 }
    }

    pub fn identity(x0: T) -> Self {
        Self::new(x0, T::one(), T::zero())
    }

    pub fn constant(c: T) -> Self {
        Self::new(c, T::zero(), T::zero())
    }

    /// `x^n` for integer `n`; exact in rational mode. Negative `n` needs `x0 ≠ 0`.
    pub fn powi(x0: T, n: i32) -> Option<Self> {
        let pow = |k: i32| -> Option<T> {
            if k >= 0 {
                Some(num_traits::pow(x0.clone(), k as usize))
            } else if x0.is_zero() {
                None
            } else {
                Some(T::one() / num_traits::pow(x0.clone(), k.unsigned_abs() as usize))
            }
        };
        let nf = T::from_i64(n as i64);
        let f0 = pow(n)?;
        let f1 = if n == 0 { T::zero() } else { nf.clone() * pow(n - 1)? };
        let f2 = if n == 0 || n == 1 {
            T::zero()
        } else {
            nf.clone() * T::from_i64(n as i64 - 1) * pow(n - 2)?
        };
        Some(Self::new(f0, f1, f2))
    }
}

impl<T: Real> Jet2<T> {
    pub fn exp(x0: T) -> Self {
        let e = x0.exp();
        Self::new(e, e, e)
    }

    pub fn sin(x0: T) -> Self {
        Self::new(x0.sin(), x0.cos(), -x0.sin())
    }

    pub fn cos(x0: T) -> Self {
        Self::new(x0.cos(), -x0.sin(), -x0.cos())
    }

    /// Natural logarithm; `None` unless `x0 > 0`.
    pub fn ln(x0: T) -> Option<Self> {
        if x0.to_f64() <= 0.0 {
            return None;
        }
        let inv = T::one() / x0;
        Some(Self::new(x0.ln(), inv, -(inv * inv)))
    }

    /// `x^p` for real `p`, `x0 > 0`.
    pub fn powf(x0: T, p: T) -> Option<Self> {
        if x0.to_f64() <= 0.0 {
            return None;
        }
        let one = T::one();
        Some(Self::new(
            x0.powf(p),
            p * x0.powf(p - one),
            p * (p - one) * x0.powf(p - one - one),
        ))
    }
}
