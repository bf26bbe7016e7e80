//! Seeded random inputs for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::galilean::GalileanMotion;
use crate::matrix::MatD2;
use crate::pimenov::D2Element;
use crate::plane::{GalileanPoint, SpherePoint};
use crate::scalar::{Rational, Scalar};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub trait RandomScalar: Scalar {
    /// Roughly uniform on `[-span, span]`; rationals have denominators up to 4.
    fn sample(rng: &mut Rng64, span: i64) -> Self;
}

impl RandomScalar for f64 {
    fn sample(rng: &mut Rng64, span: i64) -> Self {
        rng.random_range(-(span as f64)..=span as f64)
    }
}

impl RandomScalar for Rational {
    fn sample(rng: &mut Rng64, span: i64) -> Self {
        let den = rng.random_range(1..=4i64);
        Rational::from_ratio(rng.random_range(-span * den..=span * den), den)
    }
}

pub const SPAN: i64 = 5;

pub fn scalar<T: RandomScalar>(rng: &mut Rng64) -> T {
    T::sample(rng, SPAN)
}

pub fn d2<T: RandomScalar>(rng: &mut Rng64) -> D2Element<T> {
    D2Element::from_coeffs(std::array::from_fn(|_| scalar(rng)))
}

/// D2 element with `|a0| > min_abs`.
pub fn invertible_d2<T: RandomScalar>(rng: &mut Rng64, min_abs: f64) -> D2Element<T> {
    loop {
        let x = d2::<T>(rng);
        if x.a0.to_f64().abs() > min_abs {
            return x;
        }
    }
}

pub fn motion<T: RandomScalar>(rng: &mut Rng64) -> GalileanMotion<T> {
    GalileanMotion::new(scalar(rng), scalar(rng), scalar(rng))
}

pub fn point<T: RandomScalar>(rng: &mut Rng64) -> GalileanPoint<T> {
    GalileanPoint::new(scalar(rng), scalar(rng))
}

pub fn sphere_point<T: RandomScalar>(rng: &mut Rng64) -> SpherePoint<T> {
    SpherePoint::new(scalar(rng), scalar(rng))
}

pub fn matd2<T: RandomScalar>(rng: &mut Rng64, n: usize) -> MatD2<T> {
    MatD2::from_fn(n, |_, _| d2(rng))
}

/// Matrix whose real part has `|det| > min_abs`.
pub fn invertible_matd2<T: RandomScalar>(rng: &mut Rng64, n: usize, min_abs: f64) -> MatD2<T> {
    loop {
        let m = matd2::<T>(rng, n);
        if m.det().a0.to_f64().abs() > min_abs {
            return m;
        }
    }
}

/// Matrix with some entries forced to zero scalar part, so singular real parts show up often.
pub fn sparse_matd2<T: RandomScalar>(rng: &mut Rng64, n: usize) -> MatD2<T> {
    let p = rng.random_range(0.0..0.7);
    MatD2::from_fn(n, |_, _| {
        let mut x = d2::<T>(rng);
        if rng.random_bool(p) {
            x.a0 = T::zero();
        }
        x
    })
}
