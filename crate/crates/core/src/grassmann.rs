//! The Grassmann algebra Λ(R²), the group Λ¹(R²) ≅ G(2), and the 8-dimensional
//! Clifford-type algebra carrying the point elements.
//!
//! Λ(R²) is realised inside 2×2 matrices over D2 by
//! `E1 = diag(i2, −i2)`, `E2 = [[0, i1], [−i1, 0]]`, and the extra generator
//! `E3 = diag(−1, 1)`. In that matrix picture `E3` anticommutes with `E2` but
//! commutes with `E1`. The multiplication table of [`Cl3Element`] is generated
//! from exactly these relations, so the algebra and its matrix interpretation
//! agree on every basis product and the sandwich `q q_v q̄` maps points to points.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::galilean::{GalileanMotion, SuD2Params};
use crate::matrix::MatD2;
use crate::pimenov::{forward_owned_ops, D2Element};
use crate::plane::SpherePoint;
use crate::scalar::{Scalar, PREDICATE_TOL};

/// `a0 + a1 e1 + a2 e2 + a3 e1e2` with `e1² = e2² = 0`, `e1e2 = −e2e1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GrassmannElement<T> {
    pub a0: T,
    pub a1: T,
    pub a2: T,
    pub a3: T,
}

impl<T: Scalar> GrassmannElement<T> {
    pub fn new(a0: T, a1: T, a2: T, a3: T) -> Self {
        Self { a0, a1, a2, a3 }
    }

    pub fn from_coeffs([a0, a1, a2, a3]: [T; 4]) -> Self {
        Self { a0, a1, a2, a3 }
    }

    pub fn coeffs(&self) -> [T; 4] {
        [self.a0.clone(), self.a1.clone(), self.a2.clone(), self.a3.clone()]
    }

    pub fn e1() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn e2() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn e12() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::from_coeffs(self.coeffs().map(|c| c * k.clone()))
    }

    /// `q̄ = a0 − a1 e1 − a2 e2 − a3 e1e2`
    pub fn conj(&self) -> Self {
        Self::new(
            self.a0.clone(),
            -self.a1.clone(),
            -self.a2.clone(),
            -self.a3.clone(),
        )
    }

    /// `|q|² = q q̄ = a0²`
    pub fn norm_sq(&self) -> T {
        self.a0.clone() * self.a0.clone()
    }

    /// `q⁻¹ = q̄ / a0²`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.a0.is_finite() || self.a0.is_within(crate::scalar::EPS_INV) {
            return Err(Error::NonInvertible("Grassmann element has zero scalar part"));
        }
        Ok(self.conj().scale(&(T::one() / self.norm_sq())))
    }

    /// Membership in Λ¹(R²): unit scalar part.
    pub fn is_lambda1(&self, tol: f64) -> bool {
        self.a0.approx_eq(&T::one(), tol)
    }

    /// `1 + φ e1 + β e2 + γ e1e2` for the SU(D2) parameters `(φ, β, γ)` of `m`.
    pub fn from_motion(m: &GalileanMotion<T>) -> Self {
        let p = m.su_d2_params();
        Self::new(T::one(), p.phi, p.beta, p.gamma)
    }

    /// Inverse of [`Self::from_motion`]; requires unit scalar part.
    pub fn to_motion(&self) -> Result<GalileanMotion<T>> {
        if !self.is_lambda1(PREDICATE_TOL) {
            return Err(Error::NotInLambda1);
        }
        Ok(GalileanMotion::from_su_d2_params(&SuD2Params {
            phi: self.a1.clone(),
            beta: self.a2.clone(),
            gamma: self.a3.clone(),
        }))
    }

    /// `a0 E + a1 E1 + a2 E2 + a3 E1E2` as a 2×2 matrix over D2.
    pub fn to_matrix(&self) -> MatD2<T> {
        Cl3Element::from(self.clone()).to_matrix()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.coeffs()
            .iter()
            .zip(other.coeffs().iter())
            .all(|(x, y)| x.approx_eq(y, tol))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs().iter().all(Scalar::is_finite)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs().iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }
}

pub fn motion_to_lambda1<T: Scalar>(m: &GalileanMotion<T>) -> GrassmannElement<T> {
    GrassmannElement::from_motion(m)
}

pub fn lambda1_to_motion<T: Scalar>(q: &GrassmannElement<T>) -> Result<GalileanMotion<T>> {
    q.to_motion()
}

impl<T: Scalar> Zero for GrassmannElement<T> {
    fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs().iter().all(Zero::is_zero)
    }
}

impl<T: Scalar> One for GrassmannElement<T> {
    fn one() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::zero())
    }
}

impl<T: Scalar> Add for &GrassmannElement<T> {
    type Output = GrassmannElement<T>;
    fn add(self, rhs: Self) -> GrassmannElement<T> {
        GrassmannElement::new(
            self.a0.clone() + rhs.a0.clone(),
            self.a1.clone() + rhs.a1.clone(),
            self.a2.clone() + rhs.a2.clone(),
            self.a3.clone() + rhs.a3.clone(),
        )
    }
}

impl<T: Scalar> Sub for &GrassmannElement<T> {
    type Output = GrassmannElement<T>;
    fn sub(self, rhs: Self) -> GrassmannElement<T> {
        GrassmannElement::new(
            self.a0.clone() - rhs.a0.clone(),
            self.a1.clone() - rhs.a1.clone(),
            self.a2.clone() - rhs.a2.clone(),
            self.a3.clone() - rhs.a3.clone(),
        )
    }
}

impl<T: Scalar> Mul for &GrassmannElement<T> {
    type Output = GrassmannElement<T>;
    fn mul(self, q: Self) -> GrassmannElement<T> {
        let p = self;
        GrassmannElement::new(
            p.a0.clone() * q.a0.clone(),
            p.a0.clone() * q.a1.clone() + p.a1.clone() * q.a0.clone(),
            p.a0.clone() * q.a2.clone() + p.a2.clone() * q.a0.clone(),
            p.a0.clone() * q.a3.clone() + p.a3.clone() * q.a0.clone()
                + p.a1.clone() * q.a2.clone()
                - p.a2.clone() * q.a1.clone(),
        )
    }
}

impl<T: Scalar> Neg for &GrassmannElement<T> {
    type Output = GrassmannElement<T>;
    fn neg(self) -> GrassmannElement<T> {
        GrassmannElement::from_coeffs(self.coeffs().map(|c| -c))
    }
}

forward_owned_ops!(GrassmannElement);

impl<T: Scalar> fmt::Display for GrassmannElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*e1 + {}*e2 + {}*e1e2", self.a0, self.a1, self.a2, self.a3)
    }
}

/// Basis blades as generator bitmasks (`e1 = 0b001`, `e2 = 0b010`, `e3 = 0b100`),
/// in storage order `1, e1, e2, e3, e1e2, e1e3, e2e3, e1e2e3`.
pub const CL3_BASIS: [u8; 8] = [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];

pub const CL3_BASIS_NAMES: [&str; 8] = ["1", "e1", "e2", "e3", "e1e2", "e1e3", "e2e3", "e1e2e3"];

/// Square of each generator: `e1² = e2² = 0`, `e3² = 1`.
const SQUARES: [i8; 3] = [0, 0, 1];

/// Sign picked up when swapping the adjacent pair `e_h e_g → e_g e_h` (`g < h`).
/// Only `e1, e3` commute, matching `E1 E3 = E3 E1`.
const fn swap_sign(g: usize, h: usize) -> i8 {
    if g == 0 && h == 2 {
        1
    } else {
        -1
    }
}

const fn blade_index(mask: u8) -> usize {
    let mut k = 0;
    while k < 8 {
        if CL3_BASIS[k] == mask {
            return k;
        }
        k += 1;
    }
    panic!("not a blade")
}

/// Multiplies two canonically ordered blades, returning `(blade, sign)` with `sign ∈ {−1, 0, 1}`.
const fn blade_product(x: u8, y: u8) -> (u8, i8) {
    let mut acc = x;
    let mut sign: i8 = 1;
    let mut g = 0;
    while g < 3 {
        if y & (1 << g) != 0 {
            // carry e_g left past every higher generator already in acc
            let mut h = g + 1;
            while h < 3 {
                if acc & (1 << h) != 0 {
                    sign *= swap_sign(g, h);
                }
                h += 1;
            }
            if acc & (1 << g) != 0 {
                sign *= SQUARES[g];
                acc &= !(1 << g);
            } else {
                acc |= 1 << g;
            }
        }
        g += 1;
    }
    (acc, sign)
}

const fn build_table() -> [[(u8, i8); 8]; 8] {
    let mut table = [[(0u8, 0i8); 8]; 8];
    let mut i = 0;
    while i < 8 {
        let mut j = 0;
        while j < 8 {
            let (blade, sign) = blade_product(CL3_BASIS[i], CL3_BASIS[j]);
            table[i][j] = (blade_index(blade) as u8, sign);
            j += 1;
        }
        i += 1;
    }
    table
}

/// `CL3_TABLE[i][j] = (k, s)` means `basis_i · basis_j = s · basis_k`.
pub const CL3_TABLE: [[(u8, i8); 8]; 8] = build_table();

/// Element of the 8-dimensional algebra on `e1, e2, e3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cl3Element<T> {
    pub coeffs: [T; 8],
}

impl<T: Scalar> Cl3Element<T> {
    pub fn new(coeffs: [T; 8]) -> Self {
        Self { coeffs }
    }

    pub fn basis(k: usize) -> Self {
        let mut c: [T; 8] = std::array::from_fn(|_| T::zero());
        c[k] = T::one();
        Self::new(c)
    }

    pub fn e1() -> Self {
        Self::basis(1)
    }

    pub fn e2() -> Self {
        Self::basis(2)
    }

    pub fn e3() -> Self {
        Self::basis(3)
    }

    pub fn scalar(r: T) -> Self {
        let mut e = Self::zero();
        e.coeffs[0] = r;
        e
    }

    /// The 2×2 matrix of a basis blade: the ordered product of its generators.
    pub fn basis_matrix(k: usize) -> MatD2<T> {
        let e1 = grassmann_e1_matrix();
        let e2 = grassmann_e2_matrix();
        let e3 = e3_matrix();
        let mask = CL3_BASIS[k];
        [e1, e2, e3]
            .iter()
            .enumerate()
            .filter(|(g, _)| mask & (1 << g) != 0)
            .fold(MatD2::identity(2), |acc, (_, m)| &acc * m)
    }

    pub fn to_matrix(&self) -> MatD2<T> {
        (0..8).fold(MatD2::zeros(2), |acc, k| {
            &acc + &Self::basis_matrix(k).scale(&D2Element::scalar(self.coeffs[k].clone()))
        })
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(x, y)| x.approx_eq(y, tol))
    }

    /// `(y, z)` if this is `e3 + y e2e3 + z e1e2e3` within `tol`.
    pub fn as_point(&self, tol: f64) -> Option<SpherePoint<T>> {
        let c = &self.coeffs;
        let zero_slots = [0, 1, 2, 4, 5];
        if !zero_slots.iter().all(|&k| c[k].is_within(tol)) || !c[3].approx_eq(&T::one(), tol) {
            return None;
        }
        Some(SpherePoint::new(c[6].clone(), c[7].clone()))
    }
}

fn grassmann_e1_matrix<T: Scalar>() -> MatD2<T> {
    MatD2::from_rows(vec![
        vec![D2Element::iota2(), D2Element::zero()],
        vec![D2Element::zero(), -D2Element::iota2()],
    ])
    .expect("2x2")
}

fn grassmann_e2_matrix<T: Scalar>() -> MatD2<T> {
    MatD2::from_rows(vec![
        vec![D2Element::zero(), D2Element::iota1()],
        vec![-D2Element::iota1(), D2Element::zero()],
    ])
    .expect("2x2")
}

fn e3_matrix<T: Scalar>() -> MatD2<T> {
    MatD2::from_rows(vec![
        vec![D2Element::scalar(-T::one()), D2Element::zero()],
        vec![D2Element::zero(), D2Element::one()],
    ])
    .expect("2x2")
}

impl<T: Scalar> From<GrassmannElement<T>> for Cl3Element<T> {
    fn from(q: GrassmannElement<T>) -> Self {
        let z = T::zero;
        Self::new([q.a0, q.a1, q.a2, z(), q.a3, z(), z(), z()])
    }
}

impl<T: Scalar> Zero for Cl3Element<T> {
    fn zero() -> Self {
        Self::new(std::array::from_fn(|_| T::zero()))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl<T: Scalar> One for Cl3Element<T> {
    fn one() -> Self {
        Self::basis(0)
    }
}

impl<T: Scalar> Add for &Cl3Element<T> {
    type Output = Cl3Element<T>;
    fn add(self, rhs: Self) -> Cl3Element<T> {
        Cl3Element::new(std::array::from_fn(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone()))
    }
}

impl<T: Scalar> Sub for &Cl3Element<T> {
    type Output = Cl3Element<T>;
    fn sub(self, rhs: Self) -> Cl3Element<T> {
        Cl3Element::new(std::array::from_fn(|k| self.coeffs[k].clone() - rhs.coeffs[k].clone()))
    }
}

impl<T: Scalar> Neg for &Cl3Element<T> {
    type Output = Cl3Element<T>;
    fn neg(self) -> Cl3Element<T> {
        Cl3Element::new(std::array::from_fn(|k| -self.coeffs[k].clone()))
    }
}

impl<T: Scalar> Mul for &Cl3Element<T> {
    type Output = Cl3Element<T>;
    fn mul(self, rhs: Self) -> Cl3Element<T> {
        let mut out = Cl3Element::<T>::zero();
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                let (k, sign) = CL3_TABLE[i][j];
                let k = k as usize;
                let term = x.clone() * y.clone();
                out.coeffs[k] = match sign {
                    1 => out.coeffs[k].clone() + term,
                    -1 => out.coeffs[k].clone() - term,
                    _ => continue,
                };
            }
        }
        out
    }
}

forward_owned_ops!(Cl3Element);

impl<T: Scalar> fmt::Display for Cl3Element<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .zip(CL3_BASIS_NAMES)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, name)| format!("{c}*{name}"))
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// `q_v = (1 + y e2 + z e1e2) e3 = e3 + y e2e3 + z e1e2e3`.
pub fn point_to_cl3<T: Scalar>(p: &SpherePoint<T>) -> Cl3Element<T> {
    let body = Cl3Element::from(GrassmannElement::new(T::one(), T::zero(), p.y.clone(), p.z.clone()));
    &body * &Cl3Element::e3()
}

/// The sandwich `q q_v q̄`.
pub fn clifford_act<T: Scalar>(q: &GrassmannElement<T>, v: &Cl3Element<T>) -> Result<Cl3Element<T>> {
    if !q.is_lambda1(PREDICATE_TOL) {
        return Err(Error::NotInLambda1);
    }
    if v.as_point(PREDICATE_TOL).is_none() {
        return Err(Error::NotAPointElement);
    }
    let left = Cl3Element::from(q.clone());
    let right = Cl3Element::from(q.conj());
    Ok(&(&left * v) * &right)
}
