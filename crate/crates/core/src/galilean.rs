//! The motion group G(2) of the Galilean plane and its six exact representations.
//!
//! Every representation converts through the canonical parameters `(a, b, θ)`
//! of the lower-triangular 3×3 form
//!
//! ```text
//! [1 0 0]
//! [a 1 0]
//! [b θ 1]
//! ```
//!
//! whose product gives the group law `(a1, b1, θ1)∘(a2, b2, θ2) = (a1 + a2, b1 + b2 + θ1 a2, θ1 + θ2)`.
//!
//! The dual unit `ι` of the two dual-number representations is stored as `i2`
//! inside a [`MatD2`], so all matrix representations share one scalar type.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;
use crate::matrix::MatD2;
use crate::pimenov::D2Element;
use crate::scalar::{Scalar, PREDICATE_TOL};

/// A G(2) element in canonical parameters. `a`, `b` translate along the axes, `theta` is the boost.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GalileanMotion<T> {
    pub a: T,
    pub b: T,
    pub theta: T,
}

/// `(φ, β, γ)` of the SU(D2) form `[[e^{i2 φ}, i1(β + i2 γ)], [−i1(β − i2 γ), e^{−i2 φ}]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuD2Params<T> {
    pub phi: T,
    pub beta: T,
    pub gamma: T,
}

impl<T: Scalar> GalileanMotion<T> {
    pub fn new(a: T, b: T, theta: T) -> Self {
        Self { a, b, theta }
    }

    pub fn identity() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn translation(a: T, b: T) -> Self {
        Self::new(a, b, T::zero())
    }

    pub fn boost(theta: T) -> Self {
        Self::new(T::zero(), T::zero(), theta)
    }

    /// `self ∘ other`, i.e. the matrix product `g(self)·g(other)`: `other` acts first.
    pub fn compose(&self, other: &Self) -> Self {
        Self::new(
            self.a.clone() + other.a.clone(),
            self.b.clone() + other.b.clone() + self.theta.clone() * other.a.clone(),
            self.theta.clone() + other.theta.clone(),
        )
    }

    pub fn inverse(&self) -> Self {
        Self::new(
            -self.a.clone(),
            self.theta.clone() * self.a.clone() - self.b.clone(),
            -self.theta.clone(),
        )
    }

    /// `(θ/2, a/2, b/2 − aθ/4)`.
    pub fn su_d2_params(&self) -> SuD2Params<T> {
        let half = T::half();
        let quarter = T::from_ratio(1, 4);
        SuD2Params {
            phi: self.theta.clone() * half.clone(),
            beta: self.a.clone() * half.clone(),
            gamma: self.b.clone() * half - self.a.clone() * self.theta.clone() * quarter,
        }
    }

    /// Inverse of [`Self::su_d2_params`]: `θ = 2φ`, `a = 2β`, `b = 2γ + 2βφ`.
    pub fn from_su_d2_params(p: &SuD2Params<T>) -> Self {
        let two = T::from_i64(2);
        Self::new(
            two.clone() * p.beta.clone(),
            two.clone() * (p.gamma.clone() + p.beta.clone() * p.phi.clone()),
            two * p.phi.clone(),
        )
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.a.approx_eq(&other.a, tol)
            && self.b.approx_eq(&other.b, tol)
            && self.theta.approx_eq(&other.theta, tol)
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.theta.is_finite()
    }

    fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.a.clone() - other.a.clone(),
            self.b.clone() - other.b.clone(),
            self.theta.clone() - other.theta.clone(),
        ]
        .iter()
        .map(|x| x.to_f64().abs())
        .fold(0.0, f64::max)
    }
}

impl<T: Scalar> Mul for &GalileanMotion<T> {
    type Output = GalileanMotion<T>;
    fn mul(self, rhs: Self) -> GalileanMotion<T> {
        self.compose(rhs)
    }
}

impl<T: Scalar> fmt::Display for GalileanMotion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={}, theta={})", self.a, self.b, self.theta)
    }
}

/// The six exact representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepId {
    /// Real lower-triangular 3×3.
    Std3x3,
    /// Orthogonal 3×3 over D2.
    Ortho3x3D2,
    /// Unimodular 2×2 over D2 in SU(D2).
    SuD2,
    /// Upper-triangular unimodular 2×2 over dual numbers.
    UpperDual,
    /// `[[e^{ιθ}, a + ιb], [0, 1]]` over dual numbers.
    ConvenientDual,
    /// Grassmann elements `1 + φ e1 + β e2 + γ e1e2`.
    Grassmann,
}

impl RepId {
    pub const ALL: [RepId; 6] = [
        RepId::Std3x3,
        RepId::Ortho3x3D2,
        RepId::SuD2,
        RepId::UpperDual,
        RepId::ConvenientDual,
        RepId::Grassmann,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RepId::Std3x3 => "std3x3",
            RepId::Ortho3x3D2 => "ortho3x3-d2",
            RepId::SuD2 => "su-d2",
            RepId::UpperDual => "upper-dual",
            RepId::ConvenientDual => "convenient-dual",
            RepId::Grassmann => "grassmann",
        }
    }

    /// Matrix size, or `None` for the Grassmann representation.
    pub fn matrix_dim(self) -> Option<usize> {
        match self {
            RepId::Std3x3 | RepId::Ortho3x3D2 => Some(3),
            RepId::SuD2 | RepId::UpperDual | RepId::ConvenientDual => Some(2),
            RepId::Grassmann => None,
        }
    }
}

impl fmt::Display for RepId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RepId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        RepId::ALL
            .into_iter()
            .find(|r| r.name() == key || r.name().replace('-', "") == key.replace('-', ""))
            .ok_or_else(|| Error::Parse(format!("unknown representation `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RepPayload<T> {
    Matrix(MatD2<T>),
    Grassmann(GrassmannElement<T>),
}

/// A payload tagged with the representation it claims to belong to.
#[derive(Clone, Debug, PartialEq)]
pub struct RepElement<T> {
    rep: RepId,
    payload: RepPayload<T>,
}

impl<T: Scalar> RepElement<T> {
    /// Pairs a payload with its representation; the payload kind must match.
    pub fn new(rep: RepId, payload: RepPayload<T>) -> Result<Self> {
        match (&payload, rep.matrix_dim()) {
            (RepPayload::Matrix(m), Some(n)) if m.dim() == n => Ok(Self { rep, payload }),
            (RepPayload::Matrix(m), Some(n)) => Err(malformed(
                rep,
                format!("expected {n}x{n} matrix, got {0}x{0}", m.dim()),
            )),
            (RepPayload::Grassmann(_), None) => Ok(Self { rep, payload }),
            (RepPayload::Matrix(_), None) => Err(malformed(rep, "expected a Grassmann element")),
            (RepPayload::Grassmann(_), Some(_)) => Err(malformed(rep, "expected a matrix")),
        }
    }

    pub fn matrix(rep: RepId, m: MatD2<T>) -> Result<Self> {
        Self::new(rep, RepPayload::Matrix(m))
    }

    pub fn grassmann(q: GrassmannElement<T>) -> Self {
        Self { rep: RepId::Grassmann, payload: RepPayload::Grassmann(q) }
    }

    pub fn rep(&self) -> RepId {
        self.rep
    }

    pub fn payload(&self) -> &RepPayload<T> {
        &self.payload
    }

    pub fn as_matrix(&self) -> Option<&MatD2<T>> {
        match &self.payload {
            RepPayload::Matrix(m) => Some(m),
            RepPayload::Grassmann(_) => None,
        }
    }

    pub fn as_grassmann(&self) -> Option<&GrassmannElement<T>> {
        match &self.payload {
            RepPayload::Grassmann(q) => Some(q),
            RepPayload::Matrix(_) => None,
        }
    }

    /// Group product within one representation.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.rep != other.rep {
            return Err(malformed(other.rep, format!("cannot multiply with a {} element", self.rep)));
        }
        let payload = match (&self.payload, &other.payload) {
            (RepPayload::Matrix(x), RepPayload::Matrix(y)) => RepPayload::Matrix(x.try_mul(y)?),
            (RepPayload::Grassmann(x), RepPayload::Grassmann(y)) => RepPayload::Grassmann(x * y),
            _ => unreachable!("payload kind is fixed by the representation"),
        };
        Ok(Self { rep: self.rep, payload })
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rep == other.rep
            && match (&self.payload, &other.payload) {
                (RepPayload::Matrix(x), RepPayload::Matrix(y)) => x.approx_eq(y, tol),
                (RepPayload::Grassmann(x), RepPayload::Grassmann(y)) => x.approx_eq(y, tol),
                _ => false,
            }
    }

    /// Componentwise max deviation as f64; infinite if the representations differ.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        match (&self.payload, &other.payload) {
            _ if self.rep != other.rep => f64::INFINITY,
            (RepPayload::Matrix(x), RepPayload::Matrix(y)) => x.max_deviation(y),
            (RepPayload::Grassmann(x), RepPayload::Grassmann(y)) => (x - y).max_abs(),
            _ => f64::INFINITY,
        }
    }
}

fn malformed(rep: RepId, reason: impl Into<String>) -> Error {
    Error::MalformedRepElement { rep, reason: reason.into() }
}

fn s<T: Scalar>(x: T) -> D2Element<T> {
    D2Element::scalar(x)
}

fn zero<T: Scalar>() -> D2Element<T> {
    D2Element::zero()
}

fn one<T: Scalar>() -> D2Element<T> {
    D2Element::one()
}

fn mat<T: Scalar>(rows: Vec<Vec<D2Element<T>>>) -> MatD2<T> {
    MatD2::from_rows(rows).expect("square by construction")
}

/// `e^{i2 t} = 1 + i2 t`.
fn exp_iota2<T: Scalar>(t: T) -> D2Element<T> {
    D2Element::new(T::one(), T::zero(), t, T::zero())
}

pub(crate) fn std3x3<T: Scalar>(m: &GalileanMotion<T>) -> MatD2<T> {
    mat(vec![
        vec![one(), zero(), zero()],
        vec![s(m.a.clone()), one(), zero()],
        vec![s(m.b.clone()), s(m.theta.clone()), one()],
    ])
}

pub(crate) fn ortho3x3<T: Scalar>(m: &GalileanMotion<T>) -> MatD2<T> {
    let (a, b, t) = (m.a.clone(), m.b.clone(), m.theta.clone());
    mat(vec![
        vec![
            one(),
            D2Element::with_iota1(-a.clone()),
            D2Element::with_iota12(a.clone() * t.clone() - b.clone()),
        ],
        vec![D2Element::with_iota1(a), one(), D2Element::with_iota2(-t.clone())],
        vec![D2Element::with_iota12(b), D2Element::with_iota2(t), one()],
    ])
}

fn su_d2_from_params<T: Scalar>(p: &SuD2Params<T>) -> MatD2<T> {
    let SuD2Params { phi, beta, gamma } = p.clone();
    mat(vec![
        vec![
            exp_iota2(phi.clone()),
            D2Element::new(T::zero(), beta.clone(), T::zero(), gamma.clone()),
        ],
        vec![D2Element::new(T::zero(), -beta, T::zero(), gamma), exp_iota2(-phi)],
    ])
}

pub(crate) fn su_d2<T: Scalar>(m: &GalileanMotion<T>) -> MatD2<T> {
    su_d2_from_params(&m.su_d2_params())
}

pub(crate) fn upper_dual<T: Scalar>(m: &GalileanMotion<T>) -> MatD2<T> {
    // (φ, ζ, η) = (θ/2, a/2, b/2 − aθ/4), the same dictionary as SU(D2)
    let p = m.su_d2_params();
    mat(vec![
        vec![exp_iota2(p.phi.clone()), D2Element::new(p.beta, T::zero(), p.gamma, T::zero())],
        vec![zero(), exp_iota2(-p.phi)],
    ])
}

pub(crate) fn convenient_dual<T: Scalar>(m: &GalileanMotion<T>) -> MatD2<T> {
    mat(vec![
        vec![
            exp_iota2(m.theta.clone()),
            D2Element::new(m.a.clone(), T::zero(), m.b.clone(), T::zero()),
        ],
        vec![zero(), one()],
    ])
}

pub fn to_rep<T: Scalar>(m: &GalileanMotion<T>, rep: RepId) -> RepElement<T> {
    let payload = match rep {
        RepId::Std3x3 => RepPayload::Matrix(std3x3(m)),
        RepId::Ortho3x3D2 => RepPayload::Matrix(ortho3x3(m)),
        RepId::SuD2 => RepPayload::Matrix(su_d2(m)),
        RepId::UpperDual => RepPayload::Matrix(upper_dual(m)),
        RepId::ConvenientDual => RepPayload::Matrix(convenient_dual(m)),
        RepId::Grassmann => RepPayload::Grassmann(GrassmannElement::from_motion(m)),
    };
    RepElement { rep, payload }
}

/// Reads the parameters from their slots without checking the rest of the pattern.
fn read_params<T: Scalar>(e: &RepElement<T>) -> GalileanMotion<T> {
    let m = match &e.payload {
        RepPayload::Grassmann(q) => {
            return GalileanMotion::from_su_d2_params(&SuD2Params {
                phi: q.a1.clone(),
                beta: q.a2.clone(),
                gamma: q.a3.clone(),
            })
        }
        RepPayload::Matrix(m) => m,
    };
    let g = |i, j| m.get(i, j).clone();
    match e.rep {
        RepId::Std3x3 => GalileanMotion::new(g(1, 0).a0, g(2, 0).a0, g(2, 1).a0),
        RepId::Ortho3x3D2 => GalileanMotion::new(g(1, 0).a1, g(2, 0).a3, g(2, 1).a2),
        RepId::SuD2 => GalileanMotion::from_su_d2_params(&SuD2Params {
            phi: g(0, 0).a2,
            beta: g(0, 1).a1,
            gamma: g(0, 1).a3,
        }),
        RepId::UpperDual => GalileanMotion::from_su_d2_params(&SuD2Params {
            phi: g(0, 0).a2,
            beta: g(0, 1).a0,
            gamma: g(0, 1).a2,
        }),
        RepId::ConvenientDual => GalileanMotion::new(g(0, 1).a0, g(0, 1).a2, g(0, 0).a2),
        RepId::Grassmann => unreachable!("handled above"),
    }
}

/// Checks the payload against its representation's structural pattern.
pub fn check_rep<T: Scalar>(e: &RepElement<T>) -> Result<GalileanMotion<T>> {
    let finite = match &e.payload {
        RepPayload::Matrix(m) => m.is_finite(),
        RepPayload::Grassmann(q) => q.is_finite(),
    };
    if !finite {
        return Err(malformed(e.rep, "non-finite entry"));
    }
    let m = read_params(e);
    let rebuilt = to_rep(&m, e.rep);
    if !rebuilt.approx_eq(e, PREDICATE_TOL) {
        return Err(malformed(
            e.rep,
            format!("entries deviate from the pattern by {:e}", rebuilt.max_deviation(e)),
        ));
    }
    let extra_ok = match (e.rep, &e.payload) {
        (RepId::Ortho3x3D2, RepPayload::Matrix(x)) => x.is_orthogonal_unimodular(PREDICATE_TOL),
        (RepId::SuD2, RepPayload::Matrix(x)) => x.is_su_d2(PREDICATE_TOL),
        _ => true,
    };
    if !extra_ok {
        return Err(malformed(e.rep, "membership predicate failed"));
    }
    Ok(m)
}

pub fn validate_rep<T: Scalar>(e: &RepElement<T>) -> bool {
    check_rep(e).is_ok()
}

pub fn from_rep<T: Scalar>(e: &RepElement<T>) -> Result<GalileanMotion<T>> {
    check_rep(e)
}

/// Infinitesimal generators `(A1, A2, A3)` at the identity, for translation
/// along `a`, along `b`, and the boost. They satisfy
/// `[A1, A2] = 0`, `[A2, A3] = 0`, `[A3, A1] = A2`.
pub fn generators<T: Scalar>(rep: RepId) -> Result<[MatD2<T>; 3]> {
    let z = zero::<T>;
    let half = T::half();
    let h = |x: D2Element<T>| x.scale(&half);
    Ok(match rep {
        RepId::Std3x3 => [
            mat(vec![vec![z(), z(), z()], vec![one(), z(), z()], vec![z(), z(), z()]]),
            mat(vec![vec![z(), z(), z()], vec![z(), z(), z()], vec![one(), z(), z()]]),
            mat(vec![vec![z(), z(), z()], vec![z(), z(), z()], vec![z(), one(), z()]]),
        ],
        RepId::Ortho3x3D2 => {
            let i1 = D2Element::<T>::iota1();
            let i2 = D2Element::<T>::iota2();
            let i12 = D2Element::<T>::iota12();
            [
                mat(vec![vec![z(), -&i1, z()], vec![i1.clone(), z(), z()], vec![z(), z(), z()]]),
                mat(vec![vec![z(), z(), -&i12], vec![z(), z(), z()], vec![i12.clone(), z(), z()]]),
                mat(vec![vec![z(), z(), z()], vec![z(), z(), -&i2], vec![z(), i2.clone(), z()]]),
            ]
        }
        RepId::SuD2 => {
            let i1 = h(D2Element::iota1());
            let i2 = h(D2Element::iota2());
            let i12 = h(D2Element::iota12());
            [
                mat(vec![vec![z(), i1.clone()], vec![-&i1, z()]]),
                mat(vec![vec![z(), i12.clone()], vec![i12, z()]]),
                mat(vec![vec![i2.clone(), z()], vec![z(), -&i2]]),
            ]
        }
        RepId::UpperDual => {
            let i2 = h(D2Element::iota2());
            [
                mat(vec![vec![z(), s(half.clone())], vec![z(), z()]]),
                mat(vec![vec![z(), i2.clone()], vec![z(), z()]]),
                mat(vec![vec![i2.clone(), z()], vec![z(), -&i2]]),
            ]
        }
        RepId::ConvenientDual => [
            mat(vec![vec![z(), one()], vec![z(), z()]]),
            mat(vec![vec![z(), D2Element::iota2()], vec![z(), z()]]),
            mat(vec![vec![D2Element::iota2(), z()], vec![z(), z()]]),
        ],
        RepId::Grassmann => return Err(Error::Unsupported(rep)),
    })
}

pub fn commutator<T: Scalar>(x: &MatD2<T>, y: &MatD2<T>) -> Result<MatD2<T>> {
    x.commutator(y)
}

/// Splits `to_rep(m, rep)` into the ordered product
/// (translation by `a`)·(translation by `b`)·(boost by `θ`).
pub fn factorize<T: Scalar>(m: &GalileanMotion<T>, rep: RepId) -> Result<[RepElement<T>; 3]> {
    if !matches!(rep, RepId::Std3x3 | RepId::Ortho3x3D2 | RepId::SuD2) {
        return Err(Error::Unsupported(rep));
    }
    let factors = [
        GalileanMotion::new(m.a.clone(), T::zero(), T::zero()),
        GalileanMotion::new(T::zero(), m.b.clone(), T::zero()),
        GalileanMotion::boost(m.theta.clone()),
    ];
    Ok(factors.map(|f| to_rep(&f, rep)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    fn value<T: Scalar>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }
}

/// General element of SO(3, i1, i2); `σ1 = σ2 = +` is the G(2) component.
pub fn so3_element<T: Scalar>(a: T, b: T, theta: T, sigma1: Sign, sigma2: Sign) -> MatD2<T> {
    let s1: T = sigma1.value();
    let s2: T = sigma2.value();
    mat(vec![
        vec![
            s(s1.clone()),
            D2Element::with_iota1(-(s1.clone() * s2.clone() * a.clone())),
            D2Element::with_iota12(-(s2.clone() * b.clone() - a.clone() * theta.clone())),
        ],
        vec![
            D2Element::with_iota1(a),
            s(s2.clone()),
            D2Element::with_iota2(-(s1.clone() * theta.clone())),
        ],
        vec![D2Element::with_iota12(b), D2Element::with_iota2(theta), s(s1 * s2)],
    ])
}

/// Product of a slice of elements of one representation; `None` for an empty slice.
pub fn product_all<T: Scalar>(elements: &[RepElement<T>]) -> Option<Result<RepElement<T>>> {
    let (first, rest) = elements.split_first()?;
    Some(rest.iter().try_fold(first.clone(), |acc, e| acc.product(e)))
}

/// Largest parameter mismatch between two motions, used by the verifier.
pub(crate) fn motion_deviation<T: Scalar>(x: &GalileanMotion<T>, y: &GalileanMotion<T>) -> f64 {
    x.max_abs_diff(y)
}

impl<T: Scalar> One for GalileanMotion<T> {
    fn one() -> Self {
        Self::identity()
    }
}

impl<T: Scalar> Mul for GalileanMotion<T> {
    type Output = GalileanMotion<T>;
    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs)
    }
}
