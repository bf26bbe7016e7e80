//! Points of the Galilean plane and the action of G(2) on them.
//!
//! The plane point `(x, y)` is identified with the sphere point
//! `(1, i1·x, i1i2·y)` of the component `x² = 1` in R³(i1, i2); [`SpherePoint`]
//! stores that pair as `(y, z)`. Stereographic projection from the pole
//! `(−1, 0, 0)` halves both coordinates.

use std::io;

use num_traits::One;

use crate::error::{Error, Result};
use crate::galilean::{to_rep, GalileanMotion, RepId, RepPayload};
use crate::grassmann::{clifford_act, point_to_cl3, GrassmannElement};
use crate::matrix::MatD2;
use crate::pimenov::{D2Element, DualNumber};
use crate::scalar::{Scalar, EPS_DIST, EPS_INV, PREDICATE_TOL};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GalileanPoint<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> GalileanPoint<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.x.approx_eq(&other.x, tol) && self.y.approx_eq(&other.y, tol)
    }
}

/// The sphere point `(1, i1 y, i1i2 z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SpherePoint<T> {
    pub y: T,
    pub z: T,
}

impl<T: Scalar> SpherePoint<T> {
    pub fn new(y: T, z: T) -> Self {
        Self { y, z }
    }

    /// Column `(1, i1 y, i1i2 z)ᵀ`.
    pub fn column(&self) -> [D2Element<T>; 3] {
        [
            D2Element::one(),
            D2Element::with_iota1(self.y.clone()),
            D2Element::with_iota12(self.z.clone()),
        ]
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.y.approx_eq(&other.y, tol) && self.z.approx_eq(&other.z, tol)
    }
}

impl<T: Scalar> From<GalileanPoint<T>> for SpherePoint<T> {
    fn from(p: GalileanPoint<T>) -> Self {
        Self::new(p.x, p.y)
    }
}

impl<T: Scalar> From<SpherePoint<T>> for GalileanPoint<T> {
    fn from(p: SpherePoint<T>) -> Self {
        Self::new(p.y, p.z)
    }
}

/// Degenerate Galilean distance: `|x1 − x2|` unless the abscissae coincide, then `|y1 − y2|`.
pub fn distance<T: Scalar>(p: &GalileanPoint<T>, q: &GalileanPoint<T>) -> T {
    let dx = p.x.clone() - q.x.clone();
    if dx.is_within(EPS_DIST) {
        (p.y.clone() - q.y.clone()).abs()
    } else {
        dx.abs()
    }
}

/// `(x, y) ↦ (x + a, y + θx + b)`
pub fn act<T: Scalar>(m: &GalileanMotion<T>, p: &GalileanPoint<T>) -> GalileanPoint<T> {
    GalileanPoint::new(
        p.x.clone() + m.a.clone(),
        p.y.clone() + m.theta.clone() * p.x.clone() + m.b.clone(),
    )
}

fn mat_vec<T: Scalar>(m: &MatD2<T>, v: &[D2Element<T>]) -> Vec<D2Element<T>> {
    (0..m.dim())
        .map(|i| {
            v.iter()
                .enumerate()
                .fold(D2Element::scalar(T::zero()), |acc, (j, x)| &acc + &(m.get(i, j) * x))
        })
        .collect()
}

/// Acts on `p` inside the carrier of `rep` and reads the image back.
///
/// | rep | carrier |
/// |---|---|
/// | Std3x3 | column `(1, x, y)` |
/// | Ortho3x3D2 | column `(1, i1 x, i1i2 y)` |
/// | SuD2 | `u h_v u⋆` |
/// | UpperDual | `w p_v w⁻¹` |
/// | ConvenientDual | column `(x + ιy, 1)` |
/// | Grassmann | `q q_v q̄` |
pub fn act_via_rep<T: Scalar>(
    m: &GalileanMotion<T>,
    p: &GalileanPoint<T>,
    rep: RepId,
) -> Result<GalileanPoint<T>> {
    let g = to_rep(m, rep);
    let sphere = SpherePoint::from(p.clone());
    let matrix = match g.payload() {
        RepPayload::Matrix(x) => x,
        RepPayload::Grassmann(q) => {
            let image = clifford_act(q, &point_to_cl3(&sphere))?;
            let out = image.as_point(PREDICATE_TOL).ok_or(Error::NotAPointElement)?;
            return Ok(out.into());
        }
    };
    Ok(match rep {
        RepId::Std3x3 => {
            let v = [D2Element::one(), D2Element::scalar(p.x.clone()), D2Element::scalar(p.y.clone())];
            let out = mat_vec(matrix, &v);
            GalileanPoint::new(out[1].a0.clone(), out[2].a0.clone())
        }
        RepId::Ortho3x3D2 => {
            let out = mat_vec(matrix, &sphere.column());
            GalileanPoint::new(out[1].a1.clone(), out[2].a3.clone())
        }
        RepId::SuD2 => {
            let h = point_matrix_h(&sphere);
            let image = matrix.try_mul(&h)?.try_mul(&matrix.star())?;
            point_from_h(&image).into()
        }
        RepId::UpperDual => {
            let pv = point_matrix_p(&sphere);
            let image = matrix.try_mul(&pv)?.try_mul(&matrix.inverse()?)?;
            let corner = image.get(0, 1);
            GalileanPoint::new(corner.a0.clone(), corner.a2.clone())
        }
        RepId::ConvenientDual => {
            let v = [
                DualNumber::new(p.x.clone(), p.y.clone()).embed_iota2(),
                D2Element::one(),
            ];
            let out = mat_vec(matrix, &v);
            GalileanPoint::new(out[0].a0.clone(), out[0].a2.clone())
        }
        RepId::Grassmann => unreachable!("handled above"),
    })
}

/// `h_v = [[0, i1(y/2 + i2 z/2)], [i1(y/2 − i2 z/2), 1]]`
pub fn point_matrix_h<T: Scalar>(p: &SpherePoint<T>) -> MatD2<T> {
    let half = T::half();
    let (hy, hz) = (p.y.clone() * half.clone(), p.z.clone() * half);
    MatD2::from_rows(vec![
        vec![
            D2Element::scalar(T::zero()),
            D2Element::new(T::zero(), hy.clone(), T::zero(), hz.clone()),
        ],
        vec![D2Element::new(T::zero(), hy, T::zero(), -hz), D2Element::one()],
    ])
    .expect("2x2")
}

fn point_from_h<T: Scalar>(h: &MatD2<T>) -> SpherePoint<T> {
    let two = T::from_i64(2);
    let corner = h.get(0, 1);
    SpherePoint::new(two.clone() * corner.a1.clone(), two * corner.a3.clone())
}

/// `p_v = [[−1, y + ιz], [0, 1]]` with `ι = i2`.
pub fn point_matrix_p<T: Scalar>(p: &SpherePoint<T>) -> MatD2<T> {
    MatD2::from_rows(vec![
        vec![
            D2Element::scalar(-T::one()),
            DualNumber::new(p.y.clone(), p.z.clone()).embed_iota2(),
        ],
        vec![D2Element::scalar(T::zero()), D2Element::one()],
    ])
    .expect("2x2")
}

/// Image `(y/2, z/2)` on the plane `x = 0` of the projection from `(−1, 0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectedPoint<T> {
    pub eta_y: T,
    pub eta_z: T,
}

impl<T: Scalar> ProjectedPoint<T> {
    /// The hypercomplex coordinate `ξ = i1(η_y + i2 η_z)`.
    pub fn xi(&self) -> D2Element<T> {
        D2Element::new(T::zero(), self.eta_y.clone(), T::zero(), self.eta_z.clone())
    }

    /// Normalized homogeneous coordinates `(i1 ξ1, 1)`.
    pub fn homogeneous(&self) -> HomogeneousDualPair<T> {
        HomogeneousDualPair::new(
            DualNumber::new(self.eta_y.clone(), self.eta_z.clone()),
            DualNumber::real(T::one()),
        )
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.eta_y.approx_eq(&other.eta_y, tol) && self.eta_z.approx_eq(&other.eta_z, tol)
    }
}

pub fn stereo_project<T: Scalar>(p: &SpherePoint<T>) -> ProjectedPoint<T> {
    let half = T::half();
    ProjectedPoint { eta_y: p.y.clone() * half.clone(), eta_z: p.z.clone() * half }
}

/// Homogeneous coordinates `(i1[y1 + i2 z1], y2 + i2 z2)ᵀ`.
///
/// `first` holds `y1 + ι z1` and `second` holds `y2 + ι z2`, with `ι = i2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousDualPair<T> {
    pub first: DualNumber<T>,
    pub second: DualNumber<T>,
}

impl<T: Scalar> HomogeneousDualPair<T> {
    pub fn new(first: DualNumber<T>, second: DualNumber<T>) -> Self {
        Self { first, second }
    }

    /// The column `(i1 ξ1, ξ2)ᵀ` over D2.
    pub fn column(&self) -> [D2Element<T>; 2] {
        [
            D2Element::new(T::zero(), self.first.re.clone(), T::zero(), self.first.du.clone()),
            self.second.embed_iota2(),
        ]
    }

    /// Inverse of [`Self::column`]; fails unless the entries have that shape.
    pub fn from_column(col: &[D2Element<T>; 2]) -> Result<Self> {
        let [top, bottom] = col;
        let shaped = top.a0.is_within(PREDICATE_TOL)
            && top.a2.is_within(PREDICATE_TOL)
            && bottom.a1.is_within(PREDICATE_TOL)
            && bottom.a3.is_within(PREDICATE_TOL);
        if !shaped {
            return Err(Error::Parse("column is not of the form (i1[y1 + i2 z1], y2 + i2 z2)".into()));
        }
        Ok(Self::new(
            DualNumber::new(top.a1.clone(), top.a3.clone()),
            DualNumber::new(bottom.a0.clone(), bottom.a2.clone()),
        ))
    }

    pub fn is_normalizable(&self) -> bool {
        self.second.re.is_finite() && !self.second.re.is_within(EPS_INV)
    }

    /// Rescales so that `y2 + i2 z2 = 1`.
    pub fn normalize(&self) -> Result<Self> {
        if !self.is_normalizable() {
            return Err(Error::NonNormalizable);
        }
        let inv = self.second.inverse()?;
        Ok(Self::new(&self.first * &inv, DualNumber::real(T::one())))
    }

    /// The projected point of a normalized pair.
    pub fn to_projected(&self) -> Result<ProjectedPoint<T>> {
        let n = self.normalize()?;
        Ok(ProjectedPoint { eta_y: n.first.re, eta_z: n.first.du })
    }

    /// `ξ ξ⋆`, a 2×2 matrix over D2.
    pub fn outer_star(&self) -> MatD2<T> {
        let col = self.column();
        MatD2::from_fn(2, |i, j| &col[i] * &col[j].conj_iota2())
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.first.approx_eq(&other.first, tol) && self.second.approx_eq(&other.second, tol)
    }
}

/// Applies the SU(D2) matrix of `m` to homogeneous coordinates (the fractional-linear map
/// `η = (e^{i2θ/2} ξ + i1(a/2 + i2 b/2) e^{−i2θ/2}) / (−i1(a/2 − i2 b/2) e^{i2θ/2} ξ + e^{−i2θ/2})`
/// written projectively). The result is not normalized.
pub fn moebius<T: Scalar>(
    m: &GalileanMotion<T>,
    xi: &HomogeneousDualPair<T>,
) -> Result<HomogeneousDualPair<T>> {
    if !xi.is_normalizable() {
        return Err(Error::NonNormalizable);
    }
    let u = crate::galilean::su_d2(m);
    let out = mat_vec(&u, &xi.column());
    HomogeneousDualPair::from_column(&[out[0].clone(), out[1].clone()])
}

/// One row of the projection figure data.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionRow<T> {
    pub y: T,
    pub z: T,
    pub image_y: T,
    pub image_z: T,
    pub proj_y: T,
    pub proj_z: T,
    pub proj_image_y: T,
    pub proj_image_z: T,
}

pub const PROJECTION_CSV_HEADER: [&str; 8] =
    ["y", "z", "image_y", "image_z", "proj_y", "proj_z", "proj_image_y", "proj_image_z"];

impl<T: Scalar> ProjectionRow<T> {
    pub fn values(&self) -> [&T; 8] {
        [
            &self.y,
            &self.z,
            &self.image_y,
            &self.image_z,
            &self.proj_y,
            &self.proj_z,
            &self.proj_image_y,
            &self.proj_image_z,
        ]
    }

    pub fn from_values(v: [T; 8]) -> Self {
        let [y, z, image_y, image_z, proj_y, proj_z, proj_image_y, proj_image_z] = v;
        Self { y, z, image_y, image_z, proj_y, proj_z, proj_image_y, proj_image_z }
    }
}

/// For each sphere point: the point, its image under `m` (orthogonal 3×3 route),
/// its projection, and the projection of the image obtained through the
/// fractional-linear map on the plane `x = 0`.
pub fn emit_projection_figure<T: Scalar>(
    points: &[SpherePoint<T>],
    m: &GalileanMotion<T>,
) -> Result<Vec<ProjectionRow<T>>> {
    points
        .iter()
        .map(|p| {
            let image: SpherePoint<T> = act_via_rep(m, &p.clone().into(), RepId::Ortho3x3D2)?.into();
            let proj = stereo_project(p);
            let proj_image = moebius(m, &proj.homogeneous())?.to_projected()?;
            Ok(ProjectionRow {
                y: p.y.clone(),
                z: p.z.clone(),
                image_y: image.y,
                image_z: image.z,
                proj_y: proj.eta_y,
                proj_z: proj.eta_z,
                proj_image_y: proj_image.eta_y,
                proj_image_z: proj_image.eta_z,
            })
        })
        .collect()
}

/// Writes rows as CSV with a header line.
pub fn write_projection_csv<T: Scalar, W: io::Write>(rows: &[ProjectionRow<T>], out: W) -> Result<()> {
    let io_err = |e: csv::Error| Error::Parse(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(PROJECTION_CSV_HEADER).map_err(io_err)?;
    for row in rows {
        w.write_record(row.values().map(|v| v.to_string())).map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_projection_csv<T: Scalar, R: io::Read>(input: R) -> Result<Vec<ProjectionRow<T>>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(|e| Error::Parse(e.to_string()))?;
    if header.iter().ne(PROJECTION_CSV_HEADER) {
        return Err(Error::Parse("unexpected CSV header".into()));
    }
    r.records()
        .map(|rec| {
            let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
            if rec.len() != 8 {
                return Err(Error::Parse("expected 8 columns".into()));
            }
            let vals = rec
                .iter()
                .map(|f| T::parse_str(f).ok_or_else(|| Error::Parse(format!("bad number `{f}`"))))
                .collect::<Result<Vec<T>>>()?;
            let v: [T; 8] = vals.try_into().map_err(|_| Error::Parse("expected 8 columns".into()))?;
            Ok(ProjectionRow::from_values(v))
        })
        .collect()
}

/// Used by [`crate::grassmann`] callers that have a motion rather than a Λ¹ element.
pub fn clifford_act_motion<T: Scalar>(
    m: &GalileanMotion<T>,
    p: &SpherePoint<T>,
) -> Result<SpherePoint<T>> {
    let q = GrassmannElement::from_motion(m);
    clifford_act(&q, &point_to_cl3(p))?
        .as_point(PREDICATE_TOL)
        .ok_or(Error::NotAPointElement)
}
