//! The randomized property suite behind `galilean verify`.
//!
//! Every property draws its inputs from one ChaCha stream seeded by `seed`, and the
//! suites run in a fixed order, so a report is bit-reproducible for a given seed,
//! trial count and scalar backend.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::galilean::{
    commutator, from_rep, generators, so3_element, to_rep, RepId, Sign,
};
use crate::grassmann::{clifford_act, point_to_cl3, Cl3Element, GrassmannElement, CL3_TABLE};
use crate::matrix::MatD2;
use crate::pimenov::D2Element;
use crate::plane::{act, act_via_rep, distance, moebius, point_matrix_h, stereo_project, GalileanPoint, SpherePoint};
use crate::sampling::{self, RandomScalar, Rng64};
use crate::scalar::{Scalar, PREDICATE_TOL};

/// Componentwise tolerance for ring axioms in float mode.
pub const AXIOM_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: bool,
    pub trials: usize,
    pub failures: usize,
    pub max_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub seed: u64,
    pub trials: usize,
    pub scalar: &'static str,
    pub properties: Vec<PropertyResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "trials": self.trials,
            "scalar": self.scalar,
            "passed": self.passed(),
            "properties": self.properties.iter().map(|p| json!({
                "name": p.name,
                "passed": p.passed,
                "trials": p.trials,
                "failures": p.failures,
                "max_error": p.max_error,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn csv_rows(&self) -> Vec<[String; 5]> {
        self.properties
            .iter()
            .map(|p| {
                [
                    p.name.to_string(),
                    p.passed.to_string(),
                    p.trials.to_string(),
                    p.failures.to_string(),
                    format!("{:e}", p.max_error),
                ]
            })
            .collect()
    }
}

pub const CSV_HEADER: [&str; 5] = ["name", "passed", "trials", "failures", "max_error"];

struct Tally {
    name: &'static str,
    trials: usize,
    failures: usize,
    max_error: f64,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self { name, trials: 0, failures: 0, max_error: 0.0 }
    }

    fn record(&mut self, ok: bool, error: f64) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
        }
        if error.is_nan() || error > self.max_error {
            self.max_error = if error.is_nan() { f64::INFINITY } else { error };
        }
    }

    fn finish(self) -> PropertyResult {
        PropertyResult {
            name: self.name,
            passed: self.failures == 0 && self.trials > 0,
            trials: self.trials,
            failures: self.failures,
            max_error: self.max_error,
        }
    }
}

fn d2_dev<T: Scalar>(x: &D2Element<T>, y: &D2Element<T>) -> f64 {
    (x - y).max_abs()
}

fn point_dev<T: Scalar>(p: &GalileanPoint<T>, q: &GalileanPoint<T>) -> f64 {
    (p.x.clone() - q.x.clone()).to_f64().abs().max((p.y.clone() - q.y.clone()).to_f64().abs())
}

fn cl3_dev<T: Scalar>(x: &Cl3Element<T>, y: &Cl3Element<T>) -> f64 {
    (x - y).coeffs.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
}

/// Runs every property with `trials` random cases each.
///
/// With `fault` set, the homomorphism checks compose in the wrong order; used as a negative control.
pub fn run<T: RandomScalar>(seed: u64, trials: usize, fault: bool) -> Report {
    let mut rng = sampling::rng(seed);
    let r = &mut rng;
    let properties = vec![
        d2_axioms::<T>(r, trials),
        d2_inverse::<T>(r, trials),
        matrix_inverse::<T>(r, trials),
        determinant::<T>(r, trials),
        commutation::<T>(),
        rep_homomorphism::<T>(r, trials, fault),
        rep_round_trip::<T>(r, trials),
        membership::<T>(r, trials),
        action_agreement::<T>(r, trials),
        isometry::<T>(r, trials),
        commuting_square::<T>(r, trials),
        lambda1_homomorphism::<T>(r, trials, fault),
        cl3_table::<T>(),
        clifford_sandwich::<T>(r, trials),
    ];
    Report { seed, trials, scalar: T::NAME, properties }
}

fn d2_axioms<T: RandomScalar>(r: &mut Rng64, trials: usize) -> PropertyResult {
    let mut t = Tally::new("d2_ring_axioms");
    for _ in 0..trials {
        let (x, y, z) = (sampling::d2::<T>(r), sampling::d2::<T>(r), sampling::d2::<T>(r));
        let e = d2_dev(&(&x * &y), &(&y * &x))
            .max(d2_dev(&(&(&x * &y) * &z), &(&x * &(&y * &z))))
            .max(d2_dev(&(&x * &(&y + &z)), &(&(&x * &y) + &(&x * &z))));
        t.record(if T::EXACT { e == 0.0 } else { e <= AXIOM_TOL }, e);
    }
    t.finish()
}

fn d2_inverse<T: RandomScalar>(r: &mut Rng64, trials: usize) -> PropertyResult {
    let mut t = Tally::new("d2_inverse");
    let one = D2Element::<T>::one();
    for _ in 0..trials {
        let x = sampling::invertible_d2::<T>(r, 0.1);
        let e = x.inverse().map_or(f64::INFINITY, |inv| d2_dev(&(&x * &inv), &one));
        t.record(e <= PREDICATE_TOL && (!T::EXACT || e == 0.0), e);
    }
    t.finish()
}

fn min_det<T: Scalar>() -> f64 {
    if T::EXACT {
        0.0
    } else {
        0.5
    }
}

fn matrix_inverse<T: RandomScalar>(r: &mut Rng64, trials: usize) -> PropertyResult {
    let mut t = Tally::new("matd2_inverse");
    for k in 0..trials {
        let n = 2 + k % 2;
        let a = sampling::invertible_matd2::<T>(r, n, min_det::<T>());
        let id = MatD2::identity(n);
        let e = match a.inverse() {
            Ok(inv) => (&a * &inv).max_deviation(&id),
            Err(_) => f64::INFINITY,
        };
        t.record(e <= PREDICATE_TOL && (!T::EXACT || e == 0.0), e);
    }
    t.finish()
}

fn determinant<T: RandomScalar>(r: &mut Rng64, trials: usize) -> PropertyResult {
    let mut t = Tally::new("det_real_part");
    for k in 0..trials {
        let n = 2 + k % 2;
        let a = sampling::sparse_matd2::<T>(r, n);
        let lhs = a.det().a0;
        let rhs = MatD2::from_real(&a.real_part()).det().a0;
        let e = (lhs.clone() - rhs).to_f64().abs();
        let nondegenerate = !lhs.is_within(crate::scalar::EPS_INV);
        let consistent = a.is_invertible() == nondegenerate && a.inverse().is_ok() == nondegenerate;
        t.record(consistent && e <= PREDICATE_TOL && (!T::EXACT || e == 0.0), e);
    }
    t.finish()
}

fn commutation<T: Scalar>() -> PropertyResult {
    let mut t = Tally::new("commutation_relations");
    for rep in [RepId::Std3x3, RepId::Ortho3x3D2, RepId::SuD2, RepId::UpperDual, RepId::ConvenientDual] {
        let [a1, a2, a3] = generators::<T>(rep).expect("matrix representation");
        let zero = MatD2::zeros(a1.dim());
        let e = [
            commutator(&a1, &a2).map(|c| c.max_deviation(&zero)),
            commutator(&a2, &a3).map(|c| c.max_deviation(&zero)),
            commutator(&a3, &a1).map(|c| c.max_deviation(&a2)),
        ]
        .into_iter()
        .map(|x| x.unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);
        t.record(e == 0.0, e);
    }
    let half = T::half();
    let a1 = GrassmannElement::e2().scale(&half);
    let a2 = GrassmannElement::e12().scale(&half);
    let a3 = GrassmannElement::e1().scale(&half);
    let br = |x: &GrassmannElement<T>, y: &GrassmannElement<T>| &(x * y) - &(y * x);
    let e = br(&a1, &a2)
        .max_abs()
        .max(br(&a2, &a3).max_abs())
        .max((&br(&a3, &a1) - &a2).max_abs());
    t.record(e == 0.0, e);
    t.finish()
}

fn rep_homomorphism<T: RandomScalar>(r: &mut Rng64, trials: usize, fault: bool) -> PropertyResult {
    let mut t = Tally::new("rep_homomorphism");
    for _ in 0..trials {
        let (m1, m2) = (sampling::motion::<T>(r), sampling::motion::<T>(r));
        let composed = if fault { m2.compose(&m1) } else { m1.compose(&m2) };
        for rep in RepId::ALL {
            let lhs = to_rep(&composed, rep);
            let e = to_rep(&m1, rep)
                .product(&to_rep(&m2, rep))
                .map_or(f64::INFINITY, |rhs| lhs.max_deviation(&rhs));
            t.record(e <= PREDICATE_TOL && (!T::EXACT || e == 0.0), e);
        }
    }
    t.finish()
}

fn rep_round_trip<T: RandomScalar>(r: &mut Rng64, trials: usize) -> PropertyResult {
    let mut t = Tally::new("rep_round_trip");
    for _ in 0..trials {
        let m = sampling::motion::<T>(r);
        for rep in RepId::ALL {
            let e = from_rep(&to_rep(&m, rep))
                .map_or(f64::INFINITY, |back| crate::galilean::motion_deviation(&back, &m));
            t.record(e <= PREDICATE_TOL && (!T::EXACT || e == 0.0), e);
        }
    }
    t.finish()
}

fn membership<T: RandomScalar>(r: &mut Rng64, trials: usize) -> PropertyResult {
    let mut t = Tally::new("su_d2_and_orthogonal_membership");
    for _ in 0..trials {
        let m = sampling::motion::<T>(r);
        let su = to_rep(&m, RepId::SuD2);
        let ortho = to_rep(&m, RepId::Ortho3x3D2);
        let mut ok = su.as_matrix().is_some_and(|g| g.is_su_d2(PREDICATE_TOL))
            && ortho.as_matrix().is_some_and(|g| g.is_orthogonal_unimodular(PREDICATE_TOL));
        for s1 in Sign::BOTH {
            for s2 in Sign::BOTH {
                let g = so3_element(m.a.clone(), m.b.clone(), m.theta.clone(), s1, s2);
                ok &= g.is_orthogonal_unimodular(PREDICATE_TOL);
            }
        }
        t.record(ok, if ok { 0.0 } else { f64::INFINITY });
    }
    t.finish()
}

fn action_agreement<T: RandomScalar>(r: &mut Rng64, trials: usize) -> PropertyResult {
    let mut t = Tally::new("action_agreement");
    for _ in 0..trials {
        let (m, p) = (sampling::motion::<T>(r), sampling::point::<T>(r));
        let expected = act(&m, &p);
        let e = RepId::ALL
            .into_iter()
            .map(|rep| act_via_rep(&m, &p, rep).map_or(f64::INFINITY, |q| point_dev(&q, &expected)))
            .fold(0.0, f64::max);
        t.record(e <= PREDICATE_TOL && (!T::EXACT || e == 0.0), e);
    }
    t.finish()
}

fn isometry<T: RandomScalar>(r: &mut Rng64, trials: usize) -> PropertyResult {
    let mut t = Tally::new("isometry");
    for k in 0..trials {
        let m = sampling::motion::<T>(r);
        let p = sampling::point::<T>(r);
        let mut q = sampling::point::<T>(r);
        if k % 2 == 0 {
            q.x = p.x.clone();
        }
        let before = distance(&p, &q);
        let after = distance(&act(&m, &p), &act(&m, &q));
        let e = (before - after).to_f64().abs();
        t.record(e <= PREDICATE_TOL && (!T::EXACT || e == 0.0), e);
    }
    t.finish()
}

fn commuting_square<T: RandomScalar>(r: &mut Rng64, trials: usize) -> PropertyResult {
    let mut t = Tally::new("stereographic_commuting_square");
    for _ in 0..trials {
        let m = sampling::motion::<T>(r);
        let v = sampling::sphere_point::<T>(r);
        let e = (|| -> crate::Result<f64> {
            let eta = moebius(&m, &stereo_project(&v).homogeneous())?.normalize()?;
            let rotated: SpherePoint<T> = act_via_rep(&m, &v.clone().into(), RepId::Ortho3x3D2)?.into();
            let expected = stereo_project(&rotated);
            let got = eta.to_projected()?;
            let e1 = (got.eta_y - expected.eta_y).to_f64().abs().max((got.eta_z - expected.eta_z).to_f64().abs());
            Ok(e1.max(eta.outer_star().max_deviation(&point_matrix_h(&rotated))))
        })()
        .unwrap_or(f64::INFINITY);
        t.record(e <= PREDICATE_TOL && (!T::EXACT || e == 0.0), e);
    }
    t.finish()
}

fn lambda1_homomorphism<T: RandomScalar>(r: &mut Rng64, trials: usize, fault: bool) -> PropertyResult {
    let mut t = Tally::new("lambda1_homomorphism");
    for _ in 0..trials {
        let (m1, m2) = (sampling::motion::<T>(r), sampling::motion::<T>(r));
        let composed = if fault { m2.compose(&m1) } else { m1.compose(&m2) };
        let lhs = GrassmannElement::from_motion(&composed);
        let rhs = &GrassmannElement::from_motion(&m1) * &GrassmannElement::from_motion(&m2);
        let e = (&lhs - &rhs).max_abs();
        t.record(e <= PREDICATE_TOL && (!T::EXACT || e == 0.0), e);
    }
    t.finish()
}

fn cl3_table<T: Scalar>() -> PropertyResult {
    let mut t = Tally::new("cl3_matrix_table");
    for i in 0..8 {
        for j in 0..8 {
            let prod = &Cl3Element::<T>::basis(i) * &Cl3Element::basis(j);
            let (k, sign) = CL3_TABLE[i][j];
            let mut expected = Cl3Element::<T>::zero();
            if sign != 0 {
                expected.coeffs[k as usize] = T::from_i64(sign as i64);
            }
            let mat = &Cl3Element::<T>::basis_matrix(i) * &Cl3Element::<T>::basis_matrix(j);
            let e = cl3_dev(&prod, &expected).max(mat.max_deviation(&prod.to_matrix()));
            t.record(e == 0.0, e);
        }
    }
    t.finish()
}

fn clifford_sandwich<T: RandomScalar>(r: &mut Rng64, trials: usize) -> PropertyResult {
    let mut t = Tally::new("clifford_sandwich");
    for _ in 0..trials {
        let m = sampling::motion::<T>(r);
        let v = sampling::sphere_point::<T>(r);
        let q = GrassmannElement::from_motion(&m);
        let e = (|| -> crate::Result<f64> {
            let got = clifford_act(&q, &point_to_cl3(&v))?;
            let via_su: SpherePoint<T> = act_via_rep(&m, &v.clone().into(), RepId::SuD2)?.into();
            Ok(cl3_dev(&got, &point_to_cl3(&via_su)))
        })()
        .unwrap_or(f64::INFINITY);
        t.record(e <= PREDICATE_TOL && (!T::EXACT || e == 0.0), e);
    }
    t.finish()
}
