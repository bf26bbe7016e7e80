//! Python bindings over the f64 backend, plus JSON entry points that accept `scalar="rational"`.

use galilean_core as core;
use galilean_core::json::JsonCodec;
use galilean_core::Scalar;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

type Rows = Vec<Vec<(f64, f64, f64, f64)>>;

fn rep_id(name: &str) -> PyResult<core::RepId> {
    name.parse().map_err(err)
}

#[pyclass(name = "D2", from_py_object)]
#[derive(Clone)]
pub struct PyD2(core::D2Element<f64>);

#[pymethods]
impl PyD2 {
    #[new]
    #[pyo3(signature = (a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0))]
    fn new(a0: f64, a1: f64, a2: f64, a3: f64) -> Self {
        Self(core::D2Element::new(a0, a1, a2, a3))
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(err)
    }

    fn coeffs(&self) -> (f64, f64, f64, f64) {
        let [a, b, c, d] = self.0.coeffs();
        (a, b, c, d)
    }

    fn is_invertible(&self) -> bool {
        self.0.is_invertible()
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inverse().map(Self).map_err(err)
    }

    fn conj(&self) -> Self {
        Self(self.0.conj_iota2())
    }

    fn exp(&self) -> Self {
        Self(self.0.exp())
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("D2({})", self.0)
    }
}

#[pyclass(name = "Motion", from_py_object)]
#[derive(Clone)]
pub struct PyMotion(core::GalileanMotion<f64>);

#[pymethods]
impl PyMotion {
    #[new]
    #[pyo3(signature = (a = 0.0, b = 0.0, theta = 0.0))]
    fn new(a: f64, b: f64, theta: f64) -> Self {
        Self(core::GalileanMotion::new(a, b, theta))
    }

    #[getter]
    fn a(&self) -> f64 {
        self.0.a
    }

    #[getter]
    fn b(&self) -> f64 {
        self.0.b
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.0.theta
    }

    /// `self ∘ other`; `other` acts first.
    fn compose(&self, other: &Self) -> Self {
        Self(self.0.compose(&other.0))
    }

    fn __mul__(&self, other: &Self) -> Self {
        self.compose(other)
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    /// `(phi, beta, gamma)`
    fn su_d2_params(&self) -> (f64, f64, f64) {
        let p = self.0.su_d2_params();
        (p.phi, p.beta, p.gamma)
    }

    fn to_rep(&self, rep: &str) -> PyResult<PyRepElement> {
        Ok(PyRepElement(core::to_rep(&self.0, rep_id(rep)?)))
    }

    fn act(&self, x: f64, y: f64) -> (f64, f64) {
        let p = core::act(&self.0, &core::GalileanPoint::new(x, y));
        (p.x, p.y)
    }

    fn act_via_rep(&self, x: f64, y: f64, rep: &str) -> PyResult<(f64, f64)> {
        let p = core::act_via_rep(&self.0, &core::GalileanPoint::new(x, y), rep_id(rep)?).map_err(err)?;
        Ok((p.x, p.y))
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.0.approx_eq(&other.0, tol)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Motion(a={}, b={}, theta={})", self.0.a, self.0.b, self.0.theta)
    }
}

#[pyclass(name = "RepElement", from_py_object)]
#[derive(Clone)]
pub struct PyRepElement(core::RepElement<f64>);

#[pymethods]
impl PyRepElement {
    #[getter]
    fn rep(&self) -> &'static str {
        self.0.rep().name()
    }

    /// Matrix entries as `(a0, a1, a2, a3)` tuples, or `None` for a Grassmann element.
    fn matrix(&self) -> Option<Rows> {
        self.0.as_matrix().map(|m| {
            m.rows()
                .iter()
                .map(|r| r.iter().map(|x| (x.a0, x.a1, x.a2, x.a3)).collect())
                .collect()
        })
    }

    fn to_motion(&self) -> PyResult<PyMotion> {
        core::from_rep(&self.0).map(PyMotion).map_err(err)
    }

    fn is_valid(&self) -> bool {
        core::validate_rep(&self.0)
    }

    fn product(&self, other: &Self) -> PyResult<Self> {
        self.0.product(&other.0).map(Self).map_err(err)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.product(other)
    }

    fn convert(&self, target: &str) -> PyResult<Self> {
        let m = core::check_rep(&self.0).map_err(err)?;
        Ok(Self(core::to_rep(&m, rep_id(target)?)))
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        core::RepElement::from_json_str(text).map(Self).map_err(err)
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.0.approx_eq(&other.0, tol)
    }

    fn __repr__(&self) -> String {
        format!("RepElement({})", self.to_json())
    }
}

#[pyclass(name = "Grassmann", from_py_object)]
#[derive(Clone)]
pub struct PyGrassmann(core::GrassmannElement<f64>);

#[pymethods]
impl PyGrassmann {
    #[new]
    #[pyo3(signature = (a0 = 1.0, a1 = 0.0, a2 = 0.0, a3 = 0.0))]
    fn new(a0: f64, a1: f64, a2: f64, a3: f64) -> Self {
        Self(core::GrassmannElement::new(a0, a1, a2, a3))
    }

    #[staticmethod]
    fn from_motion(m: &PyMotion) -> Self {
        Self(core::motion_to_lambda1(&m.0))
    }

    fn to_motion(&self) -> PyResult<PyMotion> {
        core::lambda1_to_motion(&self.0).map(PyMotion).map_err(err)
    }

    fn coeffs(&self) -> (f64, f64, f64, f64) {
        let [a, b, c, d] = self.0.coeffs();
        (a, b, c, d)
    }

    fn conj(&self) -> Self {
        Self(self.0.conj())
    }

    fn norm_sq(&self) -> f64 {
        self.0.norm_sq()
    }

    /// Sandwich action on the sphere point `(y, z)`.
    fn act(&self, y: f64, z: f64) -> PyResult<(f64, f64)> {
        let v = core::clifford_act(&self.0, &core::point_to_cl3(&core::SpherePoint::new(y, z))).map_err(err)?;
        let p = v.as_point(1e-9).ok_or_else(|| err(core::Error::NotAPointElement))?;
        Ok((p.y, p.z))
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Grassmann({})", self.0)
    }
}

#[pyfunction]
fn distance(p: (f64, f64), q: (f64, f64)) -> f64 {
    core::distance(&core::GalileanPoint::new(p.0, p.1), &core::GalileanPoint::new(q.0, q.1))
}

#[pyfunction]
fn stereo_project(y: f64, z: f64) -> (f64, f64) {
    let p = core::stereo_project(&core::SpherePoint::new(y, z));
    (p.eta_y, p.eta_z)
}

/// Image of the projected point `(eta_y, eta_z)` under the fractional-linear map of `m`.
#[pyfunction]
fn moebius(m: &PyMotion, eta_y: f64, eta_z: f64) -> PyResult<(f64, f64)> {
    let xi = core::ProjectedPoint { eta_y, eta_z }.homogeneous();
    let p = core::moebius(&m.0, &xi).and_then(|h| h.to_projected()).map_err(err)?;
    Ok((p.eta_y, p.eta_z))
}

fn json_loads<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

fn scalar_kind(scalar: &str) -> PyResult<bool> {
    match scalar {
        "rational" => Ok(true),
        "float" => Ok(false),
        other => Err(PyValueError::new_err(format!("scalar must be 'rational' or 'float', got '{other}'"))),
    }
}

/// Runs the property suite and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (seed = 42, trials = 1000, scalar = "float"))]
fn verify<'py>(py: Python<'py>, seed: u64, trials: usize, scalar: &str) -> PyResult<Bound<'py, PyAny>> {
    if trials == 0 {
        return Err(PyValueError::new_err("trials must be at least 1"));
    }
    let report = if scalar_kind(scalar)? {
        core::verify::run::<core::Rational>(seed, trials, false)
    } else {
        core::verify::run::<f64>(seed, trials, false)
    };
    json_loads(py, &report.to_json().to_string())
}

fn convert_typed<T: Scalar>(element: &str, target: core::RepId) -> PyResult<String> {
    let v = core::RepElement::<T>::from_json_str(element).map_err(err)?;
    let m = core::check_rep(&v).map_err(err)?;
    Ok(core::to_rep(&m, target).to_json().to_string())
}

/// Converts a JSON representation element; `scalar="rational"` keeps the arithmetic exact.
#[pyfunction]
#[pyo3(signature = (element, target, scalar = "rational"))]
fn convert_json(element: &str, target: &str, scalar: &str) -> PyResult<String> {
    let target = rep_id(target)?;
    if scalar_kind(scalar)? {
        convert_typed::<core::Rational>(element, target)
    } else {
        convert_typed::<f64>(element, target)
    }
}

#[pyfunction]
fn representations() -> Vec<&'static str> {
    core::RepId::ALL.iter().map(|r| r.name()).collect()
}

#[pymodule]
fn galilean(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyD2>()?;
    m.add_class::<PyMotion>()?;
    m.add_class::<PyRepElement>()?;
    m.add_class::<PyGrassmann>()?;
    m.add_function(wrap_pyfunction!(distance, m)?)?;
    m.add_function(wrap_pyfunction!(stereo_project, m)?)?;
    m.add_function(wrap_pyfunction!(moebius, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(convert_json, m)?)?;
    m.add_function(wrap_pyfunction!(representations, m)?)?;
    Ok(())
}
