//! Python bindings for the verification engine.
//!
//! The module mirrors the core surface: Kac matrices and their power
//! identities, shape matrices with their coefficient stacks and moment
//! systems, the lemma battery, and the curvature scans for products of
//! space forms. Exact values cross the boundary as canonical strings
//! (rationals as `p/q`, polynomials in the rendered form used by the
//! command line tables), so nothing is lost to floating point on the
//! way out.

use std::str::FromStr;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;

use kacflow::exact::sample::{seeded_rng, DEFAULT_SEED};
use kacflow::exact::{MultiPoly, PolyMatrix, Rational};
use kacflow::geometry::{self, HorosphericalConfig, PhiSpec, SpaceFormFactor, CENTRAL_DIFF_STEP};
use kacflow::jacobi::{self, CoeffVector, ExpansionMode, DEFAULT_SYMBOLIC_CAP};
use kacflow::kac;
use kacflow::linsys;
use kacflow::suite::{battery, VerifyConfig, REPORT_SCHEMA_VERSION};

fn value_err(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn parse_mode(mode: &str) -> PyResult<ExpansionMode> {
    match mode {
        "mixed" => Ok(ExpansionMode::Mixed),
        "flat" => Ok(ExpansionMode::Flat),
        other => Err(PyValueError::new_err(format!(
            "unknown grading {other:?}, expected \"mixed\" or \"flat\""
        ))),
    }
}

fn mode_parameters(mode: ExpansionMode) -> (MultiPoly, MultiPoly) {
    match mode {
        ExpansionMode::Mixed => (MultiPoly::var("tau1"), MultiPoly::var("tau2")),
        ExpansionMode::Flat => (MultiPoly::zero(), MultiPoly::var("tau")),
    }
}

fn parse_rational(value: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(int) = value.extract::<i64>() {
        return Ok(Rational::from_integer(int.into()));
    }
    let text: String = value.extract()?;
    Rational::from_str(text.trim())
        .map_err(|err| PyValueError::new_err(format!("bad rational {text:?}: {err}")))
}

fn render_matrix(m: &PolyMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j).render()).collect())
        .collect()
}

fn json_to_py(py: Python<'_>, value: &serde_json::Value) -> PyResult<Py<PyAny>> {
    match value {
        serde_json::Value::Null => Ok(py.None()),
        serde_json::Value::Bool(b) => b.into_py_any(py),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py_any(py)
            } else if let Some(u) = n.as_u64() {
                u.into_py_any(py)
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py_any(py)
            }
        }
        serde_json::Value::String(s) => s.into_py_any(py),
        serde_json::Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py_any(py)
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new(py);
            for (key, item) in map {
                dict.set_item(key, json_to_py(py, item)?)?;
            }
            dict.into_py_any(py)
        }
    }
}

fn factor_from_parts(epsilon: f64, dim: usize, bases: Vec<f64>) -> PyResult<SpaceFormFactor> {
    SpaceFormFactor::new(epsilon, dim, bases).map_err(value_err)
}

fn umbilic_factor(epsilon: f64, dim: usize) -> PyResult<SpaceFormFactor> {
    if epsilon == 0.0 {
        SpaceFormFactor::hyperplane(dim).map_err(value_err)
    } else {
        SpaceFormFactor::horosphere(epsilon, dim).map_err(value_err)
    }
}

/// Symmetric shape matrix driving the radial determinant expansion.
#[pyclass(name = "ShapeMatrix")]
struct PyShapeMatrix {
    inner: jacobi::ShapeMatrix,
}

#[pymethods]
impl PyShapeMatrix {
    /// Fully symbolic matrix with entries `a11 .. aNN`.
    #[staticmethod]
    fn symbolic(n1: usize, n2: usize) -> PyResult<Self> {
        jacobi::ShapeMatrix::symbolic(n1, n2)
            .map(|inner| PyShapeMatrix { inner })
            .map_err(value_err)
    }

    /// Symbolic matrix whose first row and column vanish.
    #[staticmethod]
    fn symbolic_zero_first(n1: usize, n2: usize) -> PyResult<Self> {
        jacobi::ShapeMatrix::symbolic_zero_first(n1, n2)
            .map(|inner| PyShapeMatrix { inner })
            .map_err(value_err)
    }

    /// Zero matrix of the right order.
    #[staticmethod]
    fn zero(n1: usize, n2: usize) -> PyResult<Self> {
        jacobi::ShapeMatrix::zero(n1, n2)
            .map(|inner| PyShapeMatrix { inner })
            .map_err(value_err)
    }

    /// Seeded random symmetric matrix with small rational entries.
    #[staticmethod]
    #[pyo3(signature = (n1, n2, seed=DEFAULT_SEED))]
    fn random(n1: usize, n2: usize, seed: u64) -> PyResult<Self> {
        let mut rng = seeded_rng(seed);
        jacobi::ShapeMatrix::random_symmetric(n1, n2, &mut rng)
            .map(|inner| PyShapeMatrix { inner })
            .map_err(value_err)
    }

    /// Builds from explicit rows. Entries may be Python integers or
    /// strings like `"3/4"`; the matrix must be symmetric.
    #[staticmethod]
    fn from_rows(n1: usize, n2: usize, rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let parsed: Vec<Vec<Rational>> = rows
            .iter()
            .map(|row| row.iter().map(parse_rational).collect())
            .collect::<PyResult<_>>()?;
        jacobi::ShapeMatrix::from_rows(n1, n2, &parsed)
            .map(|inner| PyShapeMatrix { inner })
            .map_err(value_err)
    }

    /// First factor dimension.
    #[getter]
    fn n1(&self) -> usize {
        self.inner.n1()
    }

    /// Second factor dimension.
    #[getter]
    fn n2(&self) -> usize {
        self.inner.n2()
    }

    /// Matrix order `n1 + n2 - 1`.
    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    /// True when any entry is a non-constant polynomial.
    #[getter]
    fn is_symbolic(&self) -> bool {
        self.inner.is_symbolic()
    }

    /// All entries rendered row by row.
    fn entries(&self) -> Vec<Vec<String>> {
        let order = self.inner.order();
        (0..order)
            .map(|i| (0..order).map(|j| self.inner.entry(i, j).render()).collect())
            .collect()
    }

    /// Rendered trace.
    fn trace(&self) -> String {
        self.inner.trace().render()
    }

    fn __repr__(&self) -> String {
        format!(
            "ShapeMatrix(n1={}, n2={}, order={})",
            self.inner.n1(),
            self.inner.n2(),
            self.inner.order()
        )
    }
}

/// Kac matrix of the second kind with symbolic parameters x and y,
/// rendered entry by entry.
#[pyfunction]
fn kac_matrix(n1: usize, n2: usize) -> PyResult<Vec<Vec<String>>> {
    let k = kac::build_kac_second(n1, n2, &MultiPoly::var("x"), &MultiPoly::var("y"))
        .map_err(value_err)?;
    Ok(render_matrix(&k))
}

/// Spectrum prediction at rational square roots sx and sy: eigenvalues,
/// exact rank, and the characteristic polynomial comparison.
#[pyfunction]
fn predicted_spectrum(
    py: Python<'_>,
    n1: usize,
    n2: usize,
    sx: &Bound<'_, PyAny>,
    sy: &Bound<'_, PyAny>,
) -> PyResult<Py<PyAny>> {
    let sx = parse_rational(sx)?;
    let sy = parse_rational(sy)?;
    let report = kac::predicted_spectrum(n1, n2, &sx, &sy).map_err(value_err)?;
    let eigenvalues: Vec<String> = report.predicted.iter().map(Rational::to_string).collect();
    let dict = PyDict::new(py);
    dict.set_item("eigenvalues", eigenvalues)?;
    dict.set_item("rank", report.computed_rank)?;
    dict.set_item("parity_expected_rank", report.parity_expected_rank)?;
    dict.set_item("simple", report.simple)?;
    dict.set_item("char_poly_matches", report.char_poly_matches)?;
    dict.into_py_any(py)
}

/// Coordinates of the eigenvector for the largest eigenvalue, u-major,
/// rendered as exact rationals.
#[pyfunction]
fn e1_coordinates(
    n1: usize,
    n2: usize,
    sx: &Bound<'_, PyAny>,
    sy: &Bound<'_, PyAny>,
) -> PyResult<Vec<String>> {
    let sx = parse_rational(sx)?;
    let sy = parse_rational(sy)?;
    let coords = kac::e1_eigen_coordinates(n1, n2, &sx, &sy).map_err(value_err)?;
    Ok(coords.iter().map(Rational::to_string).collect())
}

/// True when the m-th power of the one-parameter Kac matrix has the
/// chessboard zero pattern.
#[pyfunction]
fn chessboard_check(n: usize, m: u32) -> PyResult<bool> {
    kac::chessboard_check(n, &MultiPoly::var("y"), m).map_err(value_err)
}

/// True when the first row of the m-th Kac power carries the binomial
/// coefficient pattern.
#[pyfunction]
fn binomial_check(n1: usize, n2: usize, m: u32) -> PyResult<bool> {
    kac::km_binomial_check(n1, n2, &MultiPoly::var("x"), &MultiPoly::var("y"), m)
        .map_err(value_err)
}

/// True when the m-th power of the doubled block matrix splits into Kac
/// powers as published.
#[pyfunction]
fn block_power_check(n1: usize, n2: usize, m: u32) -> PyResult<bool> {
    kac::q_power_check(n1, n2, &MultiPoly::var("x"), &MultiPoly::var("y"), m).map_err(value_err)
}

/// Cell-by-cell comparison of the published block power table against
/// direct computation, for the first factor fixed at dimension five.
#[pyfunction]
fn block_table_comparison(py: Python<'_>, n2: usize) -> PyResult<Py<PyAny>> {
    let (tau1, tau2) = mode_parameters(ExpansionMode::Mixed);
    let cells = kac::table5_comparison(n2, &tau1, &tau2).map_err(value_err)?;
    let list = PyList::empty(py);
    for cell in &cells {
        let dict = PyDict::new(py);
        dict.set_item("m", cell.m)?;
        dict.set_item("l", cell.l)?;
        dict.set_item("matches", cell.matches)?;
        dict.set_item("published", &cell.published)?;
        dict.set_item("computed", &cell.computed)?;
        list.append(dict)?;
    }
    list.into_py_any(py)
}

fn stack_to_py(py: Python<'_>, stack: &CoeffVector) -> PyResult<Py<PyAny>> {
    let dict = PyDict::new(py);
    match stack.mode {
        ExpansionMode::Mixed => {
            for u in 0..stack.n1 {
                for v in 0..stack.n2 {
                    dict.set_item(format!("alpha[{u},{v}]"), stack.alpha(u, v).render())?;
                }
            }
            for u in 0..stack.n1 {
                for v in 0..stack.n2 {
                    dict.set_item(format!("beta[{u},{v}]"), stack.beta(u, v).render())?;
                }
            }
        }
        ExpansionMode::Flat => {
            for u in 0..=stack.n1 {
                for v in 0..stack.n2 {
                    dict.set_item(format!("alpha[{u},{v}]"), stack.alpha(u, v).render())?;
                }
            }
        }
    }
    dict.into_py_any(py)
}

/// Zeroth and first coefficient stacks of the radial determinant in the
/// requested grading, each a dict from `alpha[u,v]` / `beta[u,v]` labels
/// to rendered polynomials.
#[pyfunction]
#[pyo3(signature = (shape, mode="mixed"))]
fn expansion_stack(py: Python<'_>, shape: PyRef<'_, PyShapeMatrix>, mode: &str) -> PyResult<Py<PyAny>> {
    let mode = parse_mode(mode)?;
    let (tau1, tau2) = mode_parameters(mode);
    let p0 = jacobi::expand_d(&shape.inner, &tau1, &tau2, DEFAULT_SYMBOLIC_CAP).map_err(value_err)?;
    let p1 = jacobi::coeff_derivative(&p0, &tau1, &tau2).map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("mode", mode.to_string())?;
    dict.set_item("order0", stack_to_py(py, &p0)?)?;
    dict.set_item("order1", stack_to_py(py, &p1)?)?;
    dict.into_py_any(py)
}

/// Checks that differentiating the coefficient stacks agrees with the
/// companion matrix action through derivative order k_max.
#[pyfunction]
#[pyo3(signature = (shape, mode="mixed", k_max=3))]
fn recurrence_check(
    py: Python<'_>,
    shape: PyRef<'_, PyShapeMatrix>,
    mode: &str,
    k_max: usize,
) -> PyResult<Py<PyAny>> {
    let mode = parse_mode(mode)?;
    let (tau1, tau2) = mode_parameters(mode);
    let check = jacobi::recurrence_check(&shape.inner, &tau1, &tau2, k_max, DEFAULT_SYMBOLIC_CAP)
        .map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("pass", check.pass)?;
    dict.set_item("failure", check.failure)?;
    dict.into_py_any(py)
}

/// Checks the oscillator equations and initial values of the
/// perturbation matrix entries.
#[pyfunction]
#[pyo3(signature = (shape, mode="mixed"))]
fn ivp_check(py: Python<'_>, shape: PyRef<'_, PyShapeMatrix>, mode: &str) -> PyResult<Py<PyAny>> {
    let mode = parse_mode(mode)?;
    let (tau1, tau2) = mode_parameters(mode);
    let check = jacobi::ivp_check(&shape.inner, &tau1, &tau2).map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("pass", check.pass)?;
    match &check.witness {
        Some(w) => {
            let witness = PyDict::new(py);
            witness.set_item("row", w.row)?;
            witness.set_item("col", w.col)?;
            witness.set_item("relation", &w.relation)?;
            dict.set_item("witness", witness)?;
        }
        None => dict.set_item("witness", py.None())?,
    }
    dict.into_py_any(py)
}

/// Wide moment matrix of the shape matrix in the requested grading,
/// rendered row by row.
#[pyfunction]
#[pyo3(signature = (shape, mode="mixed"))]
fn moment_matrix(shape: PyRef<'_, PyShapeMatrix>, mode: &str) -> PyResult<Vec<Vec<String>>> {
    let mode = parse_mode(mode)?;
    let (tau1, tau2) = mode_parameters(mode);
    let bundle = linsys::build_bundle(&shape.inner, &tau1, &tau2, mode).map_err(value_err)?;
    Ok(render_matrix(&bundle.mbar))
}

/// Runs the full lemma battery and returns one dict per report, in the
/// same shape as the JSON emitted by the command line.
#[pyfunction]
#[pyo3(signature = (
    n1,
    n2,
    mode="mixed",
    tau_samples=20,
    seed=DEFAULT_SEED,
    symbolic_cap=DEFAULT_SYMBOLIC_CAP,
    timings=false,
))]
#[allow(clippy::too_many_arguments)]
fn run_battery(
    py: Python<'_>,
    n1: usize,
    n2: usize,
    mode: &str,
    tau_samples: usize,
    seed: u64,
    symbolic_cap: usize,
    timings: bool,
) -> PyResult<Py<PyAny>> {
    let config = VerifyConfig {
        n1,
        n2,
        mode: parse_mode(mode)?,
        tau_samples,
        seed,
        symbolic_cap,
        timings,
    };
    let reports = battery(&config).map_err(value_err)?;
    let value = serde_json::to_value(&reports)
        .map_err(|err| PyRuntimeError::new_err(err.to_string()))?;
    json_to_py(py, &value)
}

/// Numeric state of the parallel hypersurface at radial distance r:
/// the perturbation matrix, its shape operator, and the determinant
/// data behind the mean curvature identity.
#[pyfunction]
fn parallel_state(
    py: Python<'_>,
    shape: PyRef<'_, PyShapeMatrix>,
    tau1: f64,
    tau2: f64,
    r: f64,
) -> PyResult<Py<PyAny>> {
    let state = jacobi::parallel_state(&shape.inner, tau1, tau2, r).map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("r", state.r)?;
    dict.set_item("b", state.b)?;
    dict.set_item("b_prime", state.b_prime)?;
    dict.set_item("shape_operator", state.a_r)?;
    dict.set_item("h", state.h_r)?;
    dict.set_item("d", state.d_r)?;
    dict.set_item("d_prime", state.d_prime_r)?;
    dict.into_py_any(py)
}

/// Scans a product immersion over umbilic base leaves with a linear
/// profile and reports whether the angle and curvatures stay constant.
/// A factor with zero curvature uses a hyperplane base, a negatively
/// curved factor a horosphere.
#[pyfunction]
#[pyo3(signature = (n1, n2, epsilon1, epsilon2, slope, s_min=-5.0, s_max=5.0, steps=100))]
#[allow(clippy::too_many_arguments)]
fn horospherical_scan(
    py: Python<'_>,
    n1: usize,
    n2: usize,
    epsilon1: f64,
    epsilon2: f64,
    slope: f64,
    s_min: f64,
    s_max: f64,
    steps: usize,
) -> PyResult<Py<PyAny>> {
    let config = HorosphericalConfig {
        f1: umbilic_factor(epsilon1, n1)?,
        f2: umbilic_factor(epsilon2, n2)?,
        slope,
        s_min,
        s_max,
        steps,
    };
    let report = geometry::horospherical_suite(&config).map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("is_horospherical", report.is_horospherical)?;
    dict.set_item("theta", report.theta)?;
    dict.set_item("h", report.h)?;
    dict.set_item("theta_deviation", report.theta_deviation)?;
    dict.set_item("curvature_deviation", report.curvature_deviation)?;
    dict.set_item("h_deviation", report.h_deviation)?;
    dict.set_item("constant", report.constant)?;
    dict.into_py_any(py)
}

/// Pointwise curvature data of a product immersion with a linear
/// profile of the given slope: speed, angle function, and all principal
/// curvatures at parameter s.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn product_curvatures(
    py: Python<'_>,
    epsilon1: f64,
    dim1: usize,
    bases1: Vec<f64>,
    epsilon2: f64,
    dim2: usize,
    bases2: Vec<f64>,
    slope: f64,
    s: f64,
) -> PyResult<Py<PyAny>> {
    let f1 = factor_from_parts(epsilon1, dim1, bases1)?;
    let f2 = factor_from_parts(epsilon2, dim2, bases2)?;
    let phi = PhiSpec::linear(slope);
    let state = geometry::product_curvatures(&f1, &f2, &phi, s).map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("s", state.s)?;
    dict.set_item("w", state.w)?;
    dict.set_item("theta", state.theta)?;
    dict.set_item("k1", state.k1)?;
    dict.set_item("k_factor1", state.k_factor1)?;
    dict.set_item("k_factor2", state.k_factor2)?;
    dict.set_item("h", state.h)?;
    dict.into_py_any(py)
}

/// Absolute residual of the Riccati equation satisfied by the parallel
/// flow of a principal curvature, via central differences of width h.
#[pyfunction]
#[pyo3(signature = (kappa0, epsilon, t, h=CENTRAL_DIFF_STEP))]
fn riccati_residual(kappa0: f64, epsilon: f64, t: f64, h: f64) -> PyResult<f64> {
    geometry::riccati_residual(kappa0, epsilon, t, h).map_err(value_err)
}

/// Residuals of the two trace identities tying the derivatives of the
/// angle function and the profile to the mean curvature.
#[pyfunction]
#[pyo3(signature = (epsilon1, dim1, bases1, epsilon2, dim2, bases2, slope, s, h=CENTRAL_DIFF_STEP))]
#[allow(clippy::too_many_arguments)]
fn trace_residuals(
    epsilon1: f64,
    dim1: usize,
    bases1: Vec<f64>,
    epsilon2: f64,
    dim2: usize,
    bases2: Vec<f64>,
    slope: f64,
    s: f64,
    h: f64,
) -> PyResult<(f64, f64)> {
    let f1 = factor_from_parts(epsilon1, dim1, bases1)?;
    let f2 = factor_from_parts(epsilon2, dim2, bases2)?;
    let phi = PhiSpec::linear(slope);
    geometry::trace_identity_check(&f1, &f2, &phi, s, h).map_err(value_err)
}

#[pymodule]
fn kacflow_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_SEED", DEFAULT_SEED)?;
    m.add("DEFAULT_SYMBOLIC_CAP", DEFAULT_SYMBOLIC_CAP)?;
    m.add("REPORT_SCHEMA_VERSION", REPORT_SCHEMA_VERSION)?;
    m.add_class::<PyShapeMatrix>()?;
    m.add_function(wrap_pyfunction!(kac_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(e1_coordinates, m)?)?;
    m.add_function(wrap_pyfunction!(chessboard_check, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_check, m)?)?;
    m.add_function(wrap_pyfunction!(block_power_check, m)?)?;
    m.add_function(wrap_pyfunction!(block_table_comparison, m)?)?;
    m.add_function(wrap_pyfunction!(expansion_stack, m)?)?;
    m.add_function(wrap_pyfunction!(recurrence_check, m)?)?;
    m.add_function(wrap_pyfunction!(ivp_check, m)?)?;
    m.add_function(wrap_pyfunction!(moment_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(run_battery, m)?)?;
    m.add_function(wrap_pyfunction!(parallel_state, m)?)?;
    m.add_function(wrap_pyfunction!(horospherical_scan, m)?)?;
    m.add_function(wrap_pyfunction!(product_curvatures, m)?)?;
    m.add_function(wrap_pyfunction!(riccati_residual, m)?)?;
    m.add_function(wrap_pyfunction!(trace_residuals, m)?)?;
    Ok(())
}
