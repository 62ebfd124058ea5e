//! Python bindings: the parameter and boundary-condition types, spectra,
//! mode families and the symmetry checks.
//!
//! Structured results (classification, invariance certificates, Fock
//! reports, the table) come back as plain dicts built from their JSON form.

use ads2::boundary::{classify_bc, Mat2, NamedBc, PauliParams, RobinParams, SelfAdjointBC};
use ads2::config::RunConfig;
use ads2::extensions::map_um_to_bc;
use ads2::modes::{kg_inner_product, mode_ode_residual, Family, ModeFunction};
use ads2::spectrum::{self, ScanOptions};
use ads2::symmetry::{self, FockFamily, FockTruncation};
use ads2::{FieldParams, C64};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

fn to_py(e: ads2::Error) -> PyErr {
    match e {
        ads2::Error::Domain(_) | ads2::Error::Config(_) | ads2::Error::BoundaryCondition(_) | ads2::Error::Regime(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Any serialisable value as the matching Python object.
fn to_object<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<PyObject> {
    let s = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import_bound("json")?.call_method1("loads", (s,))?.unbind())
}

#[pyclass(name = "FieldParams", frozen)]
#[derive(Clone, Copy)]
struct PyFieldParams(FieldParams);

#[pymethods]
impl PyFieldParams {
    #[new]
    fn new(lam: f64) -> PyResult<Self> {
        FieldParams::new(lam).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn from_mass_sq(m2: f64) -> PyResult<Self> {
        FieldParams::from_mass_sq(m2).map(Self).map_err(to_py)
    }

    #[getter]
    fn lam(&self) -> f64 {
        self.0.lambda()
    }

    #[getter]
    fn mass_sq(&self) -> f64 {
        self.0.mass_sq()
    }

    /// `"large"`, `"middle"`, `"edge"` or `"half_integer_large"`.
    #[getter]
    fn regime(&self, py: Python<'_>) -> PyResult<PyObject> {
        to_object(py, &self.0.regime())
    }

    fn has_extensions(&self) -> bool {
        self.0.has_extensions()
    }

    fn __repr__(&self) -> String {
        format!("FieldParams(lam={})", self.0.lambda())
    }
}

#[pyclass(name = "BoundaryCondition", frozen)]
#[derive(Clone, Copy)]
struct PyBc(SelfAdjointBC);

fn mat_from_rows(rows: [[C64; 2]; 2]) -> Mat2 {
    Mat2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
}

#[pymethods]
impl PyBc {
    #[staticmethod]
    fn dirichlet() -> Self {
        Self(SelfAdjointBC::Named(NamedBc::Dirichlet))
    }

    #[staticmethod]
    fn neumann() -> Self {
        Self(SelfAdjointBC::Named(NamedBc::Neumann))
    }

    #[staticmethod]
    fn mixed0() -> Self {
        Self(SelfAdjointBC::Named(NamedBc::Mixed0))
    }

    #[staticmethod]
    fn mixed90() -> Self {
        Self(SelfAdjointBC::Named(NamedBc::Mixed90))
    }

    /// `DPsi+ = alpha Psi+ - beta Psi-`, `DPsi- = conj(beta) Psi+ + gamma Psi-`.
    #[staticmethod]
    #[pyo3(signature = (alpha, beta, gamma))]
    fn robin(alpha: f64, beta: C64, gamma: f64) -> Self {
        Self(SelfAdjointBC::Robin(RobinParams { alpha, beta_re: beta.re, beta_im: beta.im, gamma }))
    }

    /// `Psi(+-pi/2) = +-alpha DPsi(+-pi/2)`.
    #[staticmethod]
    fn symmetric_robin(alpha: f64) -> Self {
        Self(SelfAdjointBC::SymmetricRobin { alpha })
    }

    #[staticmethod]
    fn pauli(theta: f64, phi: f64) -> Self {
        Self(SelfAdjointBC::Pauli(PauliParams { theta, phi }))
    }

    /// From a 2x2 unitary given as nested lists of complex numbers.
    #[staticmethod]
    fn from_unitary(rows: [[C64; 2]; 2]) -> PyResult<Self> {
        SelfAdjointBC::from_unitary(&mat_from_rows(rows)).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        serde_json::from_str(s).map(Self).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("bc serialises")
    }

    /// `U` as nested lists.
    fn unitary(&self) -> PyResult<[[C64; 2]; 2]> {
        let u = self.0.unitary().map_err(to_py)?;
        Ok([[u[(0, 0)], u[(0, 1)]], [u[(1, 0)], u[(1, 1)]]])
    }

    /// Canonical form as a dict with a `form` key.
    fn form(&self, py: Python<'_>) -> PyResult<PyObject> {
        to_object(py, &classify_bc(&self.0).map_err(to_py)?)
    }

    fn __repr__(&self) -> String {
        format!("BoundaryCondition({})", self.to_json())
    }
}

#[pyclass(name = "Eigenvalue", frozen, get_all)]
#[derive(Clone, Copy)]
struct PyEigenvalue {
    omega_sq: f64,
    omega_or_nu: f64,
    negative: bool,
    multiplicity: u32,
}

#[pymethods]
impl PyEigenvalue {
    fn __repr__(&self) -> String {
        format!("Eigenvalue(omega_sq={}, multiplicity={})", self.omega_sq, self.multiplicity)
    }
}

#[pyclass(name = "Mode", frozen)]
#[derive(Clone, Copy)]
struct PyMode(ModeFunction);

#[pymethods]
impl PyMode {
    /// Family name (`"I"`..`"V"`, `"lambda1_dirichlet"`, `"lambda1_neumann"`),
    /// mass parameter and index.
    #[new]
    fn new(family: &str, lam: f64, n: usize) -> PyResult<Self> {
        let f = Family::from_name(family).map_err(to_py)?;
        let p = FieldParams::new(lam).map_err(to_py)?;
        ModeFunction::new(f, &p, n).map(Self).map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn omega(&self) -> f64 {
        self.0.omega
    }

    #[getter]
    fn norm(&self) -> f64 {
        self.0.norm
    }

    /// Normalised radial profile at `rho`.
    fn profile(&self, rho: f64) -> f64 {
        self.0.profile(rho)
    }

    /// `phi(t, rho)`.
    fn eval(&self, t: f64, rho: f64) -> C64 {
        self.0.eval(t, rho)
    }

    fn kg_product(&self, other: &PyMode) -> PyResult<C64> {
        kg_inner_product(&self.0, &other.0).map_err(to_py)
    }

    fn ode_residual(&self) -> PyResult<f64> {
        mode_ode_residual(&self.0).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Mode({:?}, lam={}, n={}, omega={})", self.0.family, self.0.lambda, self.0.n, self.0.omega)
    }
}

/// Eigenvalues in the window `(lo, hi]` of `omega^2`.
#[pyfunction]
#[pyo3(signature = (params, bc, lo=-25.0, hi=100.0, grid_points=2001, tol=1e-10))]
fn find_spectrum(
    py: Python<'_>,
    params: &PyFieldParams,
    bc: &PyBc,
    lo: f64,
    hi: f64,
    grid_points: usize,
    tol: f64,
) -> PyResult<(Vec<PyEigenvalue>, Option<String>)> {
    let opts = ScanOptions { lo, hi, grid_points, tol };
    let s = py.allow_threads(|| spectrum::find_spectrum(&params.0, &bc.0, &opts)).map_err(to_py)?;
    let eig = s
        .eigenvalues
        .iter()
        .map(|e| PyEigenvalue {
            omega_sq: e.omega_sq,
            omega_or_nu: e.omega_or_nu,
            negative: e.negative,
            multiplicity: e.multiplicity,
        })
        .collect();
    Ok((eig, s.warning))
}

#[pyfunction]
fn quantization_determinant(params: &PyFieldParams, bc: &PyBc, omega_sq: f64) -> PyResult<f64> {
    spectrum::quantization_determinant(&params.0, &bc.0, omega_sq).map_err(to_py)
}

#[pyfunction]
fn negative_modes_robin(py: Python<'_>, alpha: f64) -> PyResult<PyObject> {
    to_object(py, &spectrum::negative_modes_robin(alpha).map_err(to_py)?)
}

#[pyfunction]
fn rayleigh_quotient(a: f64, eta: f64) -> PyResult<f64> {
    spectrum::rayleigh_quotient_unbounded(a, eta).map_err(to_py)
}

/// Trace-form condition of the extension labelled by the deficiency-space
/// unitary `u_m`.
#[pyfunction]
fn map_um(params: &PyFieldParams, u_m: [[C64; 2]; 2]) -> PyResult<PyBc> {
    map_um_to_bc(&mat_from_rows(u_m), &params.0).map(PyBc).map_err(to_py)
}

#[pyfunction]
fn is_invariant(py: Python<'_>, params: &PyFieldParams, bc: &PyBc) -> PyResult<PyObject> {
    to_object(py, &symmetry::is_invariant_bc(&params.0, &bc.0).map_err(to_py)?)
}

/// Representation label as a dict, with its printed symbol under `symbol`.
#[pyfunction]
fn classify(py: Python<'_>, params: &PyFieldParams, bc: &PyBc) -> PyResult<PyObject> {
    let label = symmetry::classify_representation(&params.0, &bc.0).map_err(to_py)?;
    let obj = to_object(py, &label)?;
    obj.bind(py).set_item("symbol", label.symbol(params.0.lambda()))?;
    Ok(obj)
}

#[pyfunction]
#[pyo3(signature = (lam, family="mixed", n_modes=6, max_total_occupation=6))]
fn fock_check(py: Python<'_>, lam: f64, family: &str, n_modes: usize, max_total_occupation: usize) -> PyResult<PyObject> {
    let family = match family {
        "mixed" => FockFamily::Mixed,
        "neumann" => FockFamily::Neumann,
        _ => return Err(PyValueError::new_err(format!("unknown Fock family '{family}'"))),
    };
    let p = FieldParams::new(lam).map_err(to_py)?;
    let trunc = FockTruncation { n_modes, max_total_occupation };
    to_object(py, &symmetry::fock_commutator_check(&p, family, &trunc).map_err(to_py)?)
}

#[pyfunction]
fn flux_equivalence(py: Python<'_>, params: &PyFieldParams, bcs: Vec<PyBc>) -> PyResult<PyObject> {
    let bcs: Vec<SelfAdjointBC> = bcs.into_iter().map(|b| b.0).collect();
    to_object(py, &ads2::flux::flux_invariance_equivalence(&params.0, &bcs).map_err(to_py)?)
}

#[pyfunction]
fn table1(py: Python<'_>) -> PyResult<PyObject> {
    to_object(py, &symmetry::table1().map_err(to_py)?)
}

/// Parses a run configuration and returns its canonical JSON.
#[pyfunction]
fn canonical_config(s: &str) -> PyResult<String> {
    RunConfig::from_json(s).map(|c| c.to_canonical_json()).map_err(to_py)
}

#[pymodule]
fn ads2py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFieldParams>()?;
    m.add_class::<PyBc>()?;
    m.add_class::<PyEigenvalue>()?;
    m.add_class::<PyMode>()?;
    for f in [
        wrap_pyfunction!(find_spectrum, m)?,
        wrap_pyfunction!(quantization_determinant, m)?,
        wrap_pyfunction!(negative_modes_robin, m)?,
        wrap_pyfunction!(rayleigh_quotient, m)?,
        wrap_pyfunction!(map_um, m)?,
        wrap_pyfunction!(is_invariant, m)?,
        wrap_pyfunction!(classify, m)?,
        wrap_pyfunction!(fock_check, m)?,
        wrap_pyfunction!(flux_equivalence, m)?,
        wrap_pyfunction!(table1, m)?,
        wrap_pyfunction!(canonical_config, m)?,
    ] {
        m.add_function(f)?;
    }
    m.add("SCHEMA_VERSION", ads2::config::SCHEMA_VERSION)?;
    Ok(())
}
