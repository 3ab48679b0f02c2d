//! Python module `nonlocal_rd`.
//!
//! Fields cross the boundary as lists of floats (physical) or complex
//! numbers (spectral); reports come back as plain dicts.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use nonlocal_core as core;
use nonlocal_core::fixedpoint::{RATIO_SLACK, SUPPORT_THRESHOLD};
use nonlocal_core::kernels::SIGN_TOLERANCE;
use nonlocal_core::{Complex, DuhamelMap, FieldPhysical, FieldSpectral, KernelSpec, PicardOptions};

create_exception!(nonlocal_rd, SolverError, PyRuntimeError);

fn to_py(e: core::Error) -> PyErr {
    match e {
        core::Error::InvalidGrid(_)
        | core::Error::InvalidParameter(_)
        | core::Error::LengthMismatch { .. }
        | core::Error::NonFinite { .. }
        | core::Error::NotHermitian { .. }
        | core::Error::TailViolation { .. }
        | core::Error::Config(_)
        | core::Error::Parse { .. } => PyValueError::new_err(e.to_string()),
        other => SolverError::new_err(other.to_string()),
    }
}

fn to_dict<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// The periodic interval `[-L, L)` with `N` points.
#[pyclass(name = "Grid", module = "nonlocal_rd", frozen)]
struct PyGrid {
    inner: core::SpectralGrid,
}

#[pymethods]
impl PyGrid {
    #[new]
    fn new(half_length: f64, n_points: usize) -> PyResult<Self> {
        Ok(Self {
            inner: core::SpectralGrid::new(half_length, n_points).map_err(to_py)?,
        })
    }

    #[getter]
    fn half_length(&self) -> f64 {
        self.inner.half_length()
    }

    #[getter]
    fn n_points(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn dx(&self) -> f64 {
        self.inner.dx()
    }

    #[getter]
    fn dp(&self) -> f64 {
        self.inner.dp()
    }

    fn points(&self) -> Vec<f64> {
        self.inner.points().to_vec()
    }

    fn frequencies(&self) -> Vec<f64> {
        self.inner.frequencies().to_vec()
    }

    /// Unitary transform, coefficients in symmetric order.
    fn forward(&self, values: Vec<f64>) -> PyResult<Vec<Complex>> {
        let spectrum = self
            .inner
            .fourier_forward(&FieldPhysical::new(values))
            .map_err(to_py)?;
        Ok(spectrum.coeffs)
    }

    fn inverse(&self, coeffs: Vec<Complex>) -> PyResult<Vec<f64>> {
        let field = self
            .inner
            .fourier_inverse(&FieldSpectral::new(coeffs))
            .map_err(to_py)?;
        Ok(field.values)
    }

    fn __repr__(&self) -> String {
        format!(
            "Grid(half_length={}, n_points={})",
            self.inner.half_length(),
            self.inner.len()
        )
    }
}

#[pyclass(name = "Kernel", module = "nonlocal_rd", frozen)]
struct PyKernel {
    inner: core::Kernel,
}

impl PyKernel {
    /// Kernels used as `G` also need `||G''||_1`; a missing second
    /// derivative is not an error until it is asked for.
    fn build(grid: &PyGrid, spec: KernelSpec) -> PyResult<Self> {
        let tail = core::TailCheck::default();
        let inner = match core::Kernel::production(&grid.inner, spec.clone(), &tail) {
            Ok(k) => k,
            Err(core::Error::NoSecondDerivative(_)) => core::Kernel::new(&grid.inner, spec).map_err(to_py)?,
            Err(e) => return Err(to_py(e)),
        };
        Ok(Self { inner })
    }
}

#[pymethods]
impl PyKernel {
    #[staticmethod]
    fn negative_gaussian(grid: &PyGrid, amplitude: f64, width: f64) -> PyResult<Self> {
        Self::build(grid, KernelSpec::NegativeGaussian { amplitude, width })
    }

    #[staticmethod]
    fn gaussian(grid: &PyGrid, amplitude: f64, width: f64) -> PyResult<Self> {
        Self::build(grid, KernelSpec::Gaussian { amplitude, width })
    }

    #[staticmethod]
    fn laplace(grid: &PyGrid, amplitude: f64, scale: f64) -> PyResult<Self> {
        Self::build(grid, KernelSpec::Laplace { amplitude, scale })
    }

    #[staticmethod]
    fn tabulated(grid: &PyGrid, samples: Vec<f64>) -> PyResult<Self> {
        Self::build(grid, KernelSpec::Tabulated { samples })
    }

    #[getter]
    fn name(&self) -> &'static str {
        self.inner.spec.name()
    }

    #[getter]
    fn l1_norm(&self) -> f64 {
        self.inner.l1_norm
    }

    #[getter]
    fn second_derivative_l1(&self) -> Option<f64> {
        self.inner.l1_norm_second_derivative
    }

    fn values(&self) -> Vec<f64> {
        self.inner.phys.values.clone()
    }

    fn symbol(&self) -> Vec<Complex> {
        self.inner.symbol.coeffs.clone()
    }
}

#[pyclass(name = "Nonlinearity", module = "nonlocal_rd", frozen)]
struct PyNonlinearity {
    inner: core::Nonlinearity,
}

#[pymethods]
impl PyNonlinearity {
    #[staticmethod]
    fn linear(grid: &PyGrid, c: f64) -> PyResult<Self> {
        Ok(Self {
            inner: core::Nonlinearity::linear(&grid.inner, c).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn saturating_linear(grid: &PyGrid, c: f64, u_cap: f64) -> PyResult<Self> {
        Ok(Self {
            inner: core::Nonlinearity::saturating_linear(&grid.inner, c, u_cap).map_err(to_py)?,
        })
    }

    /// `F(u, x) = c u + h(x)`.
    #[staticmethod]
    fn affine_offset(grid: &PyGrid, c: f64, h: Vec<f64>) -> PyResult<Self> {
        let inner =
            core::Nonlinearity::affine_offset(&grid.inner, c, FieldPhysical::new(h)).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn tabulated_pointwise(grid: &PyGrid, u: Vec<f64>, f: Vec<f64>) -> PyResult<Self> {
        Ok(Self {
            inner: core::Nonlinearity::tabulated_pointwise(&grid.inner, u, f).map_err(to_py)?,
        })
    }

    #[getter]
    fn lipschitz_l(&self) -> f64 {
        self.inner.lipschitz_l
    }

    #[getter]
    fn growth_k(&self) -> f64 {
        self.inner.growth_k
    }

    fn apply(&self, u: Vec<f64>) -> PyResult<Vec<f64>> {
        Ok(self.inner.apply(&FieldPhysical::new(u)).map_err(to_py)?.values)
    }
}

#[pyclass(name = "Params", module = "nonlocal_rd", frozen)]
struct PyParams {
    inner: core::ModelParams,
}

#[pymethods]
impl PyParams {
    #[new]
    fn new(a: f64, b: f64, horizon: f64, n_steps: usize) -> PyResult<Self> {
        Ok(Self {
            inner: core::ModelParams::new(a, b, horizon, n_steps).map_err(to_py)?,
        })
    }

    #[getter]
    fn a(&self) -> f64 {
        self.inner.a
    }

    #[getter]
    fn b(&self) -> f64 {
        self.inner.b
    }

    #[getter]
    fn horizon(&self) -> f64 {
        self.inner.horizon
    }

    #[getter]
    fn n_steps(&self) -> usize {
        self.inner.n_steps
    }

    fn times(&self) -> Vec<f64> {
        self.inner.times()
    }
}

#[pyfunction]
fn contraction_constant(nu: f64, l: f64, a: f64, b: f64, j_l1: f64, horizon: f64) -> PyResult<f64> {
    core::contraction_constant(nu, l, a, b, j_l1, horizon).map_err(to_py)
}

/// Largest certified window; `inf` when `l = 0`, `None` when no window is.
#[pyfunction]
#[pyo3(signature = (nu, l, a, b, j_l1, margin = 0.0))]
fn max_horizon(nu: f64, l: f64, a: f64, b: f64, j_l1: f64, margin: f64) -> PyResult<Option<f64>> {
    core::max_horizon(nu, l, a, b, j_l1, margin).map_err(to_py)
}

#[pyfunction]
fn compute_nu(g: &PyKernel) -> PyResult<f64> {
    core::compute_nu(&g.inner).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (grid, j, g, tol = SIGN_TOLERANCE))]
fn validate_kernels<'py>(
    py: Python<'py>,
    grid: &PyGrid,
    j: &PyKernel,
    g: &PyKernel,
    tol: f64,
) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &core::validate_kernels(&grid.inner, &j.inner, &g.inner, tol))
}

#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(signature = (grid, params, j, g, f, margin = 0.0, support_threshold = SUPPORT_THRESHOLD))]
fn certificate<'py>(
    py: Python<'py>,
    grid: &PyGrid,
    params: &PyParams,
    j: &PyKernel,
    g: &PyKernel,
    f: &PyNonlinearity,
    margin: f64,
    support_threshold: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let cert = core::compute_certificate(
        &grid.inner,
        &params.inner,
        &j.inner,
        &g.inner,
        &f.inner,
        margin,
        support_threshold,
    )
    .map_err(to_py)?;
    to_dict(py, &cert)
}

#[pyfunction]
fn nontriviality_check(grid: &PyGrid, f: &PyNonlinearity, g: &PyKernel) -> PyResult<(bool, f64)> {
    core::nontriviality_check(&f.inner, &g.inner, &grid.inner, SUPPORT_THRESHOLD).map_err(to_py)
}

#[pyfunction]
fn l2_norm(grid: &PyGrid, values: Vec<f64>) -> f64 {
    core::l2_slice(&grid.inner, &FieldPhysical::new(values))
}

#[pyfunction]
fn h2_norm(grid: &PyGrid, values: Vec<f64>) -> PyResult<f64> {
    core::h2_norm(
        &grid.inner,
        &FieldPhysical::new(values),
        &core::TailCheck::default(),
    )
    .map_err(to_py)
}

/// `(times, slices)` of the linear evolution of `u0`.
#[pyfunction]
fn free_evolution(
    grid: &PyGrid,
    params: &PyParams,
    j: &PyKernel,
    u0: Vec<f64>,
) -> PyResult<(Vec<f64>, Vec<Vec<f64>>)> {
    let traj =
        core::free_evolution(&grid.inner, &params.inner, &j.inner, &FieldPhysical::new(u0)).map_err(to_py)?;
    Ok(unpack(traj))
}

/// `(times, slices, per-window reports)`.
type Solution<'py> = (Vec<f64>, Vec<Vec<f64>>, Bound<'py, PyAny>);

fn unpack(traj: core::Trajectory) -> (Vec<f64>, Vec<Vec<f64>>) {
    (traj.times, traj.slices.into_iter().map(|s| s.values).collect())
}

/// Chained Picard solve; `n_windows = 1` is a single solve on `[0, T]`.
/// `params` describes one window. Returns `(times, slices, reports)`.
#[pyfunction]
#[pyo3(signature = (grid, params, j, g, f, u0, n_windows = 1, tol = 1e-10, max_iter = 200, force = false))]
#[allow(clippy::too_many_arguments)]
fn solve<'py>(
    py: Python<'py>,
    grid: &PyGrid,
    params: &PyParams,
    j: &PyKernel,
    g: &PyKernel,
    f: &PyNonlinearity,
    u0: Vec<f64>,
    n_windows: usize,
    tol: f64,
    max_iter: usize,
    force: bool,
) -> PyResult<Solution<'py>> {
    let kappa = match core::compute_nu(&g.inner) {
        Ok(nu) => Some(
            core::contraction_constant(
                nu,
                f.inner.lipschitz_l,
                params.inner.a,
                params.inner.b,
                j.inner.l1_norm,
                params.inner.horizon,
            )
            .map_err(to_py)?,
        ),
        Err(_) if force => None,
        Err(e) => return Err(to_py(e)),
    };
    let opts = PicardOptions {
        tol,
        max_iter,
        ratio_slack: RATIO_SLACK,
        kappa,
        force,
        ..PicardOptions::default()
    };
    let u0 = FieldPhysical::new(u0);
    let (traj, reports) = py
        .detach(|| {
            let map = DuhamelMap::new(&grid.inner, params.inner, &j.inner, &g.inner, &f.inner, &u0)?;
            core::global_iterate(&map, n_windows, &opts)
        })
        .map_err(to_py)?;
    let reports = to_dict(py, &reports)?;
    let (times, slices) = unpack(traj);
    Ok((times, slices, reports))
}

#[pymodule]
fn nonlocal_rd(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGrid>()?;
    m.add_class::<PyKernel>()?;
    m.add_class::<PyNonlinearity>()?;
    m.add_class::<PyParams>()?;
    m.add_function(wrap_pyfunction!(contraction_constant, m)?)?;
    m.add_function(wrap_pyfunction!(max_horizon, m)?)?;
    m.add_function(wrap_pyfunction!(compute_nu, m)?)?;
    m.add_function(wrap_pyfunction!(validate_kernels, m)?)?;
    m.add_function(wrap_pyfunction!(certificate, m)?)?;
    m.add_function(wrap_pyfunction!(nontriviality_check, m)?)?;
    m.add_function(wrap_pyfunction!(l2_norm, m)?)?;
    m.add_function(wrap_pyfunction!(h2_norm, m)?)?;
    m.add_function(wrap_pyfunction!(free_evolution, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add("SolverError", m.py().get_type::<SolverError>())?;
    Ok(())
}
