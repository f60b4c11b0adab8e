//! Python bindings: the main types and operations of the two-site
//! Bose-Hubbard engines, exposed as plain functions and small classes.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use bhdimer::{
    analytic, build_hamiltonian, eigendecompose, evolve_expectations, initial_state_all_left,
    initial_state_tilted, revival_structure, revival_time_tilted, s_plus_expectation,
    s_z_expectation, PerturbativeOrder, StateVector,
};

fn py_err(e: bhdimer::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Model parameters J, U, N with the derived dimensionless coupling u = U N / J.
#[pyclass(name = "ModelParams", from_py_object)]
#[derive(Clone)]
struct PyModelParams {
    inner: bhdimer::ModelParams,
}

#[pymethods]
impl PyModelParams {
    #[new]
    #[pyo3(signature = (hopping, interaction, n))]
    fn new(hopping: f64, interaction: f64, n: usize) -> PyResult<Self> {
        Ok(Self {
            inner: bhdimer::ModelParams::new(hopping, interaction, n).map_err(py_err)?,
        })
    }

    /// Build from the dimensionless coupling instead of U.
    #[staticmethod]
    fn from_coupling(hopping: f64, coupling: f64, n: usize) -> PyResult<Self> {
        Ok(Self {
            inner: bhdimer::ModelParams::from_coupling(hopping, coupling, n).map_err(py_err)?,
        })
    }

    #[getter]
    fn hopping(&self) -> f64 {
        self.inner.hopping()
    }

    #[getter]
    fn interaction(&self) -> f64 {
        self.inner.interaction()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn coupling(&self) -> f64 {
        self.inner.coupling()
    }

    #[getter]
    fn rabi_regime(&self) -> bool {
        self.inner.is_rabi_regime()
    }

    fn __repr__(&self) -> String {
        format!(
            "ModelParams(J={}, U={}, N={}, u={})",
            self.inner.hopping(),
            self.inner.interaction(),
            self.inner.n(),
            self.inner.coupling()
        )
    }
}

/// Tridiagonal Hamiltonian matrix elements in the Fock basis.
#[pyfunction]
fn hamiltonian(params: &PyModelParams) -> (Vec<f64>, Vec<f64>) {
    let h = build_hamiltonian(&params.inner);
    (h.diag().to_vec(), h.offdiag().to_vec())
}

/// Eigenvalues of the Hamiltonian, ascending.
#[pyfunction]
fn eigenvalues(params: &PyModelParams) -> PyResult<Vec<f64>> {
    let spec = eigendecompose(&build_hamiltonian(&params.inner)).map_err(py_err)?;
    Ok(spec.eigenvalues().to_vec())
}

/// Perturbative energy level at quantum number n (order 1 or 2).
#[pyfunction]
#[pyo3(signature = (params, n, order = 2))]
fn energy_perturbative(params: &PyModelParams, n: f64, order: u8) -> PyResult<f64> {
    let order = match order {
        1 => PerturbativeOrder::First,
        2 => PerturbativeOrder::Second,
        other => {
            return Err(PyValueError::new_err(format!(
                "order must be 1 or 2, got {other}"
            )))
        }
    };
    analytic::energy_perturbative(&params.inner, n, order).map_err(py_err)
}

fn tilted_state(params: &PyModelParams, alpha: f64) -> PyResult<StateVector> {
    if alpha == 0.0 {
        Ok(initial_state_all_left(&params.inner))
    } else {
        initial_state_tilted(&params.inner, alpha).map_err(py_err)
    }
}

/// Fock amplitudes of the tilted coherent initial state (alpha = 0: all left).
#[pyfunction]
#[pyo3(signature = (params, alpha = 0.0))]
fn initial_state(params: &PyModelParams, alpha: f64) -> PyResult<Vec<Complex64>> {
    Ok(tilted_state(params, alpha)?.amps().to_vec())
}

/// Population imbalance <S_z> of a state given by its Fock amplitudes.
#[pyfunction]
fn s_z(params: &PyModelParams, amps: Vec<Complex64>) -> PyResult<f64> {
    let state = StateVector::new(amps).map_err(py_err)?;
    Ok(s_z_expectation(&state, &params.inner))
}

/// Expectation of the raising combination S~_+ = N (S_z - i S_y).
#[pyfunction]
fn s_plus(params: &PyModelParams, amps: Vec<Complex64>) -> PyResult<Complex64> {
    let state = StateVector::new(amps).map_err(py_err)?;
    Ok(s_plus_expectation(&state, &params.inner))
}

/// Exact imbalance and envelope at the given times; returns (delta, envelope).
#[pyfunction]
#[pyo3(signature = (params, times, alpha = 0.0))]
fn evolve(params: &PyModelParams, times: Vec<f64>, alpha: f64) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let spec = eigendecompose(&build_hamiltonian(&params.inner)).map_err(py_err)?;
    let psi0 = tilted_state(params, alpha)?;
    let ts = evolve_expectations(&spec, &psi0, &params.inner, &times).map_err(py_err)?;
    let env = ts.envelope.expect("exact series carries an envelope");
    Ok((ts.values, env))
}

/// Closed-form imbalance and envelope at the given times.
#[pyfunction]
fn delta_closed_form(params: &PyModelParams, times: Vec<f64>) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let ts = analytic::delta_closed_form(&params.inner, &times).map_err(py_err)?;
    Ok((
        ts.values,
        ts.envelope.expect("closed form carries an envelope"),
    ))
}

/// Semi-analytic imbalance and envelope at the given times.
#[pyfunction]
fn delta_semianalytic(params: &PyModelParams, times: Vec<f64>) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let ts = analytic::delta_semianalytic(&params.inner, &times);
    Ok((
        ts.values,
        ts.envelope.expect("semianalytic carries an envelope"),
    ))
}

/// Derived timescales and peak table of the revival model.
#[pyclass(name = "RevivalStructure")]
struct PyRevivalStructure {
    #[pyo3(get)]
    t_r: f64,
    #[pyo3(get)]
    t_c: f64,
    #[pyo3(get)]
    t_b: f64,
    #[pyo3(get)]
    m_max: f64,
    #[pyo3(get)]
    phi: f64,
    /// (m, center, width, amplitude) per peak, m = 0..=ceil(m_max).
    #[pyo3(get)]
    peaks: Vec<(u32, f64, f64, f64)>,
}

#[pymethods]
impl PyRevivalStructure {
    fn __repr__(&self) -> String {
        format!(
            "RevivalStructure(T_R={:.6}, T_c={:.6}, T_B={:.6}, m_max={:.4}, phi={:.6}, {} peaks)",
            self.t_r,
            self.t_c,
            self.t_b,
            self.m_max,
            self.phi,
            self.peaks.len()
        )
    }
}

#[pyfunction]
fn revival(params: &PyModelParams) -> PyResult<PyRevivalStructure> {
    let s = revival_structure(&params.inner).map_err(py_err)?;
    Ok(PyRevivalStructure {
        t_r: s.t_r,
        t_c: s.t_c,
        t_b: s.t_b,
        m_max: s.m_max,
        phi: s.phi,
        peaks: s
            .peaks
            .iter()
            .map(|p| (p.m, p.center, p.width, p.amplitude))
            .collect(),
    })
}

/// Predicted revival time for a tilted start with left occupation cos^2(alpha).
#[pyfunction]
fn tilted_revival_time(params: &PyModelParams, alpha: f64) -> PyResult<f64> {
    revival_time_tilted(&params.inner, alpha).map_err(py_err)
}

/// Gaussian collapse-time fit of an envelope sampled at the given times.
#[pyfunction]
fn fit_collapse_time(times: Vec<f64>, envelope: Vec<f64>) -> PyResult<f64> {
    let values = envelope.clone();
    let series = bhdimer::TimeSeries::new(times, values, Some(envelope)).map_err(py_err)?;
    bhdimer::fit_collapse_time(&series).map_err(py_err)
}

#[pymodule]
fn bhdimer_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyModelParams>()?;
    m.add_class::<PyRevivalStructure>()?;
    m.add_function(wrap_pyfunction!(hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(energy_perturbative, m)?)?;
    m.add_function(wrap_pyfunction!(initial_state, m)?)?;
    m.add_function(wrap_pyfunction!(s_z, m)?)?;
    m.add_function(wrap_pyfunction!(s_plus, m)?)?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(delta_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(delta_semianalytic, m)?)?;
    m.add_function(wrap_pyfunction!(revival, m)?)?;
    m.add_function(wrap_pyfunction!(tilted_revival_time, m)?)?;
    m.add_function(wrap_pyfunction!(fit_collapse_time, m)?)?;
    Ok(())
}
