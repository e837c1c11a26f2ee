//! Python module `bddf`: characteristic exponents, BDDF/CDF inversion,
//! seeded samplers and the verification suites of `bddf-core`.

use std::collections::HashMap;

use bddf_core::catalog::{FamilyDescriptor, FamilyId};
use bddf_core::inversion;
use bddf_core::simulate::{sample as draw, supported_methods};
use bddf_core::verify::{run_suite, Suite, VerifyOptions};
use bddf_core::{CdfEstimate, Error, QuadratureConfig, RngSeed, SampleMethod, SampleOptions};
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NoConvergence { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn descriptor(family: &str, params: Option<HashMap<String, f64>>) -> PyResult<FamilyDescriptor> {
    let id: FamilyId = family.parse().map_err(to_py)?;
    let params = params.unwrap_or_default();
    let named: Vec<(&str, f64)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    FamilyDescriptor::from_named(id, &named).map_err(to_py)
}

fn config(abs_tol: Option<f64>, truncate_at: Option<f64>, max_half_periods: Option<usize>) -> PyResult<QuadratureConfig> {
    let mut cfg = QuadratureConfig::default();
    if let Some(t) = abs_tol {
        cfg.abs_tol = t;
    }
    if let Some(m) = max_half_periods {
        cfg.max_half_periods = m;
    }
    cfg.hard_truncation = truncate_at;
    cfg.validate().map_err(to_py)?;
    Ok(cfg)
}

fn estimate_dict<'py>(py: Python<'py>, a: f64, e: &CdfEstimate) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("a", a)?;
    d.set_item("value", e.value)?;
    d.set_item("error_estimate", e.error_estimate)?;
    d.set_item("evaluations", e.evaluations)?;
    d.set_item("converged", e.converged)?;
    d.set_item("clipped", e.clipped)?;
    Ok(d)
}

/// Evaluates at a float (returns one dict) or a sequence (returns a list).
fn invert<'py>(
    py: Python<'py>,
    a: &Bound<'py, PyAny>,
    f: impl Fn(f64) -> bddf_core::Result<CdfEstimate> + Sync,
) -> PyResult<Bound<'py, PyAny>> {
    if let Ok(x) = a.extract::<f64>() {
        let e = py.detach(|| f(x)).map_err(to_py)?;
        return Ok(estimate_dict(py, x, &e)?.into_any());
    }
    let xs: Vec<f64> = a.extract()?;
    let es = py
        .detach(|| xs.iter().map(|&x| f(x)).collect::<bddf_core::Result<Vec<_>>>())
        .map_err(to_py)?;
    let rows = xs
        .iter()
        .zip(&es)
        .map(|(&x, e)| estimate_dict(py, x, e))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(rows.into_pyobject(py)?.into_any())
}

/// Kebab-case ids of every family.
#[pyfunction]
fn families() -> Vec<&'static str> {
    FamilyId::ALL.iter().map(|id| id.name()).collect()
}

/// Parameter names expected by `family`.
#[pyfunction]
fn parameters(family: &str) -> PyResult<Vec<&'static str>> {
    let id: FamilyId = family.parse().map_err(to_py)?;
    Ok(id.param_names().to_vec())
}

/// `log φ_X(t)`.
#[pyfunction]
#[pyo3(signature = (family, t, params=None))]
fn log_cf(family: &str, t: f64, params: Option<HashMap<String, f64>>) -> PyResult<Complex64> {
    descriptor(family, params)?.log_cf(t).map_err(to_py)
}

/// `η(t) = t (log φ_X)'(t)`.
#[pyfunction]
#[pyo3(signature = (family, t, params=None))]
fn eta(family: &str, t: f64, params: Option<HashMap<String, f64>>) -> PyResult<Complex64> {
    descriptor(family, params)?.bdcf_exponent(t).map_err(to_py)
}

/// Background driving distribution function G_X at `a`.
#[pyfunction]
#[pyo3(name = "bddf", signature = (family, a, params=None, *, abs_tol=None, truncate_at=None, max_half_periods=None))]
fn bddf_at<'py>(
    py: Python<'py>,
    family: &str,
    a: &Bound<'py, PyAny>,
    params: Option<HashMap<String, f64>>,
    abs_tol: Option<f64>,
    truncate_at: Option<f64>,
    max_half_periods: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let desc = descriptor(family, params)?;
    let cfg = config(abs_tol, truncate_at, max_half_periods)?;
    invert(py, a, |x| inversion::bddf(&desc, x, &cfg))
}

/// Distribution function F_X at `a`.
#[pyfunction]
#[pyo3(signature = (family, a, params=None, *, abs_tol=None, truncate_at=None, max_half_periods=None))]
fn cdf<'py>(
    py: Python<'py>,
    family: &str,
    a: &Bound<'py, PyAny>,
    params: Option<HashMap<String, f64>>,
    abs_tol: Option<f64>,
    truncate_at: Option<f64>,
    max_half_periods: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let desc = descriptor(family, params)?;
    let cfg = config(abs_tol, truncate_at, max_half_periods)?;
    invert(py, a, |x| inversion::cdf_of_x(&desc, x, &cfg))
}

/// Sampling methods accepted by `sample` for `family`.
#[pyfunction]
fn methods(family: &str) -> PyResult<Vec<&'static str>> {
    let id: FamilyId = family.parse().map_err(to_py)?;
    Ok(supported_methods(id).iter().map(|m| m.flag()).collect())
}

/// `n` seeded draws; the values are identical for equal arguments.
#[pyfunction]
#[pyo3(signature = (family, method, n, params=None, *, seed=0, terms=None, horizon=None, steps=None))]
#[allow(clippy::too_many_arguments)]
fn sample(
    py: Python<'_>,
    family: &str,
    method: &str,
    n: usize,
    params: Option<HashMap<String, f64>>,
    seed: u64,
    terms: Option<usize>,
    horizon: Option<f64>,
    steps: Option<usize>,
) -> PyResult<Vec<f64>> {
    let desc = descriptor(family, params)?;
    let method: SampleMethod = method.parse().map_err(to_py)?;
    let defaults = SampleOptions::default();
    let opts = SampleOptions {
        terms: terms.unwrap_or(defaults.terms),
        horizon,
        steps: steps.unwrap_or(defaults.steps),
    };
    let batch = py.detach(|| draw(&desc, method, n, RngSeed(seed), &opts)).map_err(to_py)?;
    Ok(batch.values)
}

/// Runs a verification suite (`paper-tables`, `identities`, `samplers` or
/// `all`) and returns one dict per check.
#[pyfunction]
#[pyo3(signature = (suite="all", n=100_000, seed=42))]
fn verify<'py>(py: Python<'py>, suite: &str, n: usize, seed: u64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let suite: Suite = suite.parse().map_err(to_py)?;
    let opts = VerifyOptions {
        n,
        seed,
        ..VerifyOptions::default()
    };
    let outcomes = py.detach(|| run_suite(suite, &opts)).map_err(to_py)?;
    outcomes
        .iter()
        .map(|o| {
            let d = PyDict::new(py);
            d.set_item("criterion", o.criterion)?;
            d.set_item("name", o.name)?;
            d.set_item("passed", o.passed)?;
            d.set_item("title", &o.title)?;
            d.set_item("detail", &o.detail)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
#[pyo3(name = "bddf")]
fn bddf_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(families, m)?)?;
    m.add_function(wrap_pyfunction!(parameters, m)?)?;
    m.add_function(wrap_pyfunction!(log_cf, m)?)?;
    m.add_function(wrap_pyfunction!(eta, m)?)?;
    m.add_function(wrap_pyfunction!(bddf_at, m)?)?;
    m.add_function(wrap_pyfunction!(cdf, m)?)?;
    m.add_function(wrap_pyfunction!(methods, m)?)?;
    m.add_function(wrap_pyfunction!(sample, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
