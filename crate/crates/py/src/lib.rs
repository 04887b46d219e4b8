//! Python bindings. Exact rationals come back as `fractions.Fraction`.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use quatherm::arith::{parse_rational, rational_to_string, RatFuncQ};
use quatherm::cli::report::{emit, Format};
use quatherm::cli::suite::{run_suite, SuiteOptions, Tier};
use quatherm::density::{density_at_level, density_self_closed, CountConfig, Method};
use quatherm::quat::RingParams;
use quatherm::{Error, Partition};

create_exception!(pyquatherm, BudgetExceeded, PyException);
create_exception!(pyquatherm, LevelTooSmall, PyException);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        Error::LevelTooSmall { .. } => LevelTooSmall::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn partition(v: Vec<i64>) -> PyResult<Partition> {
    Partition::new(v).map_err(to_py)
}

fn fraction<'py>(py: Python<'py>, x: &num_rational::BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((rational_to_string(x),))
}

/// Accepts int, str ("a/b") or anything whose str() parses as a rational.
fn rational_arg(x: &Bound<'_, PyAny>) -> PyResult<num_rational::BigRational> {
    parse_rational(&x.str()?.to_cow()?).map_err(to_py)
}

/// A rational function of q with rational coefficients.
#[pyclass(name = "RatFunc", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyRatFunc {
    inner: RatFuncQ,
}

#[pymethods]
impl PyRatFunc {
    /// Value at q, as a Fraction.
    fn __call__<'py>(&self, py: Python<'py>, q: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let v = self.inner.eval(&rational_arg(q)?).map_err(to_py)?;
        fraction(py, &v)
    }

    /// Coefficient lists (ascending powers of q) of numerator and denominator.
    fn coefficients<'py>(&self, py: Python<'py>) -> PyResult<(Vec<Bound<'py, PyAny>>, Vec<Bound<'py, PyAny>>)> {
        let conv = |cs: &[num_rational::BigRational]| cs.iter().map(|c| fraction(py, c)).collect::<PyResult<Vec<_>>>();
        Ok((conv(self.inner.numer().coeffs())?, conv(self.inner.denom().coeffs())?))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RatFunc({})", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

fn ratfunc(inner: RatFuncQ) -> PyRatFunc {
    PyRatFunc { inner }
}

/// Normalized representation density mu_ell(pi^beta, pi^alpha) at one level.
#[pyfunction]
#[pyo3(signature = (p, ell, alpha, beta=None, primitive=false, method="enumerate", eps2=None, budget=None))]
#[allow(clippy::too_many_arguments)]
fn density<'py>(
    py: Python<'py>,
    p: u64,
    ell: u32,
    alpha: Vec<i64>,
    beta: Option<Vec<i64>>,
    primitive: bool,
    method: &str,
    eps2: Option<u64>,
    budget: Option<u128>,
) -> PyResult<Bound<'py, PyDict>> {
    let alpha = partition(alpha)?;
    let beta = match beta {
        Some(b) => partition(b)?,
        None => alpha.clone(),
    };
    let method = match method {
        "enumerate" => Method::Enumerate,
        "convolve" => Method::Convolve,
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    let mut cfg = CountConfig::default();
    if let Some(b) = budget {
        cfg.budget = b;
    }
    let params = RingParams::new(p, ell, eps2).map_err(to_py)?;
    let r = py.detach(|| density_at_level(&beta, &alpha, &params, primitive, method, &cfg)).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("count", py.import("builtins")?.getattr("int")?.call1((r.count.to_string(),))?)?;
    d.set_item("normalized", fraction(py, &r.normalized)?)?;
    d.set_item("level", r.level)?;
    d.set_item("primitive", r.primitive)?;
    Ok(d)
}

/// Closed self-density mu(pi^alpha, pi^alpha) as a function of q.
#[pyfunction]
fn density_closed(alpha: Vec<i64>) -> PyResult<PyRatFunc> {
    Ok(ratfunc(density_self_closed(&partition(alpha)?)))
}

/// G_n times the spherical function, as a string in x_i = q^z_i, and whether it is symmetric.
#[pyfunction]
fn psi(alpha: Vec<i64>) -> PyResult<(String, bool)> {
    let p = quatherm::spherical::psi_explicit(&partition(alpha)?).map_err(to_py)?;
    Ok((p.to_string(), p.is_symmetric()))
}

/// Volume of the size-2 orbit K pi^alpha.
#[pyfunction]
fn orbit_volume(alpha: Vec<i64>) -> PyResult<PyRatFunc> {
    quatherm::plancherel::orbit_volume(&partition(alpha)?).map(ratfunc).map_err(to_py)
}

/// Renormalized contour pairing of two size-2 transforms.
#[pyfunction]
fn pairing(alpha: Vec<i64>, beta: Vec<i64>) -> PyResult<PyRatFunc> {
    let mut ctx = quatherm::plancherel::PlancherelContext::new().map_err(to_py)?;
    ctx.pairing(&partition(alpha)?, &partition(beta)?).map(ratfunc).map_err(to_py)
}

/// Membership of transform images in the ideal for n = 3 or 4: list of (label, q, member).
#[pyfunction]
#[pyo3(signature = (n, alphas, qs=vec![2, 3, 5]))]
fn ideal_membership(n: usize, alphas: Vec<Vec<i64>>, qs: Vec<i64>) -> PyResult<Vec<(String, String, bool)>> {
    let labels = alphas.into_iter().map(partition).collect::<PyResult<Vec<_>>>()?;
    let specs: Vec<_> = qs.into_iter().map(quatherm::arith::int).collect();
    let rep = quatherm::spherical::ideal::psi_membership(n, &labels, &specs).map_err(to_py)?;
    Ok(rep.verdicts.into_iter().map(|v| (v.label, v.q0, v.member && v.order_independent)).collect())
}

/// Run the verification suite and return the records as parsed JSON.
#[pyfunction]
#[pyo3(signature = (tier="fast"))]
fn verify<'py>(py: Python<'py>, tier: &str) -> PyResult<Bound<'py, PyList>> {
    let max = match tier {
        "fast" => Tier::Fast,
        "all" => Tier::Counting,
        other => return Err(PyValueError::new_err(format!("unknown tier {other:?}"))),
    };
    let records: Vec<_> = py.detach(|| run_suite(max, &SuiteOptions::default())).into_iter().flat_map(|(_, _, r)| r).collect();
    let json = emit(&records, Format::Json, false);
    py.import("json")?.getattr("loads")?.call1((json,))?.cast_into::<PyList>().map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn pyquatherm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRatFunc>()?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add("LevelTooSmall", m.py().get_type::<LevelTooSmall>())?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(density_closed, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_volume, m)?)?;
    m.add_function(wrap_pyfunction!(pairing, m)?)?;
    m.add_function(wrap_pyfunction!(ideal_membership, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
