//! Python bindings for `conifold_dt`.
//!
//! Coefficients are exposed as `RatFun` objects; exact rationals coming back
//! from specializations are returned as strings like `"-3/2"`.

use conifold_dt::conifold::{self, ChamberLabel, Named, UniversalForm};
use conifold_dt::oracle::{default_cap, CountQuery, CountReport};
use conifold_dt::plethystic;
use conifold_dt::torus::Stability;
use conifold_dt::verify::{self, Options, Suite};
use conifold_dt::{DimVec, GeomSeries, RatFun, TruncSeries};
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

fn err(e: conifold_dt::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_json(s: &str) -> PyResult<serde_json::Value> {
    serde_json::from_str(s).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn dump(v: &serde_json::Value) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn stability(zeta: &str, eps: Option<&str>) -> PyResult<Stability> {
    Stability::parse(zeta, eps).map_err(err)
}

/// Rational function in `q = L^{1/2}` with rational coefficients.
#[pyclass(name = "RatFun", module = "pyconifold", eq, hash, frozen, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyRatFun(RatFun);

#[pymethods]
impl PyRatFun {
    #[new]
    #[pyo3(signature = (text = "0"))]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(err)
    }

    #[staticmethod]
    fn q_pow(k: i64) -> Self {
        Self(RatFun::q_pow(k))
    }

    #[staticmethod]
    fn l_pow(k: i64) -> Self {
        Self(RatFun::l_pow(k))
    }

    fn __add__(&self, o: &Self) -> Self {
        Self(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        Self(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Self) -> Self {
        Self(&self.0 * &o.0)
    }

    fn __truediv__(&self, o: &Self) -> PyResult<Self> {
        self.0
            .checked_div(&o.0)
            .map(Self)
            .map_err(|e| PyZeroDivisionError::new_err(e.to_string()))
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __pow__(&self, e: i64, _modulo: Option<i64>) -> PyResult<Self> {
        self.0.pow(e).map(Self).map_err(err)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Value at `L = p`, as an exact rational string.
    fn evaluate_at_prime(&self, p: u64) -> PyResult<String> {
        self.0.evaluate_at_prime(p).map(|r| r.to_string()).map_err(err)
    }

    /// Value at `q = 1`, as an exact rational string.
    fn euler_specialize(&self) -> PyResult<String> {
        self.0.euler_specialize().map(|r| r.to_string()).map_err(err)
    }

    fn to_json(&self) -> String {
        dump(&self.0.to_json())
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        RatFun::from_json(&parse_json(s)?).map(Self).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RatFun('{}')", self.0)
    }
}

/// Truncated power series in `y0, y1`.
#[pyclass(name = "Series", module = "pyconifold", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PySeries(TruncSeries);

#[pymethods]
impl PySeries {
    #[new]
    #[pyo3(signature = (order, terms = Vec::new()))]
    fn new(order: u32, terms: Vec<((u32, u32), PyRatFun)>) -> Self {
        Self(TruncSeries::from_terms(
            order,
            terms.into_iter().map(|((a, b), c)| (DimVec::new(a, b), c.0)),
        ))
    }

    #[getter]
    fn order(&self) -> u32 {
        self.0.order()
    }

    fn coeff(&self, a0: u32, a1: u32) -> PyRatFun {
        PyRatFun(self.0.coeff(DimVec::new(a0, a1)))
    }

    fn terms(&self) -> Vec<((u32, u32), PyRatFun)> {
        self.0
            .terms()
            .map(|(e, c)| ((e.a0, e.a1), PyRatFun(c.clone())))
            .collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __add__(&self, o: &Self) -> PyResult<Self> {
        self.0.add(&o.0).map(Self).map_err(err)
    }

    fn __sub__(&self, o: &Self) -> PyResult<Self> {
        self.0.sub(&o.0).map(Self).map_err(err)
    }

    fn __mul__(&self, o: &Self) -> PyResult<Self> {
        self.0.mul(&o.0).map(Self).map_err(err)
    }

    fn invert(&self) -> PyResult<Self> {
        self.0.invert().map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        dump(&self.0.to_json())
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        TruncSeries::from_json(&parse_json(s)?).map(Self).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Series(order={}, terms={})", self.0.order(), self.0.len())
    }
}

/// Truncated series in `s, T`.
#[pyclass(name = "GeomSeries", module = "pyconifold", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyGeomSeries(GeomSeries);

#[pymethods]
impl PyGeomSeries {
    fn coeff(&self, s: u32, t: i32) -> PyRatFun {
        PyRatFun(self.0.coeff(s, t))
    }

    fn terms(&self) -> Vec<((u32, i32), PyRatFun)> {
        self.0.terms().map(|(k, c)| (k, PyRatFun(c.clone()))).collect()
    }

    fn negate_s(&self) -> Self {
        Self(self.0.negate_s())
    }

    fn __mul__(&self, o: &Self) -> PyResult<Self> {
        self.0.mul(&o.0).map(Self).map_err(err)
    }

    /// Coefficients at `q = 1` as rational strings.
    fn euler_specialize(&self) -> PyResult<Vec<((u32, i32), String)>> {
        let m = self.0.euler_specialize().map_err(err)?;
        Ok(m.into_iter().map(|(k, v)| (k, v.to_string())).collect())
    }

    fn to_json(&self) -> String {
        dump(&self.0.to_json())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyfunction]
#[pyo3(signature = (order = 8, form = "exp"))]
fn universal_series(order: u32, form: &str) -> PyResult<PySeries> {
    let form: UniversalForm = form.parse().map_err(err)?;
    Ok(PySeries(conifold::universal_series(order, form)))
}

#[pyfunction]
#[pyo3(signature = (zeta, eps = None, order = 8, route = "product"))]
fn z_series(zeta: &str, eps: Option<&str>, order: u32, route: &str) -> PyResult<PySeries> {
    let zs = stability(zeta, eps)?;
    let z = match route {
        "product" => conifold::z_series_product(&zs, order),
        "framed" => conifold::z_series_framed(&zs, order),
        other => return Err(PyValueError::new_err(format!("unknown route `{other}`"))),
    };
    z.map(PySeries).map_err(err)
}

/// Chamber label, or raises if the parameter lies on a wall.
#[pyfunction]
#[pyo3(signature = (zeta, eps = None, root_bound = 8))]
fn classify_chamber(zeta: &str, eps: Option<&str>, root_bound: u32) -> PyResult<String> {
    let zs = stability(zeta, eps)?;
    conifold::classify_chamber(&zs, root_bound)
        .map(|l| l.to_string())
        .map_err(err)
}

/// Full chamber report as a JSON string.
#[pyfunction]
#[pyo3(signature = (zeta, eps = None, root_bound = 8))]
fn chamber_json(zeta: &str, eps: Option<&str>, root_bound: u32) -> PyResult<String> {
    Ok(dump(&conifold::chamber_json(&stability(zeta, eps)?, root_bound)))
}

#[pyfunction]
fn canonical_stability(label: &str) -> PyResult<(String, String)> {
    let l: ChamberLabel = label.parse().map_err(err)?;
    let zs = l
        .canonical_stability()
        .ok_or_else(|| PyValueError::new_err("no representative"))?;
    Ok((
        format!("{},{}", zs.zeta.0, zs.zeta.1),
        format!("{},{}", zs.eps.0, zs.eps.1),
    ))
}

#[pyfunction]
#[pyo3(signature = (which, s_order = 6, t_order = 3))]
fn named_series(which: &str, s_order: u32, t_order: u32) -> PyResult<PyGeomSeries> {
    let which: Named = which.parse().map_err(err)?;
    Ok(PyGeomSeries(conifold::named_series(which, s_order, t_order)))
}

#[pyfunction]
#[pyo3(signature = (s_order = 6, t_order = 3))]
fn vertex_pt(s_order: u32, t_order: u32) -> PyGeomSeries {
    PyGeomSeries(conifold::vertex_pt(s_order, t_order))
}

#[pyfunction]
fn exp_pleth(f: &PySeries) -> PyResult<PySeries> {
    plethystic::exp_pleth(&f.0).map(PySeries).map_err(err)
}

#[pyfunction]
fn log_pleth(f: &PySeries) -> PyResult<PySeries> {
    plethystic::log_pleth(&f.0).map(PySeries).map_err(err)
}

/// Point count report as a JSON string.
#[pyfunction]
#[pyo3(signature = (alpha, p, cap = None, strata = false))]
fn count(py: Python<'_>, alpha: (u32, u32), p: u64, cap: Option<u128>, strata: bool) -> PyResult<String> {
    let q = CountQuery::new(DimVec::new(alpha.0, alpha.1), p).with_cap(cap.unwrap_or_else(default_cap));
    let report = py.detach(|| CountReport::run(&q, strata)).map_err(err)?;
    Ok(dump(&report.to_json()))
}

/// Runs verification suites; returns `(suite, check, passed, detail)` rows.
#[pyfunction]
#[pyo3(signature = (suite = "all", order = 8))]
fn run_verify(py: Python<'_>, suite: &str, order: u32) -> PyResult<Vec<(String, String, bool, String)>> {
    let suites: Vec<Suite> = Suite::parse_selection(suite).map_err(err)?;
    let checks = py.detach(|| verify::run(&suites, &Options::with_order(order)));
    Ok(checks
        .into_iter()
        .map(|c| (c.suite.name().to_string(), c.name, c.passed, c.detail))
        .collect())
}

#[pymodule]
fn pyconifold(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRatFun>()?;
    m.add_class::<PySeries>()?;
    m.add_class::<PyGeomSeries>()?;
    m.add_function(wrap_pyfunction!(universal_series, m)?)?;
    m.add_function(wrap_pyfunction!(z_series, m)?)?;
    m.add_function(wrap_pyfunction!(classify_chamber, m)?)?;
    m.add_function(wrap_pyfunction!(chamber_json, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_stability, m)?)?;
    m.add_function(wrap_pyfunction!(named_series, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_pt, m)?)?;
    m.add_function(wrap_pyfunction!(exp_pleth, m)?)?;
    m.add_function(wrap_pyfunction!(log_pleth, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
