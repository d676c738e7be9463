//! Python bindings.

use std::collections::HashMap;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use mhd_enclose::cli::{self, EncloseRow, Overrides, RunConfig, SizeParam};
use mhd_enclose::enclosure;
use mhd_enclose::models::{self, ModelSpec};
use mhd_enclose::Error;

create_exception!(mhd_enclose_py, EnclosureError, PyException);

fn to_py(err: Error) -> PyErr {
    match cli::exit_code(&err) {
        cli::EXIT_CONFIG => PyValueError::new_err(err.to_string()),
        _ => EnclosureError::new_err(err.to_string()),
    }
}

/// A built-in benchmark (`slab21`, `slab22`, `cyl25`) or a slab profile table.
#[pyclass(name = "Model", frozen)]
struct PyModel {
    inner: ModelSpec,
}

#[pymethods]
impl PyModel {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(Self {
            inner: ModelSpec::by_name(name).map_err(to_py)?,
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn geometry(&self) -> &'static str {
        match self.inner.geometry {
            models::Geometry::Slab(_) => "slab",
            models::Geometry::Cylinder(_) => "cylinder",
        }
    }

    /// Top of the spectrum of D, or None when unbounded.
    #[getter]
    fn d(&self) -> Option<f64> {
        self.inner.d
    }

    #[getter]
    fn domain(&self) -> (f64, f64) {
        self.inner.domain()
    }

    /// Essential bands as `(name, lo, hi)`.
    #[getter]
    fn bands(&self) -> Vec<(String, f64, f64)> {
        self.inner
            .bands
            .iter()
            .map(|b| (b.name.clone(), b.lo, b.hi))
            .collect()
    }

    #[getter]
    fn has_oracle(&self) -> bool {
        self.inner.oracle.is_some()
    }

    fn oracle_value(&self, m: usize) -> PyResult<f64> {
        self.inner.oracle_value(m).map_err(to_py)
    }

    fn exact_eigenvalues_in(&self, a: f64, b: f64) -> PyResult<Vec<f64>> {
        self.inner.exact_eigenvalues_in(a, b).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Model('{}')", self.inner.name)
    }
}

/// Certified two-sided bound for one eigenvalue.
#[pyclass(name = "Enclosure", frozen)]
struct PyEnclosure {
    row: EncloseRow,
}

#[pymethods]
impl PyEnclosure {
    #[getter]
    fn model(&self) -> String {
        self.row.model.clone()
    }

    #[getter]
    fn m(&self) -> usize {
        self.row.enclosure.m
    }

    #[getter]
    fn lower(&self) -> f64 {
        self.row.enclosure.lower
    }

    #[getter]
    fn upper(&self) -> f64 {
        self.row.enclosure.upper
    }

    #[getter]
    fn width(&self) -> f64 {
        self.row.enclosure.width()
    }

    #[getter]
    fn method(&self) -> String {
        self.row.enclosure.method.to_string()
    }

    #[getter]
    fn interval(&self) -> (f64, f64) {
        self.row.enclosure.interval
    }

    #[getter]
    fn dof(&self) -> usize {
        self.row.enclosure.dof
    }

    /// Mesh width (Hermite) or number of terms (sine).
    #[getter]
    fn size(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        Ok(match self.row.size {
            SizeParam::Width(h) => h.into_pyobject(py)?.into_any().unbind(),
            SizeParam::Terms(n) => n.into_pyobject(py)?.into_any().unbind(),
        })
    }

    #[getter]
    fn oracle(&self) -> Option<f64> {
        self.row.oracle
    }

    #[getter]
    fn contains_oracle(&self) -> Option<bool> {
        self.row.contains_oracle()
    }

    #[getter]
    fn assumption(&self) -> String {
        self.row.enclosure.assumption.clone()
    }

    #[getter]
    fn tolerances(&self) -> HashMap<&'static str, f64> {
        let t = self.row.enclosure.tolerances;
        HashMap::from([
            ("quadrature", t.quadrature),
            ("eigen", t.eigen),
            ("scan", t.scan),
            ("root", t.root),
        ])
    }

    #[getter]
    fn diagnostics(&self) -> HashMap<&'static str, Option<f64>> {
        let d = self.row.enclosure.diagnostics;
        HashMap::from([
            ("tau_plus", d.tau_plus),
            ("tau_minus", d.tau_minus),
            ("root_width", d.root_width),
            ("shift_retries", Some(d.shift_retries as f64)),
            ("asymmetry", Some(d.asymmetry)),
        ])
    }

    /// Tolerance floor near `x`.
    fn floor(&self, x: f64) -> f64 {
        self.row.enclosure.tolerances.floor(x)
    }

    fn contains(&self, x: f64) -> bool {
        self.row.enclosure.contains(x)
    }

    /// Containment up to the tolerance floor.
    fn certifies(&self, x: f64) -> bool {
        self.row.enclosure.certifies(x)
    }

    fn __repr__(&self) -> String {
        let e = &self.row.enclosure;
        format!(
            "Enclosure(m={}, lower={:.12e}, upper={:.12e}, method='{}')",
            e.m, e.lower, e.upper, e.method
        )
    }
}

fn join<T: ToString>(xs: Option<Vec<T>>) -> Option<String> {
    xs.map(|v| v.iter().map(T::to_string).collect::<Vec<_>>().join(","))
}

#[allow(clippy::too_many_arguments)]
fn config(
    model: String,
    method: Option<String>,
    basis: Option<String>,
    order: Option<usize>,
    h: Option<Vec<f64>>,
    n: Option<Vec<usize>>,
    index: Option<Vec<usize>>,
    interval: Option<Vec<(f64, f64)>>,
    scan_points: Option<usize>,
    tol_quad: Option<f64>,
    tol_eig: Option<f64>,
    kappa: Option<usize>,
    jobs: Option<usize>,
) -> PyResult<RunConfig> {
    let interval = interval.map(|v| {
        v.iter()
            .map(|(a, b)| format!("{a:e}:{b:e}"))
            .collect::<Vec<_>>()
            .join(",")
    });
    RunConfig::resolve(Overrides {
        model: Some(model),
        method,
        basis,
        order,
        h: join(h.map(|v| v.iter().map(|x| format!("{x:e}")).collect())),
        n: join(n),
        index: join(index),
        interval,
        scan_points,
        tol_quad,
        tol_eig,
        kappa,
        jobs,
        ..Overrides::default()
    })
    .map_err(to_py)
}

/// Enclosures of the requested eigenvalues on one discretization (the first
/// entry of `h` or `n`).
#[pyfunction]
#[pyo3(signature = (model, *, method=None, basis=None, order=None, h=None, n=None, index=None,
                    interval=None, scan_points=None, tol_quad=None, tol_eig=None, kappa=None,
                    jobs=None))]
#[allow(clippy::too_many_arguments)]
fn enclose(
    py: Python<'_>,
    model: String,
    method: Option<String>,
    basis: Option<String>,
    order: Option<usize>,
    h: Option<Vec<f64>>,
    n: Option<Vec<usize>>,
    index: Option<Vec<usize>>,
    interval: Option<Vec<(f64, f64)>>,
    scan_points: Option<usize>,
    tol_quad: Option<f64>,
    tol_eig: Option<f64>,
    kappa: Option<usize>,
    jobs: Option<usize>,
) -> PyResult<Vec<PyEnclosure>> {
    let cfg = config(
        model,
        method,
        basis,
        order,
        h,
        n,
        index,
        interval,
        scan_points,
        tol_quad,
        tol_eig,
        kappa,
        jobs,
    )?;
    let rows = py.detach(|| cli::run_enclose(&cfg)).map_err(to_py)?;
    Ok(rows.into_iter().map(|row| PyEnclosure { row }).collect())
}

/// Enclosures over every size in `h` or `n`, plus fitted orders per index as
/// `{m: {"width": (slope, points, floor_reached), ...}}`.
#[pyfunction]
#[pyo3(signature = (model, *, method=None, basis=None, order=None, h=None, n=None, index=None,
                    interval=None, scan_points=None, tol_quad=None, tol_eig=None, kappa=None,
                    jobs=None))]
#[allow(clippy::too_many_arguments)]
#[allow(clippy::type_complexity)]
fn convergence(
    py: Python<'_>,
    model: String,
    method: Option<String>,
    basis: Option<String>,
    order: Option<usize>,
    h: Option<Vec<f64>>,
    n: Option<Vec<usize>>,
    index: Option<Vec<usize>>,
    interval: Option<Vec<(f64, f64)>>,
    scan_points: Option<usize>,
    tol_quad: Option<f64>,
    tol_eig: Option<f64>,
    kappa: Option<usize>,
    jobs: Option<usize>,
) -> PyResult<(
    Vec<PyEnclosure>,
    HashMap<usize, HashMap<&'static str, (f64, usize, bool)>>,
)> {
    let cfg = config(
        model,
        method,
        basis,
        order,
        h,
        n,
        index,
        interval,
        scan_points,
        tol_quad,
        tol_eig,
        kappa,
        jobs,
    )?;
    let report = py.detach(|| cli::run_convergence(&cfg)).map_err(to_py)?;
    let tuple = |f: &cli::SlopeFit| (f.slope, f.points, f.floor_reached);
    let fits = report
        .fits
        .iter()
        .map(|f| {
            let mut q = HashMap::from([("width", tuple(&f.width))]);
            if let Some(u) = &f.upper_gap {
                q.insert("upper_gap", tuple(u));
            }
            if let Some(l) = &f.lower_gap {
                q.insert("lower_gap", tuple(l));
            }
            (f.m, q)
        })
        .collect();
    let rows = report
        .rows
        .into_iter()
        .map(|row| PyEnclosure { row })
        .collect();
    Ok((rows, fits))
}

/// Exact eigenvalues as `(m, branch, value)`.
#[pyfunction]
fn oracle(model: &str, index: Vec<usize>) -> PyResult<Vec<(usize, &'static str, f64)>> {
    let rows = cli::run_oracle(model, &index).map_err(to_py)?;
    Ok(rows.into_iter().map(|r| (r.m, r.branch, r.value)).collect())
}

/// Least-squares order of `ys ~ xs^p` over points above `floors`.
#[pyfunction]
fn fit_slope(xs: Vec<f64>, ys: Vec<f64>, floors: Vec<f64>) -> PyResult<(f64, usize, bool)> {
    if xs.len() != ys.len() || xs.len() != floors.len() {
        return Err(PyValueError::new_err(
            "xs, ys and floors must have equal length",
        ));
    }
    let f = cli::fit_slope(&xs, &ys, &floors).map_err(to_py)?;
    Ok((f.slope, f.points, f.floor_reached))
}

/// Enclosure `[b + 1/tau_minus, a + 1/tau_plus]` from inverse residuals.
#[pyfunction]
fn residual_enclosure(tau_plus: f64, tau_minus: f64, a: f64, b: f64) -> PyResult<(f64, f64)> {
    let res = enclosure::InverseResiduals {
        tau_plus,
        tau_minus,
        a,
        b,
    };
    enclosure::zm_enclosure(&res).map_err(to_py)
}

#[pyfunction]
fn exact_slab21_spectrum(k: usize) -> (f64, f64) {
    models::exact_slab21_spectrum(k)
}

#[pyfunction]
fn exact_cylinder_spectrum(m: usize) -> PyResult<f64> {
    if m == 0 {
        return Err(PyValueError::new_err("indices start at 1"));
    }
    Ok(models::exact_cylinder_spectrum(m))
}

#[pymodule]
fn mhd_enclose_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("EnclosureError", m.py().get_type::<EnclosureError>())?;
    m.add_class::<PyModel>()?;
    m.add_class::<PyEnclosure>()?;
    m.add_function(wrap_pyfunction!(enclose, m)?)?;
    m.add_function(wrap_pyfunction!(convergence, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(fit_slope, m)?)?;
    m.add_function(wrap_pyfunction!(residual_enclosure, m)?)?;
    m.add_function(wrap_pyfunction!(exact_slab21_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(exact_cylinder_spectrum, m)?)?;
    Ok(())
}
