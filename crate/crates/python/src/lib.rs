//! Python bindings.
//!
//! Matrices are nested lists. An entry may be an `int`, a `float`, a
//! `complex`, a `fractions.Fraction`, a rational string such as `"3/4"`, or a
//! `[re, im]` pair of those. Integral parts of a `complex` count as exact
//! integers, so `1j` keeps an instance in exact mode. Reports come back as
//! plain dicts with the same layout as the CLI's JSON output.

use kahler::cli::instance::{Entry, Part, RawMatrix};
use kahler::cli::{commands, run_args, Diagnostic, InstanceFile, Report, StratificationFile};
use kahler::exterior::{basis as exterior_basis, hodge_number as exterior_hodge_number};
use kahler::hodge::c_constant as hodge_c_constant;
use kahler::linalg::LinearAlgebra;
use kahler::scalar::{Complex64, GaussianRational, Mode, Scalar};
use kahler::semismall::Stratification as CoreStratification;
use kahler::torus::VerifyPlan;
use kahler::{semismall, torus};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyComplex, PyFloat, PyInt, PyList, PyString, PyTuple};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn part(obj: &Bound<'_, PyAny>, loc: &str) -> PyResult<Part> {
    if obj.is_instance_of::<PyString>() {
        return Ok(Part::Text(obj.extract()?));
    }
    if obj.is_instance_of::<PyBool>() {
        return Err(value_error(format!("{loc}: booleans are not matrix entries")));
    }
    if obj.is_instance_of::<PyInt>() {
        let i: i64 = obj.extract()?;
        return Ok(Part::Number(i.into()));
    }
    if obj.is_instance_of::<PyFloat>() {
        let f: f64 = obj.extract()?;
        return kahler::cli::instance::number_from_f64(f)
            .map(Part::Number)
            .ok_or_else(|| value_error(format!("{loc}: {f} is not finite")));
    }
    if obj.hasattr("numerator")? && obj.hasattr("denominator")? {
        return Ok(Part::Text(obj.str()?.extract()?));
    }
    Err(value_error(format!(
        "{loc}: expected int, float, str or Fraction, got {}",
        obj.get_type().name()?
    )))
}

fn entry(obj: &Bound<'_, PyAny>, loc: &str) -> PyResult<Entry> {
    if obj.is_instance_of::<PyComplex>() {
        let component = |name: &str| -> PyResult<Part> {
            let f: f64 = obj.getattr(name)?.extract()?;
            if f.fract() == 0.0 && f.abs() < 2f64.powi(53) {
                Ok(Part::Number((f as i64).into()))
            } else {
                part(&obj.getattr(name)?, loc)
            }
        };
        return Ok(Entry::Pair([component("real")?, component("imag")?]));
    }
    if obj.is_instance_of::<PyList>() || obj.is_instance_of::<PyTuple>() {
        let items: Vec<Bound<'_, PyAny>> = obj.extract()?;
        if items.len() != 2 {
            return Err(value_error(format!("{loc}: a pair entry needs exactly [re, im]")));
        }
        return Ok(Entry::Pair([part(&items[0], loc)?, part(&items[1], loc)?]));
    }
    Ok(Entry::Real(part(obj, loc)?))
}

fn matrix(obj: &Bound<'_, PyAny>, name: &str) -> PyResult<RawMatrix> {
    let rows: Vec<Vec<Bound<'_, PyAny>>> = obj
        .extract()
        .map_err(|_| value_error(format!("{name}: expected a list of rows")))?;
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, e)| entry(e, &format!("{name}[{r}][{c}]")))
                .collect()
        })
        .collect()
}

fn parse_mode(mode: Option<&str>) -> PyResult<Option<Mode>> {
    mode.map(|m| m.parse::<Mode>().map_err(value_error)).transpose()
}

fn report_to_py(py: Python<'_>, report: &Report) -> PyResult<Py<PyAny>> {
    json_to_py(py, &report.to_json())
}

fn json_to_py(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn scalar_to_py(py: Python<'_>, s: &Scalar) -> PyResult<Py<PyAny>> {
    match s {
        Scalar::Exact(z) => {
            let fraction = py.import("fractions")?.getattr("Fraction")?;
            let re = fraction.call1((z.re.to_string(),))?;
            let im = fraction.call1((z.im.to_string(),))?;
            Ok(PyTuple::new(py, [re, im])?.into_any().unbind())
        }
        Scalar::Float(z) => Ok(PyComplex::from_doubles(py, z.re, z.im).into_any().unbind()),
    }
}

fn diagnostic(d: Diagnostic) -> PyErr {
    value_error(d)
}

/// An instance file: dimension, bidegree, factor matrices and optional `M`, `A`, `t` values.
#[pyclass(module = "kahler_py", from_py_object)]
#[derive(Clone)]
pub struct Instance {
    inner: InstanceFile,
}

impl Instance {
    fn run(&self, py: Python<'_>, command: &str, mode: Option<&str>) -> PyResult<Py<PyAny>> {
        let mode = self.inner.resolve_mode(parse_mode(mode)?);
        let report = match mode {
            Mode::Exact => dispatch::<GaussianRational>(command, &self.inner),
            Mode::Float => dispatch::<Complex64>(command, &self.inner),
        }
        .map_err(diagnostic)?;
        report_to_py(py, &report)
    }
}

fn dispatch<F: LinearAlgebra>(command: &str, inst: &InstanceFile) -> Result<Report, Diagnostic> {
    let t = inst.typed::<F>()?;
    match command {
        "check-hl" => commands::check_hl(&t),
        "check-hr" => commands::check_hr(&t),
        "criterion" => commands::criterion(&t),
        "af" => commands::af(&t),
        "scan" => commands::scan(&t),
        other => Err(Diagnostic::new("command", format!("unknown command {other}"))),
    }
}

#[pymethods]
impl Instance {
    #[new]
    #[pyo3(signature = (n, factors, p=0, q=0, m=None, a=None, t_values=None))]
    fn new(
        n: usize,
        factors: Vec<Bound<'_, PyAny>>,
        p: usize,
        q: usize,
        m: Option<Bound<'_, PyAny>>,
        a: Option<Bound<'_, PyAny>>,
        t_values: Option<Vec<Bound<'_, PyAny>>>,
    ) -> PyResult<Self> {
        let factors = factors
            .iter()
            .enumerate()
            .map(|(k, f)| matrix(f, &format!("factors[{k}]")))
            .collect::<PyResult<Vec<_>>>()?;
        let inner = InstanceFile {
            description: None,
            n,
            p,
            q,
            factors,
            m: m.as_ref().map(|m| matrix(m, "M")).transpose()?,
            a: a.as_ref().map(|a| matrix(a, "A")).transpose()?,
            t_values: t_values
                .map(|ts| {
                    ts.iter()
                        .enumerate()
                        .map(|(k, t)| part(t, &format!("t_values[{k}]")))
                        .collect::<PyResult<Vec<_>>>()
                })
                .transpose()?,
        };
        // Validate shapes and Hermitian symmetry up front.
        match inner.resolve_mode(None) {
            Mode::Exact => inner.typed::<GaussianRational>().map(|_| ()),
            Mode::Float => inner.typed::<Complex64>().map(|_| ()),
        }
        .map_err(diagnostic)?;
        Ok(Instance { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        InstanceFile::parse(text)
            .map(|inner| Instance { inner })
            .map_err(diagnostic)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn bidegree(&self) -> (usize, usize) {
        (self.inner.p, self.inner.q)
    }

    /// Mode used when none is requested: exact if every entry is rational.
    #[getter]
    fn mode(&self) -> String {
        self.inner.resolve_mode(None).to_string()
    }

    #[pyo3(signature = (mode=None))]
    fn check_hl(&self, py: Python<'_>, mode: Option<&str>) -> PyResult<Py<PyAny>> {
        self.run(py, "check-hl", mode)
    }

    #[pyo3(signature = (mode=None))]
    fn check_hr(&self, py: Python<'_>, mode: Option<&str>) -> PyResult<Py<PyAny>> {
        self.run(py, "check-hr", mode)
    }

    #[pyo3(signature = (mode=None))]
    fn criterion(&self, py: Python<'_>, mode: Option<&str>) -> PyResult<Py<PyAny>> {
        self.run(py, "criterion", mode)
    }

    #[pyo3(signature = (mode=None))]
    fn af(&self, py: Python<'_>, mode: Option<&str>) -> PyResult<Py<PyAny>> {
        self.run(py, "af", mode)
    }

    #[pyo3(signature = (mode=None))]
    fn scan(&self, py: Python<'_>, mode: Option<&str>) -> PyResult<Py<PyAny>> {
        self.run(py, "scan", mode)
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(n={}, p={}, q={}, factors={})",
            self.inner.n,
            self.inner.p,
            self.inner.q,
            self.inner.factors.len()
        )
    }

    fn __eq__(&self, other: &Instance) -> bool {
        self.inner == other.inner
    }
}

/// Stratification data `(fiber_dim, stratum_dim)` of a map `X → Y`.
#[pyclass(module = "kahler_py", from_py_object)]
#[derive(Clone)]
pub struct Stratification {
    inner: CoreStratification,
}

#[pymethods]
impl Stratification {
    #[new]
    fn new(dim_x: usize, dim_y: usize, strata: Vec<(usize, usize)>) -> Self {
        Stratification {
            inner: CoreStratification::new(dim_x, dim_y, &strata),
        }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        StratificationFile::parse(text)
            .map(|f| Stratification {
                inner: f.to_stratification(),
            })
            .map_err(diagnostic)
    }

    /// Names of every well-formedness violation; empty when valid.
    fn violations(&self) -> Vec<&'static str> {
        self.inner.violations().iter().map(semismall::Violation::name).collect()
    }

    fn defect(&self) -> PyResult<usize> {
        self.inner.defect().map_err(value_error)
    }

    /// Defect without validation, for exploratory use.
    fn raw_defect(&self) -> i64 {
        self.inner.raw_defect()
    }

    fn exact_lef(&self) -> PyResult<usize> {
        self.inner.lef_level().map(|l| l.exact_lef).map_err(value_error)
    }

    fn is_semismall(&self) -> PyResult<bool> {
        self.inner.is_semismall().map_err(value_error)
    }

    fn is_m_lef(&self, m: usize) -> PyResult<bool> {
        self.inner.is_m_lef(m).map_err(value_error)
    }

    fn nd_lower_bound(&self) -> PyResult<usize> {
        self.inner.nd_lower_bound().map_err(value_error)
    }

    fn __repr__(&self) -> String {
        let strata: Vec<_> = self
            .inner
            .strata
            .iter()
            .map(|s| (s.fiber_dim, s.stratum_dim))
            .collect();
        format!(
            "Stratification(dim_x={}, dim_y={}, strata={strata:?})",
            self.inner.dim_x, self.inner.dim_y
        )
    }
}

/// Basis of `H^{p,q}` as `(I, J)` pairs of 1-based index lists.
#[pyfunction]
fn basis(n: usize, p: usize, q: usize) -> PyResult<Vec<(Vec<usize>, Vec<usize>)>> {
    Ok(exterior_basis(n, p, q)
        .map_err(value_error)?
        .into_iter()
        .map(|(i, j)| (i.to_vec(), j.to_vec()))
        .collect())
}

#[pyfunction]
fn hodge_number(n: usize, p: isize, q: isize) -> usize {
    exterior_hodge_number(n, p, q)
}

/// The Hodge-Riemann sign constant `c_{p,q}` (a unit complex number).
#[pyfunction]
fn c_constant(py: Python<'_>, p: usize, q: usize) -> Py<PyAny> {
    let c: Complex64 = hodge_c_constant(p, q);
    PyComplex::from_doubles(py, c.re, c.im).into_any().unbind()
}

fn forms<F: LinearAlgebra>(mats: &[RawMatrix], n: usize) -> Result<Vec<kahler::HermitianForm<F>>, Diagnostic> {
    let file = InstanceFile {
        description: None,
        n,
        p: 0,
        q: 0,
        factors: mats.to_vec(),
        m: None,
        a: None,
        t_values: None,
    };
    Ok(file.typed::<F>()?.factors)
}

fn raw_forms(objs: &[Bound<'_, PyAny>]) -> PyResult<(Vec<RawMatrix>, usize)> {
    let mats = objs
        .iter()
        .enumerate()
        .map(|(k, f)| matrix(f, &format!("forms[{k}]")))
        .collect::<PyResult<Vec<_>>>()?;
    let n = mats.first().map_or(0, Vec::len);
    Ok((mats, n))
}

fn auto_mode(mats: &[RawMatrix], n: usize, mode: Option<&str>) -> PyResult<Mode> {
    let probe = InstanceFile {
        description: None,
        n,
        p: 0,
        q: 0,
        factors: mats.to_vec(),
        m: None,
        a: None,
        t_values: None,
    };
    Ok(probe.resolve_mode(parse_mode(mode)?))
}

/// Mixed discriminant `D(A_1, …, A_n)`. Exact mode returns `(Fraction, Fraction)`
/// for the real and imaginary parts; float mode returns a `complex`.
#[pyfunction]
#[pyo3(signature = (forms_list, mode=None))]
fn mixed_discriminant(py: Python<'_>, forms_list: Vec<Bound<'_, PyAny>>, mode: Option<&str>) -> PyResult<Py<PyAny>> {
    let (mats, n) = raw_forms(&forms_list)?;
    let value = match auto_mode(&mats, n, mode)? {
        Mode::Exact => {
            let f = forms::<GaussianRational>(&mats, n).map_err(diagnostic)?;
            torus::mixed_discriminant(&f).map(|v| kahler::Field::to_scalar(&v))
        }
        Mode::Float => {
            let f = forms::<Complex64>(&mats, n).map_err(diagnostic)?;
            torus::mixed_discriminant(&f).map(|v| kahler::Field::to_scalar(&v))
        }
    }
    .map_err(value_error)?;
    scalar_to_py(py, &value)
}

/// Rank of a positive-semidefinite Hermitian matrix.
#[pyfunction]
#[pyo3(signature = (matrix_obj, mode=None))]
fn numerical_dimension(matrix_obj: Bound<'_, PyAny>, mode: Option<&str>) -> PyResult<usize> {
    let (mats, n) = raw_forms(std::slice::from_ref(&matrix_obj))?;
    match auto_mode(&mats, n, mode)? {
        Mode::Exact => {
            let f = forms::<GaussianRational>(&mats, n).map_err(diagnostic)?;
            torus::numerical_dimension(&f[0])
        }
        Mode::Float => {
            let f = forms::<Complex64>(&mats, n).map_err(diagnostic)?;
            torus::numerical_dimension(&f[0])
        }
    }
    .map_err(value_error)
}

#[pyfunction]
fn lef_of_sum(k: usize, l: usize) -> usize {
    semismall::lef_of_sum(k, l)
}

/// Seeded comparison of the subset criterion with direct HL/HR checks.
#[pyfunction]
#[pyo3(signature = (trials=200, seed=42, dims=vec![2, 3, 4], bidegree=None, mode="exact", check_hr=true))]
fn theorem_a_verify(
    py: Python<'_>,
    trials: usize,
    seed: u64,
    dims: Vec<usize>,
    bidegree: Option<(usize, usize)>,
    mode: &str,
    check_hr: bool,
) -> PyResult<Py<PyAny>> {
    let mode: Mode = mode.parse().map_err(value_error)?;
    let plan = VerifyPlan {
        dims,
        bidegree,
        factor_ranks: None,
        m_rank: None,
        check_hr,
    };
    let report = py
        .detach(|| match mode {
            Mode::Exact => commands::verify_theorem_a::<GaussianRational>(&plan, trials, seed),
            Mode::Float => commands::verify_theorem_a::<Complex64>(&plan, trials, seed),
        })
        .map_err(diagnostic)?;
    report_to_py(py, &report)
}

/// Runs the command-line tool in-process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(py: Python<'_>, args: Vec<String>) -> (i32, String, String) {
    let out = py.detach(|| run_args(std::iter::once("kahler".to_string()).chain(args)));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
pub fn kahler_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Instance>()?;
    m.add_class::<Stratification>()?;
    m.add_function(wrap_pyfunction!(basis, m)?)?;
    m.add_function(wrap_pyfunction!(hodge_number, m)?)?;
    m.add_function(wrap_pyfunction!(c_constant, m)?)?;
    m.add_function(wrap_pyfunction!(mixed_discriminant, m)?)?;
    m.add_function(wrap_pyfunction!(numerical_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(lef_of_sum, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_a_verify, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
