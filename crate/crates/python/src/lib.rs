//! Python bindings. Vectors cross the boundary in their canonical text form.

use std::collections::HashMap;
use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use sugawara_core::fock::{generating_function as gf, VacuumModule, VacuumModuleSpec};
use sugawara_core::harness::{run_suite as run, Suite, SuiteConfig};
use sugawara_core::lie::SimpleLieAlgebra;
use sugawara_core::report::{emit_report, ReportFormat};
use sugawara_core::scalars::{Param, RationalFunction};
use sugawara_core::sugawara::Sugawara;
use sugawara_core::Error;

create_exception!(sugawara, SugawaraError, PyException);
create_exception!(sugawara, TruncationError, SugawaraError);
create_exception!(sugawara, CriticalLevelError, SugawaraError);
create_exception!(sugawara, PoleError, SugawaraError);
create_exception!(sugawara, ConfigError, SugawaraError);

fn err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Truncation { .. } => TruncationError::new_err(msg),
        Error::CriticalLevel(_) => CriticalLevelError::new_err(msg),
        Error::Pole { .. } | Error::ZeroDivision => PoleError::new_err(msg),
        Error::Config(_) => ConfigError::new_err(msg),
        _ => SugawaraError::new_err(msg),
    }
}

fn param(name: &str) -> PyResult<Param> {
    match name {
        "k" => Ok(Param::K),
        "c" => Ok(Param::C),
        "lambda" => Ok(Param::Lambda),
        "mu" => Ok(Param::Mu),
        _ => Err(ConfigError::new_err(format!("unknown parameter {name:?}"))),
    }
}

/// Element of Q(k, c, lambda, mu).
#[pyclass(name = "RationalFunction", frozen, eq, str, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyRationalFunction(RationalFunction);

impl std::fmt::Display for PyRationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[pymethods]
impl PyRationalFunction {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyRationalFunction).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("RationalFunction({:?})", self.0.to_string())
    }

    fn __add__(&self, o: &Self) -> Self {
        PyRationalFunction(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        PyRationalFunction(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Self) -> Self {
        PyRationalFunction(&self.0 * &o.0)
    }

    fn __truediv__(&self, o: &Self) -> PyResult<Self> {
        self.0.checked_div(&o.0).map(PyRationalFunction).map_err(err)
    }

    fn __neg__(&self) -> Self {
        PyRationalFunction(-&self.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Substitutes a rational value for one parameter.
    fn subs(&self, name: &str, value: &str) -> PyResult<Self> {
        let v = value.parse().map_err(err)?;
        self.0.eval_at(param(name)?, v).map(PyRationalFunction).map_err(err)
    }
}

#[pyclass(name = "LieAlgebra", frozen)]
struct PyLieAlgebra(Arc<SimpleLieAlgebra>);

#[pymethods]
impl PyLieAlgebra {
    #[staticmethod]
    fn sl(n: usize) -> PyResult<Self> {
        SimpleLieAlgebra::sl(n).map(|g| PyLieAlgebra(Arc::new(g))).map_err(err)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name.clone()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.0.dimension()
    }

    #[getter]
    fn dual_coxeter(&self) -> i64 {
        self.0.dual_coxeter
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.basis_labels.clone()
    }

    fn index(&self, label: &str) -> PyResult<usize> {
        self.0
            .label_index(label)
            .ok_or_else(|| SugawaraError::new_err(format!("no basis element {label:?}")))
    }

    /// `[x_a, x_b]` as `{label: coefficient}`.
    fn bracket(&self, a: &str, b: &str) -> PyResult<HashMap<String, String>> {
        let (ia, ib) = (self.index(a)?, self.index(b)?);
        Ok(self.0.structure_constants[ia][ib]
            .iter()
            .map(|(d, c)| (self.0.basis_labels[*d].clone(), c.to_string()))
            .collect())
    }

    fn form(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.0.form_matrix[self.index(a)?][self.index(b)?].to_string())
    }

    fn invariant_violations(&self) -> Vec<(String, Option<String>)> {
        self.0
            .invariant_violations()
            .into_iter()
            .map(|(n, v)| (n.to_string(), v))
            .collect()
    }
}

/// Truncated vacuum module. `kind` is `kac-moody`, `virasoro` or
/// `semidirect`; `params` maps `k, c, lambda, mu` to rational values.
#[pyclass(name = "VacuumModule", frozen)]
struct PyVacuumModule(Arc<VacuumModule>);

#[pymethods]
impl PyVacuumModule {
    #[new]
    #[pyo3(signature = (kind, algebra = "sl2", level_structure = 0, degree = 6, params = None, classical = false))]
    fn new(
        kind: &str,
        algebra: &str,
        level_structure: i64,
        degree: i64,
        params: Option<HashMap<String, String>>,
        classical: bool,
    ) -> PyResult<Self> {
        let rank = SuiteConfig::parse_algebra(algebra).map_err(err)?;
        let lie = Arc::new(SimpleLieAlgebra::sl(rank).map_err(err)?);
        let mut spec = match kind {
            "kac-moody" => VacuumModuleSpec::kac_moody(lie, level_structure, degree),
            "virasoro" => VacuumModuleSpec::virasoro(level_structure, degree),
            "semidirect" => VacuumModuleSpec::semidirect(lie, level_structure, degree),
            _ => return Err(ConfigError::new_err(format!("unknown module kind {kind:?}"))),
        };
        for (name, value) in params.unwrap_or_default() {
            spec = spec.with_param(param(&name)?, value.parse().map_err(err)?);
        }
        if classical {
            spec = spec.classical();
        }
        VacuumModule::new(spec).map(|m| PyVacuumModule(Arc::new(m))).map_err(err)
    }

    #[getter]
    fn level_structure(&self) -> i64 {
        self.0.level_structure()
    }

    #[getter]
    fn degree(&self) -> i64 {
        self.0.truncation_degree()
    }

    /// Canonical monomials of one weight.
    fn basis(&self, weight: i64) -> PyResult<Vec<String>> {
        let b = self.0.enumerate_basis(weight).map_err(err)?;
        Ok(b.iter().map(|m| self.0.format_monomial(m)).collect())
    }

    fn dimension(&self, weight: i64) -> PyResult<usize> {
        Ok(self.0.enumerate_basis(weight).map_err(err)?.len())
    }

    /// `g . v` for a generator such as `J[a=E12,m=1]` or `L[m=-2]`.
    fn apply(&self, generator: &str, vector: &str) -> PyResult<String> {
        let g = self.0.parse_symbol(generator).map_err(err)?;
        let v = self.0.parse_vector(vector).map_err(err)?;
        Ok(self.0.format_vector(&self.0.apply(g, &v).map_err(err)?))
    }

    /// PBW normal form of `x_1 ... x_r |0>`.
    fn normal_order(&self, word: Vec<String>) -> PyResult<String> {
        let syms = word
            .iter()
            .map(|s| self.0.parse_symbol(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        Ok(self.0.format_vector(&self.0.normal_order(&syms).map_err(err)?))
    }

    fn vacuum(&self) -> String {
        self.0.format_vector(&sugawara_core::fock::ModuleVector::vacuum())
    }

    /// Coefficient of a monomial in a vector.
    fn coefficient(&self, vector: &str, monomial: &str) -> PyResult<PyRationalFunction> {
        let v = self.0.parse_vector(vector).map_err(err)?;
        let m = self.0.parse_monomial(monomial).map_err(err)?;
        Ok(PyRationalFunction(v.coeff(&m)))
    }
}

#[pyclass(name = "Sugawara", frozen)]
struct PySugawara(Arc<Sugawara>);

#[pymethods]
impl PySugawara {
    #[new]
    fn new(module: &PyVacuumModule) -> PyResult<Self> {
        Sugawara::new(module.0.clone()).map(|s| PySugawara(Arc::new(s))).map_err(err)
    }

    fn central_charge(&self) -> PyRationalFunction {
        PyRationalFunction(self.0.central_charge())
    }

    fn c_k(&self) -> PyRationalFunction {
        PyRationalFunction(self.0.c_k())
    }

    /// `L^S_n . v`
    fn mode(&self, n: i64, vector: &str) -> PyResult<String> {
        let m = self.0.module();
        let v = m.parse_vector(vector).map_err(err)?;
        Ok(m.format_vector(&self.0.sugawara_mode(n, &v).map_err(err)?))
    }

    /// `S_n . v = (L_n - L^S_n) . v`
    fn shifted_mode(&self, n: i64, vector: &str) -> PyResult<String> {
        let m = self.0.module();
        let v = m.parse_vector(vector).map_err(err)?;
        Ok(m.format_vector(&self.0.shifted_mode(n, &v).map_err(err)?))
    }

    fn singular_vector(&self) -> PyResult<String> {
        Ok(self.0.module().format_vector(&self.0.singular_vector().map_err(err)?))
    }

    /// Image of `j (x) l` under the tensor isomorphism; both arguments are
    /// monomials of the target module.
    fn tensor_iso(&self, j: &str, l: &str) -> PyResult<String> {
        let m = self.0.module();
        let (j, l) = (m.parse_monomial(j).map_err(err)?, m.parse_monomial(l).map_err(err)?);
        Ok(m.format_vector(&self.0.tensor_iso(&j, &l).map_err(err)?))
    }

    /// Preimage as `[(j, l, coefficient)]`.
    fn tensor_iso_inverse(&self, vector: &str) -> PyResult<Vec<(String, String, PyRationalFunction)>> {
        let m = self.0.module();
        let v = m.parse_vector(vector).map_err(err)?;
        Ok(self
            .0
            .tensor_iso_inverse(&v)
            .map_err(err)?
            .into_iter()
            .map(|(j, l, c)| (m.format_monomial(&j), m.format_monomial(&l), PyRationalFunction(c)))
            .collect())
    }
}

/// Runs a verification suite and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (suite, algebra = "sl2", level_structure = 0, degree = 6, mode_range = 4, params = None, workers = 1))]
fn run_suite(
    py: Python<'_>,
    suite: &str,
    algebra: &str,
    level_structure: i64,
    degree: i64,
    mode_range: i64,
    params: Option<HashMap<String, String>>,
    workers: usize,
) -> PyResult<String> {
    let suite: Suite = suite.parse().map_err(err)?;
    let mut cfg = SuiteConfig::new(suite)
        .algebra(SuiteConfig::parse_algebra(algebra).map_err(err)?)
        .level_structure(level_structure)
        .degree(degree)
        .mode_range(mode_range)
        .workers(workers);
    for (name, value) in params.unwrap_or_default() {
        let (p, v) = SuiteConfig::parse_assignment(&format!("{name}={value}")).map_err(err)?;
        cfg = cfg.set(p, v);
    }
    let report = py.detach(|| run(&cfg)).map_err(err)?;
    Ok(String::from_utf8(emit_report(&report, ReportFormat::Json)).expect("utf-8"))
}

/// Coefficients of `prod (1-q^j)^{-dim_g}` (times the Virasoro factor).
#[pyfunction]
fn generating_function(dim_g: usize, with_virasoro: bool, max_degree: usize) -> Vec<u64> {
    gf(dim_g, with_virasoro, max_degree)
}

#[pymodule]
fn sugawara(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyRationalFunction>()?;
    m.add_class::<PyLieAlgebra>()?;
    m.add_class::<PyVacuumModule>()?;
    m.add_class::<PySugawara>()?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(generating_function, m)?)?;
    m.add("SugawaraError", py.get_type::<SugawaraError>())?;
    m.add("TruncationError", py.get_type::<TruncationError>())?;
    m.add("CriticalLevelError", py.get_type::<CriticalLevelError>())?;
    m.add("PoleError", py.get_type::<PoleError>())?;
    m.add("ConfigError", py.get_type::<ConfigError>())?;
    m.add("SCHEMA_VERSION", sugawara_core::report::SCHEMA_VERSION)?;
    Ok(())
}
