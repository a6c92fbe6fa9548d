//! Python bindings. Permutations and bases may be passed as objects, as
//! strings ("1342,1432", "2413") or as lists of ints.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyString;

use permscheme::oracle::{self, DEFAULT_CAP};
use permscheme::scheme::{export, import_json, ExportFormat, DEFAULT_MAX_DEPTH};
use permscheme::triage::{DEFAULT_SB_MAX, DEFAULT_SIMPLE_CAP};
use permscheme::{
    build_scheme_with, BuildOptions, BuildOutcome, Count, CountCache, Error, GapVector, Mode,
    NodeKind, ZSetCounter,
};

create_exception!(permscheme, FrontierError, PyException, "No scheme exists at the requested depth.");
create_exception!(permscheme, ResourceError, PyException, "A computation exceeded its size cap.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidInput(m) | Error::Parse(m) => PyValueError::new_err(m),
        Error::Contract(m) => PyRuntimeError::new_err(m),
        Error::Resource(m) => ResourceError::new_err(m),
    }
}

#[pyclass(name = "Permutation", module = "permscheme", frozen, eq, ord, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PyPermutation(permscheme::Permutation);

#[pyclass(name = "Basis", module = "permscheme", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyBasis(permscheme::Basis);

#[pyclass(name = "Scheme", module = "permscheme", frozen)]
struct PyScheme(permscheme::Scheme);

fn perm_arg(obj: &Bound<'_, PyAny>) -> PyResult<permscheme::Permutation> {
    if let Ok(p) = obj.cast::<PyPermutation>() {
        return Ok(p.get().0.clone());
    }
    if let Ok(s) = obj.cast::<PyString>() {
        return s.to_str()?.parse().map_err(to_py);
    }
    let values: Vec<usize> = obj.extract()?;
    permscheme::Permutation::new(values).map_err(to_py)
}

fn basis_arg(obj: &Bound<'_, PyAny>) -> PyResult<permscheme::Basis> {
    if let Ok(b) = obj.cast::<PyBasis>() {
        return Ok(b.get().0.clone());
    }
    if let Ok(s) = obj.cast::<PyString>() {
        return s.to_str()?.parse().map_err(to_py);
    }
    let mut patterns = Vec::new();
    for item in obj.try_iter()? {
        patterns.push(perm_arg(&item?)?);
    }
    permscheme::Basis::new(patterns).map_err(to_py)
}

fn gaps_arg(values: Vec<u32>) -> PyResult<GapVector> {
    GapVector::new(values).map_err(to_py)
}

fn wrap_all(ps: impl IntoIterator<Item = permscheme::Permutation>) -> Vec<PyPermutation> {
    ps.into_iter().map(PyPermutation).collect()
}

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(values: &Bound<'_, PyAny>) -> PyResult<Self> {
        perm_arg(values).map(Self)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation('{}')", self.0)
    }

    #[getter]
    fn values(&self) -> Vec<usize> {
        self.0.to_vec()
    }

    fn contains(&self, pattern: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.0.contains(&perm_arg(pattern)?))
    }

    fn avoids(&self, basis: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.0.avoids_all(&basis_arg(basis)?))
    }

    /// Removes the entry at 1-based position `r` and standardizes.
    fn delete_at(&self, r: usize) -> PyResult<Self> {
        self.0.delete_at(r).map(Self).map_err(to_py)
    }

    /// Inserts the new maximum at 1-based position `j`.
    fn insert_max(&self, j: usize) -> PyResult<Self> {
        if j == 0 || j > self.0.len() + 1 {
            return Err(PyValueError::new_err(format!("position {j} out of range")));
        }
        Ok(Self(self.0.insert_max(j)))
    }

    fn children(&self) -> Vec<Self> {
        wrap_all(self.0.children())
    }

    fn reverse(&self) -> Self {
        Self(self.0.reverse())
    }

    fn complement(&self) -> Self {
        Self(self.0.complement())
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn direct_sum(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.direct_sum(&perm_arg(other)?).map(Self).map_err(to_py)
    }

    fn skew_sum(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.skew_sum(&perm_arg(other)?).map(Self).map_err(to_py)
    }

    fn is_simple(&self) -> bool {
        self.0.is_simple()
    }
}

#[pymethods]
impl PyBasis {
    #[new]
    fn new(patterns: &Bound<'_, PyAny>) -> PyResult<Self> {
        basis_arg(patterns).map(Self)
    }

    #[getter]
    fn patterns(&self) -> Vec<PyPermutation> {
        wrap_all(self.0.patterns().iter().cloned())
    }

    fn max_len(&self) -> usize {
        self.0.max_len()
    }

    fn __len__(&self) -> usize {
        self.0.patterns().len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Basis('{}')", self.0)
    }
}

#[pymethods]
impl PyScheme {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        import_json(text).map(Self).map_err(to_py)
    }

    fn to_json(&self) -> String {
        String::from_utf8(export(&self.0, ExportFormat::Json)).expect("JSON is UTF-8")
    }

    fn to_dot(&self) -> String {
        String::from_utf8(export(&self.0, ExportFormat::Dot)).expect("DOT is UTF-8")
    }

    #[getter]
    fn basis(&self) -> PyBasis {
        PyBasis(self.0.basis().clone())
    }

    #[getter]
    fn depth(&self) -> usize {
        self.0.depth()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "<Scheme for Av({}): {} nodes, depth {}>",
            self.0.basis(),
            self.0.len(),
            self.0.depth()
        )
    }

    fn expand_nodes(&self) -> Vec<PyPermutation> {
        wrap_all(self.0.expand_nodes().map(|n| n.perm.clone()))
    }

    /// `(perm, r, gap basis)` for every reduce node.
    fn reductions(&self) -> Vec<(PyPermutation, usize, Vec<Vec<u32>>)> {
        self.0
            .reduce_nodes()
            .filter_map(|n| match &n.kind {
                NodeKind::Reduce { r, gaps } => Some((
                    PyPermutation(n.perm.clone()),
                    *r,
                    gaps.excluded_basis().iter().map(|v| v.components().to_vec()).collect(),
                )),
                NodeKind::Expand { .. } => None,
            })
            .collect()
    }

    /// `[s_0, …, s_n]`.
    fn sequence(&self, py: Python<'_>, n: u32) -> PyResult<Vec<Count>> {
        py.detach(|| permscheme::eval_sequence(&self.0, n)).map_err(to_py)
    }

    /// `|Z(B; π; g)|` through the scheme's rules.
    fn count(&self, perm: &Bound<'_, PyAny>, gaps: Vec<u32>) -> PyResult<Count> {
        let pi = perm_arg(perm)?;
        let g = gaps_arg(gaps)?;
        permscheme::eval_count(&self.0, &pi, &g, &mut CountCache::new()).map_err(to_py)
    }

    /// Violations found by re-checking every node; empty when valid.
    fn verify(&self) -> Vec<String> {
        permscheme::verify_scheme(&self.0)
            .violations
            .iter()
            .map(|v| match &v.node {
                Some(p) => format!("{p}: {}", v.message),
                None => v.message.clone(),
            })
            .collect()
    }
}

/// Searches for a scheme; raises `FrontierError(message, frontier)` when the
/// search stops at `max_depth`.
#[pyfunction]
#[pyo3(signature = (basis, max_depth = DEFAULT_MAX_DEPTH, classic = false))]
fn find_scheme(py: Python<'_>, basis: &Bound<'_, PyAny>, max_depth: usize, classic: bool) -> PyResult<PyScheme> {
    let b = basis_arg(basis)?;
    let opts = BuildOptions {
        max_depth,
        mode: if classic { Mode::Classic } else { Mode::Extended },
    };
    match py.detach(|| build_scheme_with(&b, &opts)).map_err(to_py)? {
        BuildOutcome::Scheme(s) => Ok(PyScheme(s)),
        BuildOutcome::Frontier(f) => {
            let msg = format!("no scheme for Av({b}) at depth {max_depth}");
            let frontier: Vec<String> = f.iter().map(|p| p.to_string()).collect();
            Err(FrontierError::new_err((msg, frontier)))
        }
    }
}

#[pyfunction]
fn zset_count(basis: &Bound<'_, PyAny>, perm: &Bound<'_, PyAny>, gaps: Vec<u32>) -> PyResult<Count> {
    permscheme::zset_count(&basis_arg(basis)?, &perm_arg(perm)?, &gaps_arg(gaps)?).map_err(to_py)
}

#[pyfunction]
fn zset_members(basis: &Bound<'_, PyAny>, perm: &Bound<'_, PyAny>, gaps: Vec<u32>) -> PyResult<Vec<PyPermutation>> {
    permscheme::zset_members(&basis_arg(basis)?, &perm_arg(perm)?, &gaps_arg(gaps)?)
        .map(wrap_all)
        .map_err(to_py)
}

#[pyfunction]
fn es_reducible(basis: &Bound<'_, PyAny>, perm: &Bound<'_, PyAny>, r: usize) -> PyResult<bool> {
    let z = ZSetCounter::new(basis_arg(basis)?);
    permscheme::es_reducible(&z, &perm_arg(perm)?, r).map_err(to_py)
}

#[pyfunction]
fn es_plus_reducible(basis: &Bound<'_, PyAny>, perm: &Bound<'_, PyAny>, r: usize) -> PyResult<bool> {
    let z = ZSetCounter::new(basis_arg(basis)?);
    permscheme::es_plus_reducible(&z, &perm_arg(perm)?, r).map_err(to_py)
}

/// Minimal excluded gap vectors of the reduction at entry `r`.
#[pyfunction]
fn reduction_gap_basis(basis: &Bound<'_, PyAny>, perm: &Bound<'_, PyAny>, r: usize) -> PyResult<Vec<Vec<u32>>> {
    let z = ZSetCounter::new(basis_arg(basis)?);
    let ideal = permscheme::reduction_gap_basis(&z, &perm_arg(perm)?, r).map_err(to_py)?;
    Ok(ideal.excluded_basis().iter().map(|v| v.components().to_vec()).collect())
}

#[pyfunction]
fn compute_j(basis: &Bound<'_, PyAny>, perm: &Bound<'_, PyAny>) -> PyResult<Vec<usize>> {
    let z = ZSetCounter::new(basis_arg(basis)?);
    Ok(permscheme::compute_j(&z, &perm_arg(perm)?).map_err(to_py)?.positions().collect())
}

#[pyfunction]
#[pyo3(signature = (basis, n, cap = DEFAULT_CAP))]
fn brute_avoiders(py: Python<'_>, basis: &Bound<'_, PyAny>, n: usize, cap: usize) -> PyResult<u64> {
    let b = basis_arg(basis)?;
    py.detach(|| oracle::brute_avoiders_with_cap(&b, n, cap)).map_err(to_py)
}

#[pyfunction]
fn avoiders(basis: &Bound<'_, PyAny>, n: usize) -> PyResult<Vec<PyPermutation>> {
    if n > DEFAULT_CAP {
        return Err(ResourceError::new_err(format!("n = {n} exceeds the cap of {DEFAULT_CAP}")));
    }
    Ok(wrap_all(oracle::avoiders(&basis_arg(basis)?, n)))
}

/// Triage verdict as a dict: `finlabel`, `insertion`, `simples`.
#[pyfunction]
#[pyo3(signature = (basis, sb_max = DEFAULT_SB_MAX, simple_cap = DEFAULT_SIMPLE_CAP))]
fn triage<'py>(py: Python<'py>, basis: &Bound<'py, PyAny>, sb_max: usize, simple_cap: usize) -> PyResult<Bound<'py, PyAny>> {
    let b = basis_arg(basis)?;
    let verdict = py.detach(|| permscheme::triage::triage(&b, sb_max, simple_cap)).map_err(to_py)?;
    py.import("json")?.call_method1("loads", (verdict.to_json().to_string(),))
}

#[pyfunction]
fn sb_basis(k: usize) -> PyResult<Vec<PyPermutation>> {
    permscheme::triage::sb_basis(k).map(wrap_all).map_err(to_py)
}

#[pymodule]
#[pyo3(name = "permscheme")]
fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyBasis>()?;
    m.add_class::<PyScheme>()?;
    m.add("FrontierError", m.py().get_type::<FrontierError>())?;
    m.add("ResourceError", m.py().get_type::<ResourceError>())?;
    m.add_function(wrap_pyfunction!(find_scheme, m)?)?;
    m.add_function(wrap_pyfunction!(zset_count, m)?)?;
    m.add_function(wrap_pyfunction!(zset_members, m)?)?;
    m.add_function(wrap_pyfunction!(es_reducible, m)?)?;
    m.add_function(wrap_pyfunction!(es_plus_reducible, m)?)?;
    m.add_function(wrap_pyfunction!(reduction_gap_basis, m)?)?;
    m.add_function(wrap_pyfunction!(compute_j, m)?)?;
    m.add_function(wrap_pyfunction!(brute_avoiders, m)?)?;
    m.add_function(wrap_pyfunction!(avoiders, m)?)?;
    m.add_function(wrap_pyfunction!(triage, m)?)?;
    m.add_function(wrap_pyfunction!(sb_basis, m)?)?;
    Ok(())
}
