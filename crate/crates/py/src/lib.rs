//! Python bindings: matroid construction, chain polynomials, and the
//! derived invariants, driven in-process from Python.
//!
//! Build the cdylib with `cargo build -p chaintutte-py` and import the
//! produced library as the module `chaintutte_py` (see python/smoke_test.py
//! for a loader that copies it into place).

use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use chaintutte as ct;
use chaintutte::{EnumOptions, Variable};

fn to_py_err(err: ct::Error) -> PyErr {
    PyValueError::new_err(format!("[{}] {err}", err.kind()))
}

fn options(threads: Option<usize>, max_chains: Option<u64>, max_perms: Option<u64>) -> EnumOptions {
    let mut opts = EnumOptions::default();
    if let Some(t) = threads {
        opts.threads = t.max(1);
    }
    if let Some(c) = max_chains {
        opts.max_chains = c;
    }
    if let Some(p) = max_perms {
        opts.max_perms = p;
    }
    opts
}

fn mask_from_elements(elements: Vec<usize>) -> u64 {
    ct::subset::mask_of(&elements)
}

/// A matroid or integer polymatroid on ground set 0..n-1.
#[pyclass(frozen)]
struct Matroid {
    inner: ct::Matroid,
}

#[pymethods]
impl Matroid {
    /// The uniform matroid U_{r,n}.
    #[staticmethod]
    fn uniform(r: usize, n: usize) -> PyResult<Matroid> {
        Ok(Matroid { inner: ct::Matroid::uniform(r, n).map_err(to_py_err)? })
    }

    /// The cycle matroid of a multigraph; elements are edge indices.
    #[staticmethod]
    fn graphic(vertices: usize, edges: Vec<(usize, usize)>) -> PyResult<Matroid> {
        Ok(Matroid { inner: ct::Matroid::graphic(vertices, &edges).map_err(to_py_err)? })
    }

    /// Build from a list of bases; validates the exchange axiom.
    #[staticmethod]
    fn from_bases(n: usize, bases: Vec<Vec<usize>>) -> PyResult<Matroid> {
        Ok(Matroid { inner: ct::Matroid::from_bases(n, &bases).map_err(to_py_err)? })
    }

    /// Build from the full rank table indexed by bitmask; validates the
    /// rank axioms.
    #[staticmethod]
    fn from_rank_table(n: usize, table: Vec<u32>) -> PyResult<Matroid> {
        Ok(Matroid { inner: ct::Matroid::from_rank_table(n, &table).map_err(to_py_err)? })
    }

    /// Parse the matroid JSON schema (uniform / graph / bases / rank_table).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Matroid> {
        Ok(Matroid { inner: ct::Matroid::from_json_str(text).map_err(to_py_err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn rank(&self) -> u32 {
        self.inner.rank_m()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner.kind() {
            ct::MatroidKind::Matroid => "matroid",
            ct::MatroidKind::Polymatroid => "polymatroid",
        }
    }

    /// Rank of a subset given as a list of elements.
    fn subset_rank(&self, elements: Vec<usize>) -> PyResult<u32> {
        self.inner.rank(mask_from_elements(elements)).map_err(to_py_err)
    }

    fn closure(&self, elements: Vec<usize>) -> PyResult<Vec<usize>> {
        let cl = self.inner.closure(mask_from_elements(elements)).map_err(to_py_err)?;
        Ok(ct::subset::elements(cl))
    }

    fn is_loop(&self, e: usize) -> PyResult<bool> {
        self.inner.is_loop(e).map_err(to_py_err)
    }

    fn is_coloop(&self, e: usize) -> PyResult<bool> {
        self.inner.is_coloop(e).map_err(to_py_err)
    }

    fn is_simple(&self) -> bool {
        self.inner.is_simple()
    }

    fn dual(&self) -> PyResult<Matroid> {
        Ok(Matroid { inner: self.inner.dual().map_err(to_py_err)? })
    }

    fn delete(&self, elements: Vec<usize>) -> PyResult<Matroid> {
        Ok(Matroid { inner: self.inner.delete(mask_from_elements(elements)).map_err(to_py_err)? })
    }

    fn contract(&self, elements: Vec<usize>) -> PyResult<Matroid> {
        Ok(Matroid {
            inner: self.inner.contract(mask_from_elements(elements)).map_err(to_py_err)?,
        })
    }

    fn restrict(&self, elements: Vec<usize>) -> PyResult<Matroid> {
        Ok(Matroid {
            inner: self.inner.restrict(mask_from_elements(elements)).map_err(to_py_err)?,
        })
    }

    fn direct_sum(&self, other: &Matroid) -> PyResult<Matroid> {
        Ok(Matroid { inner: self.inner.direct_sum(&other.inner).map_err(to_py_err)? })
    }

    fn bases(&self) -> Vec<Vec<usize>> {
        self.inner.bases().into_iter().map(ct::subset::elements).collect()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __eq__(&self, other: &Matroid) -> bool {
        self.inner.same_rank_table(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!("Matroid(n={}, rank={}, kind={})", self.inner.n(), self.inner.rank_m(), self.kind())
    }
}

fn parse_point(py_point: &Bound<'_, PyDict>) -> PyResult<BTreeMap<Variable, BigRational>> {
    let mut point = BTreeMap::new();
    for (key, value) in py_point.iter() {
        let name: String = key.extract()?;
        let var: Variable = name
            .parse()
            .map_err(|e: ct::Error| PyValueError::new_err(e.to_string()))?;
        let rational = if let Ok(int) = value.extract::<i64>() {
            BigRational::from_integer(int.into())
        } else {
            let text: String = value.extract()?;
            BigRational::from_str(&text)
                .map_err(|_| PyValueError::new_err(format!("bad rational `{text}`")))?
        };
        point.insert(var, rational);
    }
    Ok(point)
}

fn rational_to_py(py: Python<'_>, value: &BigRational) -> PyResult<Py<PyAny>> {
    if value.is_integer() {
        Ok(value.to_integer().into_pyobject(py)?.into_any().unbind())
    } else {
        Ok(value.to_string().into_pyobject(py)?.into_any().unbind())
    }
}

/// An exact sparse Laurent polynomial.
#[pyclass(frozen)]
struct Polynomial {
    inner: ct::LaurentPoly,
}

#[pymethods]
impl Polynomial {
    /// Parse the polynomial JSON schema.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Polynomial> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Polynomial { inner: ct::LaurentPoly::from_json(&value).map_err(to_py_err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    /// Exact evaluation; values are integers or "p/q" strings. Returns an
    /// int when the value is integral, else a "p/q" string.
    fn evaluate(&self, py: Python<'_>, point: &Bound<'_, PyDict>) -> PyResult<Py<PyAny>> {
        let point = parse_point(point)?;
        let value = self.inner.evaluate(&point).map_err(to_py_err)?;
        rational_to_py(py, &value)
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    fn __str__(&self) -> String {
        self.inner.canonical_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.inner.canonical_string())
    }

    fn __eq__(&self, other: &Polynomial) -> bool {
        self.inner == other.inner
    }
}

/// A chain polynomial with its level, ground-set size, rank and form.
#[pyclass(frozen)]
struct ChainPolynomial {
    inner: ct::ChainTuttePoly,
}

#[pymethods]
impl ChainPolynomial {
    #[getter]
    fn k(&self) -> usize {
        self.inner.k
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn rank(&self) -> u32 {
        self.inner.matroid_rank
    }

    #[getter]
    fn form(&self) -> &'static str {
        self.inner.form.name()
    }

    /// The underlying polynomial.
    fn poly(&self) -> Polynomial {
        Polynomial { inner: self.inner.poly.clone() }
    }

    /// Exact specialization down to level k.
    fn specialize_down(&self, k: usize) -> PyResult<ChainPolynomial> {
        Ok(ChainPolynomial { inner: ct::specialize_down(&self.inner, k).map_err(to_py_err)? })
    }

    fn evaluate(&self, py: Python<'_>, point: &Bound<'_, PyDict>) -> PyResult<Py<PyAny>> {
        let point = parse_point(point)?;
        let value = self.inner.poly.evaluate(&point).map_err(to_py_err)?;
        rational_to_py(py, &value)
    }

    fn to_json(&self) -> String {
        serde_json::json!({
            "k": self.inner.k,
            "n": self.inner.n,
            "rank": self.inner.matroid_rank,
            "form": self.inner.form.name(),
            "poly": self.inner.poly.to_json(),
        })
        .to_string()
    }

    fn __str__(&self) -> String {
        self.inner.poly.canonical_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "ChainPolynomial(k={}, form={}, {})",
            self.inner.k,
            self.inner.form.name(),
            self.inner.poly.canonical_string()
        )
    }

    fn __eq__(&self, other: &ChainPolynomial) -> bool {
        self.inner == other.inner
    }
}

#[pyfunction]
#[pyo3(signature = (m, k, threads=None, max_chains=None))]
fn chain_tutte(
    m: &Matroid,
    k: usize,
    threads: Option<usize>,
    max_chains: Option<u64>,
) -> PyResult<ChainPolynomial> {
    let opts = options(threads, max_chains, None);
    Ok(ChainPolynomial { inner: ct::chain_tutte(&m.inner, k, &opts).map_err(to_py_err)? })
}

#[pyfunction]
#[pyo3(signature = (m, k, threads=None, max_chains=None))]
fn chain_whitney(
    m: &Matroid,
    k: usize,
    threads: Option<usize>,
    max_chains: Option<u64>,
) -> PyResult<ChainPolynomial> {
    let opts = options(threads, max_chains, None);
    Ok(ChainPolynomial { inner: ct::chain_whitney(&m.inner, k, &opts).map_err(to_py_err)? })
}

#[pyfunction]
#[pyo3(signature = (m, k, threads=None, max_chains=None))]
fn universal_chain_tutte(
    m: &Matroid,
    k: usize,
    threads: Option<usize>,
    max_chains: Option<u64>,
) -> PyResult<ChainPolynomial> {
    let opts = options(threads, max_chains, None);
    Ok(ChainPolynomial {
        inner: ct::universal_chain_tutte(&m.inner, k, &opts).map_err(to_py_err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (m, k, threads=None, max_chains=None))]
fn chain_tutte_recursive(
    m: &Matroid,
    k: usize,
    threads: Option<usize>,
    max_chains: Option<u64>,
) -> PyResult<ChainPolynomial> {
    let opts = options(threads, max_chains, None);
    Ok(ChainPolynomial {
        inner: ct::chain_tutte_recursive(&m.inner, k, &opts).map_err(to_py_err)?,
    })
}

/// The split polynomial sT^{k,j} at element `a`; the j = 0 and j = k cases
/// are the minors' chain Tutte polynomials.
#[pyfunction]
fn split_chain_tutte(m: &Matroid, a: usize, k: usize, j: usize) -> PyResult<Polynomial> {
    Ok(Polynomial {
        inner: ct::split_chain_tutte(&m.inner, a, k, j, &EnumOptions::default())
            .map_err(to_py_err)?,
    })
}

/// Verify the coordinate change carrying the universal form at level k+1
/// onto the chain Whitney polynomial at level k.
#[pyfunction]
fn universal_to_whitney_check(m: &Matroid, k: usize) -> PyResult<bool> {
    ct::universal_to_whitney_check(&m.inner, k, &EnumOptions::default()).map_err(to_py_err)
}

#[pyfunction]
fn classical_tutte(m: &Matroid) -> PyResult<Polynomial> {
    Ok(Polynomial {
        inner: ct::classical_tutte(&m.inner, &EnumOptions::default()).map_err(to_py_err)?,
    })
}

#[pyfunction]
fn characteristic_poly(m: &Matroid) -> PyResult<Polynomial> {
    Ok(Polynomial { inner: ct::characteristic_poly(&m.inner).map_err(to_py_err)? })
}

#[pyfunction]
fn mobius_poly(m: &Matroid) -> PyResult<Polynomial> {
    Ok(Polynomial { inner: ct::mobius_poly(&m.inner).map_err(to_py_err)? })
}

#[pyfunction]
fn opposite_char_poly(m: &Matroid) -> PyResult<Polynomial> {
    Ok(Polynomial { inner: ct::opposite_char_poly(&m.inner).map_err(to_py_err)? })
}

#[pyfunction]
fn j_mobius_poly(m: &Matroid) -> PyResult<Polynomial> {
    Ok(Polynomial { inner: ct::j_mobius_poly(&m.inner).map_err(to_py_err)? })
}

#[pyfunction]
fn ford_s_poly(m: &Matroid) -> PyResult<Polynomial> {
    Ok(Polynomial { inner: ct::ford_s_poly(&m.inner).map_err(to_py_err)? })
}

#[pyfunction]
fn mobius_poly_recursive(m: &Matroid) -> PyResult<Polynomial> {
    Ok(Polynomial { inner: ct::mobius_poly_recursive(&m.inner).map_err(to_py_err)? })
}

#[pyfunction]
fn opposite_char_poly_recursive(m: &Matroid) -> PyResult<Polynomial> {
    Ok(Polynomial { inner: ct::opposite_char_poly_recursive(&m.inner).map_err(to_py_err)? })
}

#[pyfunction]
fn expected_codim(m: &Matroid) -> PyResult<i64> {
    ct::expected_codim(&m.inner).map_err(to_py_err)
}

#[pyfunction]
fn expected_codim_via_tutte(m: &Matroid) -> PyResult<i64> {
    ct::expected_codim_via_tutte(&m.inner, &EnumOptions::default()).map_err(to_py_err)
}

#[pyfunction]
fn expected_codim_recursive(m: &Matroid) -> PyResult<i64> {
    ct::expected_codim_recursive(&m.inner).map_err(to_py_err)
}

/// The constant-evaluation record at level k, as a JSON-shaped dict.
#[pyfunction]
#[pyo3(signature = (m, k=2))]
fn constant_evaluations(py: Python<'_>, m: &Matroid, k: usize) -> PyResult<Py<PyAny>> {
    let record =
        ct::constant_evaluations(&m.inner, k, &EnumOptions::default()).map_err(to_py_err)?;
    json_to_py(py, &record.to_json())
}

fn json_to_py(py: Python<'_>, value: &serde_json::Value) -> PyResult<Py<PyAny>> {
    Ok(match value {
        serde_json::Value::Null => py.None(),
        serde_json::Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any().unbind(),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any().unbind()
            } else {
                n.to_string().into_pyobject(py)?.into_any().unbind()
            }
        }
        serde_json::Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        serde_json::Value::Array(items) => {
            let list = pyo3::types::PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any().unbind()
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new(py);
            for (key, item) in map {
                dict.set_item(key, json_to_py(py, item)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

/// The G-invariant read off the top chain Whitney polynomial; equals
/// `g_invariant`.
#[pyfunction]
#[pyo3(signature = (m, max_chains=None))]
fn g_from_top_tutte<'py>(
    py: Python<'py>,
    m: &Matroid,
    max_chains: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let opts = options(None, max_chains, None);
    let g = ct::g_from_top_tutte(&m.inner, &opts).map_err(to_py_err)?;
    let dict = PyDict::new(py);
    for (rv, count) in &g.counts {
        let key = PyTuple::new(py, rv.iter())?;
        dict.set_item(key, count.clone())?;
    }
    Ok(dict)
}

/// The G-invariant as a dict mapping rank-increment tuples to counts.
#[pyfunction]
#[pyo3(signature = (m, max_perms=None))]
fn g_invariant<'py>(
    py: Python<'py>,
    m: &Matroid,
    max_perms: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let opts = options(None, None, max_perms);
    let g = ct::g_invariant(&m.inner, &opts).map_err(to_py_err)?;
    let dict = PyDict::new(py);
    for (rv, count) in &g.counts {
        let key = PyTuple::new(py, rv.iter())?;
        dict.set_item(key, count.clone())?;
    }
    Ok(dict)
}

/// Check the inclusion-exclusion valuation identity; returns a report dict.
#[pyfunction]
#[pyo3(signature = (nerve_json, invariant, k=None))]
fn check_valuation<'py>(
    py: Python<'py>,
    nerve_json: &str,
    invariant: &str,
    k: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let nerve = ct::SubdivisionNerve::from_json_str(nerve_json).map_err(to_py_err)?;
    let id = ct::InvariantId::parse(invariant, k).map_err(to_py_err)?;
    let report = ct::check_valuation(id, &nerve, &EnumOptions::default()).map_err(to_py_err)?;
    let dict = PyDict::new(py);
    dict.set_item("invariant", report.invariant.clone())?;
    dict.set_item("equal", report.equal)?;
    dict.set_item("pieces_evaluated", report.pieces_evaluated)?;
    dict.set_item("lhs", report.lhs.to_json().to_string())?;
    dict.set_item("rhs", report.rhs.to_json().to_string())?;
    Ok(dict)
}

#[pymodule]
fn chaintutte_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Matroid>()?;
    m.add_class::<Polynomial>()?;
    m.add_class::<ChainPolynomial>()?;
    m.add_function(wrap_pyfunction!(chain_tutte, m)?)?;
    m.add_function(wrap_pyfunction!(chain_whitney, m)?)?;
    m.add_function(wrap_pyfunction!(universal_chain_tutte, m)?)?;
    m.add_function(wrap_pyfunction!(chain_tutte_recursive, m)?)?;
    m.add_function(wrap_pyfunction!(split_chain_tutte, m)?)?;
    m.add_function(wrap_pyfunction!(universal_to_whitney_check, m)?)?;
    m.add_function(wrap_pyfunction!(classical_tutte, m)?)?;
    m.add_function(wrap_pyfunction!(characteristic_poly, m)?)?;
    m.add_function(wrap_pyfunction!(mobius_poly, m)?)?;
    m.add_function(wrap_pyfunction!(mobius_poly_recursive, m)?)?;
    m.add_function(wrap_pyfunction!(opposite_char_poly, m)?)?;
    m.add_function(wrap_pyfunction!(opposite_char_poly_recursive, m)?)?;
    m.add_function(wrap_pyfunction!(j_mobius_poly, m)?)?;
    m.add_function(wrap_pyfunction!(ford_s_poly, m)?)?;
    m.add_function(wrap_pyfunction!(expected_codim, m)?)?;
    m.add_function(wrap_pyfunction!(expected_codim_via_tutte, m)?)?;
    m.add_function(wrap_pyfunction!(expected_codim_recursive, m)?)?;
    m.add_function(wrap_pyfunction!(constant_evaluations, m)?)?;
    m.add_function(wrap_pyfunction!(g_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(g_from_top_tutte, m)?)?;
    m.add_function(wrap_pyfunction!(check_valuation, m)?)?;
    Ok(())
}
