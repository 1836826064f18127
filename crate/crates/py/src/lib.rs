//! Python bindings: graphs, the tester, drawings, generators and the
//! exhaustive oracle.

use std::collections::HashMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use rectiplanar::generators;
use rectiplanar::oracle::{oracle_test_capped, DEFAULT_CAP};
use rectiplanar::spirality as alg;
use rectiplanar::witness::to_svg;
use rectiplanar::{DrawError, OracleError, TestOptions};

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Graph", module = "rectiplanar_py", frozen)]
struct PyGraph(rectiplanar::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        rectiplanar::Graph::new(n, edges)
            .map(PyGraph)
            .map_err(value_err)
    }

    /// Parses the `n m` edge-list text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        rectiplanar::Graph::parse(text.as_bytes())
            .map(PyGraph)
            .map_err(value_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        rectiplanar::Graph::parse_json(text)
            .map(PyGraph)
            .map_err(value_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.vertex_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().to_vec()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.0.vertex_count() {
            return Err(value_err(format!("vertex {v} out of range")));
        }
        Ok(self.0.degree(v))
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    /// Structural flags as a dict.
    fn classify(&self) -> HashMap<&'static str, bool> {
        let c = self.0.classify();
        HashMap::from([
            ("is_degree4", c.is_degree4),
            ("is_biconnected", c.is_biconnected),
            ("is_simple_cycle", c.is_simple_cycle),
            ("is_sp", c.is_sp),
            ("is_independent_parallel", c.is_independent_parallel),
        ])
    }

    fn __len__(&self) -> usize {
        self.0.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, m={})",
            self.0.vertex_count(),
            self.0.edge_count()
        )
    }
}

#[pyclass(
    name = "SpiralitySet",
    module = "rectiplanar_py",
    frozen,
    eq,
    hash,
    from_py_object
)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PySet(alg::SpiralitySet);

#[pymethods]
impl PySet {
    /// One of the canonical `(lo, hi, jump)` structures.
    #[new]
    fn new(lo: u32, hi: u32, jump: u32) -> PyResult<Self> {
        alg::SpiralitySet::new(lo, hi, jump)
            .map(PySet)
            .map_err(value_err)
    }

    #[staticmethod]
    fn empty() -> Self {
        PySet(alg::SpiralitySet::Empty)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(PySet).map_err(value_err)
    }

    fn values(&self) -> Vec<u32> {
        self.0.values()
    }

    fn contains(&self, sigma: i64) -> bool {
        self.0.contains(sigma)
    }

    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn max(&self) -> Option<u32> {
        self.0.max()
    }

    fn __contains__(&self, sigma: i64) -> bool {
        self.0.contains(sigma)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SpiralitySet({})", self.0)
    }
}

#[pyfunction]
fn qstar_set(ell: usize) -> PyResult<PySet> {
    if ell == 0 {
        return Err(value_err("chains have at least one edge"));
    }
    Ok(PySet(alg::qstar_set(ell)))
}

#[pyfunction]
fn s_node_set(children: Vec<PySet>) -> PySet {
    PySet(alg::s_node_set(&alg::s_summary(
        children.into_iter().map(|c| c.0),
    )))
}

#[pyfunction]
fn p3_set(a: PySet, b: PySet, c: PySet) -> PySet {
    PySet(alg::p3_set(a.0, b.0, c.0))
}

#[pyfunction]
fn p2_set(a: PySet, b: PySet) -> PySet {
    PySet(alg::p2_set(a.0, b.0))
}

#[pyfunction]
fn root_feasible(s: PySet, ell: usize) -> bool {
    alg::root_feasible(s.0, ell)
}

#[pyclass(name = "TestReport", module = "rectiplanar_py", frozen)]
struct PyReport(rectiplanar::TestReport);

#[pymethods]
impl PyReport {
    #[getter]
    fn rectilinear_planar(&self) -> bool {
        self.0.rectilinear_planar
    }

    #[getter]
    fn witness_root(&self) -> Option<usize> {
        self.0.witness_root
    }

    #[getter]
    fn roots_tried(&self) -> usize {
        self.0.roots_tried
    }

    #[getter]
    fn reason(&self) -> Option<String> {
        self.0.reason.clone()
    }

    #[getter]
    fn elapsed_ms(&self) -> f64 {
        self.0.elapsed.as_secs_f64() * 1e3
    }

    #[getter]
    fn computations(&self) -> usize {
        self.0.computations
    }

    /// Root-child set per tried root, in all-roots mode.
    #[getter]
    fn per_root_sets(&self) -> Option<Vec<(usize, PySet)>> {
        self.0
            .per_root_sets
            .as_ref()
            .map(|v| v.iter().map(|&(r, s)| (r, PySet(s))).collect())
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn __bool__(&self) -> bool {
        self.0.rectilinear_planar
    }

    fn __repr__(&self) -> String {
        format!(
            "TestReport(rectilinear_planar={})",
            self.0.rectilinear_planar
        )
    }
}

/// Raises ValueError for graphs outside the tester's scope.
#[pyfunction]
#[pyo3(signature = (graph, all_roots = false))]
fn test(graph: &PyGraph, all_roots: bool) -> PyResult<PyReport> {
    rectiplanar::test_with(&graph.0, &TestOptions { all_roots })
        .map(PyReport)
        .map_err(|r| value_err(r.code()))
}

#[pyclass(name = "Drawing", module = "rectiplanar_py", frozen)]
struct PyDrawing(rectiplanar::Drawing);

#[pymethods]
impl PyDrawing {
    #[getter]
    fn coords(&self) -> Vec<(i64, i64)> {
        self.0.coords.clone()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges.clone()
    }

    fn bends(&self) -> usize {
        self.0.bends()
    }

    fn crossings(&self) -> usize {
        self.0.crossings()
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn to_svg(&self) -> String {
        String::from_utf8(to_svg(&self.0)).expect("svg is utf-8")
    }
}

/// A verified bend-free planar drawing, or None when the graph is not
/// rectilinear planar.
#[pyfunction]
fn draw(graph: &PyGraph) -> PyResult<Option<PyDrawing>> {
    match rectiplanar::draw(&graph.0) {
        Ok(w) => {
            w.check().map_err(PyRuntimeError::new_err)?;
            Ok(Some(PyDrawing(w.drawing)))
        }
        Err(DrawError::NotRectilinear) => Ok(None),
        Err(DrawError::Rejected(r)) => Err(value_err(r.code())),
        Err(DrawError::Internal(e)) => Err(PyRuntimeError::new_err(e.0)),
    }
}

/// Exhaustive verdict as a JSON string.
#[pyfunction]
#[pyo3(signature = (graph, cap = DEFAULT_CAP))]
fn oracle_test(graph: &PyGraph, cap: usize) -> PyResult<String> {
    oracle_test_capped(&graph.0, cap)
        .map(|r| r.to_json())
        .map_err(|e: OracleError| value_err(e))
}

#[pyfunction]
fn gen_cycle(n: usize) -> PyResult<PyGraph> {
    if n < 2 {
        return Err(value_err("cycles need two vertices"));
    }
    Ok(PyGraph(generators::gen_cycle(n)))
}

#[pyfunction]
fn gen_chain(n: usize) -> PyGraph {
    PyGraph(generators::gen_chain(n))
}

#[pyfunction]
fn gen_random_ipsp(n: usize, seed: u64) -> PyResult<PyGraph> {
    if n < 4 {
        return Err(value_err("target size must be at least 4"));
    }
    Ok(PyGraph(generators::gen_random_ipsp(n, seed)))
}

/// The lower-bound graph and the vertex lists of its innermost chains.
#[pyfunction]
fn gen_lowerbound(n: usize) -> PyResult<(PyGraph, Vec<Vec<usize>>)> {
    if n < 2 || n % 2 == 1 {
        return Err(value_err("parameter must be even and at least 2"));
    }
    let lb = generators::gen_lowerbound(n);
    Ok((PyGraph(lb.graph), lb.g0_components))
}

#[pymodule]
fn rectiplanar_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PySet>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PyDrawing>()?;
    m.add_function(wrap_pyfunction!(test, m)?)?;
    m.add_function(wrap_pyfunction!(draw, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_test, m)?)?;
    m.add_function(wrap_pyfunction!(qstar_set, m)?)?;
    m.add_function(wrap_pyfunction!(s_node_set, m)?)?;
    m.add_function(wrap_pyfunction!(p3_set, m)?)?;
    m.add_function(wrap_pyfunction!(p2_set, m)?)?;
    m.add_function(wrap_pyfunction!(root_feasible, m)?)?;
    m.add_function(wrap_pyfunction!(gen_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(gen_chain, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random_ipsp, m)?)?;
    m.add_function(wrap_pyfunction!(gen_lowerbound, m)?)?;
    Ok(())
}
