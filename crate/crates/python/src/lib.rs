//! Python bindings. The module is importable as `perron_tree`.
//!
//! Vertices are addressed by their external labels everywhere, as in the CLI.

use std::collections::BTreeMap;

use perron_tree::cli::{
    analyze_tree, bottleneck_report, BottleneckDocument, InputDescriptor, ReportDocument,
};
use perron_tree::graph::{self, GraphError};
use perron_tree::spectral::{self, SpectralError};
use perron_tree::verify::{ensemble_crosscheck, EnsembleSummary};
use perron_tree::Tolerances;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

fn graph_err(e: GraphError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn spectral_err(e: SpectralError) -> PyErr {
    match e {
        SpectralError::Graph(g) => graph_err(g),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn tolerances(tol: Option<f64>) -> PyResult<Tolerances> {
    match tol {
        None => Ok(Tolerances::default()),
        Some(t) if t.is_finite() && t > 0.0 => Ok(Tolerances::default().with_tie(t)),
        Some(t) => Err(PyValueError::new_err(format!("tol must be positive, got {t}"))),
    }
}

fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

/// A validated tree with external vertex labels.
#[pyclass(module = "perron_tree", name = "Tree", frozen)]
pub struct PyTree {
    inner: graph::Tree,
    source: InputDescriptor,
}

impl PyTree {
    fn wrap(inner: graph::Tree, source: InputDescriptor) -> Self {
        Self { inner, source }
    }
}

#[pymethods]
impl PyTree {
    /// Parses an edge list (`a b` per line, `#` comments).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let t = graph::parse_edge_list(text).map_err(graph_err)?;
        Ok(Self::wrap(
            t,
            InputDescriptor::File {
                path: "<string>".into(),
            },
        ))
    }

    /// Uniform random labelled tree, deterministic in `(n, seed)`.
    #[staticmethod]
    fn random(n: usize, seed: u64) -> PyResult<Self> {
        let t = graph::random_tree(n, seed).map_err(graph_err)?;
        Ok(Self::wrap(t, InputDescriptor::Generated { n, seed }))
    }

    #[staticmethod]
    fn path(n: usize) -> PyResult<Self> {
        let t = graph::Tree::path(n).map_err(graph_err)?;
        Ok(Self::wrap(
            t,
            InputDescriptor::File {
                path: format!("<path {n}>"),
            },
        ))
    }

    /// Star with center label 1.
    #[staticmethod]
    fn star(leaves: usize) -> PyResult<Self> {
        let t = graph::Tree::star(leaves).map_err(graph_err)?;
        Ok(Self::wrap(
            t,
            InputDescriptor::File {
                path: format!("<star {leaves}>"),
            },
        ))
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn labels(&self) -> Vec<u64> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(u64, u64)> {
        let t = &self.inner;
        t.edges().iter().map(|&(a, b)| (t.label(a), t.label(b))).collect()
    }

    /// Degree by label.
    #[getter]
    fn degrees(&self) -> BTreeMap<u64, usize> {
        let t = &self.inner;
        (0..t.n()).map(|v| (t.label(v), t.degree(v))).collect()
    }

    /// Canonical edge-list text.
    fn edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Tree(n={}, edges={})", self.inner.n(), self.inner.edges().len())
    }
}

/// Result of [`analyze`]: λ₁, the eigenvector and the structural checks.
#[pyclass(module = "perron_tree", name = "Report", frozen)]
pub struct PyReport {
    doc: ReportDocument,
}

#[pymethods]
impl PyReport {
    /// `"Type1"` or `"Type2"`.
    #[getter]
    fn kind(&self) -> String {
        format!("{:?}", self.doc.classification.kind)
    }

    /// Characteristic vertex (one label) or edge (two labels).
    #[getter]
    fn characteristic(&self) -> Vec<u64> {
        self.doc.classification.characteristic.clone()
    }

    #[getter]
    fn walk_trace(&self) -> Vec<u64> {
        self.doc.classification.walk_trace.clone()
    }

    #[getter]
    fn lambda1(&self) -> f64 {
        self.doc.lambda1
    }

    #[getter]
    fn gamma(&self) -> Option<f64> {
        self.doc.gamma
    }

    #[getter]
    fn oracle_lambda1(&self) -> f64 {
        self.doc.oracle_lambda1
    }

    #[getter]
    fn residual(&self) -> f64 {
        self.doc.residuals.eigen_inf
    }

    #[getter]
    fn orthogonality(&self) -> f64 {
        self.doc.residuals.orthogonality
    }

    #[getter]
    fn g(&self) -> BTreeMap<u64, f64> {
        self.doc.g.clone()
    }

    #[getter]
    fn f(&self) -> BTreeMap<u64, f64> {
        self.doc.f.clone()
    }

    /// Check name to pass/fail.
    #[getter]
    fn checks(&self) -> BTreeMap<String, bool> {
        self.doc.checks.iter().map(|c| (c.name.clone(), c.pass)).collect()
    }

    fn all_pass(&self) -> bool {
        self.doc.all_pass()
    }

    /// Same document the CLI prints with `--format json`.
    fn to_json(&self) -> String {
        to_json(&self.doc)
    }

    fn __repr__(&self) -> String {
        format!(
            "Report(kind={:?}, characteristic={:?}, lambda1={:?})",
            self.doc.classification.kind, self.doc.classification.characteristic, self.doc.lambda1
        )
    }
}

/// One branch at a vertex with its normalized bottleneck matrix.
#[pyclass(module = "perron_tree", name = "Branch", frozen, get_all)]
pub struct PyBranch {
    anchor: u64,
    vertices: Vec<u64>,
    matrix: Vec<Vec<f64>>,
    rho: f64,
    perron: bool,
    max_deviation: f64,
}

#[pymethods]
impl PyBranch {
    fn __repr__(&self) -> String {
        format!(
            "Branch(anchor={}, size={}, rho={:?})",
            self.anchor,
            self.vertices.len(),
            self.rho
        )
    }
}

fn branches(doc: BottleneckDocument) -> Vec<PyBranch> {
    {
        doc.branches
            .into_iter()
            .map(|b| PyBranch {
                anchor: b.anchor,
                vertices: b.vertices,
                matrix: b.matrix,
                rho: b.rho,
                perron: b.perron,
                max_deviation: b.max_deviation,
            })
            .collect()
    }
}

/// Aggregate of a random-tree cross-check.
#[pyclass(module = "perron_tree", name = "EnsembleSummary", frozen)]
pub struct PySummary {
    inner: EnsembleSummary,
}

#[pymethods]
impl PySummary {
    #[getter]
    fn trials(&self) -> usize {
        self.inner.trials
    }

    #[getter]
    fn passed(&self) -> usize {
        self.inner.passed
    }

    #[getter]
    fn failed(&self) -> usize {
        self.inner.failed
    }

    #[getter]
    fn type1(&self) -> usize {
        self.inner.type1
    }

    #[getter]
    fn type2(&self) -> usize {
        self.inner.type2
    }

    #[getter]
    fn max_lambda1_deviation(&self) -> f64 {
        self.inner.max_lambda1_deviation
    }

    fn to_json(&self) -> String {
        to_json(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "EnsembleSummary(passed={}/{})",
            self.inner.passed, self.inner.trials
        )
    }
}

/// Classifies the tree, computes λ₁ with its eigenvector and runs every check.
#[pyfunction]
#[pyo3(signature = (tree, tol = None))]
fn analyze(py: Python<'_>, tree: &PyTree, tol: Option<f64>) -> PyResult<PyReport> {
    let tol = tolerances(tol)?;
    let doc = py
        .detach(|| analyze_tree(&tree.inner, tree.source.clone(), &tol))
        .map_err(spectral_err)?;
    Ok(PyReport { doc })
}

/// λ₁ alone.
#[pyfunction]
#[pyo3(signature = (tree, tol = None))]
fn lambda1(py: Python<'_>, tree: &PyTree, tol: Option<f64>) -> PyResult<f64> {
    let tol = tolerances(tol)?;
    let r = py
        .detach(|| spectral::lambda1(&tree.inner, &tol))
        .map_err(spectral_err)?;
    Ok(r.lambda1)
}

/// `(kind, characteristic labels, walk trace labels)`.
#[pyfunction]
#[pyo3(signature = (tree, tol = None))]
fn classify(tree: &PyTree, tol: Option<f64>) -> PyResult<(String, Vec<u64>, Vec<u64>)> {
    let tol = tolerances(tol)?;
    let t = &tree.inner;
    let c = spectral::classify(t, &tol).map_err(spectral_err)?;
    Ok((
        format!("{:?}", c.kind),
        c.characteristic
            .vertices()
            .into_iter()
            .map(|v| t.label(v))
            .collect(),
        c.walk_trace.iter().map(|&v| t.label(v)).collect(),
    ))
}

/// Branches at the vertex labelled `vertex`, ordered by anchor.
#[pyfunction]
#[pyo3(signature = (tree, vertex, tol = None))]
fn bottleneck(tree: &PyTree, vertex: u64, tol: Option<f64>) -> PyResult<Vec<PyBranch>> {
    let tol = tolerances(tol)?;
    let k = tree.inner.vertex_of(vertex).map_err(graph_err)?;
    let doc = bottleneck_report(&tree.inner, tree.source.clone(), k, &tol).map_err(spectral_err)?;
    Ok(branches(doc))
}

/// Dense normalized Laplacian, rows in increasing label order.
#[pyfunction]
fn normalized_laplacian(tree: &PyTree) -> Vec<Vec<f64>> {
    spectral::normalized_laplacian(&tree.inner).to_rows()
}

/// Runs the randomized cross-check on `trials` trees with `n_min <= n <= n_max`.
#[pyfunction]
#[pyo3(signature = (n_min, n_max, trials, seed, tol = None))]
fn verify(
    py: Python<'_>,
    n_min: usize,
    n_max: usize,
    trials: usize,
    seed: u64,
    tol: Option<f64>,
) -> PyResult<PySummary> {
    let tol = tolerances(tol)?;
    let inner = py
        .detach(|| ensemble_crosscheck(n_min, n_max, trials, seed, &tol))
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(PySummary { inner })
}

#[pymodule]
#[pyo3(name = "perron_tree")]
fn init_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTree>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PyBranch>()?;
    m.add_class::<PySummary>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(lambda1, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(bottleneck, m)?)?;
    m.add_function(wrap_pyfunction!(normalized_laplacian, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p4_through_the_bindings() {
        Python::attach(|py| {
            let t = PyTree::path(4).unwrap();
            let r = analyze(py, &t, None).unwrap();
            assert_eq!(r.kind(), "Type2");
            assert_eq!(r.characteristic(), vec![2, 3]);
            assert!((r.lambda1() - 0.5).abs() < 1e-12);
            assert!(r.all_pass());
        });
    }

    #[test]
    fn errors_map_to_python_exceptions() {
        Python::attach(|py| {
            let e = PyTree::parse("1 2\n2 3\n3 1\n").err().unwrap();
            assert!(e.is_instance_of::<PyValueError>(py));
            assert!(tolerances(Some(-1.0)).is_err());
            let t = PyTree::star(3).unwrap();
            assert!(bottleneck(&t, 9, None).is_err());
        });
    }

    #[test]
    fn bottleneck_at_star_center() {
        let t = PyTree::star(4).unwrap();
        let branches = bottleneck(&t, 1, None).unwrap();
        assert_eq!(branches.len(), 4);
        assert!(branches.iter().all(|b| b.matrix == vec![vec![1.0]] && b.perron));
    }
}
