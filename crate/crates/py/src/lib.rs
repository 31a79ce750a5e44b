//! Python bindings. Structured results cross the boundary as JSON strings,
//! with rationals written as `"p/q"`.

use std::time::Duration;

use jscheme::bounds::{equality_filter, ratio_bound};
use jscheme::classify::{
    classify_separation, projective_plane_conjecture_check, reproduce_k4_tables, synchronization_evidence,
    ClassifyOptions, TableOptions,
};
use jscheme::designs::{section3_witness, verify_steiner, verify_witness, BlockFamily};
use jscheme::graphs::{build_graph, ClassSet, GraphOptions, SchemeGraph};
use jscheme::scheme::eigen_matrices;
use jscheme::search::{max_clique, max_coclique, SearchOptions};
use jscheme::{Error, SchemeParams};
use pyo3::exceptions::{PyMemoryError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::Parse { .. } | Error::Lookup(_) | Error::Unsupported(_) => {
            PyValueError::new_err(e.to_string())
        }
        Error::Resource { .. } => PyMemoryError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

fn secs(b: Option<f64>) -> Option<Duration> {
    b.map(Duration::from_secs_f64)
}

/// The graph Γ_I(n,k) on k-subsets of {1..n}.
#[pyclass(frozen)]
struct Graph {
    inner: SchemeGraph,
}

#[pymethods]
impl Graph {
    #[new]
    #[pyo3(signature = (n, k, classes, memory_budget=None))]
    fn new(n: usize, k: usize, classes: Vec<usize>, memory_budget: Option<u64>) -> PyResult<Self> {
        let p = SchemeParams::new(n, k).map_err(py_err)?;
        let c = ClassSet::new(k, &classes).map_err(py_err)?;
        let mut opts = GraphOptions::default();
        if let Some(m) = memory_budget {
            opts.memory_budget_bytes = m;
        }
        let inner = build_graph(&p, &c, &opts).map_err(py_err)?;
        Ok(Graph { inner })
    }

    #[getter]
    fn v(&self) -> usize {
        self.inner.v()
    }

    #[getter]
    fn degree(&self) -> u64 {
        self.inner.degree()
    }

    #[getter]
    fn classes(&self) -> Vec<usize> {
        self.inner.classes().classes()
    }

    /// Degree, eigenvalues and τ as JSON.
    fn spectrum(&self) -> PyResult<String> {
        to_json(self.inner.spectrum())
    }

    fn ratio_bound(&self) -> PyResult<String> {
        to_json(&ratio_bound(&self.inner).map_err(py_err)?)
    }

    /// `(size, proved, blocks)`; blocks are 1-based tuples.
    #[pyo3(signature = (budget=None))]
    fn max_clique(&self, py: Python<'_>, budget: Option<f64>) -> PyResult<(usize, bool, Vec<Vec<usize>>)> {
        self.search(py, budget, false)
    }

    #[pyo3(signature = (budget=None))]
    fn max_coclique(&self, py: Python<'_>, budget: Option<f64>) -> PyResult<(usize, bool, Vec<Vec<usize>>)> {
        self.search(py, budget, true)
    }

    fn __repr__(&self) -> String {
        let p = self.inner.params();
        format!("Graph(n={}, k={}, classes={:?}, v={})", p.n, p.k, self.classes(), self.v())
    }
}

impl Graph {
    fn search(&self, py: Python<'_>, budget: Option<f64>, coclique: bool) -> PyResult<(usize, bool, Vec<Vec<usize>>)> {
        let mut opts = SearchOptions::default();
        opts.time_budget = secs(budget);
        let g = &self.inner;
        let r = py
            .detach(|| if coclique { max_coclique(g, &opts) } else { max_clique(g, &opts) })
            .map_err(py_err)?;
        let fam = BlockFamily::from_vertex_set("witness", &r.witness);
        let blocks = fam.blocks.iter().map(|b| b.elements()).collect();
        Ok((r.size, r.proved_optimal, blocks))
    }
}

/// Eigenvalue matrices P and Q of J(n,k) as JSON.
#[pyfunction]
fn eigenmatrices(n: usize, k: usize) -> PyResult<String> {
    let p = SchemeParams::new(n, k).map_err(py_err)?;
    to_json(&eigen_matrices(&p).map_err(py_err)?)
}

#[pyfunction]
fn filter(n: usize, k: usize, classes: Vec<usize>) -> PyResult<String> {
    let c = ClassSet::new(k, &classes).map_err(py_err)?;
    to_json(&equality_filter(n, k, &c).map_err(py_err)?)
}

/// Whether a block file text is a Steiner system S(t,k,n).
#[pyfunction]
fn is_steiner(text: &str, t: usize) -> PyResult<bool> {
    let fam = BlockFamily::parse(text).map_err(py_err)?;
    Ok(verify_steiner(&fam, t).map_err(py_err)?.holds)
}

/// A verified clique = chromatic number witness, as JSON.
#[pyfunction]
fn witness(py: Python<'_>, case_id: &str) -> PyResult<String> {
    let w = py
        .detach(|| section3_witness(case_id).and_then(|w| verify_witness(&w).map(|_| w)))
        .map_err(py_err)?;
    to_json(&w)
}

#[pyfunction]
#[pyo3(signature = (n, k, budget=60.0))]
fn classify(py: Python<'_>, n: usize, k: usize, budget: f64) -> PyResult<String> {
    let opts = ClassifyOptions::with_budget(Duration::from_secs_f64(budget));
    to_json(&py.detach(|| classify_separation(n, k, &opts)).map_err(py_err)?)
}

#[pyfunction]
fn sync_evidence(n: usize, k: usize) -> PyResult<String> {
    to_json(&synchronization_evidence(n, k).map_err(py_err)?)
}

#[pyfunction]
#[pyo3(signature = (budget=300.0, extended=false))]
fn k4_tables(py: Python<'_>, budget: f64, extended: bool) -> PyResult<String> {
    let opts = TableOptions {
        extended,
        budget: Some(Duration::from_secs_f64(budget)),
        ..Default::default()
    };
    to_json(&py.detach(|| reproduce_k4_tables(&opts)).map_err(py_err)?)
}

#[pyfunction]
#[pyo3(signature = (q, budget=None))]
fn plane_check(py: Python<'_>, q: usize, budget: Option<f64>) -> PyResult<String> {
    to_json(&py.detach(|| projective_plane_conjecture_check(q, secs(budget))).map_err(py_err)?)
}

#[pymodule]
fn pyjscheme(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(eigenmatrices, m)?)?;
    m.add_function(wrap_pyfunction!(filter, m)?)?;
    m.add_function(wrap_pyfunction!(is_steiner, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(sync_evidence, m)?)?;
    m.add_function(wrap_pyfunction!(k4_tables, m)?)?;
    m.add_function(wrap_pyfunction!(plane_check, m)?)?;
    Ok(())
}
