//! Python module `bicay`: group arithmetic in H(p,t,s), Sigma graphs and the
//! graph analysis engine.
//!
//! Group elements cross the boundary as `(x, y, z)` tuples meaning
//! `a^x b^y c^z`; graphs as `(n, [(u, v), ...])`.

use bicay_core::bicayley::{self, BiCayleyGraph};
use bicay_core::graphalg::{self, Graph};
use bicay_core::pgroup::{GroupElement, GroupParams};
use bicay_core::residue;
use bicay_core::verify::{self, Suite};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

type Triple = (u64, u64, u64);

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn graph_from(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Graph> {
    Graph::from_edges(n, &edges).map_err(err)
}

/// The group H(p,t,s) = <a, b, c | a^(p^t), b^(p^s), c^p, [a,b] = c, c central>.
#[pyclass(name = "Group", frozen)]
struct PyGroup {
    inner: GroupParams,
}

impl PyGroup {
    fn elem(&self, g: Triple) -> PyResult<GroupElement> {
        self.inner.checked_element(g.0, g.1, g.2).map_err(err)
    }
}

#[pymethods]
impl PyGroup {
    #[new]
    fn new(p: u64, t: u32, s: u32) -> PyResult<Self> {
        Ok(PyGroup { inner: GroupParams::new(p, t, s).map_err(err)? })
    }

    #[getter]
    fn order(&self) -> u64 {
        self.inner.order()
    }

    fn multiply(&self, x: Triple, y: Triple) -> PyResult<Triple> {
        Ok(self.inner.multiply(&self.elem(x)?, &self.elem(y)?).triple())
    }

    fn inverse(&self, x: Triple) -> PyResult<Triple> {
        Ok(self.inner.inverse(&self.elem(x)?).triple())
    }

    fn power(&self, x: Triple, n: i64) -> PyResult<Triple> {
        Ok(self.inner.power(&self.elem(x)?, n).triple())
    }

    fn commutator(&self, x: Triple, y: Triple) -> PyResult<Triple> {
        Ok(self.inner.commutator(&self.elem(x)?, &self.elem(y)?).triple())
    }

    fn element_order(&self, x: Triple) -> PyResult<u64> {
        Ok(self.inner.element_order(&self.elem(x)?))
    }

    /// Evaluate a word such as "b*a^2" to its normal form.
    fn word(&self, text: &str) -> PyResult<Triple> {
        Ok(self.inner.parse_word(text).map_err(err)?.triple())
    }

    fn format(&self, x: Triple) -> PyResult<String> {
        Ok(self.elem(x)?.to_string())
    }

    fn __repr__(&self) -> String {
        format!("Group(p={}, t={}, s={})", self.inner.p(), self.inner.t(), self.inner.s())
    }
}

/// Sigma(p,t,s,k) = BiCay(H, {}, {}, {1, a, b a^k}).
#[pyclass(name = "Sigma", frozen)]
struct PySigma {
    inner: BiCayleyGraph,
}

#[pymethods]
impl PySigma {
    #[new]
    #[pyo3(signature = (p, t, s, k=None))]
    fn new(p: u64, t: u32, s: u32, k: Option<u64>) -> PyResult<Self> {
        Ok(PySigma { inner: bicayley::build_sigma(p, t, s, k).map_err(err)? })
    }

    #[getter]
    fn k(&self) -> Option<u64> {
        self.inner.k()
    }

    #[getter]
    fn vertices(&self) -> usize {
        self.inner.graph().n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.graph().edges().collect()
    }

    /// Graph header as a JSON string.
    fn header(&self) -> String {
        serde_json::to_string(&self.inner.header()).expect("header serializes")
    }

    /// Transitivity report as a JSON string.
    fn analyze(&self, py: Python<'_>) -> PyResult<String> {
        let g = self.inner.graph().clone();
        py.detach(|| graphalg::classify_arc_regularity(&g)).map(|r| serde_json::to_string(&r).unwrap()).map_err(err)
    }

    fn normalizer_order(&self) -> PyResult<u128> {
        Ok(self.inner.normalizer_of_rh().map_err(err)?.order())
    }

    fn is_normal_edge_transitive(&self) -> PyResult<bool> {
        self.inner.is_normal_edge_transitive().map_err(err)
    }

    fn __repr__(&self) -> String {
        let h = self.inner.params();
        format!("Sigma(p={}, t={}, s={}, k={:?})", h.p(), h.t(), h.s(), self.inner.k())
    }
}

/// Units k mod p^e with k^2 - k + 1 = 0, ascending.
#[pyfunction]
fn solve_k(p: u64, e: u32) -> PyResult<Vec<u64>> {
    residue::solve_k(p, e).map_err(err)
}

/// Transitivity report (JSON) of a graph; `s_regular` is null for graphs
/// that are not connected and cubic.
#[pyfunction]
fn analyze(py: Python<'_>, n: usize, edges: Vec<(usize, usize)>) -> PyResult<String> {
    let g = graph_from(n, edges)?;
    let report = py.detach(|| {
        let aut = graphalg::automorphism_group(&g);
        graphalg::classify_with_group(&g, &aut).unwrap_or_else(|_| graphalg::basic_report(&g, &aut))
    });
    Ok(serde_json::to_string(&report).unwrap())
}

/// Order of the automorphism group.
#[pyfunction]
fn automorphism_order(py: Python<'_>, n: usize, edges: Vec<(usize, usize)>) -> PyResult<u128> {
    let g = graph_from(n, edges)?;
    Ok(py.detach(|| graphalg::search_automorphisms(&g).order))
}

/// A vertex bijection g1 -> g2 as a list of images, or None.
#[pyfunction]
fn isomorphism(
    py: Python<'_>,
    n1: usize,
    edges1: Vec<(usize, usize)>,
    n2: usize,
    edges2: Vec<(usize, usize)>,
) -> PyResult<Option<Vec<usize>>> {
    let (g1, g2) = (graph_from(n1, edges1)?, graph_from(n2, edges2)?);
    Ok(py.detach(|| graphalg::are_isomorphic(&g1, &g2)).map(|p| p.images().collect()))
}

/// Run a verification suite ("fast" or "full"); returns (all passed, report).
#[pyfunction]
#[pyo3(signature = (suite="fast"))]
fn run_verification(py: Python<'_>, suite: &str) -> PyResult<(bool, String)> {
    let suite = match suite {
        "fast" => Suite::Fast,
        "full" => Suite::Full,
        other => return Err(err(format!("unknown suite '{other}'"))),
    };
    let reports = py.detach(|| verify::run_suite(suite, |_| {}));
    Ok((reports.iter().all(|r| r.pass), verify::render_report(&reports)))
}

#[pymodule]
fn bicay(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PySigma>()?;
    m.add_function(wrap_pyfunction!(solve_k, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(automorphism_order, m)?)?;
    m.add_function(wrap_pyfunction!(isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(run_verification, m)?)?;
    Ok(())
}
