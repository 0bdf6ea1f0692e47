//! Python bindings: `import qgk`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qgk_core::bilform::{self, AugBilinearMap};
use qgk_core::graphs::{self, ConstructionTree, Decomposition, SimplicialGraph};
use qgk_core::slot::{self, SlotVerdict};
use qgk_core::{hull, presentations, tower};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An augmented bilinear map over F_p.
#[pyclass(name = "BilinearMap", module = "qgk", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyBilinearMap(AugBilinearMap);

#[pymethods]
impl PyBilinearMap {
    /// `gram[i][j]` is the list of W-coordinates of `b(v_i, v_j)`.
    #[new]
    fn new(p: u8, gram: Vec<Vec<Vec<u8>>>, eps: Vec<u8>, m: usize) -> PyResult<Self> {
        let n = gram.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in gram {
            if row.len() != n {
                return Err(err(format!("Gram table must be {n} × {n}")));
            }
            for w in row {
                entries.push(qgk_core::FpVec::new(p, w).map_err(err)?);
            }
        }
        let eps = qgk_core::FpVec::new(p, eps).map_err(err)?;
        AugBilinearMap::new(p, n, m, &entries, eps).map(PyBilinearMap).map_err(err)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        AugBilinearMap::from_text(text).map(PyBilinearMap).map_err(err)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    #[getter]
    fn p(&self) -> u8 {
        self.0.p()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    #[getter]
    fn eps(&self) -> Vec<u8> {
        self.0.eps().into_coords()
    }

    /// `b(v_i, v_j)` for 0-based basis indices.
    fn product(&self, i: usize, j: usize) -> PyResult<Vec<u8>> {
        if i >= self.0.n() || j >= self.0.n() {
            return Err(err("basis index out of range"));
        }
        Ok(self.0.product(i, j).into_coords())
    }

    fn eval(&self, v: Vec<u8>, u: Vec<u8>) -> PyResult<Vec<u8>> {
        let p = self.0.p();
        let (v, u) = (qgk_core::FpVec::new(p, v).map_err(err)?, qgk_core::FpVec::new(p, u).map_err(err)?);
        if v.dim() != self.0.n() || u.dim() != self.0.n() {
            return Err(err("vector dimension differs from dim V"));
        }
        Ok(self.0.eval(&v, &u).into_coords())
    }

    /// Axiom violations, rendered as strings; empty when valid.
    fn validate(&self) -> Vec<String> {
        self.0.validate().iter().map(|v| format!("{v:?}")).collect()
    }

    fn is_valid(&self) -> bool {
        self.0.is_valid()
    }

    fn is_surjective(&self) -> bool {
        self.0.is_surjective()
    }

    fn __eq__(&self, other: &Self) -> bool {
        bilform::equal(&self.0, &other.0)
    }

    fn __repr__(&self) -> String {
        format!("BilinearMap(p={}, n={}, m={})", self.0.p(), self.0.n(), self.0.m())
    }
}

/// A finite simplicial graph on vertices 0..n.
#[pyclass(name = "Graph", module = "qgk", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph(SimplicialGraph);

#[pymethods]
impl PyGraph {
    /// Edges are 0-based vertex pairs.
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        SimplicialGraph::from_edges(n, &edges).map(PyGraph).map_err(err)
    }

    /// Parses the 1-based text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        graphs::parse_graph(text).map(PyGraph).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges()
    }

    /// `None` if no induced L3 or C4 exists, else `(kind, [1-based vertices])`.
    fn find_forbidden(&self) -> Option<(String, Vec<usize>)> {
        graphs::find_forbidden(&self.0).map(|w| {
            let kind = format!("{:?}", w.kind);
            (kind, w.vertices.iter().map(|v| v + 1).collect())
        })
    }

    /// The construction tree as an s-expression, or `None` when a forbidden
    /// subgraph exists.
    fn decompose(&self) -> Option<String> {
        match graphs::decompose(&self.0) {
            Decomposition::Tree(t) => Some(t.to_string()),
            Decomposition::Forbidden(_) => None,
        }
    }

    fn bilinear(&self, p: u8) -> PyResult<PyBilinearMap> {
        graphs::graph_bilinear(&self.0, p).map(PyBilinearMap).map_err(err)
    }

    /// The RAAG presentation in the presentation text format.
    fn raag_presentation(&self) -> String {
        presentations::raag_presentation(&self.0).to_text()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={:?})", self.0.n(), self.0.edges())
    }
}

/// `(True, None)` or `(False, (v, u, v', u'))`.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn has_common_slot(map: &PyBilinearMap) -> PyResult<(bool, Option<(Vec<u8>, Vec<u8>, Vec<u8>, Vec<u8>)>)> {
    Ok(match slot::has_common_slot(&map.0).map_err(err)? {
        SlotVerdict::Holds => (true, None),
        SlotVerdict::Fails(w) => {
            (false, Some((w.v.into_coords(), w.u.into_coords(), w.v2.into_coords(), w.u2.into_coords())))
        }
    })
}

#[pyfunction]
#[pyo3(signature = (map, dmax = 3))]
fn hull_dims(map: &PyBilinearMap, dmax: usize) -> PyResult<Vec<usize>> {
    hull::hull_dims(&map.0, dmax).map(|h| h.dims).map_err(err)
}

#[pyfunction]
fn presentation_cup_product(text: &str, p: u8) -> PyResult<PyBilinearMap> {
    let pres = presentations::parse_presentation(text).map_err(err)?;
    presentations::presentation_cup_product(&pres, p).map(PyBilinearMap).map_err(err)
}

/// Evaluates a construction tree, returning the map and its V-basis labels.
#[pyfunction]
fn eval_tree(tree: &str, p: u8) -> PyResult<(PyBilinearMap, Vec<String>)> {
    let t = ConstructionTree::parse(tree).map_err(err)?;
    let field = tower::eval_tree(&t, p).map_err(err)?;
    let labels = field.vlabels().to_vec();
    Ok((PyBilinearMap(field.into_map()), labels))
}

/// `kind` is one of "C", "Z2Ext", "Q2".
#[pyfunction]
fn base_field(kind: &str, p: u8) -> PyResult<PyBilinearMap> {
    let kind = match kind {
        "C" => tower::BaseKind::Complex,
        "Z2Ext" => tower::BaseKind::Z2Ext,
        "Q2" => tower::BaseKind::Q2,
        other => return Err(err(format!("unknown base field `{other}`"))),
    };
    tower::base_field(kind, p).map(|f| PyBilinearMap(f.into_map())).map_err(err)
}

#[pyfunction]
fn extend_power_series(map: &PyBilinearMap, m: usize) -> PyResult<PyBilinearMap> {
    let base = tower::FieldData::from_map(map.0.clone(), "python").map_err(err)?;
    tower::extend_power_series(&base, m).map(|(e, _)| PyBilinearMap(e.into_map())).map_err(err)
}

#[pyfunction]
fn extend_to_augmented(map: &PyBilinearMap) -> PyResult<PyBilinearMap> {
    tower::extend_to_augmented(&map.0).map(PyBilinearMap).map_err(err)
}

#[pymodule]
fn qgk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBilinearMap>()?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(has_common_slot, m)?)?;
    m.add_function(wrap_pyfunction!(hull_dims, m)?)?;
    m.add_function(wrap_pyfunction!(presentation_cup_product, m)?)?;
    m.add_function(wrap_pyfunction!(eval_tree, m)?)?;
    m.add_function(wrap_pyfunction!(base_field, m)?)?;
    m.add_function(wrap_pyfunction!(extend_power_series, m)?)?;
    m.add_function(wrap_pyfunction!(extend_to_augmented, m)?)?;
    Ok(())
}
