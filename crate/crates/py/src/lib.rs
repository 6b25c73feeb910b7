//! Python module `aqpath`. Vertices are plain integers with bit 1 as the
//! most significant bit, so `0b0111` is the label 0111 in AQ_4.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ::aqpath::oracle::{self, Pi3Mode, Pi3Options, DEFAULT_BUDGET};
use ::aqpath::{AugmentedCube, Error, Graph, Verdict, Vertex};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Construction(_) | Error::BudgetExhausted(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn triple(d: [u32; 3]) -> [Vertex; 3] {
    d.map(Vertex)
}

fn raw(paths: &[Vec<Vertex>]) -> Vec<Vec<u32>> {
    paths
        .iter()
        .map(|p| p.iter().map(|v| v.0).collect())
        .collect()
}

#[pyclass(name = "AugmentedCube", frozen)]
struct PyCube {
    inner: AugmentedCube,
}

#[pymethods]
impl PyCube {
    #[new]
    fn new(n: u32) -> PyResult<Self> {
        Ok(PyCube {
            inner: AugmentedCube::new(n).map_err(to_py)?,
        })
    }

    #[getter]
    fn dimension(&self) -> u32 {
        self.inner.dimension()
    }

    fn order(&self) -> u64 {
        self.inner.order()
    }

    fn size(&self) -> u64 {
        self.inner.size()
    }

    fn neighbors(&self, v: u32) -> PyResult<Vec<u32>> {
        self.inner.check_vertex(Vertex(v)).map_err(to_py)?;
        Ok(self
            .inner
            .neighbors(Vertex(v))
            .into_iter()
            .map(|w| w.0)
            .collect())
    }

    /// `(label, neighbour)` pairs such as `("h1", 8)`.
    fn labeled_neighbors(&self, v: u32) -> PyResult<Vec<(String, u32)>> {
        self.inner.check_vertex(Vertex(v)).map_err(to_py)?;
        Ok(self
            .inner
            .labeled_neighbors(Vertex(v))
            .into_iter()
            .map(|(m, w)| (m.label(), w.0))
            .collect())
    }

    fn is_adjacent(&self, u: u32, v: u32) -> bool {
        self.inner.is_adjacent(Vertex(u), Vertex(v))
    }

    fn to_binary(&self, v: u32) -> String {
        Vertex(v).to_binary(self.inner.dimension())
    }

    fn __repr__(&self) -> String {
        format!("AugmentedCube({})", self.inner.dimension())
    }
}

#[pyclass(name = "DPathFamily", frozen, get_all)]
struct PyFamily {
    terminals: (u32, u32, u32),
    paths: Vec<Vec<u32>>,
    trace: Vec<String>,
    fallback: bool,
}

#[pymethods]
impl PyFamily {
    fn __len__(&self) -> usize {
        self.paths.len()
    }
}

#[pyfunction]
fn target_count(n: u32) -> PyResult<usize> {
    ::aqpath::target_count(n).map_err(to_py)
}

#[pyfunction]
fn construct(n: u32, d: [u32; 3]) -> PyResult<PyFamily> {
    let f = ::aqpath::construct(n, triple(d)).map_err(to_py)?;
    Ok(PyFamily {
        terminals: (d[0], d[1], d[2]),
        paths: raw(&f.paths),
        trace: f.trace.lines(),
        fallback: f.trace.fallback(),
    })
}

/// Returns the number of accepted paths, or raises ValueError naming the
/// violation.
#[pyfunction]
fn check_family(n: u32, d: [u32; 3], paths: Vec<Vec<u32>>) -> PyResult<usize> {
    let cube = AugmentedCube::new(n).map_err(to_py)?;
    let paths: Vec<Vec<Vertex>> = paths
        .into_iter()
        .map(|p| p.into_iter().map(Vertex).collect())
        .collect();
    match ::aqpath::check_family(&cube, triple(d), &paths) {
        Verdict::Accept(k) => Ok(k),
        Verdict::Reject(v) => Err(PyValueError::new_err(format!("{} {}", v.kind, v.detail(n)))),
    }
}

/// Exact maximum and a witness family as `(count, paths)`.
#[pyfunction]
#[pyo3(signature = (n, d, budget = DEFAULT_BUDGET))]
fn max_dpaths(
    py: Python<'_>,
    n: u32,
    d: [u32; 3],
    budget: u64,
) -> PyResult<(usize, Vec<Vec<u32>>)> {
    let cube = AugmentedCube::new(n).map_err(to_py)?;
    let r = py
        .detach(|| oracle::max_dpaths(&cube, triple(d), budget))
        .map_err(to_py)?;
    Ok((r.count, raw(&r.paths)))
}

/// `(value, argmin)` over all triples containing vertex 0.
#[pyfunction]
#[pyo3(signature = (n, budget = DEFAULT_BUDGET))]
fn pi3_exact(py: Python<'_>, n: u32, budget: u64) -> PyResult<(usize, (u32, u32, u32))> {
    let cube = AugmentedCube::new(n).map_err(to_py)?;
    let opts = Pi3Options {
        budget,
        pin_zero: true,
    };
    let r = py
        .detach(|| oracle::pi3_exact(&cube, Pi3Mode::Exhaustive, opts))
        .map_err(to_py)?;
    Ok((r.value, (r.argmin[0].0, r.argmin[1].0, r.argmin[2].0)))
}

#[pyfunction]
fn common_neighbors(n: u32, vs: Vec<u32>) -> PyResult<Vec<u32>> {
    let cube = AugmentedCube::new(n).map_err(to_py)?;
    let vs: Vec<Vertex> = vs.into_iter().map(Vertex).collect();
    Ok(oracle::common_neighbors(&cube, &vs)
        .map_err(to_py)?
        .into_iter()
        .map(|v| v.0)
        .collect())
}

#[pymodule]
#[pyo3(name = "aqpath")]
fn aqpath_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCube>()?;
    m.add_class::<PyFamily>()?;
    m.add_function(wrap_pyfunction!(target_count, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(check_family, m)?)?;
    m.add_function(wrap_pyfunction!(max_dpaths, m)?)?;
    m.add_function(wrap_pyfunction!(pi3_exact, m)?)?;
    m.add_function(wrap_pyfunction!(common_neighbors, m)?)?;
    Ok(())
}
