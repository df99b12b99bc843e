//! Python bindings for the main types and operations: matrix classes, cycle
//! means, scalings, Perron-root ranges, eigenvalue sets and the
//! regularity decision.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use spectral_range::error::{Error, ErrorKind};
use spectral_range::graph::{ClassAccess, ClassKind};
use spectral_range::{camion_hoffman, cycles, eigen_set, perron_range, scaling, sunflower};

fn err(e: Error) -> PyErr {
    let prefix = match e.kind() {
        ErrorKind::Infeasible => "infeasible: ",
        ErrorKind::InvalidInput => "",
        ErrorKind::Numeric => "numeric: ",
        ErrorKind::Budget => "budget: ",
    };
    PyValueError::new_err(format!("{prefix}{e}"))
}

/// Dense nonnegative square matrix.
#[pyclass(name = "NonnegMatrix", frozen, from_py_object)]
#[derive(Clone)]
struct PyNonnegMatrix {
    inner: spectral_range::NonnegMatrix,
}

/// Dense complex square matrix.
#[pyclass(name = "ComplexMatrix", frozen, from_py_object)]
#[derive(Clone)]
struct PyComplexMatrix {
    inner: spectral_range::ComplexMatrix,
}

/// Support mask plus one positive value per row; the image of `aux`.
#[pyclass(name = "RowUniformMatrix", frozen, from_py_object)]
#[derive(Clone)]
struct PyRowUniformMatrix {
    inner: spectral_range::RowUniformMatrix,
}

fn fnf_dict<'py>(
    py: Python<'py>,
    fnf: &spectral_range::graph::FrobeniusForm,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("permutation", fnf.permutation.iter().map(|&v| v + 1).collect::<Vec<_>>())?;
    d.set_item(
        "classes",
        fnf.classes
            .iter()
            .map(|c| c.iter().map(|&v| v + 1).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    )?;
    d.set_item(
        "kind",
        fnf.class_kind
            .iter()
            .map(|&k| if k == ClassKind::Trivial { "trivial" } else { "nontrivial" })
            .collect::<Vec<_>>(),
    )?;
    d.set_item(
        "access",
        fnf.class_access
            .iter()
            .map(|&a| if a == ClassAccess::Final { "final" } else { "transient" })
            .collect::<Vec<_>>(),
    )?;
    Ok(d)
}

#[pymethods]
impl PyNonnegMatrix {
    #[new]
    fn new(rows: Vec<Vec<f64>>) -> PyResult<Self> {
        Ok(Self { inner: spectral_range::NonnegMatrix::from_rows(&rows).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn rows(&self) -> Vec<Vec<f64>> {
        self.inner.rows()
    }

    fn aux(&self) -> PyRowUniformMatrix {
        PyRowUniformMatrix { inner: self.inner.aux() }
    }

    fn hadamard_inverse(&self) -> PyNonnegMatrix {
        PyNonnegMatrix { inner: self.inner.hadamard_inverse() }
    }

    fn is_irreducible(&self) -> bool {
        self.inner.is_irreducible()
    }

    fn frobenius_form<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        fnf_dict(py, &self.inner.frobenius_form())
    }

    fn __repr__(&self) -> String {
        format!("NonnegMatrix(n={})", self.inner.n())
    }
}

#[pymethods]
impl PyComplexMatrix {
    #[new]
    fn new(rows: Vec<Vec<Complex64>>) -> PyResult<Self> {
        Ok(Self { inner: spectral_range::ComplexMatrix::from_rows(&rows).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn rows(&self) -> Vec<Vec<Complex64>> {
        self.inner.rows()
    }

    fn modulus(&self) -> PyNonnegMatrix {
        PyNonnegMatrix { inner: self.inner.modulus() }
    }

    fn aux(&self) -> PyRowUniformMatrix {
        PyRowUniformMatrix { inner: self.inner.aux() }
    }

    fn __repr__(&self) -> String {
        format!("ComplexMatrix(n={})", self.inner.n())
    }
}

#[pymethods]
impl PyRowUniformMatrix {
    /// Validate a dense matrix as row uniform.
    #[new]
    fn new(dense: PyNonnegMatrix) -> PyResult<Self> {
        Ok(Self {
            inner: spectral_range::RowUniformMatrix::from_dense(&dense.inner).map_err(err)?,
        })
    }

    /// Build from 1-based support pairs and per-row values.
    #[staticmethod]
    fn from_support(n: usize, support: Vec<(usize, usize)>, row_value: Vec<f64>) -> PyResult<Self> {
        let mut mask = vec![false; n * n];
        for (i, j) in support {
            if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
                return Err(err(Error::IndexOutOfBounds { index: i.max(j), n }));
            }
            mask[(i - 1) * n + (j - 1)] = true;
        }
        Ok(Self {
            inner: spectral_range::RowUniformMatrix::new(n, mask, row_value).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn row_values(&self) -> Vec<f64> {
        self.inner.row_values().to_vec()
    }

    /// 1-based support pairs.
    #[getter]
    fn support(&self) -> Vec<(usize, usize)> {
        self.inner.support_edges().iter().map(|&(i, j)| (i + 1, j + 1)).collect()
    }

    fn dense(&self) -> PyNonnegMatrix {
        PyNonnegMatrix { inner: self.inner.as_matrix() }
    }

    fn uniform_split(&self) -> PyNonnegMatrix {
        PyNonnegMatrix { inner: self.inner.uniform_split() }
    }

    fn is_irreducible(&self) -> bool {
        self.inner.is_irreducible()
    }

    fn frobenius_form<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        fnf_dict(py, &self.inner.frobenius_form())
    }

    fn __repr__(&self) -> String {
        format!("RowUniformMatrix(n={})", self.inner.n())
    }
}

/// (mu, nu, has_cycle): the extremal geometric cycle means.
#[pyfunction]
fn cycle_means(a: &PyNonnegMatrix) -> (f64, f64, bool) {
    let r = cycles::cycle_means(&a.inner);
    (r.mu, r.nu, r.has_cycle)
}

/// Nodes, edges and strict nodes of the (anti)critical graph (1-based).
#[pyfunction]
#[pyo3(signature = (a, level = "max"))]
fn critical_graph<'py>(
    py: Python<'py>,
    a: &PyNonnegMatrix,
    level: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let level = match level {
        "max" => cycles::Level::Max,
        "min" => cycles::Level::Min,
        other => return Err(PyValueError::new_err(format!("level must be max or min, got {other}"))),
    };
    let c = cycles::critical_graph(&a.inner, level).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("nodes", c.nodes.iter().map(|&v| v + 1).collect::<Vec<_>>())?;
    d.set_item("edges", c.edges.iter().map(|&(i, j)| (i + 1, j + 1)).collect::<Vec<_>>())?;
    d.set_item("strict_nodes", c.strict_nodes.iter().map(|&v| v + 1).collect::<Vec<_>>())?;
    Ok(d)
}

#[pyfunction]
fn perron_root(a: &PyNonnegMatrix) -> f64 {
    cycles::perron_root(&a.inner)
}

#[pyfunction]
fn perron_vector(a: &PyNonnegMatrix) -> PyResult<Vec<f64>> {
    cycles::perron_vector(&a.inner).map_err(err)
}

#[pyfunction]
fn strict_visualizing_vector(a: &PyNonnegMatrix) -> PyResult<Vec<f64>> {
    Ok(scaling::strict_visualizing_vector(&a.inner).map_err(err)?.values().to_vec())
}

#[pyfunction]
fn strict_antivisualizing_vector(a: &PyNonnegMatrix) -> PyResult<Vec<f64>> {
    Ok(scaling::strict_antivisualizing_vector(&a.inner).map_err(err)?.values().to_vec())
}

#[pyfunction]
fn sum_visualize(a: &PyNonnegMatrix, level: f64) -> PyResult<Vec<f64>> {
    Ok(scaling::sum_visualize(&a.inner, level).map_err(err)?.values().to_vec())
}

/// The stochastic-scaling bounds of an irreducible matrix.
#[pyfunction]
fn aevdd_scalings<'py>(py: Python<'py>, a: &PyNonnegMatrix) -> PyResult<Bound<'py, PyDict>> {
    let s = scaling::aevdd_scalings(&a.inner).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("mu", s.mu)?;
    d.set_item("nu", s.nu)?;
    d.set_item("rho", s.rho)?;
    d.set_item("case", if s.case == scaling::ScalingCase::Equal { "equal" } else { "strict" })?;
    d.set_item("substochastic", s.substochastic.values().to_vec())?;
    d.set_item("superstochastic", s.superstochastic.values().to_vec())?;
    Ok(d)
}

/// (upper, lower): extremes of the sunflower maximal cycle means.
#[pyfunction]
fn extremal_params(b: &PyRowUniformMatrix) -> (f64, f64) {
    let p = sunflower::extremal_params(&b.inner);
    (p.upper, p.lower)
}

/// Sunflower through a 1-based cycle of an irreducible host.
#[pyfunction]
fn simple_sunflower<'py>(
    py: Python<'py>,
    host: &PyNonnegMatrix,
    cycle: Vec<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let cycle0: Vec<usize> = cycle
        .iter()
        .map(|&v| v.checked_sub(1).ok_or_else(|| PyValueError::new_err("nodes are 1-based")))
        .collect::<PyResult<_>>()?;
    let s = sunflower::simple_sunflower(&host.inner, &cycle0).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("out_edges", s.out_edges().iter().map(|o| o.map(|v| v + 1)).collect::<Vec<_>>())?;
    d.set_item("matrix", PyNonnegMatrix { inner: s.to_matrix() })?;
    d.set_item("max_cycle_mean", s.max_cycle_mean())?;
    Ok(d)
}

/// The achievable Perron-root range.
#[pyfunction]
fn eta_describe<'py>(py: Python<'py>, b: &PyRowUniformMatrix) -> PyResult<Bound<'py, PyDict>> {
    let r = perron_range::perron_root_range(&b.inner);
    let d = PyDict::new(py);
    d.set_item("lower", r.lower)?;
    d.set_item("upper", r.upper)?;
    d.set_item("lower_attained", r.lower_attained)?;
    d.set_item("upper_attained", r.upper_attained)?;
    d.set_item("degenerate", r.degenerate)?;
    d.set_item("interval", r.describe())?;
    Ok(d)
}

/// A matrix with the prescribed auxiliary matrix and the given Perron root.
#[pyfunction]
fn eta_realize(b: &PyRowUniformMatrix, target: f64) -> PyResult<(PyNonnegMatrix, f64)> {
    let r = perron_range::realize_perron_root(&b.inner, target).map_err(err)?;
    Ok((PyNonnegMatrix { inner: r.matrix }, r.perron_root))
}

/// The achievable eigenvalue moduli: disk, circles and zero flag.
#[pyfunction]
fn sigma_describe<'py>(py: Python<'py>, b: &PyRowUniformMatrix) -> PyResult<Bound<'py, PyDict>> {
    let s = eigen_set::sigma_describe(&b.inner);
    let d = PyDict::new(py);
    match s.disk {
        Some(disk) => {
            let dd = PyDict::new(py);
            dd.set_item("radius", disk.radius)?;
            dd.set_item(
                "boundary",
                if disk.boundary == eigen_set::Boundary::Closed { "closed" } else { "open" },
            )?;
            d.set_item("disk", dd)?;
        }
        None => d.set_item("disk", py.None())?,
    }
    d.set_item("circles", s.circles)?;
    d.set_item("zero", s.zero_included)?;
    Ok(d)
}

/// (member, witness): is 0 an achievable eigenvalue?
#[pyfunction]
fn zero_in_sigma(b: &PyRowUniformMatrix) -> (bool, Option<PyComplexMatrix>) {
    let z = eigen_set::zero_in_sigma(&b.inner);
    (z.member, z.witness.map(|w| PyComplexMatrix { inner: w.matrix }))
}

/// (matrix, eigenvalue, eigenvector): realize an eigenvalue.
#[pyfunction]
fn realize_eigenvalue(
    b: &PyRowUniformMatrix,
    lam: Complex64,
) -> PyResult<(PyComplexMatrix, Complex64, Option<Vec<Complex64>>)> {
    let w = eigen_set::realize_eigenvalue_any(&b.inner, lam).map_err(err)?;
    Ok((PyComplexMatrix { inner: w.matrix }, w.eigenvalue, w.eigenvector))
}

/// Regularity decision on the fixed-modulus class of `a`.
#[pyfunction]
fn camion_hoffman_decide<'py>(
    py: Python<'py>,
    a: &PyNonnegMatrix,
) -> PyResult<Bound<'py, PyDict>> {
    let v = camion_hoffman::decide(&a.inner);
    let d = PyDict::new(py);
    d.set_item("regular", v.regular)?;
    d.set_item("boundary", v.boundary)?;
    d.set_item(
        "permutation",
        v.permutation.map(|p| p.iter().map(|&c| c + 1).collect::<Vec<_>>()),
    )?;
    d.set_item("test_radius", v.test_radius)?;
    d.set_item("certificate", v.certificate.map(|z| z.values().to_vec()))?;
    d.set_item("witness", v.witness.map(|w| PyComplexMatrix { inner: w }))?;
    Ok(d)
}

#[pyfunction]
fn m_matrix_check(a: &PyNonnegMatrix) -> bool {
    camion_hoffman::m_matrix_check(&a.inner)
}

/// Complex numbers with the prescribed moduli summing to zero.
#[pyfunction]
fn close_polygon(lengths: Vec<f64>) -> PyResult<Vec<Complex64>> {
    camion_hoffman::close_polygon(&lengths).map_err(err)
}

#[pymodule]
fn _spectral_range(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNonnegMatrix>()?;
    m.add_class::<PyComplexMatrix>()?;
    m.add_class::<PyRowUniformMatrix>()?;
    m.add_function(wrap_pyfunction!(cycle_means, m)?)?;
    m.add_function(wrap_pyfunction!(critical_graph, m)?)?;
    m.add_function(wrap_pyfunction!(perron_root, m)?)?;
    m.add_function(wrap_pyfunction!(perron_vector, m)?)?;
    m.add_function(wrap_pyfunction!(strict_visualizing_vector, m)?)?;
    m.add_function(wrap_pyfunction!(strict_antivisualizing_vector, m)?)?;
    m.add_function(wrap_pyfunction!(sum_visualize, m)?)?;
    m.add_function(wrap_pyfunction!(aevdd_scalings, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_params, m)?)?;
    m.add_function(wrap_pyfunction!(simple_sunflower, m)?)?;
    m.add_function(wrap_pyfunction!(eta_describe, m)?)?;
    m.add_function(wrap_pyfunction!(eta_realize, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_describe, m)?)?;
    m.add_function(wrap_pyfunction!(zero_in_sigma, m)?)?;
    m.add_function(wrap_pyfunction!(realize_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(camion_hoffman_decide, m)?)?;
    m.add_function(wrap_pyfunction!(m_matrix_check, m)?)?;
    m.add_function(wrap_pyfunction!(close_polygon, m)?)?;
    Ok(())
}
