use std::collections::BTreeMap;
use std::path::PathBuf;

use octgroup::catalog::{self, verify_all, Catalog, ReferenceData};
use octgroup::octonion::{self, Octonion};
use octgroup::signed_perm::SignedPerm;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A signed permutation of e1..en, composed left to right.
#[pyclass(name = "SignedPerm", skip_from_py_object, frozen, eq, hash, module = "pyoctgroup")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PySignedPerm(SignedPerm);

#[pymethods]
impl PySignedPerm {
    #[new]
    #[pyo3(signature = (cycles, degree = 7))]
    fn new(cycles: &str, degree: usize) -> PyResult<Self> {
        SignedPerm::parse(cycles, degree).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn identity(degree: usize) -> Self {
        Self(SignedPerm::identity(degree))
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn order(&self) -> u64 {
        self.0.order()
    }

    fn trace(&self) -> i64 {
        self.0.trace()
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    /// `self` first, then `other`.
    fn then(&self, other: &Self) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(value_error)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.then(other)
    }

    fn __pow__(&self, k: i64, _modulo: Option<i64>) -> Self {
        Self(self.0.pow(k))
    }

    fn is_octonion_automorphism(&self) -> bool {
        self.0.degree() == 7 && octonion::is_algebra_automorphism(&self.0)
    }

    fn matrix(&self) -> Vec<Vec<i8>> {
        self.0.matrix()
    }

    fn __str__(&self) -> String {
        self.0.to_cycles()
    }

    fn __repr__(&self) -> String {
        format!("SignedPerm({:?}, {})", self.0.to_cycles(), self.0.degree())
    }
}

/// An octonion with rational coefficients, written like "1/2*e1 - e3".
#[pyclass(name = "Octonion", skip_from_py_object, frozen, eq, module = "pyoctgroup")]
#[derive(Clone, PartialEq)]
struct PyOctonion(Octonion);

#[pymethods]
impl PyOctonion {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn basis(i: usize) -> PyResult<Self> {
        if i > 7 {
            return Err(PyValueError::new_err(format!("no basis element e{i}")));
        }
        Ok(Self(Octonion::basis(i)))
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn conj(&self) -> Self {
        Self(self.0.conj())
    }

    /// Norm as a rational string.
    fn norm(&self) -> String {
        self.0.norm().to_string()
    }

    fn coeffs(&self) -> Vec<String> {
        self.0.coeffs().iter().map(ToString::to_string).collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Octonion({:?})", self.0.to_string())
    }
}

#[pyfunction]
fn associator(a: &PyOctonion, b: &PyOctonion, c: &PyOctonion) -> PyOctonion {
    PyOctonion(octonion::associator(&a.0, &b.0, &c.0))
}

/// The named groups with their character tables, built on first use.
#[pyclass(name = "Catalog", frozen, module = "pyoctgroup")]
struct PyCatalog(Catalog);

#[pymethods]
impl PyCatalog {
    #[new]
    #[pyo3(signature = (golden_dir = None))]
    fn new(golden_dir: Option<PathBuf>) -> Self {
        let reference = match golden_dir {
            Some(dir) => ReferenceData::with_overrides(&dir),
            None => ReferenceData::embedded(),
        };
        Self(Catalog::new(reference))
    }

    #[staticmethod]
    fn group_names() -> Vec<&'static str> {
        catalog::group_names().collect()
    }

    fn order(&self, py: Python<'_>, group: &str) -> PyResult<usize> {
        py.detach(|| self.0.group(group).map(|g| g.order())).map_err(value_error)
    }

    fn elements(&self, py: Python<'_>, group: &str) -> PyResult<Vec<PySignedPerm>> {
        let g = py.detach(|| self.0.group(group)).map_err(value_error)?;
        Ok(g.elements().iter().cloned().map(PySignedPerm).collect())
    }

    fn order_histogram(&self, py: Python<'_>, group: &str) -> PyResult<BTreeMap<u64, usize>> {
        py.detach(|| self.0.group(group).map(|g| g.order_histogram())).map_err(value_error)
    }

    /// `{"classes": [...], "irreps": [...]}` in reference order.
    fn chartab<'py>(&self, py: Python<'py>, group: &str) -> PyResult<Bound<'py, PyDict>> {
        let info = py.detach(|| self.0.table(group)).map_err(value_error)?;
        let names = info.class_names();
        let labels = info.labels();
        let order = info.class_order();
        let classes = PyList::empty(py);
        for &k in &order {
            let c = &info.table.classes[k];
            let d = PyDict::new(py);
            d.set_item("name", &names[k])?;
            d.set_item("representative", c.representative.to_cycles())?;
            d.set_item("size", c.size)?;
            d.set_item("order", c.element_order)?;
            classes.append(d)?;
        }
        let irreps = PyList::empty(py);
        for i in info.irrep_order() {
            let row = &info.table.irreps[i];
            let d = PyDict::new(py);
            d.set_item("label", &labels[i])?;
            d.set_item("degree", row.degree)?;
            d.set_item("values", order.iter().map(|&k| row.values[k].to_string()).collect::<Vec<_>>())?;
            irreps.append(d)?;
        }
        let out = PyDict::new(py);
        out.set_item("group", group)?;
        out.set_item("order", info.table.group_order)?;
        out.set_item("aligned", info.is_aligned())?;
        out.set_item("classes", classes)?;
        out.set_item("irreps", irreps)?;
        Ok(out)
    }

    fn tensor(&self, py: Python<'_>, group: &str, left: &str, right: &str) -> PyResult<BTreeMap<String, u64>> {
        py.detach(|| self.0.tensor(group, left, right)).map_err(value_error)
    }

    fn branch(&self, py: Python<'_>, group: &str, subgroup: &str) -> PyResult<Vec<(String, BTreeMap<String, u64>)>> {
        py.detach(|| self.0.branching(group, subgroup)).map_err(value_error)
    }

    /// Claims as `(claim_id, status, computed, expected)` tuples.
    #[pyo3(signature = (filter = None))]
    fn verify(&self, py: Python<'_>, filter: Option<&str>) -> Vec<(String, &'static str, String, String)> {
        let report = py.detach(|| verify_all(&self.0, filter));
        report.claims.into_iter().map(|c| (c.claim_id, c.status.as_str(), c.computed, c.expected)).collect()
    }
}

#[pyfunction]
fn generator(name: &str) -> PyResult<PySignedPerm> {
    catalog::generator(name).map(PySignedPerm).map_err(value_error)
}

#[pymodule]
pub fn pyoctgroup(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySignedPerm>()?;
    m.add_class::<PyOctonion>()?;
    m.add_class::<PyCatalog>()?;
    m.add_function(wrap_pyfunction!(associator, m)?)?;
    m.add_function(wrap_pyfunction!(generator, m)?)?;
    Ok(())
}
