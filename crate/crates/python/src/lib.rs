//! Python bindings: Pauli operators, classes, class sets, the unextendibility
//! searches and the analyses. Reports are returned as plain dictionaries.

use mubforge_core::analysis::{self, SearchConfig};
use mubforge_core::certificate::{self, Certificate};
use mubforge_core::class::{self, ClassSetJson};
use mubforge_core::{builtin, mub, pauli, unextendible, Error};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "PauliOperator", module = "mubforge", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPauli(pauli::PauliOperator);

#[pymethods]
impl PyPauli {
    /// Parses a letter string such as "XIZ", "-iY" or "iXZ".
    #[new]
    fn new(letters: &str) -> PyResult<Self> {
        pauli::pauli_from_string(letters).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn x(&self) -> u8 {
        self.0.x()
    }

    #[getter]
    fn z(&self) -> u8 {
        self.0.z()
    }

    /// Exponent `k` of the global factor `i^k` in `i^k X^x Z^z`.
    #[getter]
    fn phase(&self) -> u8 {
        self.0.phase()
    }

    fn commutes(&self, other: &Self) -> PyResult<bool> {
        self.0.commutes(&other.0).map_err(err)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.multiply(&other.0).map(Self).map_err(err)
    }

    /// Dense matrix as a list of rows.
    fn matrix(&self) -> Vec<Vec<Complex64>> {
        let d = 1usize << self.0.n();
        self.0.to_dense().chunks(d).map(<[Complex64]>::to_vec).collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PauliOperator('{}')", self.0)
    }
}

#[pyclass(name = "CommutingClass", module = "mubforge", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyClass(class::CommutingClass);

#[pymethods]
impl PyClass {
    /// Builds a class from its listed elements, keeping their order.
    #[staticmethod]
    fn from_elements(elements: Vec<String>) -> PyResult<Self> {
        let refs: Vec<&str> = elements.iter().map(String::as_str).collect();
        class::CommutingClass::from_element_strings(&refs).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_generators(generators: Vec<String>) -> PyResult<Self> {
        let refs: Vec<&str> = generators.iter().map(String::as_str).collect();
        class::CommutingClass::from_generator_strings(&refs).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.0.elements().iter().map(ToString::to_string).collect()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.0.generators().iter().map(ToString::to_string).collect()
    }

    fn contains(&self, letters: &str) -> PyResult<bool> {
        let p: pauli::ProjectivePauli = letters.parse().map_err(err)?;
        Ok(self.0.contains(&p))
    }

    fn disjoint(&self, other: &Self) -> PyResult<bool> {
        self.0.disjoint(&other.0).map_err(err)
    }

    /// Joint eigenbasis as a list of amplitude vectors, ordered by label.
    fn eigenbasis(&self) -> PyResult<Vec<Vec<Complex64>>> {
        let b = mub::eigenbasis(&self.0).map_err(err)?;
        Ok(b.vectors().iter().map(|v| v.amplitudes.clone()).collect())
    }

    fn __len__(&self) -> usize {
        self.0.elements().len()
    }

    fn __repr__(&self) -> String {
        format!("CommutingClass({})", self.elements().join(" "))
    }
}

#[pyclass(name = "ClassSet", module = "mubforge", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySet(class::ClassSet);

#[pymethods]
impl PySet {
    #[new]
    fn new(classes: Vec<PyClass>) -> PyResult<Self> {
        let n = classes.first().map(|c| c.0.n()).ok_or_else(|| err(Error::EmptyList))?;
        class::ClassSet::new(n, classes.into_iter().map(|c| c.0).collect()).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn classes(&self) -> Vec<PyClass> {
        self.0.classes().iter().cloned().map(PyClass).collect()
    }

    fn is_complete(&self) -> bool {
        self.0.is_complete()
    }

    /// Classes formable from the operators the set leaves uncovered.
    fn extendibility_check(&self) -> PyResult<Vec<PyClass>> {
        Ok(unextendible::extendibility_check(&self.0).map_err(err)?.found.into_iter().map(PyClass).collect())
    }

    /// Classes other than the inputs formable inside the union.
    fn extra_classes_within_union(&self) -> PyResult<Vec<PyClass>> {
        Ok(unextendible::extra_classes_within_union(&self.0).map_err(err)?.found.into_iter().map(PyClass).collect())
    }

    fn leftover_operators(&self) -> Vec<String> {
        unextendible::leftover_operators(&self.0).iter().map(ToString::to_string).collect()
    }

    fn select(&self, indices: Vec<usize>) -> PyResult<Self> {
        self.0.select(&indices).map(Self).map_err(err)
    }

    /// Largest deviation from unbiasedness over all pairs of eigenbases.
    fn max_unbiasedness_deviation(&self) -> PyResult<f64> {
        let bases = analysis::eigenbases(&self.0).map_err(err)?;
        let mut worst: f64 = 0.0;
        for (i, a) in bases.iter().enumerate() {
            for b in &bases[i + 1..] {
                worst = worst.max(mub::unbiasedness_deviation(a, b).map_err(err)?);
            }
        }
        Ok(worst)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&ClassSetJson::from(&self.0)).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let json: ClassSetJson = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        json.rebuild().map(Self).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        let parts: Vec<String> = self.0.classes().iter().map(|c| format!("{{{}}}", PyClass(c.clone()).elements().join(" "))).collect();
        format!("ClassSet([{}])", parts.join(", "))
    }
}

#[pyfunction]
fn canonical_complete_set(n: usize) -> PyResult<PySet> {
    class::canonical_complete_set(n).map(PySet).map_err(err)
}

#[pyfunction]
fn complete_set_from_two(c1: &PyClass, c2: &PyClass) -> PyResult<PySet> {
    class::complete_set_from_two(&c1.0, &c2.0).map(PySet).map_err(err)
}

/// The remaining classes of `complete` plus the extra class of the chosen ones.
#[pyfunction]
fn build_unextendible_set(complete: &PySet, chosen: Vec<usize>) -> PyResult<PySet> {
    unextendible::build_unextendible_set(&complete.0, &chosen).map(|u| PySet(u.classes)).map_err(err)
}

/// One of "paper-d4-strong", "paper-d8-strong", "paper-d4-weak".
#[pyfunction]
fn example(name: &str) -> PyResult<PySet> {
    builtin::builtin(name).map(PySet).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (set, starts = 1000, seed = 0))]
fn strong_unext_search(py: Python<'_>, set: &PySet, starts: usize, seed: u64) -> PyResult<Py<PyAny>> {
    let bases = analysis::eigenbases(&set.0).map_err(err)?;
    let config = SearchConfig { starts, seed, ..SearchConfig::default() };
    let outcome = py.detach(|| analysis::strong_unext_search(&bases, &config)).map_err(err)?;
    to_py(py, &outcome)
}

#[pyfunction]
fn eur_check(py: Python<'_>, triple: &PySet, extra: &PyClass) -> PyResult<Py<PyAny>> {
    to_py(py, &analysis::eur_check(&triple.0, &extra.0).map_err(err)?)
}

/// Second partition and context signs of an unextendible two-qubit triple.
#[pyfunction]
fn ks_report(py: Python<'_>, triple: &PySet) -> PyResult<(PySet, Py<PyAny>)> {
    let ctx = analysis::ks_alternate_partition(&triple.0).map_err(err)?;
    let report = analysis::ks_sign_verify(&ctx).map_err(err)?;
    Ok((PySet(ctx.second), to_py(py, &report)?))
}

#[pyfunction]
fn census(py: Python<'_>, k: usize) -> PyResult<Py<PyAny>> {
    let complete = class::canonical_complete_set(3).map_err(err)?;
    let report = py.detach(|| unextendible::theorem4_census(&complete, k)).map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
#[pyo3(signature = (n, budget = usize::MAX, seed = 0))]
fn conjecture_scan(py: Python<'_>, n: usize, budget: usize, seed: u64) -> PyResult<Py<PyAny>> {
    let report = py.detach(|| unextendible::conjecture_scan(n, budget, seed)).map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
fn complete_set_certificate(n: usize) -> PyResult<String> {
    certificate::complete_set_certificate(n).map(|c| c.to_json()).map_err(err)
}

/// Re-verifies a certificate; returns the list of problems (empty when verified).
/// Raises ValueError for malformed text.
#[pyfunction]
fn check_certificate(text: &str) -> PyResult<Vec<String>> {
    let cert = Certificate::from_json(text).map_err(err)?;
    Ok(certificate::check_certificate(&cert).problems)
}

#[pymodule]
pub fn mubforge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPauli>()?;
    m.add_class::<PyClass>()?;
    m.add_class::<PySet>()?;
    m.add_function(wrap_pyfunction!(canonical_complete_set, m)?)?;
    m.add_function(wrap_pyfunction!(complete_set_from_two, m)?)?;
    m.add_function(wrap_pyfunction!(build_unextendible_set, m)?)?;
    m.add_function(wrap_pyfunction!(example, m)?)?;
    m.add_function(wrap_pyfunction!(strong_unext_search, m)?)?;
    m.add_function(wrap_pyfunction!(eur_check, m)?)?;
    m.add_function(wrap_pyfunction!(ks_report, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(conjecture_scan, m)?)?;
    m.add_function(wrap_pyfunction!(complete_set_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(check_certificate, m)?)?;
    Ok(())
}
