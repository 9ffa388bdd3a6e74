//! Python bindings for `moddiag`.
//!
//! Coefficients cross the boundary as `fractions.Fraction`; twist vectors and
//! multi-degrees as tuples of ints.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use moddiag::certificate::ReplayOptions;
use moddiag::exact::{fmt_rational, rat};
use moddiag::{cohomology, diagonal, grading, AmbientParams, MultiDegree, Rational};

fn to_py_err(e: moddiag::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((fmt_rational(q),))
}

fn ambient(g: i64, m: i64) -> PyResult<AmbientParams> {
    AmbientParams::new(g, m).map_err(to_py_err)
}

#[pyclass(name = "FormalCycle", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyFormalCycle(diagonal::FormalCycle);

#[pymethods]
impl PyFormalCycle {
    /// Builds `sum c * D(v)` from `(v, c)` pairs with integer `c`.
    #[new]
    fn new(g: i64, m: i64, terms: Vec<(Vec<i64>, i64)>) -> PyResult<Self> {
        let amb = ambient(g, m)?;
        let mut cycle = diagonal::FormalCycle::zero(amb);
        for (v, c) in terms {
            cycle.add_raw(&v, rat(c)).map_err(to_py_err)?;
        }
        Ok(Self(cycle))
    }

    #[getter]
    fn g(&self) -> usize {
        self.0.ambient().g()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.ambient().m()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Vec<i64>, Bound<'py, PyAny>)>> {
        self.0
            .terms()
            .map(|(v, c)| Ok((v.entries().to_vec(), fraction(py, c)?)))
            .collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

#[pyclass(name = "ExtClass", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyExtClass(cohomology::ExtClass);

#[pymethods]
impl PyExtClass {
    #[getter]
    fn g(&self) -> usize {
        self.0.ambient().g()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.ambient().m()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `(generators, coefficient)` pairs; generators are `(block, index)`.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Vec<(usize, usize)>, Bound<'py, PyAny>)>> {
        let two_g = self.0.ambient().two_g();
        self.0
            .terms()
            .map(|(mono, c)| {
                let gens = mono.generators(two_g).map(|id| (id.block, id.index)).collect();
                Ok((gens, fraction(py, c)?))
            })
            .collect()
    }

    fn integrate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &cohomology::integrate(&self.0))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

#[pyfunction]
fn modified_diagonal(g: i64, m: i64) -> PyResult<PyFormalCycle> {
    Ok(PyFormalCycle(diagonal::modified_diagonal(ambient(g, m)?)))
}

/// Returns `(d^(2g), v)` with `v` normalized, or `(1, None)` for zero.
#[pyfunction]
fn normalize_twist<'py>(py: Python<'py>, raw: Vec<i64>, g: i64) -> PyResult<(Bound<'py, PyAny>, Option<Vec<i64>>)> {
    let amb = ambient(g, raw.len() as i64)?;
    let (c, v) = diagonal::normalize_twist(&raw, &amb).map_err(to_py_err)?;
    Ok((fraction(py, &c)?, v.map(|v| v.entries().to_vec())))
}

#[pyfunction]
fn mult_pushforward_all(c: &PyFormalCycle, n: i64) -> PyResult<PyFormalCycle> {
    diagonal::mult_pushforward_all(&c.0, n).map(PyFormalCycle).map_err(to_py_err)
}

#[pyfunction]
fn mult_pushforward_factor(c: &PyFormalCycle, j: usize, n: i64) -> PyResult<PyFormalCycle> {
    diagonal::mult_pushforward_factor(&c.0, j, n).map(PyFormalCycle).map_err(to_py_err)
}

#[pyfunction]
fn proj_pushforward(c: &PyFormalCycle, j: usize) -> PyResult<PyFormalCycle> {
    diagonal::proj_pushforward(&c.0, j).map(PyFormalCycle).map_err(to_py_err)
}

#[pyfunction]
fn class_of_twist(v: Vec<i64>, g: i64) -> PyResult<PyExtClass> {
    let amb = ambient(g, v.len() as i64)?;
    cohomology::class_of_twist(&v, amb).map(PyExtClass).map_err(to_py_err)
}

#[pyfunction]
fn class_of_cycle(c: &PyFormalCycle) -> PyResult<PyExtClass> {
    cohomology::class_of_cycle(&c.0).map(PyExtClass).map_err(to_py_err)
}

#[pyfunction]
fn kunneth_component(c: &PyExtClass, profile: Vec<usize>) -> PyResult<PyExtClass> {
    let degree = MultiDegree::new(profile, c.0.ambient().g()).map_err(to_py_err)?;
    cohomology::kunneth_component(&c.0, &degree).map(PyExtClass).map_err(to_py_err)
}

#[pyfunction]
fn profile_support(c: &PyExtClass) -> Vec<Vec<usize>> {
    cohomology::profile_support(&c.0).into_iter().map(|d| d.entries().to_vec()).collect()
}

#[pyfunction]
fn weight_from_eigenvalue(g: usize, m: usize, w: i64) -> PyResult<usize> {
    grading::weight_from_eigenvalue(g, m, w).map_err(to_py_err)
}

#[pyfunction]
fn admissible_degrees(g: usize, m: usize, nu: usize) -> PyResult<Vec<Vec<usize>>> {
    let degrees = grading::admissible_degrees(g, m, nu).map_err(to_py_err)?;
    Ok(degrees.into_iter().map(|d| d.entries().to_vec()).collect())
}

#[pyfunction]
fn filter_top(degrees: Vec<Vec<usize>>, g: usize) -> PyResult<Vec<Vec<usize>>> {
    let parsed = degrees
        .into_iter()
        .map(|d| MultiDegree::new(d, g))
        .collect::<Result<Vec<_>, _>>()
        .map_err(to_py_err)?;
    Ok(grading::filter_top(&parsed, g).into_iter().map(|d| d.entries().to_vec()).collect())
}

/// `(True, None)` when the survivor set is provably empty, otherwise
/// `(False, survivor)`.
#[pyfunction]
fn prove_empty_pigeonhole(g: usize, m: usize) -> (bool, Option<Vec<usize>>) {
    match grading::prove_empty_pigeonhole(g, m) {
        grading::PigeonholeOutcome::Proof { .. } => (true, None),
        grading::PigeonholeOutcome::Counterexample { survivor, .. } => (false, Some(survivor.entries().to_vec())),
    }
}

/// Replays the argument and returns the certificate as JSON text.
#[pyfunction]
#[pyo3(signature = (g, m, formal=true, grading=true, cohomology=true, max_dim=10_000_000))]
fn replay_proof(g: i64, m: i64, formal: bool, grading: bool, cohomology: bool, max_dim: u128) -> PyResult<String> {
    let options = ReplayOptions {
        run_formal: formal,
        run_grading: grading,
        run_cohomology: cohomology,
        max_dim,
        ..ReplayOptions::default()
    };
    moddiag::replay_proof(g, m, &options).map(|c| c.to_json()).map_err(to_py_err)
}

#[pymodule]
fn moddiag_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFormalCycle>()?;
    m.add_class::<PyExtClass>()?;
    m.add_function(wrap_pyfunction!(modified_diagonal, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_twist, m)?)?;
    m.add_function(wrap_pyfunction!(mult_pushforward_all, m)?)?;
    m.add_function(wrap_pyfunction!(mult_pushforward_factor, m)?)?;
    m.add_function(wrap_pyfunction!(proj_pushforward, m)?)?;
    m.add_function(wrap_pyfunction!(class_of_twist, m)?)?;
    m.add_function(wrap_pyfunction!(class_of_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(kunneth_component, m)?)?;
    m.add_function(wrap_pyfunction!(profile_support, m)?)?;
    m.add_function(wrap_pyfunction!(weight_from_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(admissible_degrees, m)?)?;
    m.add_function(wrap_pyfunction!(filter_top, m)?)?;
    m.add_function(wrap_pyfunction!(prove_empty_pigeonhole, m)?)?;
    m.add_function(wrap_pyfunction!(replay_proof, m)?)?;
    Ok(())
}
