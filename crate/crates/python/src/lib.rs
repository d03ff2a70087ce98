use nalgebra::{DMatrix, DVector};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use monofitz::classify::{self, ClassificationReport, Modulus};
use monofitz::numkernel::FitzValue;
use monofitz::{cli, fitzpatrick, gallery, nonexpansive, LinearRelation, DEFAULT_TOL};

fn to_py_err(e: monofitz::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

pub fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>, String> {
    let n = rows.len();
    let m = rows.first().map(Vec::len).unwrap_or(0);
    if rows.iter().any(|r| r.len() != m) {
        return Err("rows must all have the same length".into());
    }
    Ok(DMatrix::from_fn(n, m, |i, j| rows[i][j]))
}

pub fn matrix_to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().cloned().collect()).collect()
}

fn fitz_to_f64(v: FitzValue) -> f64 {
    v.to_f64()
}

fn modulus_to_f64(m: Option<Modulus>) -> Option<f64> {
    m.map(|m| m.to_f64())
}

fn report_to_dict<'py>(py: Python<'py>, r: &ClassificationReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("n", r.n)?;
    d.set_item("tol", r.tol)?;
    d.set_item("monotone", r.monotone)?;
    d.set_item("maximal", r.maximal)?;
    d.set_item("strictly_monotone", r.strictly_monotone)?;
    d.set_item("paramonotone", r.paramonotone)?;
    d.set_item("rectangular", r.rectangular)?;
    d.set_item("cocoercivity_modulus", modulus_to_f64(r.cocoercivity_modulus))?;
    let witnesses = PyDict::new(py);
    for (prop, w) in &r.witnesses {
        let inner = PyDict::new(py);
        for (name, v) in &w.vectors {
            inner.set_item(name, v.as_slice().to_vec())?;
        }
        witnesses.set_item(prop, inner)?;
    }
    d.set_item("witnesses", witnesses)?;
    Ok(d)
}

/// A linear relation on R^n, stored by its graph.
#[pyclass(name = "LinearRelation", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyLinearRelation {
    inner: LinearRelation,
}

#[pymethods]
impl PyLinearRelation {
    #[staticmethod]
    #[pyo3(signature = (rows, tol = DEFAULT_TOL))]
    fn from_matrix(rows: Vec<Vec<f64>>, tol: f64) -> PyResult<Self> {
        let m = matrix_from_rows(&rows).map_err(PyValueError::new_err)?;
        let inner = LinearRelation::from_matrix(&m, tol).map_err(to_py_err)?;
        Ok(PyLinearRelation { inner })
    }

    /// Relation whose graph is spanned by the given 2n-vectors.
    #[staticmethod]
    #[pyo3(signature = (n, graph_basis, tol = DEFAULT_TOL))]
    fn from_graph(n: usize, graph_basis: Vec<Vec<f64>>, tol: f64) -> PyResult<Self> {
        let vectors: Vec<DVector<f64>> = graph_basis.iter().map(|v| DVector::from_column_slice(v)).collect();
        let inner = LinearRelation::from_graph_vectors(n, &vectors, tol).map_err(to_py_err)?;
        Ok(PyLinearRelation { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn graph_dim(&self) -> usize {
        self.inner.graph().dim()
    }

    fn adjoint(&self) -> Self {
        PyLinearRelation {
            inner: self.inner.adjoint(),
        }
    }

    fn inverse(&self) -> Self {
        PyLinearRelation {
            inner: self.inner.inverse(),
        }
    }

    fn symmetric_part(&self) -> Self {
        PyLinearRelation {
            inner: self.inner.symmetric_part(),
        }
    }

    fn resolvent(&self) -> Self {
        PyLinearRelation {
            inner: nonexpansive::resolvent(&self.inner),
        }
    }

    fn is_monotone(&self) -> bool {
        self.inner.is_monotone()
    }

    fn is_maximally_monotone(&self) -> bool {
        self.inner.is_maximally_monotone()
    }

    fn to_matrix(&self) -> PyResult<Vec<Vec<f64>>> {
        Ok(matrix_to_rows(&self.inner.to_matrix().map_err(to_py_err)?))
    }

    /// Fitzpatrick function value; `inf` outside its domain.
    fn fitzpatrick(&self, x: Vec<f64>, xstar: Vec<f64>) -> PyResult<f64> {
        let v = fitzpatrick::fitzpatrick_value(
            &self.inner,
            &DVector::from_vec(x),
            &DVector::from_vec(xstar),
        )
        .map_err(to_py_err)?;
        Ok(fitz_to_f64(v))
    }

    fn is_paramonotone(&self) -> PyResult<bool> {
        Ok(classify::is_paramonotone(&self.inner).map_err(to_py_err)?.holds)
    }

    fn is_rectangular(&self) -> PyResult<bool> {
        Ok(classify::is_rectangular(&self.inner).map_err(to_py_err)?.holds)
    }

    fn is_strictly_monotone(&self) -> PyResult<bool> {
        classify::is_strictly_monotone(&self.inner).map_err(to_py_err)
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let report = classify::classification_report(&self.inner).map_err(to_py_err)?;
        report_to_dict(py, &report)
    }

    fn __repr__(&self) -> String {
        format!("LinearRelation(n={}, graph_dim={})", self.inner.n(), self.inner.graph().dim())
    }
}

#[pyfunction]
#[pyo3(signature = (rows, tol = DEFAULT_TOL))]
fn cocoercivity_modulus(rows: Vec<Vec<f64>>, tol: f64) -> PyResult<f64> {
    let m = matrix_from_rows(&rows).map_err(PyValueError::new_err)?;
    Ok(classify::cocoercivity_modulus(&m, tol).map_err(to_py_err)?.to_f64())
}

#[pyfunction]
fn volterra(n: usize) -> PyResult<Vec<Vec<f64>>> {
    Ok(matrix_to_rows(&gallery::volterra(n).map_err(to_py_err)?))
}

#[pyfunction]
fn shift_sum(m: usize) -> PyResult<Vec<Vec<f64>>> {
    Ok(matrix_to_rows(&gallery::shift_sum(m).map_err(to_py_err)?))
}

#[pyfunction]
fn cyclic_shift(m: usize, d: usize) -> PyResult<Vec<Vec<f64>>> {
    Ok(matrix_to_rows(&nonexpansive::cyclic_shift(m, d).map_err(to_py_err)?))
}

#[pyfunction]
#[pyo3(signature = (rows, tol = DEFAULT_TOL))]
fn displacement(rows: Vec<Vec<f64>>, tol: f64) -> PyResult<Vec<Vec<f64>>> {
    let t = matrix_from_rows(&rows).map_err(PyValueError::new_err)?;
    Ok(matrix_to_rows(&nonexpansive::displacement(&t, tol).map_err(to_py_err)?))
}

/// Closed-form Fitzpatrick value of rotation + normal cone of the unit ball.
#[pyfunction]
fn rotation_ball_fitzpatrick(x: (f64, f64), ystar: (f64, f64)) -> f64 {
    let op = gallery::BallConstrainedOperator::rotation(DEFAULT_TOL);
    fitz_to_f64(op.fitzpatrick(
        &nalgebra::Vector2::new(x.0, x.1),
        &nalgebra::Vector2::new(ystar.0, ystar.1),
    ))
}

/// Runs `classify` on a JSON operator spec and returns the JSON report.
#[pyfunction]
fn classify_spec(spec: &str) -> PyResult<String> {
    let parsed = cli::parse_spec(spec.as_bytes()).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let out = cli::run_classify(&parsed, parsed.tol()).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(cli::report_to_json(&out))
}

#[pymodule]
fn pymonofitz(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLinearRelation>()?;
    m.add_function(wrap_pyfunction!(cocoercivity_modulus, m)?)?;
    m.add_function(wrap_pyfunction!(volterra, m)?)?;
    m.add_function(wrap_pyfunction!(shift_sum, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_shift, m)?)?;
    m.add_function(wrap_pyfunction!(displacement, m)?)?;
    m.add_function(wrap_pyfunction!(rotation_ball_fitzpatrick, m)?)?;
    m.add_function(wrap_pyfunction!(classify_spec, m)?)?;
    m.add("DEFAULT_TOL", DEFAULT_TOL)?;
    Ok(())
}
