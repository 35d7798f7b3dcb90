//! Python bindings: polynomials, representations, surfaces and the
//! verification suite, exposed as the `delpezzo_py` module.

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use delpezzo::catalog;
use delpezzo::geom::ProjectivePoint;
use delpezzo::invariance;
use delpezzo::poly::{self, Rat};
use delpezzo::rep::CompositionLaw;
use delpezzo::suite;
use delpezzo::{Polynomial, Representation, SurfaceModel, VariableContext};

use std::sync::Arc;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Parse an int or a "p/q" string into an exact rational.
fn to_rat(value: &Bound<'_, PyAny>) -> PyResult<Rat> {
    if let Ok(i) = value.extract::<i64>() {
        return Ok(poly::rat(i));
    }
    let text: String = value.extract()?;
    let parts: Vec<&str> = text.split('/').collect();
    match parts.as_slice() {
        [n] => Ok(poly::rat(n.trim().parse().map_err(value_err)?)),
        [n, d] => {
            let den: i64 = d.trim().parse().map_err(value_err)?;
            if den == 0 {
                return Err(PyZeroDivisionError::new_err("zero denominator"));
            }
            Ok(poly::ratio(n.trim().parse().map_err(value_err)?, den))
        }
        _ => Err(value_err(format!("cannot parse rational from {text:?}"))),
    }
}

/// An ordered list of coordinate and parameter variables.
#[pyclass(name = "VariableContext", frozen)]
struct PyVariableContext {
    inner: Arc<VariableContext>,
}

#[pymethods]
impl PyVariableContext {
    #[new]
    #[pyo3(signature = (coordinates, parameters=vec![]))]
    fn new(coordinates: Vec<String>, parameters: Vec<String>) -> Self {
        let coords: Vec<&str> = coordinates.iter().map(|s| s.as_str()).collect();
        let params: Vec<&str> = parameters.iter().map(|s| s.as_str()).collect();
        PyVariableContext {
            inner: VariableContext::new(&coords, &params),
        }
    }

    /// The variable with this name, as a polynomial.
    fn var(&self, name: &str) -> PyResult<PyPolynomial> {
        self.inner
            .index_of(name)
            .map(|i| PyPolynomial {
                inner: Polynomial::variable(&self.inner, i),
            })
            .ok_or_else(|| value_err(format!("unknown variable {name}")))
    }

    /// All variables, in order.
    fn vars(&self) -> Vec<PyPolynomial> {
        (0..self.inner.len())
            .map(|i| PyPolynomial {
                inner: Polynomial::variable(&self.inner, i),
            })
            .collect()
    }

    /// An exact rational constant (int or "p/q" string).
    fn constant(&self, value: &Bound<'_, PyAny>) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial {
            inner: Polynomial::constant(&self.inner, to_rat(value)?),
        })
    }

    #[getter]
    fn coordinate_names(&self) -> Vec<String> {
        self.inner.coordinate_names().to_vec()
    }

    #[getter]
    fn parameter_names(&self) -> Vec<String> {
        self.inner.parameter_names().to_vec()
    }

    fn __repr__(&self) -> String {
        format!(
            "VariableContext(coordinates={:?}, parameters={:?})",
            self.inner.coordinate_names(),
            self.inner.parameter_names()
        )
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[pyclass(name = "Polynomial", frozen, from_py_object)]
#[derive(Clone)]
struct PyPolynomial {
    inner: Polynomial,
}

#[pymethods]
impl PyPolynomial {
    fn __add__(&self, other: &PyPolynomial) -> PyPolynomial {
        PyPolynomial {
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: &PyPolynomial) -> PyPolynomial {
        PyPolynomial {
            inner: &self.inner - &other.inner,
        }
    }

    fn __mul__(&self, other: &PyPolynomial) -> PyPolynomial {
        PyPolynomial {
            inner: &self.inner * &other.inner,
        }
    }

    fn __neg__(&self) -> PyPolynomial {
        PyPolynomial {
            inner: -&self.inner,
        }
    }

    fn __pow__(&self, exp: u32, _modulo: Option<u32>) -> PyPolynomial {
        PyPolynomial {
            inner: self.inner.pow(exp),
        }
    }

    fn __richcmp__(&self, other: &PyPolynomial, op: pyo3::basic::CompareOp) -> PyResult<bool> {
        match op {
            pyo3::basic::CompareOp::Eq => Ok(self.inner == other.inner),
            pyo3::basic::CompareOp::Ne => Ok(self.inner != other.inner),
            _ => Err(value_err("polynomials are not ordered")),
        }
    }

    /// Multiply by an exact rational scalar (int or "p/q" string).
    fn scale(&self, value: &Bound<'_, PyAny>) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial {
            inner: self.inner.scale(&to_rat(value)?),
        })
    }

    /// Replace coordinate variables by polynomial images (dict name -> Polynomial).
    fn substitute(&self, sigma: &Bound<'_, PyDict>) -> PyResult<PyPolynomial> {
        let mut pairs: Vec<(String, Polynomial)> = Vec::new();
        for (k, v) in sigma.iter() {
            let name: String = k.extract()?;
            let image: PyPolynomial = v.extract()?;
            pairs.push((name, image.inner));
        }
        let borrowed: Vec<(&str, Polynomial)> = pairs
            .iter()
            .map(|(n, p)| (n.as_str(), p.clone()))
            .collect();
        Ok(PyPolynomial {
            inner: self.inner.substitute(&borrowed).map_err(value_err)?,
        })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Total degree in the coordinates if homogeneous, else None. The zero
    /// polynomial is homogeneous with undefined degree: (True, None).
    fn homogeneity(&self) -> (bool, Option<u32>) {
        let h = self.inner.homogeneity();
        (h.is_homogeneous(), h.degree())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.inner)
    }
}

/// A parametrized projective group action.
#[pyclass(name = "Representation", frozen)]
struct PyRepresentation {
    inner: Representation,
}

#[pymethods]
impl PyRepresentation {
    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    /// Test the homomorphism property under the canonical composition law.
    fn check_group_law(&self) -> bool {
        self.inner.check_group_law().holds
    }

    /// Test with the untwisted semidirect law (b1+b2, t1*t2) instead.
    fn check_untwisted_law(&self) -> bool {
        self.inner
            .check_group_law_with(CompositionLaw::SemidirectUntwisted)
            .holds
    }

    /// Pull a polynomial back along the action.
    fn act(&self, f: &PyPolynomial) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial {
            inner: self.inner.act_on_polynomial(&f.inner).map_err(value_err)?,
        })
    }

    /// Whether the projective point (list of ints or "p/q" strings) is
    /// fixed identically in the parameters.
    fn is_fixed_point(&self, coords: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
        let values: Vec<Rat> = coords.iter().map(to_rat).collect::<PyResult<_>>()?;
        let p = ProjectivePoint::new(values).map_err(value_err)?;
        invariance::is_fixed_point(&self.inner, &p).map_err(value_err)
    }

    fn matrix_str(&self) -> String {
        self.inner.matrix().to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Representation({}, dim={})",
            self.inner.name(),
            self.inner.dimension()
        )
    }
}

/// An embedded surface with its projection and inverse system.
#[pyclass(name = "Surface", frozen)]
struct PySurface {
    inner: SurfaceModel,
}

#[pymethods]
impl PySurface {
    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn generators(&self) -> Vec<PyPolynomial> {
        self.inner
            .generators()
            .iter()
            .map(|g| PyPolynomial { inner: g.clone() })
            .collect()
    }

    #[getter]
    fn singular_points(&self) -> Vec<(Vec<String>, String)> {
        self.inner
            .singular_points()
            .iter()
            .map(|(p, label)| {
                (
                    p.coords().iter().map(|c| c.to_string()).collect(),
                    label.to_string(),
                )
            })
            .collect()
    }

    #[getter]
    fn line_count(&self) -> usize {
        self.inner.line_forms().len()
    }

    /// Is the surface ideal carried into itself by the representation?
    fn is_invariant_under(&self, rep: &PyRepresentation) -> PyResult<bool> {
        invariance::ideal_invariant(&self.inner, &rep.inner)
            .map(|out| out.invariant)
            .map_err(value_err)
    }

    /// Are all listed lines invariant as sets under the representation?
    fn lines_invariant_under(&self, rep: &PyRepresentation) -> PyResult<bool> {
        invariance::open_orbit_complement_check(&self.inner, &rep.inner).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Surface({}, generators={})",
            self.inner.name(),
            self.inner.generators().len()
        )
    }
}

// --- embedded models -------------------------------------------------------

#[pyfunction]
fn tau() -> PyRepresentation {
    PyRepresentation {
        inner: delpezzo::models::tau(),
    }
}

#[pyfunction]
fn rho() -> PyRepresentation {
    PyRepresentation {
        inner: delpezzo::models::rho(),
    }
}

/// The D5 quartic and its additive action.
#[pyfunction]
fn d5_quartic() -> (PySurface, PyRepresentation) {
    (
        PySurface {
            inner: delpezzo::models::d5_surface(),
        },
        PyRepresentation {
            inner: delpezzo::models::d5_representation(),
        },
    )
}

/// The A3 quintic and its additive action.
#[pyfunction]
fn a3_quintic() -> (PySurface, PyRepresentation) {
    (
        PySurface {
            inner: delpezzo::models::a3_surface(),
        },
        PyRepresentation {
            inner: delpezzo::models::a3_representation(),
        },
    )
}

/// The A3+A1 quartic and its semidirect action.
#[pyfunction]
fn a3a1_quartic() -> (PySurface, PyRepresentation) {
    (
        PySurface {
            inner: delpezzo::models::a3a1_surface(),
        },
        PyRepresentation {
            inner: delpezzo::models::a3a1_representation(),
        },
    )
}

/// The E6 cubic (no additive structure; carried for the exclusions).
#[pyfunction]
fn e6_cubic() -> PySurface {
    PySurface {
        inner: delpezzo::models::e6_surface(),
    }
}

// --- suite and catalog ------------------------------------------------------

/// Run the verification suite; returns the report as a JSON string.
#[pyfunction]
#[pyo3(signature = (filter=None))]
fn run_suite(filter: Option<&str>) -> PyResult<String> {
    let report = suite::run_suite(filter, false).map_err(value_err)?;
    serde_json::to_string_pretty(&report).map_err(value_err)
}

/// Overall pass/fail of the verification suite.
#[pyfunction]
fn verify() -> bool {
    suite::run_suite(None, false)
        .map(|r| r.overall_pass)
        .unwrap_or(false)
}

/// The classification catalog as a JSON string.
#[pyfunction]
fn catalog_json() -> PyResult<String> {
    serde_json::to_string_pretty(&catalog::catalog_json()).map_err(value_err)
}

/// The blow-up graph in DOT format.
#[pyfunction]
fn blowup_graph_dot() -> String {
    let graph = catalog::blowup_graph();
    let mut out = String::from("digraph blowups {\n");
    for t in graph.node_types() {
        let shape = if t.additive { "box" } else { "ellipse" };
        out.push_str(&format!("  \"{}\" [shape={shape}];\n", t.node_label()));
    }
    for (child, parent) in graph.edge_types() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\";\n",
            child.node_label(),
            parent.node_label()
        ));
    }
    out.push_str("}\n");
    out
}

#[pymodule]
fn delpezzo_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyVariableContext>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyRepresentation>()?;
    m.add_class::<PySurface>()?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(rho, m)?)?;
    m.add_function(wrap_pyfunction!(d5_quartic, m)?)?;
    m.add_function(wrap_pyfunction!(a3_quintic, m)?)?;
    m.add_function(wrap_pyfunction!(a3a1_quartic, m)?)?;
    m.add_function(wrap_pyfunction!(e6_cubic, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_json, m)?)?;
    m.add_function(wrap_pyfunction!(blowup_graph_dot, m)?)?;
    Ok(())
}
