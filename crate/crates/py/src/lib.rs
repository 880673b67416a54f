//! Python bindings: categories, morphisms, lattices and the specialization
//! functor, with scalars and matrix entries exchanged as exact strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyType;
use serde::Serialize;

use qinterp::arith::{format_rational, parse_rational, Param, Scalar};
use qinterp::category::{GenObject, InterpCategory, Morphism as CoreMorphism, MorphismJson, SumObject};
use qinterp::gfq::FqField;
use qinterp::lattice::{delta_factored, expand_factors, LatticeIndex};
use qinterp::semisimple;
use qinterp::specialization::{self, QMatrix};

const MAX_HOM: u128 = 4096;

fn py_err(e: qinterp::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Objects arrive as a dimension, a list of dimensions or a string such as `"[1]+[2]"`.
#[derive(FromPyObject)]
enum ObjectArg {
    Dim(usize),
    Dims(Vec<usize>),
    Text(String),
}

impl ObjectArg {
    fn object(&self) -> PyResult<SumObject> {
        match self {
            ObjectArg::Dim(d) => Ok(SumObject::generator(*d)),
            ObjectArg::Dims(ds) => Ok(SumObject::new(ds.clone())),
            ObjectArg::Text(s) => qinterp::cli::parse_object(s).map_err(py_err),
        }
    }

    fn generator(&self) -> PyResult<GenObject> {
        self.object()?
            .as_generator()
            .ok_or_else(|| PyValueError::new_err("expected a single generator [d]"))
    }
}

/// `t` arrives as None (symbolic), an int or a rational string such as `"3/2"`.
#[derive(FromPyObject)]
enum ParamArg {
    Int(i64),
    Text(String),
}

fn param(t: Option<ParamArg>) -> PyResult<Param> {
    match t {
        None => Ok(Param::Symbolic),
        Some(ParamArg::Int(n)) => Ok(Param::numeric(n)),
        Some(ParamArg::Text(s)) => Ok(Param::Numeric(parse_rational(&s).map_err(py_err)?)),
    }
}

fn field(q: u32) -> PyResult<FqField> {
    FqField::from_order(q).map_err(py_err)
}

fn to_python<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn matrix_strings(m: &QMatrix) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(format_rational).collect()).collect()
}

/// A morphism: a linear combination of relation classes between sums of generators.
#[pyclass(name = "Morphism", module = "qinterp", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMorphism {
    inner: CoreMorphism,
}

impl From<CoreMorphism> for PyMorphism {
    fn from(inner: CoreMorphism) -> Self {
        PyMorphism { inner }
    }
}

#[pymethods]
impl PyMorphism {
    #[classmethod]
    #[pyo3(signature = (text, q = 2))]
    fn from_json(_cls: &Bound<'_, PyType>, text: &str, q: u32) -> PyResult<Self> {
        let json: MorphismJson = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(CoreMorphism::from_json(&field(q)?, &json).map_err(py_err)?.into())
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_json()).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn source(&self) -> Vec<usize> {
        self.inner.source().summands().to_vec()
    }

    #[getter]
    fn target(&self) -> Vec<usize> {
        self.inner.target().summands().to_vec()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    /// Multiplies by a scalar given as a string in `t`, e.g. `"t^2 - 1"`.
    fn scale(&self, s: &str) -> PyResult<Self> {
        let s: Scalar = s.parse().map_err(py_err)?;
        Ok(self.inner.scale(&s).into())
    }

    fn __add__(&self, other: &PyMorphism) -> PyResult<Self> {
        Ok(self.inner.add(&other.inner).map_err(py_err)?.into())
    }

    fn __sub__(&self, other: &PyMorphism) -> PyResult<Self> {
        Ok(self.inner.sub(&other.inner).map_err(py_err)?.into())
    }

    fn __eq__(&self, other: &PyMorphism) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("<Morphism {} -> {}, {} terms>", self.inner.source(), self.inner.target(), self.inner.num_terms())
    }
}

/// The category at a fixed field order and parameter (`t=None` is symbolic).
#[pyclass(name = "Category", module = "qinterp", frozen)]
struct PyCategory {
    inner: InterpCategory,
}

#[pymethods]
impl PyCategory {
    #[new]
    #[pyo3(signature = (q = 2, t = None))]
    fn new(q: u32, t: Option<ParamArg>) -> PyResult<Self> {
        Ok(PyCategory {
            inner: InterpCategory::new(field(q)?, param(t)?),
        })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.field().q()
    }

    #[getter]
    fn t(&self) -> String {
        self.inner.param().to_string()
    }

    fn hom_dim(&self, x: ObjectArg, y: ObjectArg) -> PyResult<u128> {
        self.inner.hom_dim(&x.object()?, &y.object()?).map_err(py_err)
    }

    fn hom_basis(&self, x: ObjectArg, y: ObjectArg) -> PyResult<Vec<PyMorphism>> {
        let basis = self.inner.hom_basis(&x.object()?, &y.object()?, MAX_HOM).map_err(py_err)?;
        Ok(basis.into_iter().map(PyMorphism::from).collect())
    }

    fn identity(&self, x: ObjectArg) -> PyResult<PyMorphism> {
        Ok(self.inner.identity(&x.object()?).into())
    }

    /// `g ∘ f`.
    fn compose(&self, g: &PyMorphism, f: &PyMorphism) -> PyResult<PyMorphism> {
        Ok(self.inner.compose(&g.inner, &f.inner).map_err(py_err)?.into())
    }

    fn tensor(&self, f: &PyMorphism, g: &PyMorphism) -> PyMorphism {
        self.inner.tensor(&f.inner, &g.inner).into()
    }

    fn braiding(&self, x: ObjectArg, y: ObjectArg) -> PyResult<PyMorphism> {
        Ok(self.inner.braiding(x.generator()?, y.generator()?).into())
    }

    /// Coevaluation `1 -> [x] ⊗ [x]`.
    fn delta(&self, x: ObjectArg) -> PyResult<PyMorphism> {
        Ok(self.inner.delta(x.generator()?).into())
    }

    /// Evaluation `[x] ⊗ [x] -> 1`.
    fn ev(&self, x: ObjectArg) -> PyResult<PyMorphism> {
        Ok(self.inner.ev(x.generator()?).into())
    }

    fn trace(&self, f: &PyMorphism) -> PyResult<String> {
        Ok(self.inner.trace(&f.inner).map_err(py_err)?.to_string())
    }

    /// Trace pairing on the bases of `Hom(x, y)` and `Hom(y, x)`.
    fn gram(&self, x: ObjectArg, y: ObjectArg) -> PyResult<Vec<Vec<String>>> {
        let g = self.inner.gram_pairing(&x.object()?, &y.object()?, MAX_HOM).map_err(py_err)?;
        Ok(g.entries.iter().map(|row| row.iter().map(Scalar::to_string).collect()).collect())
    }

    /// A basis of the negligible endomorphisms of `x` (numeric `t` only).
    fn radical(&self, x: ObjectArg) -> PyResult<Vec<PyMorphism>> {
        let rad = semisimple::radical(&self.inner, &x.object()?, MAX_HOM).map_err(py_err)?;
        Ok(rad.into_iter().map(PyMorphism::from).collect())
    }

    fn center(&self, py: Python<'_>, x: ObjectArg) -> PyResult<Py<PyAny>> {
        let report = semisimple::center_report(&self.inner, &x.object()?, MAX_HOM).map_err(py_err)?;
        to_python(py, &report)
    }

    /// The primitive idempotents `e*_y` of `End([x])`, in lattice order.
    fn idempotents(&self, x: ObjectArg) -> PyResult<Vec<PyMorphism>> {
        let idem = self.inner.lattice_idempotents(x.generator()?).map_err(py_err)?;
        Ok((0..idem.len()).map(|i| idem.primitive(i).clone().into()).collect())
    }

    fn __repr__(&self) -> String {
        format!("<Category q={} t={}>", self.inner.field().q(), self.inner.param())
    }
}

/// The lattice of subspaces of `F_q^n`.
#[pyclass(name = "Lattice", module = "qinterp", frozen)]
struct PyLattice {
    inner: LatticeIndex,
}

#[pymethods]
impl PyLattice {
    #[new]
    #[pyo3(signature = (q, n, limit = 1 << 16))]
    fn new(q: u32, n: usize, limit: u128) -> PyResult<Self> {
        Ok(PyLattice {
            inner: LatticeIndex::enumerate(&field(q)?, n, limit).map_err(py_err)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Each subspace as its reduced row echelon rows.
    fn subspaces(&self) -> Vec<Vec<Vec<u32>>> {
        self.inner.subspaces().iter().map(|s| s.to_rows()).collect()
    }

    fn dim(&self, i: usize) -> PyResult<usize> {
        self.check(i)?;
        Ok(self.inner.get(i).dim())
    }

    fn mobius(&self, u: usize, v: usize) -> PyResult<i64> {
        self.check(u)?;
        self.check(v)?;
        self.inner.mobius_index(u, v).map_err(py_err)
    }

    fn p_poly(&self, i: usize) -> PyResult<String> {
        self.check(i)?;
        Ok(self.inner.p_poly(self.inner.get(i)).map_err(py_err)?.to_string())
    }
}

impl PyLattice {
    fn check(&self, i: usize) -> PyResult<()> {
        if i < self.inner.len() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("index {i} out of range")))
        }
    }
}

/// The functor to `GL(r, F_q)`-representations at `t = q^r`.
#[pyclass(name = "Specializer", module = "qinterp", frozen)]
struct PySpecializer {
    inner: specialization::Specializer,
}

#[pymethods]
impl PySpecializer {
    #[new]
    #[pyo3(signature = (q, r, limit = specialization::DEFAULT_MAX_PERM))]
    fn new(q: u32, r: usize, limit: u128) -> PyResult<Self> {
        Ok(PySpecializer {
            inner: specialization::Specializer::new(field(q)?, r, limit),
        })
    }

    /// The category at `t = q^r`, whose morphisms this functor accepts.
    fn category(&self) -> PyCategory {
        PyCategory {
            inner: self.inner.category(),
        }
    }

    fn matrix(&self, f: &PyMorphism) -> PyResult<Vec<Vec<String>>> {
        Ok(matrix_strings(&self.inner.morphism_matrix(&f.inner).map_err(py_err)?))
    }

    fn orbit_count(&self, dx: usize, dy: usize) -> PyResult<usize> {
        self.inner.orbit_count(dx, dy).map_err(py_err)
    }

    #[pyo3(signature = (dx, dy, samples = 20, seed = 0))]
    fn quotient_check(&self, py: Python<'_>, dx: usize, dy: usize, samples: usize, seed: u64) -> PyResult<Py<PyAny>> {
        let report = self.inner.quotient_check(dx, dy, samples, seed).map_err(py_err)?;
        to_python(py, &report)
    }
}

/// The determinant of the unit Gram matrix on subspaces of `F_q^n`, expanded.
#[pyfunction]
fn delta_determinant(q: u32, n: usize) -> PyResult<String> {
    Ok(expand_factors(&delta_factored(q, n).map_err(py_err)?).to_string())
}

#[pyfunction]
#[pyo3(signature = (samples = 20))]
fn selftest(py: Python<'_>, samples: usize) -> PyResult<Py<PyAny>> {
    to_python(py, &qinterp::selftest::run(samples))
}

#[pymodule]
#[pyo3(name = "qinterp")]
fn qinterp_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCategory>()?;
    m.add_class::<PyMorphism>()?;
    m.add_class::<PyLattice>()?;
    m.add_class::<PySpecializer>()?;
    m.add_function(wrap_pyfunction!(delta_determinant, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
