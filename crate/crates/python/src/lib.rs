//! Python bindings over prime fields.

use std::collections::BTreeMap;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;
use specsupp_core::algmod::{self, AlgebraSpec};
use specsupp_core::boolring::{self, BoolRingExt};
use specsupp_core::{datum, support, ziegler, PrimeField};

type Alg = Arc<algmod::Algebra<PrimeField>>;

fn err(e: specsupp_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let l = PyList::empty(py);
            for x in a {
                l.append(to_py(py, x)?)?;
            }
            l.into_any()
        }
        Value::Object(o) => {
            let d = PyDict::new(py);
            for (k, x) in o {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn parse(text: &str) -> PyResult<Value> {
    serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// A finite-dimensional basic algebra given by a quiver with relations.
#[pyclass(name = "Algebra", module = "specsupp", frozen)]
struct PyAlgebra {
    inner: Alg,
}

#[pymethods]
impl PyAlgebra {
    /// `a2`, `dual_numbers` or `k_times_k`.
    #[staticmethod]
    #[pyo3(signature = (name, p = 1009))]
    fn builtin(name: &str, p: u64) -> PyResult<Self> {
        let spec = AlgebraSpec::builtin(name).ok_or_else(|| PyValueError::new_err(format!("unknown algebra {name:?}")))?;
        Self::build(&spec, p)
    }

    /// Reads the algebra JSON format; `p` overrides its field.
    #[staticmethod]
    #[pyo3(signature = (text, p = None))]
    fn from_json(text: &str, p: Option<u64>) -> PyResult<Self> {
        let spec = AlgebraSpec::from_json(&parse(text)?).map_err(err)?;
        let p = match (p, &spec.field) {
            (Some(p), _) => p,
            (None, specsupp_core::FieldSpec::Prime { p }) => *p,
            (None, _) => return Err(PyValueError::new_err("the bindings support prime fields only")),
        };
        Self::build(&spec, p)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().to_vec()
    }

    /// Names of the indecomposable injectives.
    fn spectrum(&self) -> Vec<String> {
        algmod::structure::injective_names(&self.inner)
    }

    /// A module by name, e.g. `"S1"`, `"I1^2+I2"`, `"Lambda"`.
    fn module(&self, name: &str) -> PyResult<PyModuleHandle> {
        let m = algmod::resolve_module(&self.inner, name, &BTreeMap::new()).map_err(err)?;
        Ok(PyModuleHandle { inner: m })
    }

    fn module_from_json(&self, text: &str) -> PyResult<PyModuleHandle> {
        let m = algmod::Module::from_json(self.inner.clone(), &parse(text)?).map_err(err)?;
        Ok(PyModuleHandle { inner: m })
    }

    #[pyo3(signature = (generators, dim_cap = 4, seed = 0))]
    fn localising_closure<'py>(
        &self,
        py: Python<'py>,
        generators: Vec<PyRef<'py, PyModuleHandle>>,
        dim_cap: usize,
        seed: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let gens: Vec<_> = generators.iter().map(|g| g.inner.clone()).collect();
        let c = support::localising_closure(&self.inner, &gens, dim_cap, algmod::DEFAULT_BUDGET, seed).map_err(err)?;
        to_py(py, &c.to_json())
    }

    #[pyo3(signature = (dmax = 4, check = false, seed = 0))]
    fn ziegler_spectrum<'py>(&self, py: Python<'py>, dmax: usize, check: bool, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let z = ziegler::ziegler_spectrum(&self.inner, dmax, algmod::DEFAULT_BUDGET, seed).map_err(err)?;
        let mut v = z.to_json();
        if check {
            let r = ziegler::definable_correspondence_check(&z, dmax, 8, seed).map_err(err)?;
            v["correspondence"] = serde_json::to_value(&r).expect("serializable");
        }
        to_py(py, &v)
    }

    /// Axiom report for a support datum in the datum JSON format.
    fn verify_datum<'py>(&self, py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
        let d = datum::SupportDatum::from_json(self.inner.clone(), &parse(text)?).map_err(err)?;
        let r = datum::verify_datum(&d).map_err(err)?;
        to_py(py, &serde_json::to_value(&r).expect("serializable"))
    }

    /// The induced map to the spectrum, as `{point: injective}`.
    fn universal_map<'py>(&self, py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
        let d = datum::SupportDatum::from_json(self.inner.clone(), &parse(text)?).map_err(err)?;
        let u = datum::universal_map(&d).map_err(err)?;
        to_py(py, &u.to_json(&d.space))
    }

    fn __repr__(&self) -> String {
        format!("Algebra({:?}, dim={}, p={})", self.inner.name(), self.inner.dim(), self.inner.field().p())
    }
}

impl PyAlgebra {
    fn build(spec: &AlgebraSpec, p: u64) -> PyResult<Self> {
        let f = PrimeField::new(p).map_err(err)?;
        Ok(PyAlgebra { inner: Arc::new(spec.build(&f).map_err(err)?) })
    }
}

/// A finite-dimensional right module.
#[pyclass(name = "Module", module = "specsupp", frozen)]
struct PyModuleHandle {
    inner: algmod::Module<PrimeField>,
}

#[pymethods]
impl PyModuleHandle {
    #[getter]
    fn name(&self) -> String {
        self.inner.display_name()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn dim_vector(&self) -> Vec<usize> {
        self.inner.dim_vector()
    }

    fn supp(&self) -> Vec<String> {
        support::supp(&self.inner).names()
    }

    /// `(injectives, complete)`.
    #[pyo3(signature = (max_terms = 64, seed = 0))]
    fn supp_ex(&self, max_terms: usize, seed: u64) -> PyResult<(Vec<String>, bool)> {
        let e = support::supp_ex(&self.inner, max_terms, seed).map_err(err)?;
        Ok((e.set.names(), e.complete))
    }

    fn direct_sum(&self, other: &PyModuleHandle) -> PyResult<Self> {
        self.inner.same_algebra(&other.inner).map_err(err)?;
        Ok(PyModuleHandle { inner: algmod::direct_sum(self.inner.algebra(), &[&self.inner, &other.inner]) })
    }

    #[pyo3(signature = (other, seed = 0))]
    fn is_isomorphic(&self, other: &PyModuleHandle, seed: u64) -> PyResult<bool> {
        algmod::is_isomorphic(&self.inner, &other.inner, seed).map_err(err)
    }

    /// Indecomposable summands with multiplicities.
    #[pyo3(signature = (seed = 0))]
    fn decompose(&self, seed: u64) -> PyResult<Vec<(PyModuleHandle, usize)>> {
        let parts = algmod::decompose_module(&self.inner, seed).map_err(err)?;
        Ok(parts.into_iter().map(|(m, k)| (PyModuleHandle { inner: m }, k)).collect())
    }

    #[pyo3(signature = (seed = 0))]
    fn decomposition_lattice<'py>(&self, py: Python<'py>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let d = support::decomposition_lattice(&self.inner, seed).map_err(err)?;
        let mut v = d.to_json();
        v["dot"] = Value::String(d.to_dot());
        to_py(py, &v)
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Module({:?}, dim_vector={:?})", self.inner.display_name(), self.inner.dim_vector())
    }
}

/// A finite Boolean ring, the powerset of its atoms.
#[pyclass(name = "BoolRing", module = "specsupp", frozen)]
struct PyBoolRing {
    inner: Arc<boolring::BoolRing>,
}

#[pymethods]
impl PyBoolRing {
    #[new]
    fn new(atoms: Vec<String>) -> PyResult<Self> {
        Ok(PyBoolRing { inner: boolring::BoolRing::new(atoms).map_err(err)? })
    }

    #[getter]
    fn atoms(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.size() as usize
    }

    /// Whether the unit `A -> Clop(Spec A)` is a bijective homomorphism.
    fn stone_unit_is_iso(&self) -> bool {
        let u = self.inner.stone_unit_iso();
        u.check_homomorphism().is_ok() && u.is_bijective()
    }

    fn hasse_dot(&self) -> String {
        boolring::hasse_dot(&self.inner, None, "A")
    }

    /// Disjoint refinement of `family` (atom-index lists) covering `x`.
    fn disjointify(&self, x: Vec<usize>, family: Vec<Vec<usize>>) -> PyResult<Vec<Vec<usize>>> {
        let x = self.inner.from_indices(&x).map_err(err)?;
        let fam = family.iter().map(|f| self.inner.from_indices(f)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        Ok(boolring::disjointify(&x, &fam).map_err(err)?.iter().map(|y| y.indices()).collect())
    }

    fn __repr__(&self) -> String {
        format!("BoolRing({:?})", self.inner.labels())
    }
}

#[pymodule]
fn specsupp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyModuleHandle>()?;
    m.add_class::<PyBoolRing>()?;
    Ok(())
}
