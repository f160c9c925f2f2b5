//! Python bindings: Weyl group elements, chains, the quantum Bruhat graph,
//! Chevalley products and verification suites.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qkchev::alcove::{admissible_json, chain_type_a_star, enumerate_admissible, standard_chain};
use qkchev::chevalley::{self, ClosedForm};
use qkchev::qbg::edge_kind_criterion;
use qkchev::verify::{self, Suite, SuiteConfig};
use qkchev::{Family, GroupDescriptor, Parabolic, PositiveRoot};

fn err(e: qkchev::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn family(s: &str) -> PyResult<Family> {
    s.parse().map_err(err)
}

fn root(s: &str) -> PyResult<PositiveRoot> {
    s.parse().map_err(err)
}

/// An element of S_n (type A) or of the signed permutations of n (type C),
/// given by its window `[w(1), …, w(n)]`; `-i` stands for `ī`.
#[pyclass(name = "WeylElement", module = "qkchev", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyWeylElement(qkchev::WeylElement);

#[pymethods]
impl PyWeylElement {
    #[new]
    fn new(family_name: &str, window: Vec<i32>) -> PyResult<Self> {
        Ok(Self(qkchev::WeylElement::new(family(family_name)?, window).map_err(err)?))
    }

    #[staticmethod]
    fn identity(family_name: &str, n: usize) -> PyResult<Self> {
        let desc = GroupDescriptor::new(family(family_name)?, n).map_err(err)?;
        Ok(Self(desc.identity()))
    }

    #[getter]
    fn family(&self) -> String {
        self.0.family().to_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn window(&self) -> Vec<i32> {
        self.0.window().to_vec()
    }

    fn length(&self) -> usize {
        self.0.length()
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn compose(&self, other: &Self) -> Self {
        Self(self.0.compose(&other.0))
    }

    /// `w s_β` for a root written `"(i,j)"`, `"(i,-j)"` or `"(i,-i)"`.
    fn apply_reflection(&self, beta: &str) -> PyResult<Self> {
        let beta = root(beta)?;
        beta.validate(self.0.family(), self.0.n()).map_err(err)?;
        Ok(Self(self.0.apply_reflection(&beta)))
    }

    fn omega(&self) -> PyResult<Self> {
        Ok(Self(self.0.omega().map_err(err)?))
    }

    /// `"none"`, `"bruhat"` or `"quantum"` for the edge `w → w s_β`.
    fn edge_kind(&self, beta: &str) -> PyResult<&'static str> {
        let beta = root(beta)?;
        beta.validate(self.0.family(), self.0.n()).map_err(err)?;
        Ok(edge_kind_criterion(&self.0, &beta).as_str())
    }

    /// Minimal representative of `w W_J`, `J` the complement of `complement`.
    fn min_coset_rep(&self, complement: Vec<usize>) -> PyResult<Self> {
        let p = Parabolic::from_complement(self.0.descriptor(), &complement).map_err(err)?;
        Ok(Self(p.min_coset_rep(&self.0)))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("WeylElement('{}', {:?})", self.0.family(), self.0.window())
    }
}

/// `(window, [(i, exponent)], [(weight, coefficient)])`.
type Term = (Vec<i32>, Vec<(usize, u32)>, Vec<(Vec<i64>, String)>);

/// A finite combination `Σ c_{w,q}(e^μ) Q^q [𝒪^w]` in quantum K-theory.
#[pyclass(name = "SchubertCombo", module = "qkchev", frozen)]
struct PySchubertCombo {
    combo: qkchev::SchubertCombo,
    #[pyo3(get)]
    label: Option<String>,
}

impl PySchubertCombo {
    fn closed(c: ClosedForm) -> Self {
        Self {
            label: Some(c.label.as_str().to_string()),
            combo: c.combo,
        }
    }
}

#[pymethods]
impl PySchubertCombo {
    /// One entry per class.
    fn terms(&self) -> Vec<Term> {
        self.combo
            .terms()
            .map(|((w, q), c)| {
                let q = q.exps().iter().map(|(&i, &e)| (i, e)).collect();
                let c = c.terms().map(|(mu, v)| (mu.coords().to_vec(), v.to_string())).collect();
                (w.window().to_vec(), q, c)
            })
            .collect()
    }

    fn to_json(&self) -> String {
        self.combo.to_json().to_string()
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Self {
            combo: qkchev::SchubertCombo::from_json(&v).map_err(err)?,
            label: None,
        })
    }

    fn to_tsv(&self) -> String {
        self.combo.to_tsv()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.combo == other.combo
    }

    fn __len__(&self) -> usize {
        self.combo.len()
    }

    fn __str__(&self) -> String {
        self.combo.to_string()
    }
}

/// `[𝒪(-ϖ_k)] · [𝒪^w]` on the full flag manifold.
#[pyfunction]
fn chevalley_gb(w: &PyWeylElement, k: usize) -> PyResult<PySchubertCombo> {
    Ok(PySchubertCombo {
        combo: chevalley::chevalley_gb(&w.0, k).map_err(err)?,
        label: None,
    })
}

#[pyfunction]
fn chevalley_grassmannian(w: &PyWeylElement, k: usize) -> PyResult<PySchubertCombo> {
    Ok(PySchubertCombo::closed(chevalley::chevalley_grassmannian(&w.0, k).map_err(err)?))
}

#[pyfunction]
fn chevalley_twostep(w: &PyWeylElement, k1: usize, k2: usize, target: usize) -> PyResult<PySchubertCombo> {
    Ok(PySchubertCombo::closed(
        chevalley::chevalley_twostep(&w.0, k1, k2, target).map_err(err)?,
    ))
}

/// The full-flag product restricted to a parabolic with the given complement.
#[pyfunction]
fn project(combo: &PySchubertCombo, complement: Vec<usize>) -> PyResult<PySchubertCombo> {
    let p = Parabolic::from_complement(combo.combo.descriptor(), &complement).map_err(err)?;
    Ok(PySchubertCombo {
        combo: combo.combo.project(&p).map_err(err)?,
        label: None,
    })
}

fn build_chain(family_name: &str, n: usize, k: usize, star: bool) -> PyResult<qkchev::LabeledChain> {
    let f = family(family_name)?;
    if star {
        if f != Family::A {
            return Err(PyValueError::new_err("the mirrored chain exists in type A only"));
        }
        chain_type_a_star(n, k).map_err(err)
    } else {
        standard_chain(f, n, k).map_err(err)
    }
}

/// `[(root, level, segment)]` for `Γ(k)`, or `Γ*(k)` with `star=True`.
#[pyfunction]
#[pyo3(signature = (family_name, n, k, star = false))]
fn chain(family_name: &str, n: usize, k: usize, star: bool) -> PyResult<Vec<(String, u32, String)>> {
    let c = build_chain(family_name, n, k, star)?;
    Ok(c.entries
        .iter()
        .map(|e| (e.root.to_string(), e.level, e.segment.to_string()))
        .collect())
}

/// Admissible subsets as JSON objects `{indices, end, quantum_indices, down, wt}`.
#[pyfunction]
#[pyo3(signature = (w, k, star = false))]
fn admissible_subsets(w: &PyWeylElement, k: usize, star: bool) -> PyResult<String> {
    let c = build_chain(&w.family(), w.0.n(), k, star)?;
    let all = enumerate_admissible(&w.0, &c).map_err(err)?;
    let v: Vec<_> = all.iter().map(|a| admissible_json(&c, a)).collect();
    Ok(serde_json::Value::Array(v).to_string())
}

/// Runs a verification suite; returns `(all_match, tsv_report)`.
#[pyfunction]
#[pyo3(signature = (suite, n = None, jobs = None))]
fn run_suite(suite: &str, n: Option<usize>, jobs: Option<usize>) -> PyResult<(bool, String)> {
    let suite: Suite = suite.parse().map_err(err)?;
    let cfg = match n {
        Some(n) => SuiteConfig::with_n(suite, n),
        None => SuiteConfig::defaults(suite),
    };
    let rows = verify::run_suite(suite, cfg.jobs(jobs)).map_err(err)?;
    Ok((verify::all_match(&rows), verify::to_tsv(&rows)))
}

#[pymodule]
#[pyo3(name = "qkchev")]
fn qkchev_py<'py>(_py: Python<'py>, m: &Bound<'py, PyModule>) -> PyResult<()> {
    m.add_class::<PyWeylElement>()?;
    m.add_class::<PySchubertCombo>()?;
    m.add_function(wrap_pyfunction!(chevalley_gb, m)?)?;
    m.add_function(wrap_pyfunction!(chevalley_grassmannian, m)?)?;
    m.add_function(wrap_pyfunction!(chevalley_twostep, m)?)?;
    m.add_function(wrap_pyfunction!(project, m)?)?;
    m.add_function(wrap_pyfunction!(chain, m)?)?;
    m.add_function(wrap_pyfunction!(admissible_subsets, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
