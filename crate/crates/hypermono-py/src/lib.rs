use ::hypermono as hm;
use hm::dynamics::{self, LimitClass, RationalTarget, SampleKind};
use hm::fuchsian::{self, OrbifoldSignature};
use hm::linalg::{self, Mat, Vec64};
use hm::monodromy::Word;
use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

fn err(e: hm::Error) -> PyErr {
    match e {
        hm::Error::Invalid(m) => PyValueError::new_err(m),
        hm::Error::Numerical(m) => PyArithmeticError::new_err(m),
    }
}

fn rows(m: &Mat) -> Vec<Vec<f64>> {
    linalg::to_rows(m)
}

fn mat(rows: Vec<Vec<f64>>) -> PyResult<Mat> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(PyValueError::new_err("expected a non-empty rectangular list of rows"));
    }
    Ok(linalg::from_rows(&rows))
}

fn signature(s: &str) -> PyResult<OrbifoldSignature> {
    s.parse().map_err(err)
}

fn word(s: &str) -> PyResult<Word> {
    s.parse().map_err(err)
}

#[pyclass(name = "HypergeomParams", frozen)]
struct PyParams {
    inner: hm::HypergeomParams,
}

#[pymethods]
impl PyParams {
    /// Comma separated exponents, e.g. ``HypergeomParams("1/5,2/5,3/5,4/5", "0,0,0,0")``.
    #[new]
    fn new(alpha: &str, beta: &str) -> PyResult<Self> {
        Ok(PyParams { inner: hm::HypergeomParams::parse(alpha, beta).map_err(err)? })
    }

    #[staticmethod]
    fn mirror_quintic() -> Self {
        PyParams { inner: hm::HypergeomParams::mirror_quintic() }
    }

    #[getter]
    fn alpha(&self) -> Vec<String> {
        self.inner.alpha().iter().map(|e| e.to_string()).collect()
    }

    #[getter]
    fn beta(&self) -> Vec<String> {
        self.inner.beta().iter().map(|e| e.to_string()).collect()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn hodge_numbers(&self) -> Vec<usize> {
        hm::hyperparams::hodge_numbers(&self.inner)
    }

    fn satisfies_assumption_a(&self) -> PyResult<bool> {
        Ok(hm::hyperparams::satisfies_assumption_a(&self.inner).map_err(err)?.holds)
    }

    fn satisfies_assumption_b(&self) -> PyResult<bool> {
        Ok(hm::hyperparams::satisfies_assumption_b(&self.inner).map_err(err)?.holds)
    }

    /// Orbifold orders at (0, 1, ∞) as a string such as ``"(inf, inf, 5)"``.
    fn orbifold_signature(&self) -> PyResult<String> {
        let sig = fuchsian::orbifold_signature(&self.inner, Default::default()).map_err(err)?;
        Ok(sig.to_string())
    }

    fn swapped(&self) -> Self {
        PyParams { inner: self.inner.swapped() }
    }

    fn dualized(&self) -> Self {
        PyParams { inner: self.inner.dualized() }
    }

    fn __repr__(&self) -> String {
        format!("HypergeomParams({})", self.inner)
    }
}

#[pyclass(name = "MonodromyRep", frozen)]
struct PyRep {
    inner: hm::MonodromyRep,
}

#[pymethods]
impl PyRep {
    #[staticmethod]
    fn from_params(params: &PyParams) -> PyResult<Self> {
        Ok(PyRep { inner: hm::MonodromyRep::from_params(&params.inner).map_err(err)? })
    }

    /// Uniformizing rep of a triangle group, or its ``sym``-th symmetric power.
    #[staticmethod]
    #[pyo3(signature = (sig, sym = 1))]
    fn triangle(sig: &str, sym: usize) -> PyResult<Self> {
        let model = fuchsian::triangle_group(&signature(sig)?).map_err(err)?;
        let inner = if sym == 1 { model.rep() } else { model.symmetric_power_rep(sym) };
        Ok(PyRep { inner })
    }

    #[staticmethod]
    fn from_generators(h0: Vec<Vec<f64>>, hinf: Vec<Vec<f64>>) -> PyResult<Self> {
        Ok(PyRep { inner: hm::MonodromyRep::from_generators(mat(h0)?, mat(hinf)?).map_err(err)? })
    }

    /// Same rep in a basis where the invariant form is the standard J.
    fn standardize(&self) -> PyResult<Self> {
        Ok(PyRep { inner: hm::symplectic::standardize(&self.inner).map_err(err)?.0 })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn h0(&self) -> Vec<Vec<f64>> {
        rows(&self.inner.h0)
    }

    #[getter]
    fn h1(&self) -> Vec<Vec<f64>> {
        rows(&self.inner.h1)
    }

    #[getter]
    fn hinf(&self) -> Vec<Vec<f64>> {
        rows(&self.inner.hinf)
    }

    /// Matrix of a word such as ``"h0 hinf^-1 h1^2"``.
    fn eval(&self, w: &str) -> PyResult<Vec<Vec<f64>>> {
        Ok(rows(&self.inner.eval(&word(w)?).map_err(err)?))
    }

    /// (kind, J) with kind one of "Antisymmetric", "Symmetric", "Neither".
    fn invariant_form(&self) -> PyResult<(String, Vec<Vec<f64>>)> {
        let f = hm::monodromy::invariant_bilinear_form(&self.inner).map_err(err)?;
        Ok((format!("{:?}", f.kind), rows(&f.j)))
    }

    fn is_integral(&self) -> bool {
        self.inner.is_integral()
    }

    fn __repr__(&self) -> String {
        format!("MonodromyRep(n={})", self.inner.n)
    }
}

/// (k_minus, mu, k_plus) with g = k_minus · diag(e^mu) · k_plus.
#[pyfunction]
fn kak(g: Vec<Vec<f64>>) -> PyResult<(Vec<Vec<f64>>, Vec<f64>, Vec<Vec<f64>>)> {
    let c = hm::lie::kak(&mat(g)?).map_err(err)?;
    Ok((rows(&c.k_minus), c.mu, rows(&c.k_plus)))
}

#[pyfunction]
fn alpha1_gap(g: Vec<Vec<f64>>) -> PyResult<f64> {
    hm::lie::alpha1_gap(&mat(g)?).map_err(err)
}

/// Dimensions of W_i for i = −d..d.
#[pyfunction]
fn weight_filtration(nil: Vec<Vec<f64>>) -> PyResult<Vec<(i64, usize)>> {
    Ok(hm::lie::weight_filtration(&mat(nil)?).map_err(err)?.dims())
}

/// (epsilon, c) of the support line gap ≥ ε·dist − c over the ball of radius ``l``.
#[pyfunction]
fn anosov_certificate(rep: &PyRep, sig: &str, l: usize) -> PyResult<(f64, f64)> {
    let model = fuchsian::triangle_group(&signature(sig)?).map_err(err)?;
    let c = dynamics::anosov_certificate(&rep.inner, &model, l).map_err(err)?;
    Ok((c.epsilon, c.c))
}

/// (spectrum, stderr) over ``ntraj`` geodesics of total length ``time``.
#[pyfunction]
#[pyo3(signature = (rep, sig, time, ntraj = 16, seed = 0))]
fn lyapunov(py: Python<'_>, rep: &PyRep, sig: &str, time: f64, ntraj: usize, seed: u64) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let model = fuchsian::triangle_group(&signature(sig)?).map_err(err)?;
    let r = py.detach(|| dynamics::lyapunov_mc(&rep.inner, &model, time, ntraj, seed)).map_err(err)?;
    Ok((r.spectrum, r.stderr))
}

/// List of (point, word, gap, kind) with kind "loxodromic" or "cusp".
#[pyfunction]
#[pyo3(signature = (rep, l, gap_min = 2.0))]
fn limit_curve_samples(rep: &PyRep, l: usize, gap_min: f64) -> PyResult<Vec<(Vec<f64>, String, f64, &'static str)>> {
    let samples = dynamics::limit_curve_samples(&rep.inner, l, gap_min).map_err(err)?;
    Ok(samples
        .into_iter()
        .map(|s| {
            let kind = if s.kind == SampleKind::Cusp { "cusp" } else { "loxodromic" };
            (s.point.iter().copied().collect(), s.word.to_string(), s.gap, kind)
        })
        .collect())
}

/// Witness word for an integral vector in the limit set, or None within the ball of radius ``l``.
#[pyfunction]
fn rational_limit_classify(rep: &PyRep, v: Vec<i64>, l: usize) -> PyResult<Option<String>> {
    let v = Vec64::from_iterator(v.len(), v.iter().map(|&x| x as f64));
    let target = RationalTarget::Vector(dynamics::rational_vector(&v).map_err(err)?);
    Ok(match dynamics::rational_limit_classify(&rep.inner, &target, l).map_err(err)? {
        LimitClass::CuspWitness(w) => Some(w.to_string()),
        LimitClass::NoWitnessWithin(_) => None,
    })
}

#[pyfunction]
#[pyo3(signature = (rep, depth, radius = 0.05))]
fn minimality_coverage(rep: &PyRep, depth: usize, radius: f64) -> PyResult<f64> {
    let opts = dynamics::MinimalityOptions::default();
    Ok(dynamics::minimality_scan(&rep.inner, depth, radius, &opts).map_err(err)?.coverage)
}

/// Product c_p3 · c_p2 for rationals given as (numerator, denominator), entries as strings.
#[pyfunction]
fn fiberwise_unipotent(alpha: (i64, i64), beta: (i64, i64)) -> PyResult<Vec<Vec<String>>> {
    let q = |(n, d): (i64, i64)| {
        if d == 0 {
            Err(PyValueError::new_err("zero denominator"))
        } else {
            Ok(BigRational::new(BigInt::from(n), BigInt::from(d)))
        }
    };
    let f = dynamics::fiberwise_unipotent(&q(alpha)?, &q(beta)?).map_err(err)?;
    Ok(f.product.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect())
}

#[pymodule]
fn hypermono_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParams>()?;
    m.add_class::<PyRep>()?;
    m.add_function(wrap_pyfunction!(kak, m)?)?;
    m.add_function(wrap_pyfunction!(alpha1_gap, m)?)?;
    m.add_function(wrap_pyfunction!(weight_filtration, m)?)?;
    m.add_function(wrap_pyfunction!(anosov_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(lyapunov, m)?)?;
    m.add_function(wrap_pyfunction!(limit_curve_samples, m)?)?;
    m.add_function(wrap_pyfunction!(rational_limit_classify, m)?)?;
    m.add_function(wrap_pyfunction!(minimality_coverage, m)?)?;
    m.add_function(wrap_pyfunction!(fiberwise_unipotent, m)?)?;
    Ok(())
}
