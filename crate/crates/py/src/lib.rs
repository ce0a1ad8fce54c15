//! Python module `wordlc`: sequences, complexity reports, matrix
//! polynomials and maps backed by `wlc-core`.
//!
//! Polynomials cross the boundary as descending coefficient lists, matrices
//! as lists of rows, and vectors as lists of integers.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use wlc_core::formats;
use wlc_core::{
    Error, Field, MapSpec, Matrix, MatrixPoly, ScalarPoly, Side, SplitMix64, VectorSequence,
};

create_exception!(wordlc, WlcError, PyValueError);

fn err(e: Error) -> PyErr {
    WlcError::new_err(e.to_string())
}

fn field(p: u64) -> PyResult<Field> {
    Field::new(p).map_err(err)
}

fn descending(f: &ScalarPoly) -> Vec<u32> {
    f.coeffs().iter().rev().copied().collect()
}

fn matrix(f: Field, rows: &[Vec<i64>]) -> PyResult<Matrix> {
    Matrix::from_rows(f, rows).map_err(err)
}

fn rows(m: &Matrix) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn py_opt(v: Option<usize>) -> String {
    v.map_or_else(|| "None".into(), |x| x.to_string())
}

fn py_bool(b: bool) -> &'static str {
    if b {
        "True"
    } else {
        "False"
    }
}

fn column(f: Field, x: &[i64]) -> Matrix {
    Matrix::from_fn(f, x.len(), 1, |i, _| x[i])
}

/// A sequence `V_0 .. V_{M-1}` in F_p^n with an optional known period.
#[pyclass(name = "Sequence", frozen)]
struct PySequence {
    inner: VectorSequence,
}

#[pymethods]
impl PySequence {
    #[new]
    #[pyo3(signature = (p, terms, period = None))]
    fn new(p: u64, terms: Vec<Vec<i64>>, period: Option<usize>) -> PyResult<Self> {
        let f = field(p)?;
        let n = terms.first().map_or(0, Vec::len);
        let reduced: Vec<Vec<u32>> = terms
            .iter()
            .map(|t| t.iter().map(|&v| f.reduce(v)).collect())
            .collect();
        let inner = VectorSequence::new(f, n, &reduced, period).map_err(err)?;
        Ok(Self { inner })
    }

    /// Parses the `seq <p> <n> <M> [period <N>]` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner = formats::parse_sequence(text).map_err(|e| WlcError::new_err(e.to_string()))?;
        Ok(Self { inner })
    }

    fn to_text(&self) -> String {
        formats::write_sequence(&self.inner)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.field().p()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn period(&self) -> Option<usize> {
        self.inner.period()
    }

    fn terms(&self) -> Vec<Vec<u32>> {
        self.inner.stored().map(<[u32]>::to_vec).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Sequence(p={}, n={}, M={}, period={})",
            self.inner.field().p(),
            self.inner.dim(),
            self.inner.len(),
            py_opt(self.inner.period())
        )
    }
}

/// Result of `compute_wlc`.
#[pyclass(name = "WlcReport", frozen, get_all)]
struct PyWlcReport {
    lc: usize,
    /// Scalar minimal polynomial, descending coefficients.
    minpoly: Vec<u32>,
    divisible: bool,
    block_rank: Option<usize>,
    nontrivial: bool,
    wlc: Option<usize>,
    /// `A_0 .. A_{d-1}` as lists of rows (empty unless nontrivial).
    coefficients: Vec<Vec<Vec<u32>>>,
    matrix_minpoly: Py<PyMatrixPoly>,
    diagnostics: Vec<String>,
}

#[pymethods]
impl PyWlcReport {
    fn __repr__(&self) -> String {
        format!(
            "WlcReport(lc={}, divisible={}, nontrivial={}, wlc={})",
            self.lc,
            py_bool(self.divisible),
            py_bool(self.nontrivial),
            py_opt(self.wlc)
        )
    }
}

/// Polynomial with `n x n` matrix coefficients, ascending degree.
#[pyclass(name = "MatrixPoly", frozen, eq)]
#[derive(PartialEq)]
struct PyMatrixPoly {
    inner: MatrixPoly,
}

#[pymethods]
impl PyMatrixPoly {
    /// `coeffs[k]` is the coefficient of `X^k` as a list of rows.
    #[new]
    fn new(p: u64, coeffs: Vec<Vec<Vec<i64>>>) -> PyResult<Self> {
        let f = field(p)?;
        let n = coeffs.first().map_or(0, Vec::len);
        let blocks = coeffs
            .iter()
            .map(|c| matrix(f, c))
            .collect::<PyResult<Vec<_>>>()?;
        let inner = MatrixPoly::new(f, n, blocks).map_err(err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner = formats::parse_mpoly(text).map_err(|e| WlcError::new_err(e.to_string()))?;
        Ok(Self { inner })
    }

    fn to_text(&self) -> String {
        formats::write_mpoly(&self.inner)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.field().p()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.dim()
    }

    /// `None` for the zero polynomial.
    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    fn coeffs(&self) -> Vec<Vec<Vec<u32>>> {
        self.inner.coeffs().iter().map(rows).collect()
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.add(&other.inner).map_err(err)?,
        })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.sub(&other.inner).map_err(err)?,
        })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.mul(&other.inner).map_err(err)?,
        })
    }

    /// Euclidean division; `side="right"` gives `P = Q D + R`, `"left"` gives `P = D Q + R`.
    #[pyo3(signature = (divisor, side = "right"))]
    fn divide(&self, divisor: &Self, side: &str) -> PyResult<(Self, Self)> {
        let side = match side {
            "left" => Side::Left,
            "right" => Side::Right,
            other => return Err(PyValueError::new_err(format!("unknown side {other:?}"))),
        };
        let (q, r) = wlc_core::euclid_divide(&self.inner, &divisor.inner, side).map_err(err)?;
        Ok((Self { inner: q }, Self { inner: r }))
    }

    /// Determinant, descending coefficients.
    fn det(&self) -> Vec<u32> {
        descending(&wlc_core::matpoly_det(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!("MatrixPoly({})", self.inner)
    }
}

/// A verified local inverse.
#[pyclass(name = "Inversion", frozen, get_all)]
struct PyInversion {
    x: Vec<u32>,
    route: String,
    terms: usize,
    lc: usize,
    wlc: Option<usize>,
}

#[pymethods]
impl PyInversion {
    fn __repr__(&self) -> String {
        format!(
            "Inversion(x={:?}, route='{}', terms={})",
            self.x, self.route, self.terms
        )
    }
}

/// A map `F: F_p^n -> F_p^n`, affine or given by a full table.
#[pyclass(name = "Map", frozen)]
struct PyMap {
    inner: MapSpec,
}

impl PyMap {
    fn point(&self, x: &[i64]) -> Matrix {
        column(self.inner.field(), x)
    }
}

#[pymethods]
impl PyMap {
    #[staticmethod]
    fn affine(p: u64, a: Vec<Vec<i64>>, b: Vec<i64>) -> PyResult<Self> {
        let f = field(p)?;
        let b = b.iter().map(|&v| f.reduce(v)).collect();
        let inner = MapSpec::affine(matrix(f, &a)?, b).map_err(err)?;
        Ok(Self { inner })
    }

    /// `images[k]` is the image of the point with encoding `k`.
    #[staticmethod]
    fn table(p: u64, n: usize, images: Vec<Vec<i64>>) -> PyResult<Self> {
        let f = field(p)?;
        let flat = images.iter().flatten().map(|&v| f.reduce(v)).collect();
        let inner = MapSpec::table(f, n, flat).map_err(err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (p, n, seed, permutation = true))]
    fn random(p: u64, n: usize, seed: u64, permutation: bool) -> PyResult<Self> {
        let inner = wlc_core::random_map(field(p)?, n, seed, permutation).map_err(err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let parsed = formats::parse_map(text).map_err(|e| WlcError::new_err(e.to_string()))?;
        Ok(Self { inner: parsed.map })
    }

    fn to_text(&self) -> String {
        formats::write_map(&self.inner)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.field().p()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.dim()
    }

    fn apply(&self, x: Vec<i64>) -> PyResult<Vec<u32>> {
        let y = wlc_core::apply_map(&self.inner, &self.point(&x)).map_err(err)?;
        Ok(y.as_slice().to_vec())
    }

    fn iterate(&self, y: Vec<i64>, count: usize) -> PyResult<PySequence> {
        let inner = wlc_core::iterate_map(&self.inner, &self.point(&y), count).map_err(err)?;
        Ok(PySequence { inner })
    }

    /// `(preperiod, period)` of the orbit of `y`.
    fn orbit(&self, y: Vec<i64>, bound: usize) -> PyResult<(usize, usize)> {
        let info = wlc_core::detect_period(&self.inner, &self.point(&y), bound).map_err(err)?;
        Ok((info.preperiod, info.period))
    }

    #[pyo3(signature = (y, max_terms = 4096))]
    fn invert(&self, y: Vec<i64>, max_terms: usize) -> PyResult<PyInversion> {
        let inv = wlc_core::local_invert(&self.inner, &self.point(&y), max_terms).map_err(err)?;
        Ok(PyInversion {
            x: inv.x.as_slice().to_vec(),
            route: inv.route.as_str().to_string(),
            terms: inv.terms,
            lc: inv.report.lc,
            wlc: inv.report.wlc,
        })
    }

    /// Reference inverse found by walking the cycle through `y`.
    fn cycle_walk_inverse(&self, y: Vec<i64>, bound: usize) -> PyResult<Vec<u32>> {
        let x = wlc_core::cycle_walk_inverse(&self.inner, &self.point(&y), bound).map_err(err)?;
        Ok(x.as_slice().to_vec())
    }
}

/// `(lc, minpoly)` with the minimal polynomial in descending order.
#[pyfunction]
fn linear_complexity(seq: &PySequence) -> PyResult<(usize, Vec<u32>)> {
    let m = wlc_core::hankel_scalar_minpoly(&seq.inner).map_err(err)?;
    Ok((m.degree().unwrap_or(0), descending(&m)))
}

#[pyfunction]
fn compute_wlc(py: Python<'_>, seq: &PySequence) -> PyResult<PyWlcReport> {
    let r = wlc_core::compute_wlc(&seq.inner).map_err(err)?;
    Ok(PyWlcReport {
        lc: r.lc,
        minpoly: descending(&r.scalar_minpoly),
        divisible: r.divisible,
        block_rank: r.block_rank,
        nontrivial: r.nontrivial,
        wlc: r.wlc,
        coefficients: r.coefficients().iter().map(rows).collect(),
        matrix_minpoly: Py::new(
            py,
            PyMatrixPoly {
                inner: r.matrix_minpoly.clone(),
            },
        )?,
        diagnostics: r.diagnostics.clone(),
    })
}

/// Minimal polynomial (descending) of a scalar sequence by Berlekamp-Massey.
#[pyfunction]
fn berlekamp_massey(p: u64, s: Vec<i64>) -> PyResult<Vec<u32>> {
    let f = field(p)?;
    let s: Vec<u32> = s.iter().map(|&v| f.reduce(v)).collect();
    Ok(descending(&wlc_core::berlekamp_massey(f, &s)))
}

/// `V_{-1}` from the matrix minimal polynomial when nontrivial, else the scalar one.
#[pyfunction]
fn local_inverse(seq: &PySequence) -> PyResult<Vec<u32>> {
    let r = wlc_core::compute_wlc(&seq.inner).map_err(err)?;
    let x = if r.nontrivial {
        wlc_core::local_inverse_from_matrix_minpoly(&seq.inner, &r.matrix_minpoly)
    } else {
        wlc_core::local_inverse_from_scalar_minpoly(&seq.inner, &r.scalar_minpoly)
    }
    .map_err(err)?;
    Ok(x.as_slice().to_vec())
}

/// First `count` outputs of SplitMix64 from `seed`.
#[pyfunction]
fn splitmix64(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = SplitMix64::new(seed);
    (0..count).map(|_| rng.next_u64()).collect()
}

#[pymodule]
fn wordlc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("WlcError", m.py().get_type::<WlcError>())?;
    m.add_class::<PySequence>()?;
    m.add_class::<PyWlcReport>()?;
    m.add_class::<PyMatrixPoly>()?;
    m.add_class::<PyInversion>()?;
    m.add_class::<PyMap>()?;
    m.add_function(wrap_pyfunction!(linear_complexity, m)?)?;
    m.add_function(wrap_pyfunction!(compute_wlc, m)?)?;
    m.add_function(wrap_pyfunction!(berlekamp_massey, m)?)?;
    m.add_function(wrap_pyfunction!(local_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(splitmix64, m)?)?;
    Ok(())
}
