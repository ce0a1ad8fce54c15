//! Word linear complexity: block Hankel matrices, the matrix minimal
//! polynomial, and local inversion (prefix recovery) from recurrences.
//!
//! Sign convention throughout: `M(X) = X^d I + sum_{i<d} A_i X^i` with the
//! recurrence `V_{d+j} + sum_i A_i V_{i+j} = 0`.

use crate::error::{Error, Result};
use crate::linalg::{self, ColumnVector, Matrix};
use crate::matpoly::{annihilates, MatrixPoly};
use crate::poly::{hankel_scalar_minpoly, ScalarPoly, VectorSequence};

/// Everything [`compute_wlc`] learns about a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WlcReport {
    /// Vector dimension.
    pub n: usize,
    /// Linear complexity, the degree of `scalar_minpoly`.
    pub lc: usize,
    pub scalar_minpoly: ScalarPoly,
    /// Whether `n` divides `lc`.
    pub divisible: bool,
    /// Degree of the nontrivial matrix minimal polynomial, when one exists.
    pub wlc: Option<usize>,
    /// The nontrivial `M(X)`, or `m(X) I` when none exists.
    pub matrix_minpoly: MatrixPoly,
    pub nontrivial: bool,
    /// Rank of the block Hankel matrix with `ceil(lc/n)` block rows, when built.
    pub block_rank: Option<usize>,
    pub diagnostics: Vec<String>,
}

impl WlcReport {
    /// Coefficients `A_0 .. A_{d-1}` of a nontrivial `M(X)`.
    pub fn coefficients(&self) -> &[Matrix] {
        if !self.nontrivial {
            return &[];
        }
        let c = self.matrix_minpoly.coeffs();
        &c[..c.len() - 1]
    }
}

/// The `(n d) x (n d)` block Hankel matrix with `d` block rows; column `j`
/// stacks `V_j, V_{j+1}, ..., V_{j+d-1}`.
pub fn block_hankel(v: &VectorSequence, d: usize) -> Result<Matrix> {
    let n = v.dim();
    let cols = d * n;
    if d > 0 && cols > 0 && !v.has_terms(d + cols - 1) {
        return Err(Error::InsufficientData(format!(
            "block Hankel with {d} block rows needs {} terms, have {}",
            d + cols - 1,
            v.len()
        )));
    }
    let mut h = Matrix::zeros(v.field(), d * n, cols);
    for i in 0..d {
        for j in 0..cols {
            for (c, &val) in v.term(i + j).expect("checked").iter().enumerate() {
                h.set(i * n + c, j, val);
            }
        }
    }
    Ok(h)
}

/// Computes LC and, when it exists, the nontrivial matrix minimal polynomial.
///
/// Only `d = lc / n` is tried: a nontrivial `M(X)` of degree `d` forces
/// `n d = lc`. It exists iff the block Hankel matrix with `d` block rows has
/// full rank `lc`, and then `[A_0 .. A_{d-1}] H = -[V_d .. V_{d+dn-1}]`
/// determines it. With a known period the extra block row is checked for
/// rank `dn`; on a bare prefix the solution must annihilate every stored
/// term instead.
pub fn compute_wlc(v: &VectorSequence) -> Result<WlcReport> {
    let field = v.field();
    let n = v.dim();
    let scalar = hankel_scalar_minpoly(v)?;
    let lc = scalar.degree().expect("minimal polynomial is nonzero");
    let mut report = WlcReport {
        n,
        lc,
        matrix_minpoly: MatrixPoly::from_scalar(&scalar, n),
        scalar_minpoly: scalar,
        divisible: lc % n == 0,
        wlc: None,
        nontrivial: false,
        block_rank: None,
        diagnostics: Vec::new(),
    };
    if lc == 0 {
        report
            .diagnostics
            .push("zero sequence: minimal polynomial is the constant 1".into());
        return Ok(report);
    }
    let d = lc.div_ceil(n);
    if !report.divisible {
        report.block_rank = block_hankel(v, d).ok().map(|h| linalg::rank(&h));
        report
            .diagnostics
            .push(format!("n={n} does not divide lc={lc}; M(X) = m(X) I"));
        return Ok(report);
    }
    let h = block_hankel(v, d)?;
    let rank = linalg::rank(&h);
    report.block_rank = Some(rank);
    if rank < lc {
        report.diagnostics.push(format!(
            "block Hankel with d={d} has rank {rank} < {lc}; M(X) = m(X) I"
        ));
        return Ok(report);
    }

    let mut rhs = Matrix::zeros(field, n, lc);
    for j in 0..lc {
        for (c, &val) in v.term(d + j).expect("within range").iter().enumerate() {
            rhs.set(c, j, field.neg(val));
        }
    }
    let coeffs = match linalg::solve_left(&h, &rhs) {
        Ok(x) => x,
        Err(e) => {
            return Err(Error::Internal(format!(
                "full-rank block Hankel system failed to solve: {e}"
            )))
        }
    };
    let mut blocks: Vec<Matrix> = (0..d).map(|i| coeffs.block(0, i * n, n, n)).collect();
    blocks.push(Matrix::identity(field, n));
    let mpoly = MatrixPoly::new(field, n, blocks)?;

    let partial = v.period().is_none();
    if !partial {
        let next = block_hankel(v, d + 1)?;
        let r = linalg::rank(&next);
        if r != lc {
            return Err(Error::Internal(format!(
                "block Hankel rank grew to {r} after one more block row"
            )));
        }
    }
    let insufficient = |what: &str| {
        if partial {
            Error::InsufficientData(format!("matrix recurrence {what} on the available prefix"))
        } else {
            Error::Internal(format!("matrix recurrence {what} on a full period"))
        }
    };
    if !annihilates(&mpoly, v)? {
        return Err(insufficient("fails"));
    }
    if linalg::inverse(&mpoly.coeffs()[0]).is_err() {
        return Err(insufficient("has singular A0"));
    }
    report.wlc = Some(d);
    report.nontrivial = true;
    report.matrix_minpoly = mpoly;
    Ok(report)
}

/// `V_{-1}` from a matrix minimal polynomial: the recurrence at shift
/// `j = -1`, `V_{d-1} + sum_{i>=1} A_i V_{i-1} + A_0 V_{-1} = 0`.
///
/// A leading coefficient other than `I` is normalised away first.
pub fn local_inverse_from_matrix_minpoly(
    v: &VectorSequence,
    m: &MatrixPoly,
) -> Result<ColumnVector> {
    let field = v.field();
    let n = v.dim();
    if m.dim() != n || m.field() != field {
        return Err(Error::DimensionMismatch(
            "matrix polynomial does not match the sequence".into(),
        ));
    }
    let d = m
        .degree()
        .ok_or_else(|| Error::InvalidArgument("zero polynomial defines no recurrence".into()))?;
    if d == 0 {
        return Ok(Matrix::zeros(field, n, 1));
    }
    if !v.has_terms(d) {
        return Err(Error::InsufficientData(format!("need {d} terms")));
    }
    let lead_inv = linalg::inverse(m.leading().expect("nonzero"))
        .map_err(|_| Error::SingularLeadingCoefficient)?;
    let a: Vec<Matrix> = m
        .coeffs()
        .iter()
        .map(|c| lead_inv.mul(c))
        .collect::<Result<_>>()?;
    let a0_inv = linalg::inverse(&a[0]).map_err(|_| Error::SingularConstantCoefficient)?;
    let term = |i: usize| v.term_vector(i).expect("checked");
    let mut acc = term(d - 1);
    for (i, ai) in a.iter().enumerate().take(d).skip(1) {
        acc = acc.add(&ai.mul(&term(i - 1))?)?;
    }
    Ok(a0_inv.mul(&acc)?.neg())
}

/// `V_{-1}` from the scalar minimal polynomial:
/// `V_{-1} = -a_0^{-1} (V_{m-1} + sum_{i>=1} a_i V_{i-1})`.
pub fn local_inverse_from_scalar_minpoly(
    v: &VectorSequence,
    m: &ScalarPoly,
) -> Result<ColumnVector> {
    let field = v.field();
    let n = v.dim();
    if m.field() != field {
        return Err(Error::ModulusMismatch(field.p(), m.field().p()));
    }
    let deg = m
        .degree()
        .ok_or_else(|| Error::InvalidArgument("zero polynomial defines no recurrence".into()))?;
    if deg == 0 {
        return Ok(Matrix::zeros(field, n, 1));
    }
    let m = m.monic();
    if m.coeff(0) == 0 {
        return Err(Error::ZeroConstantTerm);
    }
    if !v.has_terms(deg) {
        return Err(Error::InsufficientData(format!("need {deg} terms")));
    }
    let mut acc = v.term(deg - 1).expect("checked").to_vec();
    for i in 1..deg {
        let ai = m.coeff(i);
        for (x, &t) in acc.iter_mut().zip(v.term(i - 1).expect("checked")) {
            *x = field.add(*x, field.mul(ai, t));
        }
    }
    let scale = field.neg(field.inv(m.coeff(0))?);
    let out: Vec<u32> = acc.iter().map(|&x| field.mul(x, scale)).collect();
    Ok(Matrix::column(field, &out))
}
