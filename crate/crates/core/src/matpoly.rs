//! `n x n` matrix polynomials over F_p.
//!
//! The indeterminate commutes with the coefficients, the coefficients do not
//! commute with each other, so products and divisions come in left and right
//! flavours.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix};
use crate::poly::{ScalarPoly, VectorSequence};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixPoly {
    field: Field,
    n: usize,
    coeffs: Vec<Matrix>,
}

/// Which side the divisor multiplies the quotient from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `P = D Q + R`
    Left,
    /// `P = Q D + R`
    Right,
}

impl MatrixPoly {
    /// Ascending coefficients; trailing zero matrices are dropped.
    pub fn new(field: Field, n: usize, coeffs: Vec<Matrix>) -> Result<Self> {
        for c in &coeffs {
            if c.field() != field {
                return Err(Error::ModulusMismatch(field.p(), c.field().p()));
            }
            if c.rows() != n || c.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient is {}x{}, expected {n}x{n}",
                    c.rows(),
                    c.cols()
                )));
            }
        }
        Ok(Self::normalized(field, n, coeffs))
    }

    fn normalized(field: Field, n: usize, mut coeffs: Vec<Matrix>) -> Self {
        while coeffs.last().is_some_and(Matrix::is_zero) {
            coeffs.pop();
        }
        Self { field, n, coeffs }
    }

    pub fn zero(field: Field, n: usize) -> Self {
        Self {
            field,
            n,
            coeffs: Vec::new(),
        }
    }

    /// The constant polynomial `I`.
    pub fn identity(field: Field, n: usize) -> Self {
        Self::monomial(Matrix::identity(field, n), 0)
    }

    /// `c X^k` for a square matrix `c`.
    pub fn monomial(c: Matrix, k: usize) -> Self {
        let (field, n) = (c.field(), c.rows());
        let mut coeffs = vec![Matrix::zeros(field, n, n); k];
        coeffs.push(c);
        Self::normalized(field, n, coeffs)
    }

    /// `f(X) I`.
    pub fn from_scalar(f: &ScalarPoly, n: usize) -> Self {
        let field = f.field();
        let id = Matrix::identity(field, n);
        Self::normalized(field, n, f.coeffs().iter().map(|&c| id.scale(c)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Coefficient matrix size `n`.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Matrix] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Matrix {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.n, self.n))
    }

    pub fn leading(&self) -> Option<&Matrix> {
        self.coeffs.last()
    }

    /// Scalar polynomial in entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> ScalarPoly {
        let c: Vec<i64> = self.coeffs.iter().map(|m| m.get(i, j) as i64).collect();
        ScalarPoly::new(self.field, &c)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch(self.field.p(), other.field.p()));
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "{0}x{0} vs {1}x{1} coefficients",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coeff(i).add(&other.coeff(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::normalized(self.field, self.n, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(Matrix::neg).collect(),
            ..self.clone()
        }
    }

    /// `self * other`; not commutative.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field, self.n));
        }
        let mut coeffs = vec![
            Matrix::zeros(self.field, self.n, self.n);
            self.coeffs.len() + other.coeffs.len() - 1
        ];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(Self::normalized(self.field, self.n, coeffs))
    }

    /// `c X^k * self`.
    pub fn scale_shift(&self, c: u32, k: usize) -> Self {
        let mut coeffs = vec![Matrix::zeros(self.field, self.n, self.n); k];
        coeffs.extend(self.coeffs.iter().map(|m| m.scale(c)));
        Self::normalized(self.field, self.n, coeffs)
    }
}

impl fmt::Display for MatrixPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let rows: Vec<String> = (0..self.n)
                .map(|i| {
                    c.row(i)
                        .iter()
                        .map(u32::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            write!(f, "[{}]", rows.join("; "))?;
            match k {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MatrixPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixPoly[{}; n={}]({})", self.field, self.n, self)
    }
}

pub fn matpoly_add(a: &MatrixPoly, b: &MatrixPoly) -> Result<MatrixPoly> {
    a.add(b)
}

pub fn matpoly_mul(a: &MatrixPoly, b: &MatrixPoly) -> Result<MatrixPoly> {
    a.mul(b)
}

pub fn matpoly_scale_shift(a: &MatrixPoly, c: u32, k: usize) -> MatrixPoly {
    a.scale_shift(c, k)
}

/// Euclidean division by a divisor with nonsingular leading coefficient.
///
/// Each step removes the top coefficient `P_k` of the running remainder
/// with the quotient term `D_m^{-1} P_k X^{k-m}` (left) or
/// `P_k D_m^{-1} X^{k-m}` (right). A dividend of lower degree than the
/// divisor comes back as `(0, dividend)`.
pub fn euclid_divide(
    dividend: &MatrixPoly,
    divisor: &MatrixPoly,
    side: Side,
) -> Result<(MatrixPoly, MatrixPoly)> {
    dividend.check_compatible(divisor)?;
    let (field, n) = (dividend.field, dividend.n);
    let m = divisor.degree().ok_or(Error::SingularLeadingCoefficient)?;
    let lead_inv = match linalg::inverse(divisor.leading().expect("nonzero")) {
        Ok(inv) => inv,
        Err(Error::Singular) => return Err(Error::SingularLeadingCoefficient),
        Err(e) => return Err(e),
    };
    let deg = match dividend.degree() {
        Some(d) if d >= m => d,
        _ => return Ok((MatrixPoly::zero(field, n), dividend.clone())),
    };
    let mut rem = dividend.coeffs.clone();
    let mut quot = vec![Matrix::zeros(field, n, n); deg - m + 1];
    for k in (m..=deg).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let q = match side {
            Side::Left => lead_inv.mul(&rem[k])?,
            Side::Right => rem[k].mul(&lead_inv)?,
        };
        for (i, d) in divisor.coeffs.iter().enumerate() {
            let term = match side {
                Side::Left => d.mul(&q)?,
                Side::Right => q.mul(d)?,
            };
            let idx = k - m + i;
            rem[idx] = rem[idx].sub(&term)?;
        }
        quot[k - m] = q;
    }
    rem.truncate(m);
    Ok((
        MatrixPoly::normalized(field, n, quot),
        MatrixPoly::normalized(field, n, rem),
    ))
}

/// Determinant over F_p[X] by cofactor expansion along rows, memoized on the
/// set of columns still available.
pub fn matpoly_det(m: &MatrixPoly) -> ScalarPoly {
    let n = m.n;
    assert!(n < 64, "cofactor expansion limited to n < 64");
    let entries: Vec<Vec<ScalarPoly>> = (0..n)
        .map(|i| (0..n).map(|j| m.entry(i, j)).collect())
        .collect();
    let mut memo = HashMap::new();
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    det_rec(&entries, full, m.field, &mut memo)
}

fn det_rec(
    e: &[Vec<ScalarPoly>],
    cols: u64,
    field: Field,
    memo: &mut HashMap<u64, ScalarPoly>,
) -> ScalarPoly {
    if cols == 0 {
        return ScalarPoly::one(field);
    }
    if let Some(d) = memo.get(&cols) {
        return d.clone();
    }
    let row = e.len() - cols.count_ones() as usize;
    let mut acc = ScalarPoly::zero(field);
    let mut position = 0;
    for c in 0..e.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        if !e[row][c].is_zero() {
            let minor = det_rec(e, cols & !(1 << c), field, memo);
            let term = e[row][c].mul(&minor);
            acc = if position % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        position += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// True when `sum_i P_i V_{i+j} = 0` for every checkable shift `j`
/// (coefficients act on the left of column vectors).
pub fn annihilates(pm: &MatrixPoly, v: &VectorSequence) -> Result<bool> {
    if pm.field != v.field() {
        return Err(Error::ModulusMismatch(pm.field.p(), v.field().p()));
    }
    if pm.n != v.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{0}x{0} coefficients on a sequence in dimension {1}",
            pm.n,
            v.dim()
        )));
    }
    let Some(deg) = pm.degree() else {
        return Ok(true);
    };
    if !v.has_terms(deg + 1) {
        return Err(Error::InsufficientData(format!(
            "degree {deg} recurrence needs {} terms",
            deg + 1
        )));
    }
    let f = pm.field;
    let n = pm.n;
    let mut acc = vec![0u32; n];
    for j in 0..v.shift_count(deg + 1) {
        acc.iter_mut().for_each(|a| *a = 0);
        for (i, c) in pm.coeffs.iter().enumerate() {
            let t = v.term(i + j).expect("checked above");
            for (r, a) in acc.iter_mut().enumerate() {
                for (k, &tk) in t.iter().enumerate() {
                    *a = f.add(*a, f.mul(c.get(r, k), tk));
                }
            }
        }
        if acc.iter().any(|&a| a != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn gf(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    fn mat(p: u64, rows: &[[i64; 2]]) -> Matrix {
        Matrix::from_rows(gf(p), rows).unwrap()
    }

    /// `X^3 I + A2 X^2 + A1 X + A0` for the period-6 pair sequence.
    fn pair_wlc3_minpoly() -> MatrixPoly {
        MatrixPoly::new(
            gf(2),
            2,
            vec![
                mat(2, &[[0, 1], [1, 1]]),
                mat(2, &[[0, 0], [0, 1]]),
                mat(2, &[[1, 1], [0, 1]]),
                Matrix::identity(gf(2), 2),
            ],
        )
        .unwrap()
    }

    fn pair_wlc3_quotient() -> MatrixPoly {
        MatrixPoly::new(
            gf(2),
            2,
            vec![
                mat(2, &[[1, 1], [1, 0]]),
                mat(2, &[[1, 0], [0, 0]]),
                mat(2, &[[1, 1], [0, 1]]),
                Matrix::identity(gf(2), 2),
            ],
        )
        .unwrap()
    }

    fn pair_wlc3_sequence(period: Option<usize>) -> VectorSequence {
        let terms = [[1, 1], [0, 0], [0, 1], [0, 1], [1, 0], [0, 0]];
        let terms: Vec<Vec<u32>> = terms.iter().map(|t| t.to_vec()).collect();
        VectorSequence::new(gf(2), 2, &terms, period).unwrap()
    }

    fn x6_plus_1(n: usize) -> MatrixPoly {
        MatrixPoly::from_scalar(
            &ScalarPoly::from_descending(gf(2), &[1, 0, 0, 0, 0, 0, 1]),
            n,
        )
    }

    fn random_poly(rng: &mut SplitMix64, field: Field, n: usize, deg: usize) -> MatrixPoly {
        let coeffs = (0..=deg)
            .map(|_| Matrix::from_fn(field, n, n, |_, _| rng.below(field.p() as u64) as i64))
            .collect();
        MatrixPoly::new(field, n, coeffs).unwrap()
    }

    #[test]
    fn basic_arithmetic() {
        let f = gf(5);
        let p = MatrixPoly::monomial(Matrix::from_fn(f, 2, 2, |i, j| (i + 2 * j) as i64), 2);
        assert_eq!(p.add(&MatrixPoly::zero(f, 2)).unwrap(), p);
        let xi = MatrixPoly::monomial(Matrix::identity(f, 2), 1);
        assert_eq!(
            xi.mul(&xi).unwrap(),
            MatrixPoly::monomial(Matrix::identity(f, 2), 2)
        );
        assert_eq!(p.sub(&p).unwrap().degree(), None);
        assert_eq!(p.scale_shift(2, 1).degree(), Some(3));
        assert!(matches!(
            p.add(&MatrixPoly::zero(f, 3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn pair_wlc3_factorisation() {
        let prod = pair_wlc3_minpoly().mul(&pair_wlc3_quotient()).unwrap();
        assert_eq!(prod, x6_plus_1(2));
        let prod = pair_wlc3_quotient().mul(&pair_wlc3_minpoly()).unwrap();
        assert_eq!(prod, x6_plus_1(2));
    }

    #[test]
    fn pair_wlc3_division_both_sides() {
        for side in [Side::Right, Side::Left] {
            let (q, r) = euclid_divide(&x6_plus_1(2), &pair_wlc3_minpoly(), side).unwrap();
            assert_eq!(q, pair_wlc3_quotient());
            assert!(r.is_zero());
        }
    }

    #[test]
    fn division_edge_cases() {
        let f = gf(3);
        let xn = MatrixPoly::from_scalar(&ScalarPoly::x_pow_minus_one(f, 5), 2);
        let (q, r) = euclid_divide(&xn, &xn, Side::Left).unwrap();
        assert_eq!(q, MatrixPoly::identity(f, 2));
        assert!(r.is_zero());

        let x = MatrixPoly::monomial(Matrix::identity(f, 2), 1);
        let x2 = MatrixPoly::monomial(Matrix::identity(f, 2), 2);
        let (q, r) = euclid_divide(&x, &x2, Side::Right).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, x);

        let singular = MatrixPoly::monomial(Matrix::from_fn(f, 2, 2, |_, _| 1), 1);
        assert_eq!(
            euclid_divide(&x2, &singular, Side::Left),
            Err(Error::SingularLeadingCoefficient)
        );
    }

    #[test]
    fn left_and_right_quotients_differ() {
        let f = gf(2);
        let d = MatrixPoly::new(
            f,
            2,
            vec![mat(2, &[[0, 1], [0, 0]]), Matrix::identity(f, 2)],
        )
        .unwrap();
        let p = MatrixPoly::monomial(mat(2, &[[1, 0], [0, 0]]), 1);
        let (ql, rl) = euclid_divide(&p, &d, Side::Left).unwrap();
        let (qr, rr) = euclid_divide(&p, &d, Side::Right).unwrap();
        assert_eq!(ql, qr);
        assert_ne!(rl, rr);
        let mut rng = SplitMix64::new(99);
        let mut differing = 0;
        for _ in 0..50 {
            let d = random_poly(&mut rng, gf(5), 2, 1);
            let p = random_poly(&mut rng, gf(5), 2, 3);
            let (Ok(l), Ok(r)) = (
                euclid_divide(&p, &d, Side::Left),
                euclid_divide(&p, &d, Side::Right),
            ) else {
                continue;
            };
            if l.0 != r.0 {
                differing += 1;
            }
        }
        assert!(differing > 0);
    }

    #[test]
    fn random_division_round_trips() {
        let mut rng = SplitMix64::new(5);
        for &p in &[2u64, 5] {
            let f = gf(p);
            let mut done = 0;
            while done < 60 {
                let n = 1 + rng.below(3) as usize;
                let dd = rng.below(4) as usize;
                let d = random_poly(&mut rng, f, n, dd);
                if d.degree() != Some(dd) || linalg::inverse(d.leading().unwrap()).is_err() {
                    continue;
                }
                let dq = rng.below(4) as usize;
                let q = random_poly(&mut rng, f, n, dq);
                let r = if dd == 0 {
                    MatrixPoly::zero(f, n)
                } else {
                    random_poly(&mut rng, f, n, dd - 1)
                };
                for side in [Side::Left, Side::Right] {
                    let prod = match side {
                        Side::Left => d.mul(&q).unwrap(),
                        Side::Right => q.mul(&d).unwrap(),
                    };
                    let p_ = prod.add(&r).unwrap();
                    let (q2, r2) = euclid_divide(&p_, &d, side).unwrap();
                    assert_eq!((q2.clone(), r2.clone()), (q.clone(), r.clone()));
                    assert_eq!(euclid_divide(&p_, &d, side).unwrap(), (q2, r2));
                }
                done += 1;
            }
        }
    }

    #[test]
    fn determinant_examples() {
        let f = gf(7);
        let g = ScalarPoly::new(f, &[3, 1, 4]);
        assert_eq!(matpoly_det(&MatrixPoly::from_scalar(&g, 2)), g.mul(&g));
        // det(X I - C) for the companion matrix of X^2 + aX + b
        // brute-forced over all a, b in GF(7): equals X^2 + aX + b.
        for a in 0..7 {
            for b in 0..7 {
                let c = Matrix::from_rows(f, &[[0, -b], [1, -a]]).unwrap();
                let xi_minus_c =
                    MatrixPoly::new(f, 2, vec![c.neg(), Matrix::identity(f, 2)]).unwrap();
                assert_eq!(matpoly_det(&xi_minus_c), ScalarPoly::new(f, &[b, a, 1]));
            }
        }
        let d = matpoly_det(&pair_wlc3_minpoly());
        assert_eq!(d.degree(), Some(6));
        let x6 = ScalarPoly::from_descending(gf(2), &[1, 0, 0, 0, 0, 0, 1]);
        assert!(crate::poly::poly_divides(&d, &x6.mul(&x6)));
        assert_eq!(d, x6);
    }

    #[test]
    fn determinant_is_multiplicative() {
        let mut rng = SplitMix64::new(17);
        for _ in 0..30 {
            let f = gf(3);
            let n = 1 + rng.below(4) as usize;
            let a = random_poly(&mut rng, f, n, 2);
            let b = random_poly(&mut rng, f, n, 2);
            assert_eq!(
                matpoly_det(&a.mul(&b).unwrap()),
                matpoly_det(&a).mul(&matpoly_det(&b))
            );
        }
    }

    #[test]
    fn annihilation_checks() {
        let f = gf(2);
        let seq = pair_wlc3_sequence(Some(6));
        let xn = MatrixPoly::from_scalar(&ScalarPoly::x_pow_minus_one(f, 6), 2);
        assert!(annihilates(&xn, &seq).unwrap());
        assert!(annihilates(&pair_wlc3_minpoly(), &seq).unwrap());
        assert!(annihilates(&pair_wlc3_minpoly(), &pair_wlc3_sequence(None)).unwrap());

        let mut coeffs = pair_wlc3_minpoly().coeffs().to_vec();
        coeffs[0].set(0, 0, 1);
        let perturbed = MatrixPoly::new(f, 2, coeffs).unwrap();
        assert!(!annihilates(&perturbed, &seq).unwrap());

        let short = VectorSequence::new(f, 2, &[vec![1, 1], vec![0, 0]], None).unwrap();
        assert!(matches!(
            annihilates(&pair_wlc3_minpoly(), &short),
            Err(Error::InsufficientData(_))
        ));
    }
}
