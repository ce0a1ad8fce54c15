//! Dense exact linear algebra over F_p.
//!
//! Elimination always pivots on the first nonzero entry at or below the
//! current row (lowest row index), so the reduced forms are reproducible.
//! Over GF(2) the elimination runs on bit-packed rows; [`row_reduce_generic`]
//! and [`row_reduce_gf2`] produce identical results and are both public so
//! they can be cross-checked.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// Dense row-major matrix with canonical entries in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// A matrix with a single column.
pub type ColumnVector = Matrix;

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p();
        }
        m
    }

    /// Builds a matrix from arbitrary integers, reducing them mod p.
    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> i64,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(field.reduce(f(i, j)));
            }
        }
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from nested rows of integers (reduced mod p).
    pub fn from_rows<R: AsRef<[i64]>>(field: Field, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self::from_fn(field, rows.len(), cols, |i, j| {
            rows[i].as_ref()[j]
        }))
    }

    /// Wraps canonical values; fails if any entry is outside `[0, p)`.
    pub fn from_values(field: Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(v) = data.iter().find(|&&v| v >= field.p()) {
            return Err(Error::InvalidArgument(format!(
                "entry {v} not canonical mod {}",
                field.p()
            )));
        }
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Column vector from canonical values (reduced mod p).
    pub fn column(field: Field, values: &[u32]) -> Self {
        Self::from_fn(field, values.len(), 1, |i, _| values[i] as i64)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn elem(&self, i: usize, j: usize) -> FieldElem {
        self.field.elem(self.get(i, j) as i64)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(v < self.field.p());
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Entries in row-major order.
    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.field, self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch(self.field.p(), other.field.p()));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Self { data, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(Self { data, ..*self })
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Self {
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
            ..*self
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        Self {
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
            ..*self
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        mat_mul(self, other)
    }

    /// Copy of the `rows x cols` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        Self::from_fn(self.field, rows, cols, |i, j| {
            self.get(r0 + i, c0 + j) as i64
        })
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let cols = self.cols + other.cols;
        let mut m = Self::zeros(self.field, self.rows, cols);
        for i in 0..self.rows {
            m.data[i * cols..i * cols + self.cols].copy_from_slice(self.row(i));
            m.data[i * cols + self.cols..(i + 1) * cols].copy_from_slice(other.row(i));
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}; {}x{}]", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "\n  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.field != b.field {
        return Err(Error::ModulusMismatch(a.field.p(), b.field.p()));
    }
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let f = a.field;
    let p = f.p() as u64;
    let mut out = Matrix::zeros(f, a.rows, b.cols);
    let mut acc = vec![0u64; b.cols];
    for i in 0..a.rows {
        acc.iter_mut().for_each(|x| *x = 0);
        for k in 0..a.cols {
            let aik = a.get(i, k) as u64;
            if aik == 0 {
                continue;
            }
            for (x, &bkj) in acc.iter_mut().zip(b.row(k)) {
                *x = (*x + aik * bkj as u64) % p;
            }
        }
        for (j, &x) in acc.iter().enumerate() {
            out.data[i * b.cols + j] = x as u32;
        }
    }
    Ok(out)
}

pub fn mat_vec_mul(a: &Matrix, v: &ColumnVector) -> Result<ColumnVector> {
    if v.cols != 1 {
        return Err(Error::DimensionMismatch("expected a column vector".into()));
    }
    mat_mul(a, v)
}

/// Result of Gauss-Jordan elimination restricted to the first
/// `pivot_cols` columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub reduced: Matrix,
    /// Pivot column of each of the first `pivots.len()` rows.
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form, choosing the packed path over GF(2).
pub fn row_reduce(m: &Matrix, pivot_cols: usize) -> Echelon {
    if m.field.p() == 2 {
        row_reduce_gf2(m, pivot_cols)
    } else {
        row_reduce_generic(m, pivot_cols)
    }
}

pub fn row_reduce_generic(m: &Matrix, pivot_cols: usize) -> Echelon {
    let f = m.field;
    let p = f.p() as u64;
    let cols = m.cols;
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols.min(cols) {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| a.get(i, c) != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            a.data[r * cols + j] = f.mul(a.data[r * cols + j], inv);
        }
        let pivot_row: Vec<u64> = a.row(r)[c..].iter().map(|&x| x as u64).collect();
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c);
            if factor == 0 {
                continue;
            }
            let neg = p - factor as u64;
            let row = &mut a.data[i * cols + c..(i + 1) * cols];
            for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                if pv != 0 {
                    *x = ((*x as u64 + neg * pv) % p) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { reduced: a, pivots }
}

pub fn row_reduce_gf2(m: &Matrix, pivot_cols: usize) -> Echelon {
    assert_eq!(m.field.p(), 2, "packed elimination needs GF(2)");
    let rows = m.rows;
    let cols = m.cols;
    let words = cols.div_ceil(64).max(1);
    let mut bits = vec![0u64; rows * words];
    for i in 0..rows {
        for j in 0..cols {
            if m.get(i, j) == 1 {
                bits[i * words + j / 64] |= 1 << (j % 64);
            }
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut pivot_row = vec![0u64; words];
    for c in 0..pivot_cols.min(cols) {
        if r == rows {
            break;
        }
        let (w, mask) = (c / 64, 1u64 << (c % 64));
        let Some(pr) = (r..rows).find(|&i| bits[i * words + w] & mask != 0) else {
            continue;
        };
        if pr != r {
            for k in 0..words {
                bits.swap(pr * words + k, r * words + k);
            }
        }
        pivot_row.copy_from_slice(&bits[r * words..(r + 1) * words]);
        for i in 0..rows {
            if i != r && bits[i * words + w] & mask != 0 {
                for k in w..words {
                    bits[i * words + k] ^= pivot_row[k];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let reduced = Matrix::from_fn(m.field, rows, cols, |i, j| {
        ((bits[i * words + j / 64] >> (j % 64)) & 1) as i64
    });
    Echelon { reduced, pivots }
}

pub fn rank(m: &Matrix) -> usize {
    row_reduce(m, m.cols).pivots.len()
}

/// Solves `a * x = b` column by column.
pub fn solve_right(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.field != b.field {
        return Err(Error::ModulusMismatch(a.field.p(), b.field.p()));
    }
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "system has {} rows but right-hand side has {}",
            a.rows, b.rows
        )));
    }
    let ech = row_reduce(&a.hstack(b)?, a.cols);
    let rank = ech.pivots.len();
    let red = &ech.reduced;
    for i in rank..red.rows {
        if red.row(i)[a.cols..].iter().any(|&v| v != 0) {
            return Err(Error::NoSolution);
        }
    }
    if rank < a.cols {
        return Err(Error::NonUnique);
    }
    Ok(red.block(0, a.cols, a.cols, b.cols))
}

/// Solves `x * a = b` via the transposed system.
pub fn solve_left(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "system has {} columns but right-hand side has {}",
            a.cols, b.cols
        )));
    }
    Ok(solve_right(&a.transpose(), &b.transpose())?.transpose())
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "inverse of a non-square matrix".into(),
        ));
    }
    match solve_right(m, &Matrix::identity(m.field, m.rows)) {
        Ok(x) => Ok(x),
        Err(Error::NonUnique | Error::NoSolution) => Err(Error::Singular),
        Err(e) => Err(e),
    }
}
