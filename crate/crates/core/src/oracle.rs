//! Slow, independent reference computations used to check the fast paths.
//!
//! Nothing here shares code with the Hankel or division routines: the
//! scalar oracle enumerates candidate polynomials, the matrix oracle solves
//! a full-period linear system with its own elimination, and the inverse
//! oracle walks the cycle.

use std::collections::HashSet;

use crate::dynamics::MapSpec;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{ColumnVector, Matrix};
use crate::matpoly::MatrixPoly;
use crate::poly::{ScalarPoly, VectorSequence};

/// Largest candidate count the exhaustive search will enumerate.
pub const MAX_CANDIDATES: u64 = 1 << 20;

/// Walks `y, F(y), F^2(y), ...` until it finds `x` with `F(x) = y`.
///
/// Fails with [`Error::NotOnCycle`] when the walk revisits a point before
/// returning to `y`, and with [`Error::BoundExceeded`] after `bound` steps.
pub fn cycle_walk_inverse(f: &MapSpec, y: &ColumnVector, bound: usize) -> Result<ColumnVector> {
    let target = y.as_slice().to_vec();
    let mut visited = HashSet::new();
    let mut x = y.clone();
    for _ in 0..bound {
        if !visited.insert(x.as_slice().to_vec()) {
            return Err(Error::NotOnCycle);
        }
        let next = crate::dynamics::apply_map(f, &x)?;
        if next.as_slice() == target.as_slice() {
            return Ok(x);
        }
        x = next;
    }
    Err(Error::BoundExceeded(bound))
}

/// Smallest-degree monic polynomial annihilating a periodic sequence, found
/// by trying every monic polynomial of degree `0, 1, ..., max_deg`.
pub fn exhaustive_scalar_minpoly(v: &VectorSequence, max_deg: usize) -> Result<ScalarPoly> {
    if v.period().is_none() {
        return Err(Error::InvalidArgument(
            "exhaustive search needs a known period".into(),
        ));
    }
    let field = v.field();
    let p = field.p() as u64;
    if p.checked_pow(max_deg as u32)
        .is_none_or(|t| t > MAX_CANDIDATES)
    {
        return Err(Error::TooLarge(format!("{p}^{max_deg} candidates")));
    }
    for deg in 0..=max_deg {
        let count = p.pow(deg as u32);
        for k in 0..count {
            let mut coeffs = Vec::with_capacity(deg + 1);
            let mut r = k;
            for _ in 0..deg {
                coeffs.push((r % p) as u32);
                r /= p;
            }
            coeffs.push(1);
            let cand = ScalarPoly::from_raw(field, coeffs);
            if annihilates_periodic(v, &cand) {
                return Ok(cand);
            }
        }
    }
    Err(Error::NotFound(max_deg))
}

fn annihilates_periodic(v: &VectorSequence, poly: &ScalarPoly) -> bool {
    let f = v.field();
    let period = v.period().expect("periodic");
    (0..period).all(|j| {
        (0..v.dim()).all(|c| {
            poly.coeffs().iter().enumerate().fold(0u32, |acc, (i, &a)| {
                f.add(acc, f.mul(a, v.term(i + j).expect("periodic")[c]))
            }) == 0
        })
    })
}

/// Unique solution `X` of `A X = B`, computed by plain Gaussian elimination
/// on a dense row-major copy; `None` if the system is inconsistent or
/// underdetermined.
fn unique_solution(field: Field, a: &[Vec<u32>], b: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<u32>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb).copied().collect())
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let piv = (r..rows).find(|&i| aug[i][c] != 0)?;
        aug.swap(r, piv);
        let inv = field.inv(aug[r][c]).ok()?;
        for x in aug[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = aug[r].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(factor, pv));
                }
            }
        }
        r += 1;
    }
    if aug[r..]
        .iter()
        .any(|row| row[cols..].iter().any(|&x| x != 0))
    {
        return None;
    }
    Some(aug[..cols].iter().map(|row| row[cols..].to_vec()).collect())
}

fn is_nonsingular(field: Field, m: &Matrix) -> bool {
    let n = m.rows();
    let a: Vec<Vec<u32>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let id: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect();
    unique_solution(field, &a, &id).is_some()
}

/// Matrix minimal polynomial found directly from the defining equations.
///
/// For each `d = 1 ..= max_deg` the unknowns `A_0 .. A_{d-1}` must satisfy
/// `sum_i A_i V_{i+j} = -V_{d+j}` for every `j` in one period. The first `d`
/// with a unique solution and nonsingular `A_0` gives `M(X)`; `None` means
/// no such `d` exists up to `max_deg`.
pub fn independent_matrix_minpoly(
    v: &VectorSequence,
    max_deg: usize,
) -> Result<Option<MatrixPoly>> {
    let period = v
        .period()
        .ok_or_else(|| Error::InvalidArgument("independent oracle needs a known period".into()))?;
    let field = v.field();
    let n = v.dim();
    for d in 1..=max_deg {
        // Transposed system: one equation row per shift j, unknown columns
        // are the entries of [A_0 .. A_{d-1}]^T.
        let a: Vec<Vec<u32>> = (0..period)
            .map(|j| {
                (0..d)
                    .flat_map(|i| v.term(i + j).expect("periodic").iter().copied())
                    .collect()
            })
            .collect();
        let b: Vec<Vec<u32>> = (0..period)
            .map(|j| {
                v.term(d + j)
                    .expect("periodic")
                    .iter()
                    .map(|&x| field.neg(x))
                    .collect()
            })
            .collect();
        let Some(xt) = unique_solution(field, &a, &b) else {
            continue;
        };
        // xt is (n d) x n with xt[i n + c][r] = (A_i)[r][c].
        let mut blocks: Vec<Matrix> = (0..d)
            .map(|i| Matrix::from_fn(field, n, n, |r, c| xt[i * n + c][r] as i64))
            .collect();
        if !is_nonsingular(field, &blocks[0]) {
            continue;
        }
        blocks.push(Matrix::identity(field, n));
        return Ok(Some(MatrixPoly::new(field, n, blocks)?));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::decode;

    fn gf(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    fn periodic(p: u64, n: usize, rows: &[&[u32]]) -> VectorSequence {
        let terms: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        VectorSequence::new(gf(p), n, &terms, Some(terms.len())).unwrap()
    }

    #[test]
    fn cycle_walk() {
        let f = MapSpec::from_index_map(gf(2), 2, &[1, 2, 3, 0]).unwrap();
        let y = Matrix::column(gf(2), &decode(gf(2), 2, 0));
        let x = cycle_walk_inverse(&f, &y, 10).unwrap();
        assert_eq!(x.as_slice(), decode(gf(2), 2, 3).as_slice());
        assert_eq!(cycle_walk_inverse(&f, &y, 2), Err(Error::BoundExceeded(2)));

        let chain = MapSpec::from_index_map(gf(3), 1, &[1, 2, 1]).unwrap();
        let y = Matrix::column(gf(3), &[0]);
        assert_eq!(cycle_walk_inverse(&chain, &y, 10), Err(Error::NotOnCycle));
    }

    #[test]
    fn scalar_oracle_examples() {
        // 1, 2, 1, 2, ... over GF(3) satisfies V_{j+1} = -V_j.
        let v = periodic(3, 1, &[&[1], &[2]]);
        assert_eq!(
            exhaustive_scalar_minpoly(&v, 4).unwrap().coeffs(),
            &[1, 1][..]
        );
        // 1, 0, 1, 0, ... needs X^2 - 1.
        let v = periodic(3, 1, &[&[1], &[0]]);
        assert_eq!(
            exhaustive_scalar_minpoly(&v, 4).unwrap().coeffs(),
            &[2, 0, 1][..]
        );

        let constant = periodic(5, 2, &[&[3, 1]]);
        assert_eq!(
            exhaustive_scalar_minpoly(&constant, 3).unwrap().coeffs(),
            &[4, 1][..]
        );

        let zero = periodic(2, 1, &[&[0]]);
        assert_eq!(
            exhaustive_scalar_minpoly(&zero, 3).unwrap().degree(),
            Some(0)
        );

        let long = periodic(2, 1, &[&[1], &[0], &[0], &[0], &[0], &[0], &[0]]);
        assert_eq!(exhaustive_scalar_minpoly(&long, 3), Err(Error::NotFound(3)));
        assert!(matches!(
            exhaustive_scalar_minpoly(&long, 40),
            Err(Error::TooLarge(_))
        ));

        let bare = VectorSequence::new(gf(2), 1, &[vec![1]], None).unwrap();
        assert!(exhaustive_scalar_minpoly(&bare, 2).is_err());
    }

    #[test]
    fn matrix_oracle_examples() {
        // Orbit of (1,0) under [[0,1],[1,1]] over GF(2): M(X) = X I + A.
        let v = periodic(2, 2, &[&[1, 0], &[0, 1], &[1, 1]]);
        let m = independent_matrix_minpoly(&v, 3).unwrap().unwrap();
        assert_eq!(m.degree(), Some(1));
        assert_eq!(
            m.coeff(0),
            Matrix::from_rows(gf(2), &[[0i64, 1], [1, 1]]).unwrap()
        );

        // A lone impulse of period 3 has LC 3, not a multiple of n = 2.
        let v = periodic(2, 2, &[&[1, 0], &[0, 0], &[0, 0]]);
        assert_eq!(independent_matrix_minpoly(&v, 4).unwrap(), None);
    }
}
