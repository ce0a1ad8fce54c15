//! Random matrices and sequences for tests and benchmarks, all driven by
//! [`SplitMix64`] so that a seed fixes every draw.

use crate::error::Result;
use crate::field::Field;
use crate::linalg::{self, Matrix};
use crate::poly::VectorSequence;
use crate::rng::SplitMix64;

pub fn random_elem(rng: &mut SplitMix64, field: Field) -> u32 {
    rng.below(field.p() as u64) as u32
}

pub fn random_vector(rng: &mut SplitMix64, field: Field, n: usize) -> Vec<u32> {
    (0..n).map(|_| random_elem(rng, field)).collect()
}

pub fn random_matrix(rng: &mut SplitMix64, field: Field, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| random_elem(rng, field) as i64)
}

/// Uniform nonsingular matrix by rejection.
pub fn random_nonsingular(rng: &mut SplitMix64, field: Field, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, n, n);
        if linalg::rank(&m) == n {
            return m;
        }
    }
}

/// `period` independent uniform terms, declared periodic with that period.
pub fn random_periodic_sequence(
    rng: &mut SplitMix64,
    field: Field,
    n: usize,
    period: usize,
) -> Result<VectorSequence> {
    let data = random_vector(rng, field, n * period);
    VectorSequence::from_flat(field, n, data, Some(period))
}

/// One period of a sequence satisfying `V_{d+j} = -sum_i A_i V_{i+j}` with
/// random `A_i` (`A_0` nonsingular) and random initial terms.
///
/// With `A_0` nonsingular the state map is a bijection, so the orbit is purely
/// periodic. Returns `None` when the period exceeds `max_period`.
pub fn random_recurrent_sequence(
    rng: &mut SplitMix64,
    field: Field,
    n: usize,
    d: usize,
    max_period: usize,
) -> Result<Option<VectorSequence>> {
    let mut a = vec![random_nonsingular(rng, field, n)];
    a.extend((1..d).map(|_| random_matrix(rng, field, n, n)));
    let init = random_vector(rng, field, n * d);
    let mut data = init.clone();
    loop {
        let len = data.len() / n;
        let period = len + 1 - d;
        if period > max_period {
            return Ok(None);
        }
        let base = (len - d) * n;
        let mut next = vec![0u32; n];
        for (i, ai) in a.iter().enumerate() {
            let v = &data[base + i * n..base + (i + 1) * n];
            for (r, x) in next.iter_mut().enumerate() {
                let dot = ai
                    .row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&m, &t)| field.add(acc, field.mul(m, t)));
                *x = field.sub(*x, dot);
            }
        }
        data.extend_from_slice(&next);
        if data[data.len() - d * n..] == init[..] {
            data.truncate(period * n);
            return VectorSequence::from_flat(field, n, data, Some(period)).map(Some);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wlc::compute_wlc;

    #[test]
    fn recurrent_sequences_are_periodic_and_annihilated() {
        let mut rng = SplitMix64::new(7);
        let f = Field::new(3).unwrap();
        let mut found = 0;
        for _ in 0..50 {
            if let Some(v) = random_recurrent_sequence(&mut rng, f, 2, 2, 200).unwrap() {
                found += 1;
                let r = compute_wlc(&v).unwrap();
                assert!(r.lc <= 4);
                if r.nontrivial {
                    assert!(r.wlc.unwrap() <= 2);
                }
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn nonsingular_draws() {
        let mut rng = SplitMix64::new(1);
        let f = Field::gf2();
        for _ in 0..50 {
            assert_eq!(linalg::rank(&random_nonsingular(&mut rng, f, 4)), 4);
        }
    }
}
