//! Maps `F: F_p^n -> F_p^n`, their orbits, and local inversion through the
//! recurrences of the iterate sequence.
//!
//! Points are encoded as `index(x) = sum_i x_i p^i` (component 0 least
//! significant); table maps store the image of every encoded point.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{ColumnVector, Matrix};
use crate::poly::VectorSequence;
use crate::rng::SplitMix64;
use crate::wlc::{
    compute_wlc, local_inverse_from_matrix_minpoly, local_inverse_from_scalar_minpoly, WlcReport,
};

/// Largest table a map may hold: `p^n <= 2^20`.
pub const MAX_TABLE: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapKind {
    /// `x -> A x + b`
    Affine { a: Matrix, b: Vec<u32> },
    /// Flat `p^n x n` array of images indexed by point encoding.
    Table(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSpec {
    field: Field,
    n: usize,
    kind: MapKind,
}

/// Orbit shape of a starting point: `F^(mu+N)(y) = F^(mu)(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitInfo {
    pub preperiod: usize,
    pub period: usize,
    /// Map evaluations spent finding the orbit.
    pub total_steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Matrix,
    Scalar,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Matrix => "matrix",
            Route::Scalar => "scalar",
        }
    }
}

/// A verified local inverse `x` with `F(x) = y`.
#[derive(Debug, Clone)]
pub struct Inversion {
    pub x: ColumnVector,
    pub report: WlcReport,
    pub route: Route,
    /// Length of the iterate prefix that produced `x`.
    pub terms: usize,
}

/// `p^n`, or `None` when it overflows `u64`.
pub fn space_size(field: Field, n: usize) -> Option<u64> {
    (field.p() as u64).checked_pow(n as u32)
}

pub fn encode(field: Field, x: &[u32]) -> Result<u64> {
    let p = field.p() as u64;
    let mut idx = 0u64;
    for &xi in x.iter().rev() {
        if xi as u64 >= p {
            return Err(Error::EncodingOutOfRange(format!("entry {xi} >= {p}")));
        }
        idx = idx
            .checked_mul(p)
            .and_then(|v| v.checked_add(xi as u64))
            .ok_or_else(|| Error::EncodingOutOfRange("index overflows u64".into()))?;
    }
    Ok(idx)
}

pub fn decode(field: Field, n: usize, mut idx: u64) -> Vec<u32> {
    let p = field.p() as u64;
    (0..n)
        .map(|_| {
            let d = idx % p;
            idx /= p;
            d as u32
        })
        .collect()
}

impl MapSpec {
    pub fn affine(a: Matrix, b: Vec<u32>) -> Result<Self> {
        let n = a.rows();
        if !a.is_square() || b.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "affine map needs an n x n matrix and n offsets, got {}x{} and {}",
                a.rows(),
                a.cols(),
                b.len()
            )));
        }
        let field = a.field();
        if b.iter().any(|&v| v >= field.p()) {
            return Err(Error::InvalidArgument("offset not canonical".into()));
        }
        Ok(Self {
            field,
            n,
            kind: MapKind::Affine { a, b },
        })
    }

    /// Table map from a flat array of `p^n` images of `n` entries each.
    pub fn table(field: Field, n: usize, images: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        let size = space_size(field, n)
            .filter(|&s| s <= MAX_TABLE)
            .ok_or_else(|| Error::TooLarge(format!("p^n exceeds {MAX_TABLE}")))?;
        if images.len() as u64 != size * n as u64 {
            return Err(Error::DimensionMismatch(format!(
                "table holds {} values, expected {}",
                images.len(),
                size * n as u64
            )));
        }
        if images.iter().any(|&v| v >= field.p()) {
            return Err(Error::InvalidArgument("table entry not canonical".into()));
        }
        Ok(Self {
            field,
            n,
            kind: MapKind::Table(images),
        })
    }

    /// Table map from an index permutation or function on `0..p^n`.
    pub fn from_index_map(field: Field, n: usize, map: &[u64]) -> Result<Self> {
        let mut images = Vec::with_capacity(map.len() * n);
        for &k in map {
            images.extend(decode(field, n, k));
        }
        Self::table(field, n, images)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    /// Image of an encoded point, for table maps.
    pub fn table_image(&self, idx: u64) -> Option<&[u32]> {
        match &self.kind {
            MapKind::Table(t) => {
                let i = idx as usize;
                t.get(i * self.n..(i + 1) * self.n)
            }
            MapKind::Affine { .. } => None,
        }
    }

    /// Whether a table map is a bijection (affine maps: whether `A` is invertible).
    pub fn is_permutation(&self) -> bool {
        match &self.kind {
            MapKind::Affine { a, .. } => crate::linalg::inverse(a).is_ok(),
            MapKind::Table(t) => {
                let size = t.len() / self.n;
                let mut seen = vec![false; size];
                t.chunks(self.n).all(|img| {
                    let k = encode(self.field, img).expect("canonical") as usize;
                    !std::mem::replace(&mut seen[k], true)
                })
            }
        }
    }

    fn step(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "point has {} entries, map acts on dimension {}",
                x.len(),
                self.n
            )));
        }
        let f = self.field;
        match &self.kind {
            MapKind::Affine { a, b } => {
                if x.iter().any(|&v| v >= f.p()) {
                    return Err(Error::EncodingOutOfRange("entry not canonical".into()));
                }
                Ok((0..self.n)
                    .map(|i| {
                        a.row(i)
                            .iter()
                            .zip(x)
                            .fold(b[i], |acc, (&aij, &xj)| f.add(acc, f.mul(aij, xj)))
                    })
                    .collect())
            }
            MapKind::Table(_) => {
                let idx = encode(f, x)?;
                self.table_image(idx)
                    .map(<[u32]>::to_vec)
                    .ok_or_else(|| Error::EncodingOutOfRange(format!("index {idx}")))
            }
        }
    }
}

fn as_point(f: &MapSpec, x: &ColumnVector) -> Result<Vec<u32>> {
    if x.cols() != 1 || x.rows() != f.n {
        return Err(Error::DimensionMismatch(format!(
            "expected a {}x1 column, got {}x{}",
            f.n,
            x.rows(),
            x.cols()
        )));
    }
    if x.field() != f.field {
        return Err(Error::ModulusMismatch(f.field.p(), x.field().p()));
    }
    Ok(x.as_slice().to_vec())
}

pub fn apply_map(f: &MapSpec, x: &ColumnVector) -> Result<ColumnVector> {
    let y = f.step(&as_point(f, x)?)?;
    Ok(Matrix::column(f.field, &y))
}

/// `V_0 = y, V_1 = F(y), ..., V_{count-1}`.
pub fn iterate_map(f: &MapSpec, y: &ColumnVector, count: usize) -> Result<VectorSequence> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be >= 1".into()));
    }
    let mut x = as_point(f, y)?;
    let mut data = Vec::with_capacity(count * f.n);
    data.extend_from_slice(&x);
    for _ in 1..count {
        x = f.step(&x)?;
        data.extend_from_slice(&x);
    }
    VectorSequence::from_flat(f.field, f.n, data, None)
}

/// Brent's cycle detection on the orbit of `y`.
pub fn detect_period(f: &MapSpec, y: &ColumnVector, bound: usize) -> Result<OrbitInfo> {
    if bound == 0 {
        return Err(Error::InvalidArgument("bound must be >= 1".into()));
    }
    let start = as_point(f, y)?;
    let mut steps = 0usize;
    let eval = |x: &[u32], steps: &mut usize| {
        *steps += 1;
        f.step(x)
    };
    let mut power = 1usize;
    let mut lam = 1usize;
    let mut tortoise = start.clone();
    let mut hare = eval(&start, &mut steps)?;
    while tortoise != hare {
        if power == lam {
            tortoise = hare.clone();
            power *= 2;
            lam = 0;
        }
        if steps > 2 * bound + 2 {
            return Err(Error::BoundExceeded(bound));
        }
        hare = eval(&hare, &mut steps)?;
        lam += 1;
    }
    let mut tortoise = start.clone();
    let mut hare = start;
    for _ in 0..lam {
        hare = eval(&hare, &mut steps)?;
    }
    let mut mu = 0usize;
    while tortoise != hare {
        tortoise = eval(&tortoise, &mut steps)?;
        hare = eval(&hare, &mut steps)?;
        mu += 1;
    }
    if mu + lam > bound {
        return Err(Error::BoundExceeded(bound));
    }
    Ok(OrbitInfo {
        preperiod: mu,
        period: lam,
        total_steps: steps,
    })
}

/// Number of iterate terms in the first attempt of [`local_invert`].
pub const INITIAL_TERMS: usize = 16;

/// Finds `x` with `F(x) = y` from the recurrences of the orbit of `y`.
///
/// Generates `M` iterates (`M = 16, 32, ...` capped at `max_terms`),
/// computes the matrix minimal polynomial when it exists and the scalar one
/// otherwise, and accepts the candidate prefix only if `F(x) = y`. Orbits
/// with a nonzero preperiod are rejected.
pub fn local_invert(f: &MapSpec, y: &ColumnVector, max_terms: usize) -> Result<Inversion> {
    if max_terms < 4 {
        return Err(Error::InvalidArgument("max_terms must be >= 4".into()));
    }
    let y_point = as_point(f, y)?;
    match detect_period(f, y, max_terms) {
        Ok(info) if info.preperiod > 0 => return Err(Error::NotPeriodic(info.preperiod)),
        Ok(_) | Err(Error::BoundExceeded(_)) => {}
        Err(e) => return Err(e),
    }
    let mut terms = INITIAL_TERMS.min(max_terms);
    let mut zero_constant;
    loop {
        let seq = iterate_map(f, y, terms)?;
        zero_constant = false;
        match compute_wlc(&seq) {
            Ok(report) => {
                let (route, candidate) = if report.nontrivial {
                    (
                        Route::Matrix,
                        local_inverse_from_matrix_minpoly(&seq, &report.matrix_minpoly),
                    )
                } else {
                    (
                        Route::Scalar,
                        local_inverse_from_scalar_minpoly(&seq, &report.scalar_minpoly),
                    )
                };
                match candidate {
                    Ok(x) => {
                        if f.step(x.as_slice())? == y_point {
                            return Ok(Inversion {
                                x,
                                report,
                                route,
                                terms,
                            });
                        }
                    }
                    Err(Error::ZeroConstantTerm | Error::SingularConstantCoefficient) => {
                        zero_constant = true;
                    }
                    Err(e) => return Err(e),
                }
            }
            Err(Error::InsufficientData(_)) => {}
            Err(e) => return Err(e),
        }
        if terms >= max_terms {
            break;
        }
        terms = (terms * 2).min(max_terms);
    }
    if zero_constant {
        Err(Error::ZeroConstantTerm)
    } else {
        Err(Error::Exhausted(max_terms))
    }
}

/// Pseudorandom table map drawn from `rng` (Fisher-Yates for permutations,
/// independent uniform images otherwise).
pub fn random_map_from(
    rng: &mut SplitMix64,
    field: Field,
    n: usize,
    permutation: bool,
) -> Result<MapSpec> {
    let size = space_size(field, n)
        .filter(|&s| s <= MAX_TABLE)
        .ok_or_else(|| Error::TooLarge(format!("p^n exceeds {MAX_TABLE}")))?;
    let map: Vec<u64> = if permutation {
        let mut t: Vec<u64> = (0..size).collect();
        for i in (1..size as usize).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            t.swap(i, j);
        }
        t
    } else {
        (0..size).map(|_| rng.below(size)).collect()
    };
    MapSpec::from_index_map(field, n, &map)
}

pub fn random_map(field: Field, n: usize, seed: u64, permutation: bool) -> Result<MapSpec> {
    random_map_from(&mut SplitMix64::new(seed), field, n, permutation)
}
