//! Scalar polynomials over F_p, vector sequences, and the scalar minimal
//! polynomial (linear complexity) of a vector sequence.
//!
//! Polynomials are stored in ascending degree and displayed in descending
//! degree. A minimal polynomial `m(X) = X^m + a_{m-1} X^{m-1} + ... + a_0`
//! encodes the recurrence `V_{m+j} + sum_i a_i V_{i+j} = 0`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::linalg::{self, Matrix};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarPoly {
    field: Field,
    coeffs: Vec<u32>,
}

impl ScalarPoly {
    /// Builds a polynomial from ascending coefficients, reducing mod p.
    pub fn new(field: Field, coeffs: &[i64]) -> Self {
        Self::from_raw(field, coeffs.iter().map(|&c| field.reduce(c)).collect())
    }

    /// Builds a polynomial from descending coefficients (leading first).
    pub fn from_descending(field: Field, coeffs: &[i64]) -> Self {
        let mut asc: Vec<i64> = coeffs.to_vec();
        asc.reverse();
        Self::new(field, &asc)
    }

    pub(crate) fn from_raw(field: Field, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::monomial(field, 1, 0)
    }

    /// `c * X^k`.
    pub fn monomial(field: Field, c: u32, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c % field.p();
        Self::from_raw(field, coeffs)
    }

    /// `X^k - 1`.
    pub fn x_pow_minus_one(field: Field, k: usize) -> Self {
        let mut p = Self::monomial(field, 1, k);
        p = p.sub(&Self::one(field));
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Ascending coefficients without trailing zeros.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeff_elem(&self, i: usize) -> FieldElem {
        self.field.elem(self.coeff(i) as i64)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_raw(
            f,
            (0..len)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_raw(
            f,
            (0..len)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        Self::from_raw(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let f = self.field;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::from_raw(f, out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Scales to leading coefficient 1; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => self.scale(self.field.inv(lc).expect("nonzero leading")),
        }
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = self.field;
        let inv_lead = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let Some(deg) = self.degree().filter(|&d| d >= dd) else {
            return Ok((Self::zero(f), self.clone()));
        };
        let mut quot = vec![0u32; deg - dd + 1];
        for k in (dd..=deg).rev() {
            let c = f.mul(rem[k], inv_lead);
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = f.sub(rem[idx], f.mul(c, dc));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_raw(f, quot), Self::from_raw(f, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Coefficients leading-first, comma separated; `0` for the zero polynomial.
    pub fn descending_csv(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .rev()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && k > 0 {
                String::new()
            } else {
                c.to_string()
            };
            terms.push(match k {
                0 => coef,
                1 => format!("{coef}X"),
                _ => format!("{coef}X^{k}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarPoly[{}]({})", self.field, self)
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &ScalarPoly, b: &ScalarPoly) -> ScalarPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y).expect("nonzero divisor");
        x = y;
        y = r;
    }
    x.monic()
}

/// Monic lcm; zero if either argument is zero.
pub fn poly_lcm(a: &ScalarPoly, b: &ScalarPoly) -> ScalarPoly {
    if a.is_zero() || b.is_zero() {
        return ScalarPoly::zero(a.field);
    }
    let g = poly_gcd(a, b);
    let (q, _) = a.mul(b).div_rem(&g).expect("gcd is nonzero");
    q.monic()
}

/// True when `a` divides `b` exactly. Only the zero polynomial is divisible by zero.
pub fn poly_divides(a: &ScalarPoly, b: &ScalarPoly) -> bool {
    if a.is_zero() {
        return b.is_zero();
    }
    b.rem(a).expect("nonzero divisor").is_zero()
}

/// Least `N <= bound` with `f | X^N - 1`.
pub fn poly_order(f: &ScalarPoly, bound: usize) -> Result<usize> {
    match f.degree() {
        None | Some(0) => {
            return Err(Error::InvalidArgument(
                "order needs a polynomial of degree >= 1".into(),
            ))
        }
        _ => {}
    }
    if f.coeff(0) == 0 {
        return Err(Error::ZeroConstantTerm);
    }
    let field = f.field;
    let one = ScalarPoly::one(field);
    let x = ScalarPoly::monomial(field, 1, 1);
    let mut power = x.rem(f)?;
    for k in 1..=bound {
        if power == one {
            return Ok(k);
        }
        power = power.mul(&x).rem(f)?;
    }
    Err(Error::OrderExceedsBound(bound))
}

/// Terms `V_0 .. V_{M-1}` of a sequence in F_p^n, optionally with a known
/// period `N <= M`. With a period, terms beyond `M` are read periodically.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorSequence {
    field: Field,
    n: usize,
    len: usize,
    data: Vec<u32>,
    period: Option<usize>,
}

impl VectorSequence {
    pub fn new(field: Field, n: usize, terms: &[Vec<u32>], period: Option<usize>) -> Result<Self> {
        let mut data = Vec::with_capacity(terms.len() * n);
        for (i, t) in terms.iter().enumerate() {
            if t.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "term {i} has {} entries, expected {n}",
                    t.len()
                )));
            }
            data.extend_from_slice(t);
        }
        Self::from_flat(field, n, data, period)
    }

    pub fn from_flat(
        field: Field,
        n: usize,
        data: Vec<u32>,
        period: Option<usize>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        if !data.len().is_multiple_of(n) {
            return Err(Error::DimensionMismatch(
                "data is not a whole number of terms".into(),
            ));
        }
        if let Some(v) = data.iter().find(|&&v| v >= field.p()) {
            return Err(Error::InvalidArgument(format!(
                "entry {v} not canonical mod {}",
                field.p()
            )));
        }
        let len = data.len() / n;
        if let Some(index) = period_violation(n, &data, period)? {
            return Err(Error::InvalidArgument(format!(
                "term {index} breaks the declared period"
            )));
        }
        Ok(Self {
            field,
            n,
            len,
            data,
            period,
        })
    }

    /// Builds a sequence from column vectors (`n x 1` matrices).
    pub fn from_columns(columns: &[Matrix], period: Option<usize>) -> Result<Self> {
        let first = columns
            .first()
            .ok_or_else(|| Error::InvalidArgument("no terms".into()))?;
        let n = first.rows();
        let mut data = Vec::with_capacity(columns.len() * n);
        for c in columns {
            if c.rows() != n || c.cols() != 1 || c.field() != first.field() {
                return Err(Error::DimensionMismatch(
                    "terms must be n x 1 columns".into(),
                ));
            }
            data.extend_from_slice(c.as_slice());
        }
        Self::from_flat(first.field(), n, data, period)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Vector dimension `n`.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of stored terms `M`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn period(&self) -> Option<usize> {
        self.period
    }

    /// Term `V_i`, reading periodically past the stored prefix when the period is known.
    pub fn term(&self, i: usize) -> Option<&[u32]> {
        let idx = if i < self.len {
            i
        } else {
            i % self.period.filter(|&p| p > 0)?
        };
        Some(&self.data[idx * self.n..(idx + 1) * self.n])
    }

    /// Number of terms addressable through [`term`](Self::term), `None` if unbounded.
    pub fn available(&self) -> Option<usize> {
        match self.period {
            Some(_) => None,
            None => Some(self.len),
        }
    }

    pub fn has_terms(&self, count: usize) -> bool {
        self.available().is_none_or(|a| a >= count)
    }

    pub fn term_vector(&self, i: usize) -> Option<Matrix> {
        self.term(i).map(|t| Matrix::column(self.field, t))
    }

    pub fn stored(&self) -> impl Iterator<Item = &[u32]> {
        self.data.chunks(self.n)
    }

    /// First `count` values of component `c`.
    pub fn component(&self, c: usize, count: usize) -> Option<Vec<u32>> {
        (0..count).map(|i| self.term(i).map(|t| t[c])).collect()
    }

    /// Same stored terms with `v` prepended; the period is kept.
    pub fn prepend(&self, v: &[u32]) -> Result<Self> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch(
                "prefix has wrong dimension".into(),
            ));
        }
        let mut data = v.to_vec();
        data.extend_from_slice(&self.data);
        Self::from_flat(self.field, self.n, data, None)
    }

    /// Number of shifts `j` over which a recurrence spanning `window` terms
    /// must hold: one full period if known, otherwise every stored window.
    pub fn shift_count(&self, window: usize) -> usize {
        match self.period {
            Some(p) => p,
            None => (self.len + 1).saturating_sub(window),
        }
    }

    /// True when the monic-or-not scalar recurrence `sum_i c_i V_{i+j} = 0`
    /// holds for every checkable shift.
    pub fn annihilated_by(&self, poly: &ScalarPoly) -> bool {
        let Some(deg) = poly.degree() else {
            return true;
        };
        let f = self.field;
        (0..self.shift_count(deg + 1)).all(|j| {
            (0..self.n).all(|c| {
                let mut acc = 0u32;
                for (i, &a) in poly.coeffs().iter().enumerate() {
                    acc = f.add(acc, f.mul(a, self.term(i + j).expect("in range")[c]));
                }
                acc == 0
            })
        })
    }
}

impl fmt::Debug for VectorSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "VectorSequence[{}; n={}, M={}, period={:?}] {:?}",
            self.field,
            self.n,
            self.len,
            self.period,
            self.stored().collect::<Vec<_>>()
        )
    }
}

/// First stored index `i >= N` with `V_i != V_{i-N}`, if any.
pub fn period_violation(n: usize, data: &[u32], period: Option<usize>) -> Result<Option<usize>> {
    let Some(p) = period else {
        return Ok(None);
    };
    let len = data.len() / n.max(1);
    if p == 0 || p > len {
        return Err(Error::InvalidArgument(format!(
            "period {p} must be in 1..={len} (stored terms)"
        )));
    }
    Ok((p..len).find(|&i| data[i * n..(i + 1) * n] != data[(i - p) * n..(i - p + 1) * n]))
}

/// The `(k n) x k` Hankel matrix whose block `(i, j)` is `V_{i+j}`.
pub fn hankel(v: &VectorSequence, k: usize) -> Result<Matrix> {
    if k > 0 && !v.has_terms(2 * k - 1) {
        return Err(Error::InsufficientData(format!(
            "H({k}) needs {} terms, have {}",
            2 * k - 1,
            v.len()
        )));
    }
    let n = v.dim();
    let mut h = Matrix::zeros(v.field(), k * n, k);
    for i in 0..k {
        for j in 0..k {
            let t = v.term(i + j).expect("checked above");
            for (c, &val) in t.iter().enumerate() {
                h.set(i * n + c, j, val);
            }
        }
    }
    Ok(h)
}

/// Scalar minimal polynomial of a vector sequence from Hankel rank
/// stabilization.
///
/// The rank of `H(k)` is nondecreasing in `k` and equals the linear
/// complexity once `k >= LC`. The candidate `m` is the rank of the largest
/// Hankel matrix the data supports (`H(N+1)` with a known period, otherwise
/// `H(floor((M+1)/2))`); it is accepted when `rank H(m) = m` and at least one
/// stabilization step `H(m+1)` fits. The coefficients come from
/// `H(m) a = -h(m+1)`.
pub fn hankel_scalar_minpoly(v: &VectorSequence) -> Result<ScalarPoly> {
    if v.is_empty() {
        return Err(Error::InsufficientData("empty sequence".into()));
    }
    let field = v.field();
    let k_max = match v.period() {
        Some(p) => p + 1,
        None => v.len().div_ceil(2),
    };
    let m = linalg::rank(&hankel(v, k_max)?);
    if m + 1 > k_max {
        return Err(Error::InsufficientData(format!(
            "Hankel rank {m} has not stabilised within {} terms",
            v.len()
        )));
    }
    if m == 0 {
        return Ok(ScalarPoly::one(field));
    }
    let hm = hankel(v, m)?;
    if linalg::rank(&hm) != m {
        return Err(Error::InsufficientData(format!("H({m}) is singular")));
    }
    let n = v.dim();
    let mut rhs = Matrix::zeros(field, m * n, 1);
    for i in 0..m {
        for (c, &val) in v.term(m + i).expect("within H(m+1)").iter().enumerate() {
            rhs.set(i * n + c, 0, field.neg(val));
        }
    }
    let alpha = match linalg::solve_right(&hm, &rhs) {
        Ok(a) => a,
        Err(Error::NoSolution) => {
            return Err(Error::InsufficientData("recurrence is inconsistent".into()))
        }
        Err(e) => return Err(e),
    };
    let mut coeffs: Vec<u32> = alpha.as_slice().to_vec();
    coeffs.push(1);
    let poly = ScalarPoly::from_raw(field, coeffs);
    if !v.annihilated_by(&poly) {
        return Err(Error::InsufficientData(
            "recurrence fails on later terms".into(),
        ));
    }
    Ok(poly)
}

/// Berlekamp-Massey, returning the minimal polynomial in recurrence form
/// `X^L + c_1 X^{L-1} + ... + c_L` (the reversed connection polynomial).
pub fn berlekamp_massey(field: Field, s: &[u32]) -> ScalarPoly {
    let mut c = vec![1u32];
    let mut b = vec![1u32];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut last_disc = 1u32;
    for i in 0..s.len() {
        let mut d = s[i] % field.p();
        for j in 1..=l.min(c.len() - 1) {
            d = field.add(d, field.mul(c[j], s[i - j]));
        }
        if d == 0 {
            shift += 1;
            continue;
        }
        let coef = field.mul(d, field.inv(last_disc).expect("nonzero discrepancy"));
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, 0);
        }
        for (j, &bj) in b.iter().enumerate() {
            c[j + shift] = field.sub(c[j + shift], field.mul(coef, bj));
        }
        if 2 * l <= i {
            l = i + 1 - l;
            b = prev;
            last_disc = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.resize(l + 1, 0);
    c.reverse();
    ScalarPoly::from_raw(field, c)
}

/// lcm of the per-component Berlekamp-Massey minimal polynomials.
pub fn component_minpoly_lcm(v: &VectorSequence) -> Result<ScalarPoly> {
    if v.is_empty() {
        return Err(Error::InsufficientData("empty sequence".into()));
    }
    let field = v.field();
    let count = match v.period() {
        Some(p) => 2 * p,
        None => v.len(),
    };
    let mut acc = ScalarPoly::one(field);
    for c in 0..v.dim() {
        let s = v.component(c, count).expect("count is addressable");
        let mp = berlekamp_massey(field, &s);
        if 2 * mp.degree().unwrap_or(0) > count {
            return Err(Error::InsufficientData(format!(
                "component {c} needs more than {count} terms"
            )));
        }
        acc = poly_lcm(&acc, &mp);
    }
    Ok(acc)
}
