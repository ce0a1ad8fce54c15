//! Arithmetic in the prime field F_p.
//!
//! [`Field`] carries the modulus and performs arithmetic on raw canonical
//! representatives (`u32` in `[0, p)`); the matrix and polynomial code works
//! on those directly. [`FieldElem`] bundles a value with its field for the
//! scalar-facing API.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A prime field F_p with `2 <= p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    p: u32,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    pub fn gf2() -> Self {
        Self { p: 2 }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Canonical representative of an arbitrary integer.
    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: u32) -> Result<u32> {
        let a = a % self.p;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.reduce(t0))
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn elem(&self, v: i64) -> FieldElem {
        FieldElem {
            value: self.reduce(v),
            field: *self,
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElem {
        self.elem(1)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

/// An element of F_p in canonical form.
///
/// The operator impls panic when the operands belong to different fields;
/// use the `checked_*` methods to get a [`Error::ModulusMismatch`] instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u32,
    field: Field,
}

impl FieldElem {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> Result<Field> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch(self.field.p, other.field.p));
        }
        Ok(self.field)
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let f = self.same_field(&rhs)?;
        Ok(Self {
            value: f.add(self.value, rhs.value),
            field: f,
        })
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        let f = self.same_field(&rhs)?;
        Ok(Self {
            value: f.sub(self.value, rhs.value),
            field: f,
        })
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let f = self.same_field(&rhs)?;
        Ok(Self {
            value: f.mul(self.value, rhs.value),
            field: f,
        })
    }

    pub fn inv(self) -> Result<Self> {
        Ok(Self {
            value: self.field.inv(self.value)?,
            field: self.field,
        })
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> Self {
        Self {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
