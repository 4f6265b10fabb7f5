use std::fmt::Debug;

use super::prime::{FpScalar, PrimeModulus};
use crate::error::Result;

/// Arithmetic supplied by a field *context*.
///
/// Elements of a runtime-sized finite field cannot produce `zero()` or
/// `one()` on their own, so the generic polynomial and linear-algebra code
/// is written against the context instead of against the element type.
pub trait FieldOps {
    type Elem: Clone + PartialEq + Debug;

    fn modulus(&self) -> PrimeModulus;
    /// `|F| = p^abs_degree`.
    fn abs_degree(&self) -> usize;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// `a^{p^k}`.
    fn frobenius(&self, a: &Self::Elem, k: usize) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

impl FieldOps for PrimeModulus {
    type Elem = FpScalar;

    fn modulus(&self) -> PrimeModulus {
        *self
    }

    fn abs_degree(&self) -> usize {
        1
    }

    fn zero(&self) -> FpScalar {
        self.scalar(0)
    }

    fn one(&self) -> FpScalar {
        self.scalar(1)
    }

    fn from_int(&self, n: i64) -> FpScalar {
        self.scalar_i64(n)
    }

    fn is_zero(&self, a: &FpScalar) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &FpScalar, b: &FpScalar) -> FpScalar {
        *a + *b
    }

    fn sub(&self, a: &FpScalar, b: &FpScalar) -> FpScalar {
        *a - *b
    }

    fn neg(&self, a: &FpScalar) -> FpScalar {
        -*a
    }

    fn mul(&self, a: &FpScalar, b: &FpScalar) -> FpScalar {
        *a * *b
    }

    fn inv(&self, a: &FpScalar) -> Result<FpScalar> {
        a.inv()
    }

    fn frobenius(&self, a: &FpScalar, _k: usize) -> FpScalar {
        *a
    }
}
