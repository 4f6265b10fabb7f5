//! Residue arithmetic modulo a small prime.

use std::fmt;

use crate::error::{Error, Result};

/// Upper bound (exclusive) on supported characteristics. Keeps every
/// product of two residues inside a `u32` and long dot products inside `u64`.
pub const MAX_PRIME: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u32);

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..MAX_PRIME).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u32 {
        (v % self.0 as u64) as u32
    }

    /// Reduce a signed integer into `[0, p)`.
    pub fn reduce_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.0
    }

    /// Inverse by the extended Euclidean algorithm on integers.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a % self.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let (mut r0, mut r1) = (self.0 as i64, (a % self.0) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.reduce_i64(t0))
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.0;
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn scalar(self, v: u64) -> FpScalar {
        FpScalar {
            value: self.reduce(v),
            modulus: self,
        }
    }

    pub fn scalar_i64(self, v: i64) -> FpScalar {
        FpScalar {
            value: self.reduce_i64(v),
            modulus: self,
        }
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of the prime field, tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    modulus: PrimeModulus,
}

impl FpScalar {
    pub fn new(value: u64, modulus: PrimeModulus) -> Self {
        modulus.scalar(value)
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<Self> {
        Ok(Self {
            value: self.modulus.inv(self.value)?,
            modulus: self.modulus,
        })
    }

    pub fn pow(self, e: u64) -> Self {
        Self {
            value: self.modulus.pow(self.value, e),
            modulus: self.modulus,
        }
    }
}

/// `a^{-1} mod p`.
pub fn fp_inv(a: FpScalar) -> Result<FpScalar> {
    a.inv()
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl std::ops::$tr for FpScalar {
            type Output = FpScalar;
            fn $method(self, rhs: FpScalar) -> FpScalar {
                assert_eq!(self.modulus, rhs.modulus, "scalars from different prime fields");
                FpScalar {
                    value: self.modulus.$op(self.value, rhs.value),
                    modulus: self.modulus,
                }
            }
        }
    };
}

scalar_binop!(Add, add, add);
scalar_binop!(Sub, sub, sub);
scalar_binop!(Mul, mul, mul);

impl std::ops::Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar {
            value: self.modulus.neg(self.value),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert_eq!(PrimeModulus::new(4), Err(Error::NotPrime(4)));
        assert_eq!(PrimeModulus::new(65537), Err(Error::ModulusOutOfRange(65537)));
        assert!(PrimeModulus::new(65521).is_ok());
    }

    #[test]
    fn inverse_examples() {
        let p7 = PrimeModulus::new(7).unwrap();
        assert_eq!(fp_inv(p7.scalar(3)).unwrap().value(), 5);
        for p in [2u64, 3, 5, 65521] {
            let m = PrimeModulus::new(p).unwrap();
            assert_eq!(fp_inv(m.scalar(1)).unwrap().value(), 1);
        }
        let p5 = PrimeModulus::new(5).unwrap();
        assert_eq!(fp_inv(p5.scalar(0)), Err(Error::ZeroInverse));
    }

    #[test]
    fn inverse_exhaustive_small() {
        for p in [2u64, 3, 5, 7, 11, 13, 251] {
            let m = PrimeModulus::new(p).unwrap();
            for a in 1..p as u32 {
                assert_eq!(m.mul(a, m.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn no_overflow_at_largest_prime() {
        let m = PrimeModulus::new(65521).unwrap();
        let a = 65520;
        assert_eq!(m.mul(a, a), 1);
        assert_eq!(m.add(a, a), 65519);
        assert_eq!(m.sub(0, a), 1);
    }
}
