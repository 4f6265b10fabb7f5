//! Dense univariate polynomials over any [`FieldOps`] context.

use super::ops::FieldOps;
use crate::error::{Error, Result};

/// Coefficients lowest degree first. The zero polynomial has no coefficients;
/// otherwise the last coefficient is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

/// Borrowed view of `F[x]` for a field context `F`.
#[derive(Clone, Copy)]
pub struct PolyRing<'a, F: FieldOps> {
    field: &'a F,
}

impl<'a, F: FieldOps> PolyRing<'a, F> {
    pub fn new(field: &'a F) -> Self {
        Self { field }
    }

    pub fn field(&self) -> &'a F {
        self.field
    }

    pub fn poly(&self, mut coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.poly(vec![c])
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    /// The monomial `c x^k`.
    pub fn monomial(&self, c: F::Elem, k: usize) -> Poly<F::Elem> {
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.push(c);
        self.poly(coeffs)
    }

    pub fn x(&self) -> Poly<F::Elem> {
        self.monomial(self.field.one(), 1)
    }

    pub fn coeff(&self, f: &Poly<F::Elem>, i: usize) -> F::Elem {
        f.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self, f: &Poly<F::Elem>) -> bool {
        f.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let out = (0..n)
            .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => self.field.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.poly(out)
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly {
            coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        self.poly(a.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = self.field.mul(x, y);
                out[i + j] = self.field.add(&out[i + j], &t);
            }
        }
        self.poly(out)
    }

    pub fn divrem(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
        let db = b.degree().ok_or(Error::ZeroInverse)?;
        let lead_inv = self.field.inv(b.leading().unwrap())?;
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), a.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - db];
        for k in (db..rem.len()).rev() {
            if self.field.is_zero(&rem[k]) {
                continue;
            }
            let t = self.field.mul(&rem[k], &lead_inv);
            for (j, bj) in b.coeffs.iter().enumerate() {
                let idx = k - db + j;
                rem[idx] = self.field.sub(&rem[idx], &self.field.mul(&t, bj));
            }
            quot[k - db] = t;
        }
        rem.truncate(db);
        Ok((self.poly(quot), self.poly(rem)))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        Ok(self.divrem(a, b)?.1)
    }

    pub fn make_monic(&self, a: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        match a.leading() {
            None => Ok(Poly::zero()),
            Some(l) => Ok(self.scale(a, &self.field.inv(l)?)),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let r = self.rem(&r0, &r1)?;
            r0 = r1;
            r1 = r;
        }
        self.make_monic(&r0)
    }

    /// Returns `(g, s, t)` with `s a + t b = g` and `g` monic.
    pub fn xgcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>)> {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1)?;
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let Some(lead) = r0.leading() else {
            return Ok((Poly::zero(), Poly::zero(), Poly::zero()));
        };
        let li = self.field.inv(lead)?;
        Ok((
            self.scale(&r0, &li),
            self.scale(&s0, &li),
            self.scale(&t0, &li),
        ))
    }

    pub fn mul_mod(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
        m: &Poly<F::Elem>,
    ) -> Result<Poly<F::Elem>> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn pow_mod(&self, a: &Poly<F::Elem>, mut e: u128, m: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        let mut base = self.rem(a, m)?;
        let mut acc = self.rem(&self.one(), m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &base, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_mod(&base, &base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, f: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
        f.coeffs.iter().rev().fold(self.field.zero(), |acc, c| {
            self.field.add(&self.field.mul(&acc, x), c)
        })
    }

    /// `f(g(x))` by Horner's rule.
    pub fn compose(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        f.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            self.add(&self.mul(&acc, g), &self.constant(c.clone()))
        })
    }

    /// `x^deg f(1/x)`, the coefficient-reversed polynomial.
    pub fn reverse(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut c = f.coeffs.clone();
        c.reverse();
        self.poly(c)
    }

    pub fn derivative(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        let out = f
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.mul(c, &self.field.from_int(i as i64)))
            .collect();
        self.poly(out)
    }

    /// Apply the `p^k`-power map to every coefficient.
    pub fn map_frobenius(&self, f: &Poly<F::Elem>, k: usize) -> Poly<F::Elem> {
        self.poly(f.coeffs.iter().map(|c| self.field.frobenius(c, k)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::prime::PrimeModulus;

    fn ring_poly(p: &PrimeModulus, c: &[i64]) -> Poly<crate::FpScalar> {
        PolyRing::new(p).poly(c.iter().map(|&v| p.scalar_i64(v)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let p = PrimeModulus::new(7).unwrap();
        let r = PolyRing::new(&p);
        let a = ring_poly(&p, &[3, 0, 5, 1, 6, 2]);
        let b = ring_poly(&p, &[1, 4, 3]);
        let (q, rem) = r.divrem(&a, &b).unwrap();
        assert!(rem.degree().unwrap_or(0) < 2);
        assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
    }

    #[test]
    fn xgcd_bezout() {
        let p = PrimeModulus::new(5).unwrap();
        let r = PolyRing::new(&p);
        let a = ring_poly(&p, &[1, 0, 1]);
        let b = ring_poly(&p, &[2, 1]);
        let (g, s, t) = r.xgcd(&a, &b).unwrap();
        assert_eq!(r.add(&r.mul(&s, &a), &r.mul(&t, &b)), g);
        // 3 is a root of x^2 + 1 mod 5, so the gcd is x - 3 = x + 2
        assert_eq!(g, ring_poly(&p, &[2, 1]));
    }

    #[test]
    fn compose_and_reverse() {
        let p = PrimeModulus::new(3).unwrap();
        let r = PolyRing::new(&p);
        // (x - 1) o (x^3 - x) = x^3 - x - 1
        let f = ring_poly(&p, &[-1, 1]);
        let g = ring_poly(&p, &[0, -1, 0, 1]);
        assert_eq!(r.compose(&f, &g), ring_poly(&p, &[-1, -1, 0, 1]));
        assert_eq!(r.reverse(&ring_poly(&p, &[1, 2, 0, 1])), ring_poly(&p, &[1, 0, 2, 1]));
        assert_eq!(r.derivative(&ring_poly(&p, &[1, 1, 1, 1])), ring_poly(&p, &[1, 2]));
    }
}
