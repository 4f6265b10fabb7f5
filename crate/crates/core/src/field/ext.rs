//! Extension-field towers over `F_p`.
//!
//! A [`FieldCtx`] is one level of a tower `F_p = K_0 ⊂ K_1 ⊂ … ⊂ K_t`, where
//! `K_i = K_{i-1}[x] / (f_i)`. An element of `K_i` is stored as its flat
//! vector of prime-field coordinates in the tower basis: `rel_degree` chunks of
//! `base.abs_degree` integers, chunk `j` holding the coordinates of the `x^j`
//! coefficient over the immediate base. The flat vector therefore doubles as
//! the absolute `F_p` coordinate vector, and an element of any ancestor field
//! embeds by zero-padding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;

use super::linalg::{mat_vec_mod_p, rank_mod_p};
use super::ops::FieldOps;
use super::poly::{Poly, PolyRing};
use super::prime::{FpScalar, PrimeModulus};
use crate::error::{Error, Result};

/// Which construction produced a context.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldKind {
    Prime,
    /// Modulus `x^p - x - alpha`, `alpha` in the base.
    ArtinSchreier { alpha: FieldElement },
    /// Modulus `x^(q^s) - xi`, `xi` in the base.
    Kummer { xi: FieldElement, q: u32, s: u32 },
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CoeffClass {
    Zero,
    Scalar(u32),
    General,
}

struct CtxInner {
    p: PrimeModulus,
    base: Option<FieldCtx>,
    /// Monic modulus over the base, `rel_degree + 1` flat chunks, lowest first.
    modulus: Vec<Vec<u32>>,
    classes: Vec<CoeffClass>,
    rel_degree: usize,
    abs_degree: usize,
    kind: FieldKind,
    /// `frob[r][c]` is coordinate `r` of `e_c^p`.
    frob: Vec<Vec<u32>>,
}

/// Shared handle to one tower level. Cloning is cheap; two handles denote
/// the same field only if they point at the same allocation.
#[derive(Clone)]
pub struct FieldCtx(Arc<CtxInner>);

#[derive(Clone)]
pub struct FieldElement {
    ctx: FieldCtx,
    coords: Vec<u32>,
}

impl FieldCtx {
    pub fn prime(p: PrimeModulus) -> Self {
        FieldCtx(Arc::new(CtxInner {
            p,
            base: None,
            modulus: vec![vec![0], vec![1]],
            classes: vec![CoeffClass::Zero],
            rel_degree: 1,
            abs_degree: 1,
            kind: FieldKind::Prime,
            frob: vec![vec![1]],
        }))
    }

    /// Adjoin a root of the monic polynomial `modulus` (coefficients over
    /// `base`, lowest first, leading 1 included). Irreducibility is the
    /// caller's responsibility; see [`crate::oracle`] for a check.
    pub fn extension(base: &FieldCtx, modulus: &[FieldElement], kind: FieldKind) -> Result<Self> {
        if modulus.len() < 2 || !modulus.last().unwrap().is_one() {
            return Err(Error::BadModulus);
        }
        if modulus.iter().any(|c| !c.ctx.same(base)) {
            return Err(Error::CtxMismatch);
        }
        let rel_degree = modulus.len() - 1;
        let abs_degree = rel_degree * base.abs_degree();
        let classes = modulus[..rel_degree]
            .iter()
            .map(|c| {
                if c.is_zero() {
                    CoeffClass::Zero
                } else if c.coords[1..].iter().all(|&v| v == 0) {
                    CoeffClass::Scalar(c.coords[0])
                } else {
                    CoeffClass::General
                }
            })
            .collect();
        let ctx = FieldCtx(Arc::new(CtxInner {
            p: base.p(),
            base: Some(base.clone()),
            modulus: modulus.iter().map(|c| c.coords.clone()).collect(),
            classes,
            rel_degree,
            abs_degree,
            kind,
            frob: Vec::new(),
        }));
        // Images of the basis vectors under x -> x^p, built once.
        let p = ctx.p().get() as u128;
        let mut frob = vec![vec![0u32; abs_degree]; abs_degree];
        for c in 0..abs_degree {
            let mut e = vec![0u32; abs_degree];
            e[c] = 1;
            let img = ctx.pow_flat(&e, p);
            for (r, v) in img.into_iter().enumerate() {
                frob[r][c] = v;
            }
        }
        let mut inner = Arc::try_unwrap(ctx.0)
            .ok()
            .expect("no other handle to a context under construction");
        inner.frob = frob;
        Ok(FieldCtx(Arc::new(inner)))
    }

    #[inline]
    pub fn p(&self) -> PrimeModulus {
        self.0.p
    }

    #[inline]
    pub fn abs_degree(&self) -> usize {
        self.0.abs_degree
    }

    #[inline]
    pub fn rel_degree(&self) -> usize {
        self.0.rel_degree
    }

    pub fn base(&self) -> Option<&FieldCtx> {
        self.0.base.as_ref()
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0.kind
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.base.is_none()
    }

    /// Number of elements as `u128`, or `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        (self.p().get() as u128).checked_pow(self.abs_degree() as u32)
    }

    pub fn same(&self, other: &FieldCtx) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// The chain of contexts from the prime field up to `self`.
    pub fn chain(&self) -> Vec<FieldCtx> {
        let mut out = vec![self.clone()];
        while let Some(b) = out.last().unwrap().base() {
            out.push(b.clone());
        }
        out.reverse();
        out
    }

    pub fn prime_ctx(&self) -> FieldCtx {
        self.chain().into_iter().next().unwrap()
    }

    /// The modulus as a polynomial over the base. For the prime field this is `x`.
    pub fn modulus_poly(&self) -> Poly<FieldElement> {
        match self.base() {
            None => PolyRing::new(self).x(),
            Some(b) => PolyRing::new(b).poly(
                self.0
                    .modulus
                    .iter()
                    .map(|c| b.elem_unchecked(c.clone()))
                    .collect(),
            ),
        }
    }

    /// Frobenius matrix in absolute coordinates: column `c` is `e_c^p`.
    pub fn frobenius_matrix(&self) -> &[Vec<u32>] {
        &self.0.frob
    }

    fn elem_unchecked(&self, coords: Vec<u32>) -> FieldElement {
        debug_assert_eq!(coords.len(), self.abs_degree());
        FieldElement {
            ctx: self.clone(),
            coords,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.elem_unchecked(vec![0; self.abs_degree()])
    }

    pub fn one(&self) -> FieldElement {
        self.scalar(1)
    }

    pub fn scalar(&self, v: i64) -> FieldElement {
        let mut c = vec![0; self.abs_degree()];
        c[0] = self.p().reduce_i64(v);
        self.elem_unchecked(c)
    }

    pub fn from_fp(&self, s: FpScalar) -> FieldElement {
        self.scalar(s.value() as i64)
    }

    /// Element from absolute prime-field coordinates (any integers; reduced mod p).
    pub fn from_flat(&self, coords: &[i64]) -> Result<FieldElement> {
        if coords.len() != self.abs_degree() {
            return Err(Error::BadLength {
                expected: self.abs_degree(),
                actual: coords.len(),
            });
        }
        let p = self.p();
        Ok(self.elem_unchecked(coords.iter().map(|&v| p.reduce_i64(v)).collect()))
    }

    /// Element from its `rel_degree` coordinates over the immediate base.
    pub fn from_rel(&self, coords: &[FieldElement]) -> Result<FieldElement> {
        let Some(base) = self.base() else {
            return match coords {
                [c] if c.ctx.same(self) => Ok(c.clone()),
                [_] => Err(Error::CtxMismatch),
                _ => Err(Error::BadLength {
                    expected: 1,
                    actual: coords.len(),
                }),
            };
        };
        if coords.len() != self.rel_degree() {
            return Err(Error::BadLength {
                expected: self.rel_degree(),
                actual: coords.len(),
            });
        }
        if coords.iter().any(|c| !c.ctx.same(base)) {
            return Err(Error::CtxMismatch);
        }
        Ok(self.elem_unchecked(coords.iter().flat_map(|c| c.coords.iter().copied()).collect()))
    }

    /// The class of `x`, i.e. the adjoined root of the modulus.
    pub fn generator(&self) -> FieldElement {
        match self.base() {
            None => self.zero(),
            Some(base) if self.rel_degree() == 1 => {
                let c = base.elem_unchecked(self.0.modulus[0].clone());
                self.lift(&(-&c)).unwrap()
            }
            Some(base) => {
                let mut c = vec![0; self.abs_degree()];
                c[base.abs_degree()] = 1;
                self.elem_unchecked(c)
            }
        }
    }

    /// Embed an element of any ancestor field (including `self`).
    pub fn lift(&self, a: &FieldElement) -> Result<FieldElement> {
        if !self.chain().iter().any(|c| c.same(&a.ctx)) {
            return Err(Error::CtxMismatch);
        }
        let mut coords = a.coords.clone();
        coords.resize(self.abs_degree(), 0);
        Ok(self.elem_unchecked(coords))
    }

    /// Project `a` into the ancestor `sub`, if it lies there.
    pub fn restrict(&self, a: &FieldElement, sub: &FieldCtx) -> Option<FieldElement> {
        if !a.ctx.same(self) || !self.chain().iter().any(|c| c.same(sub)) {
            return None;
        }
        let n = sub.abs_degree();
        a.coords[n..]
            .iter()
            .all(|&v| v == 0)
            .then(|| sub.elem_unchecked(a.coords[..n].to_vec()))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let p = self.p().get();
        self.elem_unchecked((0..self.abs_degree()).map(|_| rng.gen_range(0..p)).collect())
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let a = self.random(rng);
            if !a.is_zero() {
                return a;
            }
        }
    }

    /// All elements in canonical (lexicographic on flat coordinates) order.
    /// Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let n = self.abs_degree();
        let p = self.p().get();
        let mut next = Some(vec![0u32; n]);
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut succ = cur.clone();
            let mut i = n;
            let mut done = true;
            while i > 0 {
                i -= 1;
                succ[i] += 1;
                if succ[i] < p {
                    done = false;
                    break;
                }
                succ[i] = 0;
            }
            if !done {
                next = Some(succ);
            }
            Some(self.elem_unchecked(cur))
        })
    }

    // ---- flat arithmetic ------------------------------------------------

    fn add_flat(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p();
        a.iter().zip(b).map(|(&x, &y)| p.add(x, y)).collect()
    }

    fn mul_flat(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p();
        let Some(base) = &self.0.base else {
            return vec![p.mul(a[0], b[0])];
        };
        let d = self.0.rel_degree;
        let c = base.abs_degree();
        let mut prod = if c == 1 {
            let mut wide = vec![0u64; 2 * d - 1];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    wide[i + j] += x as u64 * y as u64;
                }
            }
            wide.into_iter().map(|v| p.reduce(v)).collect::<Vec<u32>>()
        } else {
            let mut prod = vec![0u32; (2 * d - 1) * c];
            for i in 0..d {
                let ai = &a[i * c..(i + 1) * c];
                if ai.iter().all(|&v| v == 0) {
                    continue;
                }
                for j in 0..d {
                    let bj = &b[j * c..(j + 1) * c];
                    if bj.iter().all(|&v| v == 0) {
                        continue;
                    }
                    let t = base.mul_flat(ai, bj);
                    let dst = &mut prod[(i + j) * c..(i + j + 1) * c];
                    for (o, v) in dst.iter_mut().zip(t) {
                        *o = p.add(*o, v);
                    }
                }
            }
            prod
        };
        self.reduce_wide(base, &mut prod);
        prod.truncate(d * c);
        prod
    }

    /// Reduce a product of length `(2d - 1) * c` modulo the monic modulus.
    fn reduce_wide(&self, base: &FieldCtx, prod: &mut [u32]) {
        let p = self.p();
        let d = self.0.rel_degree;
        let c = base.abs_degree();
        for k in (d..prod.len() / c).rev() {
            let t: Vec<u32> = prod[k * c..(k + 1) * c].to_vec();
            if t.iter().all(|&v| v == 0) {
                continue;
            }
            for j in 0..d {
                let dst = (k - d + j) * c;
                match self.0.classes[j] {
                    CoeffClass::Zero => {}
                    CoeffClass::Scalar(s) => {
                        for (o, &v) in prod[dst..dst + c].iter_mut().zip(&t) {
                            *o = p.sub(*o, p.mul(s, v));
                        }
                    }
                    CoeffClass::General => {
                        let st = base.mul_flat(&t, &self.0.modulus[j]);
                        for (o, v) in prod[dst..dst + c].iter_mut().zip(st) {
                            *o = p.sub(*o, v);
                        }
                    }
                }
            }
        }
    }

    fn pow_flat(&self, a: &[u32], mut e: u128) -> Vec<u32> {
        let mut acc = vec![0u32; self.abs_degree()];
        acc[0] = 1;
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_flat(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_flat(&base, &base);
            }
        }
        acc
    }

    fn frob_flat(&self, a: &[u32]) -> Vec<u32> {
        mat_vec_mod_p(self.p(), &self.0.frob, a)
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if a.ctx.same(self) {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    // ---- checked element operations ------------------------------------

    pub fn ext_mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.elem_unchecked(self.mul_flat(&a.coords, &b.coords)))
    }

    pub fn ext_add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.elem_unchecked(self.add_flat(&a.coords, &b.coords)))
    }

    /// Inverse via the extended Euclidean algorithm in `base[x]`.
    pub fn ext_inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let Some(base) = self.base() else {
            let v = self.p().inv(a.coords[0])?;
            return Ok(self.scalar(v as i64));
        };
        let ring = PolyRing::new(base);
        let ap = ring.poly(a.rel_coords());
        let (g, s, _) = ring.xgcd(&ap, &self.modulus_poly())?;
        if g.degree() != Some(0) {
            // a shares a factor with a reducible modulus
            return Err(Error::ZeroInverse);
        }
        let mut coeffs = s.into_coeffs();
        coeffs.resize(self.rel_degree(), base.zero());
        self.from_rel(&coeffs)
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: &FieldElement, k: usize) -> FieldElement {
        debug_assert!(a.ctx.same(self));
        let mut c = a.coords.clone();
        for _ in 0..k % self.abs_degree() {
            c = self.frob_flat(&c);
        }
        self.elem_unchecked(c)
    }

    /// `a, a^p, …, a^(p^(abs_degree-1))`.
    pub fn conjugates(&self, a: &FieldElement) -> Vec<FieldElement> {
        self.conjugates_step(a, 1)
    }

    /// `a^(p^(i·step))` for `0 <= i < abs_degree / step`.
    pub fn conjugates_step(&self, a: &FieldElement, step: usize) -> Vec<FieldElement> {
        let m = self.abs_degree() / step;
        let mut out = Vec::with_capacity(m);
        let mut cur = a.coords.clone();
        for _ in 0..m {
            out.push(self.elem_unchecked(cur.clone()));
            for _ in 0..step {
                cur = self.frob_flat(&cur);
            }
        }
        out
    }

    /// Absolute trace `Σ a^(p^i)`, a prime-field value.
    pub fn trace_to_prime(&self, a: &FieldElement) -> FpScalar {
        let s = self
            .conjugates(a)
            .iter()
            .fold(self.zero(), |acc, c| &acc + c);
        debug_assert!(s.coords[1..].iter().all(|&v| v == 0));
        self.p().scalar(s.coords[0] as u64)
    }

    /// `Σ_{i<m} a^(p^(i·step))`, `m = abs_degree / step`.
    pub fn relative_conjugate_sum(&self, a: &FieldElement, step: usize) -> Result<FieldElement> {
        self.check(a)?;
        if step == 0 || self.abs_degree() % step != 0 {
            return Err(Error::BadStep {
                step,
                degree: self.abs_degree(),
            });
        }
        Ok(self
            .conjugates_step(a, step)
            .iter()
            .fold(self.zero(), |acc, c| &acc + c))
    }

    /// Minimal polynomial over `F_p` from the first linear dependence among
    /// `1, a, a^2, …`.
    pub fn min_poly(&self, a: &FieldElement) -> Poly<FpScalar> {
        let p = self.p();
        let n = self.abs_degree();
        // Echelon rows: (pivot, reduced vector, combination over powers of a).
        let mut basis: Vec<(usize, Vec<u32>, Vec<u32>)> = Vec::new();
        let mut power = self.one().coords;
        for k in 0..=n {
            let mut v = power.clone();
            let mut comb = vec![0u32; k + 1];
            comb[k] = 1;
            for (piv, row, rc) in &basis {
                let f = v[*piv];
                if f == 0 {
                    continue;
                }
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = p.sub(*x, p.mul(f, y));
                }
                for (x, &y) in comb.iter_mut().zip(rc) {
                    *x = p.sub(*x, p.mul(f, y));
                }
            }
            match v.iter().position(|&x| x != 0) {
                None => {
                    return PolyRing::new(&p)
                        .poly(comb.into_iter().map(|c| p.scalar(c as u64)).collect());
                }
                Some(piv) => {
                    let inv = p.inv(v[piv]).unwrap();
                    v.iter_mut().for_each(|x| *x = p.mul(*x, inv));
                    comb.iter_mut().for_each(|x| *x = p.mul(*x, inv));
                    basis.push((piv, v, comb));
                }
            }
            power = self.mul_flat(&power, &a.coords);
        }
        unreachable!("n + 1 vectors in an n-dimensional space are dependent")
    }

    /// Rank over `F_p` of the flattened coordinate vectors.
    pub fn rank_over_prime(&self, elements: &[FieldElement]) -> Result<usize> {
        for e in elements {
            self.check(e)?;
        }
        let rows: Vec<Vec<u32>> = elements.iter().map(|e| e.coords.clone()).collect();
        Ok(rank_mod_p(self.p(), &rows))
    }

    /// Rank over the immediate base of the relative coordinate vectors.
    pub fn rank_over_base(&self, elements: &[FieldElement]) -> Result<usize> {
        for e in elements {
            self.check(e)?;
        }
        match self.base() {
            None => self.rank_over_prime(elements),
            Some(base) => {
                let rows: Vec<Vec<FieldElement>> = elements.iter().map(|e| e.rel_coords()).collect();
                Ok(super::linalg::rank(base, &rows))
            }
        }
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p().get())
            .field("rel_degree", &self.rel_degree())
            .field("abs_degree", &self.abs_degree())
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl FieldElement {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// Absolute prime-field coordinates.
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&v| v == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0] == 1 && self.coords[1..].iter().all(|&v| v == 0)
    }

    /// The value as a prime-field scalar, if it lies in `F_p`.
    pub fn to_prime(&self) -> Option<FpScalar> {
        self.coords[1..]
            .iter()
            .all(|&v| v == 0)
            .then(|| self.ctx.p().scalar(self.coords[0] as u64))
    }

    /// Coordinates over the immediate base (the element itself at the prime field).
    pub fn rel_coords(&self) -> Vec<FieldElement> {
        match self.ctx.base() {
            None => vec![self.clone()],
            Some(base) => {
                let c = base.abs_degree();
                self.coords
                    .chunks(c)
                    .map(|ch| base.elem_unchecked(ch.to_vec()))
                    .collect()
            }
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        self.ctx.ext_inv(self)
    }

    pub fn pow(&self, e: u128) -> FieldElement {
        self.ctx.elem_unchecked(self.ctx.pow_flat(&self.coords, e))
    }

    pub fn frobenius(&self, k: usize) -> FieldElement {
        self.ctx.frobenius(self, k)
    }

    pub fn scale(&self, s: u32) -> FieldElement {
        let p = self.ctx.p();
        self.ctx
            .elem_unchecked(self.coords.iter().map(|&v| p.mul(v, s % p.get())).collect())
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.ctx.ext_mul(self, other)
    }

    /// Lexicographic comparison of flat coordinates.
    pub fn cmp_canonical(&self, other: &FieldElement) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same(&other.ctx) && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

fn assert_same(a: &FieldElement, b: &FieldElement) {
    assert!(
        a.ctx.same(&b.ctx),
        "field elements from different contexts"
    );
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        assert_same(self, rhs);
        self.ctx.elem_unchecked(self.ctx.add_flat(&self.coords, &rhs.coords))
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        assert_same(self, rhs);
        let p = self.ctx.p();
        self.ctx.elem_unchecked(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(&x, &y)| p.sub(x, y))
                .collect(),
        )
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        assert_same(self, rhs);
        self.ctx.elem_unchecked(self.ctx.mul_flat(&self.coords, &rhs.coords))
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.ctx.p();
        self.ctx
            .elem_unchecked(self.coords.iter().map(|&v| p.neg(v)).collect())
    }
}

impl FieldOps for FieldCtx {
    type Elem = FieldElement;

    fn modulus(&self) -> PrimeModulus {
        self.p()
    }

    fn abs_degree(&self) -> usize {
        FieldCtx::abs_degree(self)
    }

    fn zero(&self) -> FieldElement {
        FieldCtx::zero(self)
    }

    fn one(&self) -> FieldElement {
        FieldCtx::one(self)
    }

    fn from_int(&self, n: i64) -> FieldElement {
        self.scalar(n)
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a + b
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a - b
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        -a
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a * b
    }

    fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.ext_inv(a)
    }

    fn frobenius(&self, a: &FieldElement, k: usize) -> FieldElement {
        FieldCtx::frobenius(self, a, k)
    }

    fn pow(&self, a: &FieldElement, e: u128) -> FieldElement {
        a.pow(e)
    }

    fn is_one(&self, a: &FieldElement) -> bool {
        a.is_one()
    }
}

/// Adjoin a root of `modulus` with no special structure recorded.
pub fn generic_extension(base: &FieldCtx, modulus: &[FieldElement]) -> Result<FieldCtx> {
    FieldCtx::extension(base, modulus, FieldKind::Generic)
}
