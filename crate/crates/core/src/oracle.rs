//! Brute-force verifiers.
//!
//! Everything here re-derives a claim from first principles: normality by
//! rank over `F_p`, irreducibility by the distinct-degree gcd sieve, minimal
//! polynomials as products over conjugates. None of it calls the closed
//! forms in [`crate::artin_schreier`], [`crate::tables`] or [`crate::kummer`].

use std::fmt;

use serde::Serialize;

use crate::artin_schreier::AsLevel;
use crate::error::{Error, Result};
use crate::field::linalg::{nullspace_mod_p, rank_mod_p};
use crate::field::{FieldCtx, FieldElement, FpScalar, Poly, PolyRing, PrimeModulus};

/// Default per-check bound on absolute degree.
pub const DEFAULT_ORACLE_MAX_DEGREE: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckFailure {
    pub check: String,
    pub input: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks_run: usize,
    pub failures: Vec<CheckFailure>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Record one check; the strings are only rendered on failure.
    pub fn check(
        &mut self,
        ok: bool,
        check: impl fmt::Display,
        input: impl fmt::Display,
        expected: impl fmt::Debug,
        actual: impl fmt::Debug,
    ) -> bool {
        self.checks_run += 1;
        if !ok {
            self.failures.push(CheckFailure {
                check: check.to_string(),
                input: input.to_string(),
                expected: format!("{expected:?}"),
                actual: format!("{actual:?}"),
            });
        }
        ok
    }

    pub fn check_eq<T: PartialEq + fmt::Debug>(
        &mut self,
        check: impl fmt::Display,
        input: impl fmt::Display,
        expected: T,
        actual: T,
    ) -> bool {
        let ok = expected == actual;
        self.check(ok, check, input, expected, actual)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks_run += other.checks_run;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} checks, {} failed",
            self.checks_run,
            self.failures.len()
        )?;
        for fl in &self.failures {
            writeln!(
                f,
                "  FAIL {} [{}]: expected {}, got {}",
                fl.check, fl.input, fl.expected, fl.actual
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub max_degree: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            max_degree: DEFAULT_ORACLE_MAX_DEGREE,
        }
    }
}

impl Oracle {
    pub fn new(max_degree: usize) -> Self {
        Self { max_degree }
    }

    fn bound(&self, degree: usize) -> Result<()> {
        if degree > self.max_degree {
            Err(Error::ScaleExceeded {
                degree: degree as u128,
                bound: self.max_degree,
            })
        } else {
            Ok(())
        }
    }

    /// An `F_p`-basis of the subfield of `p^step` elements, found as the
    /// fixed space of the `p^step`-power map.
    pub fn subfield_basis(&self, ctx: &FieldCtx, step: usize) -> Result<Vec<FieldElement>> {
        let n = ctx.abs_degree();
        if step == 0 || n % step != 0 {
            return Err(Error::BadStep { step, degree: n });
        }
        self.bound(n)?;
        let p = ctx.p();
        // Columns of (Frob^step - I): images of the unit vectors.
        let mut cols = Vec::with_capacity(n);
        for c in 0..n {
            let mut e = vec![0i64; n];
            e[c] = 1;
            let e = ctx.from_flat(&e)?;
            let img = &ctx.frobenius(&e, step) - &e;
            cols.push(img.coords().to_vec());
        }
        let rows: Vec<Vec<u32>> = (0..n).map(|r| cols.iter().map(|col| col[r]).collect()).collect();
        let basis = nullspace_mod_p(p, &rows, n);
        basis
            .into_iter()
            .map(|v| ctx.from_flat(&v.iter().map(|&x| x as i64).collect::<Vec<_>>()))
            .collect()
    }

    /// True iff the `m = abs_degree / step` conjugates `a^(p^(i·step))` are
    /// linearly independent over the subfield `L` of `p^step` elements,
    /// decided as `rank_Fp {l_k · c_i} = m · step` for an `F_p`-basis `l_k` of `L`.
    pub fn is_normal_bruteforce(&self, ctx: &FieldCtx, a: &FieldElement, step: usize) -> Result<bool> {
        if !a.ctx().same(ctx) {
            return Err(Error::CtxMismatch);
        }
        let sub = self.subfield_basis(ctx, step)?;
        debug_assert_eq!(sub.len(), step);
        let conj = ctx.conjugates_step(a, step);
        let rows: Vec<Vec<u32>> = sub
            .iter()
            .flat_map(|l| conj.iter().map(move |c| (l * c).coords().to_vec()))
            .collect();
        Ok(rank_mod_p(ctx.p(), &rows) == ctx.abs_degree())
    }

    /// Distinct-degree sieve: `f` is irreducible over `base` iff
    /// `gcd(x^(Q^k) - x, f) = 1` for `1 <= k <= deg f / 2`, `Q = |base|`.
    pub fn is_irreducible_bruteforce(&self, base: &FieldCtx, f: &Poly<FieldElement>) -> Result<bool> {
        let d = f
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidParameter("polynomial of degree >= 1 required".into()))?;
        if f.coeffs().iter().any(|c| !c.ctx().same(base)) {
            return Err(Error::CtxMismatch);
        }
        self.bound(d * base.abs_degree())?;
        let ring = PolyRing::new(base);
        let f = ring.make_monic(f)?;
        let x = ring.x();
        let p = base.p().get() as u128;
        let mut h = ring.rem(&x, &f)?;
        for _ in 1..=d / 2 {
            for _ in 0..base.abs_degree() {
                h = ring.pow_mod(&h, p, &f)?;
            }
            let g = ring.gcd(&ring.sub(&h, &x), &f)?;
            if g.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Π (x - c)` over the distinct conjugates `c` of `a`, checked to have
    /// prime-field coefficients.
    pub fn min_poly_via_conjugates(&self, ctx: &FieldCtx, a: &FieldElement) -> Result<Poly<FpScalar>> {
        self.bound(ctx.abs_degree())?;
        let mut distinct = vec![a.clone()];
        loop {
            let next = distinct.last().unwrap().frobenius(1);
            if next == *a {
                break;
            }
            distinct.push(next);
        }
        let ring = PolyRing::new(ctx);
        let prod = distinct.iter().fold(ring.one(), |acc, c| {
            ring.mul(&acc, &ring.poly(vec![-c, ctx.one()]))
        });
        let p = ctx.p();
        let coeffs = prod
            .coeffs()
            .iter()
            .map(|c| c.to_prime().ok_or(Error::NotInPrimeField))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyRing::new(&p).poly(coeffs))
    }

    /// Minimal-polynomial relations behind the inductive step:
    /// `m_β(x) = m_α(x^p - x)`, `m_{β⁻¹}` as the normalised reversal of `m_β`,
    /// `m_{δ⁻¹}(x) = m_{β⁻¹}(x + b)`, nonvanishing of the `x` coefficient of
    /// `m_{δ⁻¹}`, and `m_δ` as the reversal of `m_{δ⁻¹}`.
    pub fn verify_reciprocal_relations(&self, level: &AsLevel) -> Result<VerificationReport> {
        let base = level.base();
        let m_alpha = self.min_poly_via_conjugates(base, &level.alpha)?;
        self.verify_reciprocal_relations_with(level, &m_alpha)
    }

    /// As [`Self::verify_reciprocal_relations`] but starting from a supplied
    /// `m_α`.
    pub fn verify_reciprocal_relations_with(
        &self,
        level: &AsLevel,
        m_alpha: &Poly<FpScalar>,
    ) -> Result<VerificationReport> {
        let ctx = &level.ctx;
        self.bound(ctx.abs_degree())?;
        let p: PrimeModulus = ctx.p();
        let ring = PolyRing::new(&p);
        let tag = format!("level {}", level.index);
        let mut report = VerificationReport::new();

        let alpha_val = {
            let base = level.base();
            m_alpha
                .coeffs()
                .iter()
                .rev()
                .fold(base.zero(), |acc, c| &(&acc * &level.alpha) + &base.from_fp(*c))
        };
        report.check(alpha_val.is_zero(), "m_alpha(alpha) = 0", &tag, "0", &alpha_val);

        let pp = p.get() as usize;
        let mut xp_minus_x = vec![p.scalar(0); pp + 1];
        xp_minus_x[pp] = p.scalar(1);
        xp_minus_x[1] = p.scalar_i64(-1);
        let m_beta = ring.compose(m_alpha, &ring.poly(xp_minus_x));
        let m_beta_direct = self.min_poly_via_conjugates(ctx, &level.beta)?;
        report.check_eq("m_beta(x) = m_alpha(x^p - x)", &tag, &m_beta_direct, &m_beta);

        let reciprocal = |f: &Poly<FpScalar>| -> Option<Poly<FpScalar>> {
            let c0 = ring.coeff(f, 0).inv().ok()?;
            Some(ring.scale(&ring.reverse(f), &c0))
        };
        let Some(m_beta_inv) = reciprocal(&m_beta) else {
            report.check(false, "m_beta(0) is nonzero", &tag, "nonzero", 0);
            return Ok(report);
        };
        let m_beta_inv_direct = self.min_poly_via_conjugates(ctx, &level.gamma)?;
        report.check_eq(
            "m_beta_inv(x) = m_beta(0)^-1 x^deg m_beta(1/x)",
            &tag,
            &m_beta_inv_direct,
            &m_beta_inv,
        );

        let shift = ring.poly(vec![level.b, p.scalar(1)]);
        let m_delta_inv = ring.compose(&m_beta_inv, &shift);
        let m_delta_inv_direct = self.min_poly_via_conjugates(ctx, &level.delta_inv)?;
        report.check_eq(
            "m_delta_inv(x) = m_beta_inv(x + b)",
            &tag,
            &m_delta_inv_direct,
            &m_delta_inv,
        );

        let x_coeff = ring.coeff(&m_delta_inv, 1);
        report.check(
            !x_coeff.is_zero(),
            "coefficient of x in m_delta_inv is nonzero",
            &tag,
            "nonzero",
            x_coeff,
        );

        // With p | n the only surviving x-term is a_1 (x+b)^((n-1)p-1) (x - x^p).
        let n = level.base().abs_degree();
        if n >= 2 && n % p.get() as usize == 0 {
            let a0 = ring.coeff(m_alpha, 0);
            let a1 = ring.coeff(m_alpha, 1);
            let expected = a1 * level.b.pow(((n - 1) * pp - 1) as u64);
            report.check_eq(
                "a_0 [x] m_delta_inv = a_1 b^((n-1)p-1)",
                &tag,
                expected,
                a0 * x_coeff,
            );
        }

        let Some(m_delta) = reciprocal(&m_delta_inv) else {
            report.check(false, "m_delta_inv(0) is nonzero", &tag, "nonzero", 0);
            return Ok(report);
        };
        let m_delta_direct = self.min_poly_via_conjugates(ctx, &level.delta)?;
        report.check_eq("m_delta = reversal of m_delta_inv", &tag, &m_delta_direct, &m_delta);
        Ok(report)
    }
}
