//! Artin-Schreier extensions `E = K[β]/(β^p - β - α)` and the inductive
//! tower whose `k`-th level is defined by the previous level's `δ`.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement, FieldKind, FpScalar, PrimeModulus};
use crate::oracle::{Oracle, VerificationReport};
use crate::tables::{delta_table, gamma_table, verify_table, MultTable};

/// Default bound on the absolute degree of a constructed tower.
pub const DEFAULT_MAX_DEGREE: usize = 256;
/// Largest absolute degree for which construction re-checks irreducibility
/// with the brute-force sieve.
pub const ORACLE_IRREDUCIBILITY_LIMIT: usize = 64;

/// `x^p - x - α` is irreducible over `base` iff `Tr(α) ≠ 0`.
pub fn as_irreducible(base: &FieldCtx, alpha: &FieldElement) -> Result<bool> {
    if !alpha.ctx().same(base) {
        return Err(Error::CtxMismatch);
    }
    Ok(!base.trace_to_prime(alpha).is_zero())
}

/// `h = Σ_{i<n} α^(p^i)`, required to be a nonzero prime-field scalar.
pub fn compute_h(base: &FieldCtx, alpha: &FieldElement) -> Result<FpScalar> {
    if !alpha.ctx().same(base) {
        return Err(Error::CtxMismatch);
    }
    let sum = base
        .conjugates(alpha)
        .iter()
        .fold(base.zero(), |acc, c| &acc + c);
    let h = sum.to_prime().ok_or(Error::NotInPrimeField)?;
    if h.is_zero() {
        return Err(Error::ZeroTrace);
    }
    Ok(h)
}

/// Adjoin a root `β` of `x^p - x - α`.
pub fn as_extend(base: &FieldCtx, alpha: &FieldElement) -> Result<FieldCtx> {
    if !as_irreducible(base, alpha)? {
        return Err(Error::Reducible);
    }
    let p = base.p().get() as usize;
    let mut modulus = vec![base.zero(); p + 1];
    modulus[0] = -alpha;
    modulus[1] = base.scalar(-1);
    modulus[p] = base.one();
    FieldCtx::extension(
        base,
        &modulus,
        FieldKind::ArtinSchreier {
            alpha: alpha.clone(),
        },
    )
}

/// Shift condition for `{(δ + d)^(p^(i·step))}`: true iff
/// `m·d + Σ_{i<m} δ^(p^(i·step)) ≠ 0` with `m = abs_degree / step`.
/// `d` must lie in the subfield of `p^step` elements.
pub fn lemma1_shift_ok(ctx: &FieldCtx, delta: &FieldElement, d: &FieldElement, step: usize) -> Result<bool> {
    let sum = ctx.relative_conjugate_sum(delta, step)?;
    if !d.ctx().same(ctx) {
        return Err(Error::CtxMismatch);
    }
    if ctx.frobenius(d, step) != *d {
        return Err(Error::InvalidParameter(format!(
            "d is not fixed by the p^{step}-power map"
        )));
    }
    let m = (ctx.abs_degree() / step) as u64;
    Ok(!(&d.scale(ctx.p().reduce(m)) + &sum).is_zero())
}

/// `β^(p-1) - c`, or `ε·(β^(p-1) - c)` when `epsilon` is given.
///
/// Without `ε` the relative conjugates form a basis of `E` over the base for
/// every `c` in the base. With `ε` normal over `F_p` and `c ∈ F_p`, the result
/// is normal over `F_p`.
pub fn theorem1_element(ctx: &FieldCtx, c: &FieldElement, epsilon: Option<&FieldElement>) -> Result<FieldElement> {
    if !matches!(ctx.kind(), FieldKind::ArtinSchreier { .. }) {
        return Err(Error::WrongKind("artin-schreier"));
    }
    let base = ctx.base().expect("an extension has a base");
    if !c.ctx().same(base) {
        return Err(Error::CtxMismatch);
    }
    let p = ctx.p().get() as u128;
    let core = &ctx.generator().pow(p - 1) - &ctx.lift(c)?;
    let Some(eps) = epsilon else {
        return Ok(core);
    };
    if !eps.ctx().same(base) {
        return Err(Error::CtxMismatch);
    }
    if c.to_prime().is_none() {
        return Err(Error::NotInPrimeField);
    }
    if eps.is_zero() || base.rank_over_prime(&base.conjugates(eps))? != base.abs_degree() {
        return Err(Error::EpsilonNotNormal);
    }
    Ok(&ctx.lift(eps)? * &core)
}

/// `(δ⁻¹, δ)` with `δ⁻¹ = β⁻¹ - b`, after checking normality of `δ⁻¹` over
/// the base and over `F_p`, `Tr(δ) ≠ 0`, and `Σ_i δ^(p^(i·n)) = b⁻²α⁻¹`.
pub fn next_delta(ctx: &FieldCtx, b: FpScalar) -> Result<(FieldElement, FieldElement)> {
    let FieldKind::ArtinSchreier { alpha } = ctx.kind() else {
        return Err(Error::WrongKind("artin-schreier"));
    };
    if b.is_zero() {
        return Err(Error::ZeroB);
    }
    let base = ctx.base().expect("an extension has a base");
    let n = base.abs_degree();
    let delta_inv = &ctx.generator().inv()? - &ctx.from_fp(b);
    let delta = delta_inv.inv()?;

    let rel = ctx.conjugates_step(&delta_inv, n);
    if ctx.rank_over_base(&rel)? != ctx.rel_degree() {
        return Err(Error::NormalityFailure(
            "delta^-1 is not normal over the base".into(),
        ));
    }
    if ctx.rank_over_prime(&ctx.conjugates(&delta_inv))? != ctx.abs_degree() {
        return Err(Error::NormalityFailure(
            "delta^-1 is not normal over the prime field".into(),
        ));
    }
    if ctx.trace_to_prime(&delta).is_zero() {
        return Err(Error::NormalityFailure("trace of delta vanishes".into()));
    }
    let sum = ctx.relative_conjugate_sum(&delta, n)?;
    let expected = ctx.lift(&alpha.inv()?)?.scale((b * b).inv()?.value());
    if sum != expected {
        return Err(Error::NormalityFailure(format!(
            "conjugate sum of delta is {sum}, expected b^-2 alpha^-1 = {expected}"
        )));
    }
    Ok((delta_inv, delta))
}

/// One level `E = K[β]/(β^p - β - α)` of the tower.
#[derive(Debug, Clone)]
pub struct AsLevel {
    /// 1 for `F_{p^p}` over `F_p`.
    pub index: usize,
    pub ctx: FieldCtx,
    /// Element of the base.
    pub alpha: FieldElement,
    pub h: FpScalar,
    pub beta: FieldElement,
    pub gamma: FieldElement,
    pub delta_inv: FieldElement,
    pub delta: FieldElement,
    pub b: FpScalar,
}

impl AsLevel {
    pub fn new(index: usize, base: &FieldCtx, alpha: &FieldElement, b: FpScalar) -> Result<Self> {
        let h = compute_h(base, alpha)?;
        let ctx = as_extend(base, alpha)?;
        let (delta_inv, delta) = next_delta(&ctx, b)?;
        let beta = ctx.generator();
        let gamma = beta.inv()?;
        Ok(Self {
            index,
            alpha: alpha.clone(),
            h,
            beta,
            gamma,
            delta_inv,
            delta,
            b,
            ctx,
        })
    }

    pub fn base(&self) -> &FieldCtx {
        self.ctx.base().expect("an extension has a base")
    }

    pub fn p(&self) -> PrimeModulus {
        self.ctx.p()
    }

    /// Absolute degree of the base; relative conjugates are `x^(p^(i·n))`.
    pub fn n(&self) -> usize {
        self.base().abs_degree()
    }

    pub fn degree(&self) -> usize {
        self.ctx.abs_degree()
    }
}

#[derive(Debug, Clone)]
pub struct LevelTables {
    pub gamma: MultTable,
    pub delta: MultTable,
}

#[derive(Debug, Clone, Copy)]
pub struct TowerOptions {
    pub max_degree: usize,
    /// Re-check irreducibility with the sieve up to this absolute degree.
    pub oracle_limit: usize,
}

impl Default for TowerOptions {
    fn default() -> Self {
        Self {
            max_degree: DEFAULT_MAX_DEGREE,
            oracle_limit: ORACLE_IRREDUCIBILITY_LIMIT,
        }
    }
}

/// A verified tower `F_p ⊂ F_{p^p} ⊂ … ⊂ F_{p^(p^k)}`.
#[derive(Debug, Clone)]
pub struct TowerSpec {
    pub p: PrimeModulus,
    pub b: FpScalar,
    pub levels: Vec<AsLevel>,
    pub tables: Vec<LevelTables>,
}

impl TowerSpec {
    pub fn degrees(&self) -> Vec<usize> {
        self.levels.iter().map(AsLevel::degree).collect()
    }

    pub fn top(&self) -> &AsLevel {
        self.levels.last().expect("a tower has at least one level")
    }
}

pub fn build_tower(p: PrimeModulus, num_levels: usize, b: FpScalar) -> Result<TowerSpec> {
    build_tower_with(p, num_levels, b, &TowerOptions::default())
}

pub fn build_tower_with(
    p: PrimeModulus,
    num_levels: usize,
    b: FpScalar,
    opts: &TowerOptions,
) -> Result<TowerSpec> {
    if num_levels == 0 {
        return Err(Error::InvalidParameter("at least one level is required".into()));
    }
    if b.modulus() != p {
        return Err(Error::InvalidParameter("b must lie in the prime field of the tower".into()));
    }
    let degree = (p.get() as u128).checked_pow(num_levels as u32);
    if degree.is_none_or(|d| d > opts.max_degree as u128) {
        return Err(Error::ScaleExceeded {
            degree: degree.unwrap_or(u128::MAX),
            bound: opts.max_degree,
        });
    }
    let oracle = Oracle::new(opts.oracle_limit);
    let mut base = FieldCtx::prime(p);
    let mut alpha = base.one();
    let mut levels = Vec::with_capacity(num_levels);
    let mut tables = Vec::with_capacity(num_levels);
    for index in 1..=num_levels {
        let level = AsLevel::new(index, &base, &alpha, b)?;
        if level.degree() <= opts.oracle_limit {
            let f = level.ctx.modulus_poly();
            if !oracle.is_irreducible_bruteforce(&base, &f)? {
                return Err(Error::ConstructionFailure(format!(
                    "level {index}: trace criterion and sieve disagree"
                )));
            }
        }
        let lt = LevelTables {
            gamma: gamma_table(&level)?,
            delta: delta_table(&level)?,
        };
        let mut report = verify_table(&lt.gamma);
        report.merge(verify_table(&lt.delta));
        ensure_passed(index, &report)?;
        alpha = level.delta.clone();
        base = level.ctx.clone();
        levels.push(level);
        tables.push(lt);
    }
    Ok(TowerSpec { p, b, levels, tables })
}

fn ensure_passed(index: usize, report: &VerificationReport) -> Result<()> {
    if report.passed() {
        Ok(())
    } else {
        Err(Error::ConstructionFailure(format!(
            "level {index} table verification: {report}"
        )))
    }
}
