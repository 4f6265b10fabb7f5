//! Kummer-type extensions `E = K[α]/(α^(q^s) - ξ)` with `q | p^l - 1` and
//! the normal element `γ = (α - b)⁻¹`.

use crate::error::{Error, Result};
use crate::field::{is_prime, FieldCtx, FieldElement, FieldKind, PrimeModulus};
use crate::oracle::Oracle;
use crate::tables::{Coefficient, MultTable, SparseRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KummerParams {
    pub p: u32,
    pub q: u32,
    pub l: u32,
    /// Largest `r` with `q^r | p^l - 1`.
    pub r: u32,
    /// `p^l - 1 = m · q^r`.
    pub m: u64,
    /// `1 <= s <= r`; the extension has degree `q^s` over `K`.
    pub s: u32,
}

impl KummerParams {
    pub fn with_s(self, s: u32) -> Result<Self> {
        if s == 0 || s > self.r {
            return Err(Error::InvalidParameter(format!(
                "s must satisfy 1 <= s <= r = {}",
                self.r
            )));
        }
        Ok(Self { s, ..self })
    }

    /// `q^s`, the relative degree.
    pub fn degree(&self) -> u64 {
        (self.q as u64).pow(self.s)
    }

    /// `q^r`, the order of `ξ`.
    pub fn xi_order(&self) -> u64 {
        (self.q as u64).pow(self.r)
    }

    /// Exponent `m·q^(r-s)` with `ζ = ξ^(m·q^(r-s))`.
    pub fn zeta_exponent(&self) -> u64 {
        self.m * (self.q as u64).pow(self.r - self.s)
    }
}

/// `r` and `m` for `p^l - 1 = m · q^r`, `gcd(m, q) = 1`; `s` starts at 1.
pub fn kummer_params(p: u64, q: u64, l: u32) -> Result<KummerParams> {
    let pm = PrimeModulus::new(p)?;
    if !is_prime(q) || q >= 1 << 16 {
        return Err(Error::NotPrime(q));
    }
    if q == p {
        return Err(Error::InvalidParameter("q must differ from p".into()));
    }
    if l == 0 {
        return Err(Error::InvalidParameter("l must be positive".into()));
    }
    let order = (pm.get() as u64)
        .checked_pow(l)
        .filter(|&v| v <= 1 << 32)
        .ok_or(Error::ScaleExceeded {
            degree: l as u128,
            bound: 32,
        })?
        - 1;
    if order % q != 0 {
        return Err(Error::NotDividing {
            p: p as u32,
            q: q as u32,
            l,
        });
    }
    let mut m = order;
    let mut r = 0;
    while m % q == 0 {
        m /= q;
        r += 1;
    }
    Ok(KummerParams {
        p: p as u32,
        q: q as u32,
        l,
        r,
        m,
        s: 1,
    })
}

/// `F_p` for `l = 1`; otherwise `F_p[x]/(f)` for the lexicographically
/// smallest monic irreducible `f` of degree `l` (coefficients compared from
/// the constant term up).
pub fn base_field(p: PrimeModulus, l: u32, oracle: &Oracle) -> Result<FieldCtx> {
    let fp = FieldCtx::prime(p);
    if l == 1 {
        return Ok(fp);
    }
    let l = l as usize;
    let pp = p.get() as u64;
    let total = pp
        .checked_pow(l as u32)
        .ok_or_else(|| Error::InvalidParameter("base field too large".into()))?;
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(l + 1);
        let mut v = idx;
        let mut digits = vec![0u64; l];
        for d in digits.iter_mut().rev() {
            *d = v % pp;
            v /= pp;
        }
        coeffs.extend(digits.iter().map(|&d| fp.scalar(d as i64)));
        coeffs.push(fp.one());
        if coeffs[0].is_zero() {
            continue;
        }
        let f = crate::field::PolyRing::new(&fp).poly(coeffs.clone());
        if oracle.is_irreducible_bruteforce(&fp, &f)? {
            return crate::field::generic_extension(&fp, &coeffs);
        }
    }
    Err(Error::ConstructionFailure(format!("no irreducible of degree {l}")))
}

fn has_order(x: &FieldElement, order: u64, q: u32) -> bool {
    x.pow(order as u128).is_one() && !x.pow((order / q as u64) as u128).is_one()
}

/// The canonically smallest element of `K` of multiplicative order `q^r`.
pub fn find_xi(k: &FieldCtx, q: u32, r: u32) -> Result<FieldElement> {
    let order = (q as u64).pow(r);
    let size = k.order().ok_or_else(|| Error::InvalidParameter("field too large".into()))?;
    if r == 0 || (size - 1) % order as u128 != 0 {
        return Err(Error::NoSuchRoot { order });
    }
    k.elements()
        .skip(1)
        .find(|x| has_order(x, order, q))
        .ok_or(Error::NoSuchRoot { order })
}

#[derive(Debug, Clone)]
pub struct KummerLevel {
    pub params: KummerParams,
    pub ctx: FieldCtx,
    /// Primitive `q^r`-th root of unity in `K`.
    pub xi: FieldElement,
    /// `ξ^(m·q^(r-s))`, of order `q^s`.
    pub zeta: FieldElement,
    /// Element of `K`.
    pub b: FieldElement,
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
}

impl KummerLevel {
    pub fn base(&self) -> &FieldCtx {
        self.ctx.base().expect("an extension has a base")
    }

    /// Number of relative conjugates, `q^s`.
    pub fn m(&self) -> usize {
        self.ctx.rel_degree()
    }

    /// Relative conjugates are `x^(p^(i·l))`.
    pub fn step(&self) -> usize {
        self.params.l as usize
    }
}

/// Adjoin a root `α` of `x^(q^s) - ξ` to `K` and set `γ = (α - b)⁻¹`.
pub fn kummer_extend(
    k: &FieldCtx,
    params: &KummerParams,
    xi: &FieldElement,
    b: &FieldElement,
    oracle: &Oracle,
) -> Result<KummerLevel> {
    if !xi.ctx().same(k) || !b.ctx().same(k) {
        return Err(Error::CtxMismatch);
    }
    if k.p().get() != params.p || k.abs_degree() != params.l as usize {
        return Err(Error::InvalidParameter("K does not match the parameters".into()));
    }
    if !has_order(xi, params.xi_order(), params.q) {
        return Err(Error::InvalidParameter(format!(
            "xi does not have order {}",
            params.xi_order()
        )));
    }
    let deg = params.degree() as usize;
    if b.is_zero() || b.pow(deg as u128) == *xi {
        return Err(Error::BadB);
    }
    let mut modulus = vec![k.zero(); deg + 1];
    modulus[0] = -xi;
    modulus[deg] = k.one();
    let ctx = FieldCtx::extension(
        k,
        &modulus,
        FieldKind::Kummer {
            xi: xi.clone(),
            q: params.q,
            s: params.s,
        },
    )?;
    if ctx.abs_degree() <= oracle.max_degree && !oracle.is_irreducible_bruteforce(k, &ctx.modulus_poly())? {
        return Err(Error::ConstructionFailure(
            "x^(q^s) - xi is reducible".into(),
        ));
    }
    let zeta = xi.pow(params.zeta_exponent() as u128);
    let alpha = ctx.generator();
    let b_e = ctx.lift(b)?;
    let beta = &alpha - &b_e;
    let gamma = beta.inv()?;

    let l = params.l as usize;
    let mut zi = k.one();
    for i in 1..deg {
        zi = &zi * &zeta;
        if zi.is_one() {
            return Err(Error::ConstructionFailure(format!(
                "zeta has order {i} < q^s"
            )));
        }
        let zi_e = ctx.lift(&zi)?;
        if alpha.frobenius(i * l) != &zi_e * &alpha {
            return Err(Error::ConstructionFailure(format!(
                "alpha^(p^({i}l)) != zeta^{i} alpha"
            )));
        }
        let lhs = &beta.frobenius(i * l) - &(&zi_e * &beta);
        let rhs = &(&zi_e - &ctx.one()) * &b_e;
        if lhs != rhs {
            return Err(Error::ConstructionFailure(format!(
                "beta^(p^({i}l)) - zeta^{i} beta != (zeta^{i} - 1) b"
            )));
        }
    }
    if !(&zi * &zeta).is_one() {
        return Err(Error::ConstructionFailure("zeta^(q^s) != 1".into()));
    }
    Ok(KummerLevel {
        params: *params,
        ctx,
        xi: xi.clone(),
        zeta,
        b: b.clone(),
        alpha,
        beta,
        gamma,
    })
}

/// `Σ_i γ^(p^(i·l)) = -q^s b^(q^s - 1) (b^(q^s) - ξ)⁻¹`, an element of `K`.
pub fn conj_sum(level: &KummerLevel) -> Result<FieldElement> {
    let k = level.base();
    let qs = level.params.degree();
    let denom = &level.b.pow(qs as u128) - &level.xi;
    let num = level.b.pow(qs as u128 - 1).scale(k.p().reduce(qs));
    Ok(-&(&num * &denom.inv()?))
}

/// Rows `γ^(1+p^(il)) = c_i γ - c_i ζ^i γ^(p^(il))` with
/// `c_i = ((ζ^i - 1) b)⁻¹`, and
/// `γ² = (S - Σ c_i) γ + Σ c_i ζ^i γ^(p^(il))` with `S` the conjugate sum.
pub fn kummer_table(level: &KummerLevel) -> Result<MultTable> {
    let k = level.base();
    let deg = level.m();
    let zero = Coefficient::Prime(k.p().scalar(0));
    let mut rows = Vec::with_capacity(deg - 1);
    let mut square_terms = Vec::with_capacity(deg);
    let mut sum_c = k.zero();
    let mut zi = k.one();
    for i in 1..deg {
        zi = &zi * &level.zeta;
        let c = (&(&zi - &k.one()) * &level.b).inv()?;
        let cz = &c * &zi;
        rows.push(SparseRow::new(
            zero.clone(),
            vec![
                (0, Coefficient::from_field(c.clone())),
                (i, Coefficient::from_field(-&cz)),
            ],
        )?);
        square_terms.push((i, Coefficient::from_field(cz)));
        sum_c = &sum_c + &c;
    }
    let s = conj_sum(level)?;
    square_terms.push((0, Coefficient::from_field(&s - &sum_c)));
    let square = SparseRow::new(zero, square_terms)?;
    MultTable::new(level.gamma.clone(), level.step(), rows, square)
}

/// Whether the `m = abs_degree / step` conjugates of `a` span its field
/// over the subfield fixed by `x -> x^(p^step)`, the immediate base here.
pub fn is_relatively_normal(ctx: &FieldCtx, a: &FieldElement) -> Result<bool> {
    let step = ctx.base().map_or(1, FieldCtx::abs_degree);
    let conj = ctx.conjugates_step(a, step);
    Ok(ctx.rank_over_base(&conj)? == ctx.rel_degree())
}

/// Rank check that the conjugates of `γ` span `E` over `K`, together with
/// the same check for `{α^(-j)}` and for their union.
pub fn kummer_normality(level: &KummerLevel) -> Result<bool> {
    let ctx = &level.ctx;
    let m = level.m();
    let conj = ctx.conjugates_step(&level.gamma, level.step());
    let alpha_inv = level.alpha.inv()?;
    let mut powers = Vec::with_capacity(m);
    let mut cur = ctx.one();
    for _ in 0..m {
        powers.push(cur.clone());
        cur = &cur * &alpha_inv;
    }
    let union: Vec<_> = conj.iter().chain(powers.iter()).cloned().collect();
    Ok(ctx.rank_over_base(&conj)? == m
        && ctx.rank_over_base(&powers)? == m
        && ctx.rank_over_base(&union)? == m)
}

/// `K` (deterministic), the smallest `ξ`, and the level for `b` given as a
/// prime-field integer.
pub fn build_kummer(p: u64, q: u64, l: u32, s: u32, b: i64, oracle: &Oracle) -> Result<KummerLevel> {
    let params = kummer_params(p, q, l)?.with_s(s)?;
    let degree = l as usize * params.degree() as usize;
    if degree > oracle.max_degree {
        return Err(Error::ScaleExceeded {
            degree: degree as u128,
            bound: oracle.max_degree,
        });
    }
    let k = base_field(PrimeModulus::new(p)?, l, oracle)?;
    let xi = find_xi(&k, params.q, params.r)?;
    let b = k.scalar(b);
    kummer_extend(&k, &params, &xi, &b, oracle)
}
