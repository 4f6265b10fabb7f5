//! `TowerFileV1`: the JSON form of a built tower or Kummer level.
//!
//! All field values are flat prime-field coordinate vectors, lowest first.
//! Table coefficients are coordinates in the coefficient field (the base of
//! the level).

use serde::{Deserialize, Serialize};

use crate::artin_schreier::{AsLevel, LevelTables, TowerSpec};
use crate::error::{Error, Result};
use crate::field::{generic_extension, FieldCtx, FieldElement, FpScalar, PolyRing, PrimeModulus};
use crate::kummer::{conj_sum, kummer_extend, kummer_normality, kummer_params, kummer_table, KummerLevel};
use crate::oracle::{Oracle, VerificationReport};
use crate::tables::{
    delta_table, full_table, gamma_table, verify_full_table, verify_table, Coefficient, MultTable, SparseRow,
};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelKind {
    ArtinSchreier,
    Kummer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowRecord {
    pub constant: Vec<u32>,
    /// `[conjugate index, coefficient coordinates]`.
    pub terms: Vec<(usize, Vec<u32>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRecord {
    /// `gamma` or `delta` for Artin-Schreier levels, `gamma` for Kummer.
    pub name: String,
    pub step: usize,
    pub rows: Vec<RowRecord>,
    pub square_row: RowRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelRecord {
    pub kind: LevelKind,
    /// Absolute degree.
    pub degree: usize,
    /// Modulus of a non-prime Kummer base over `F_p`, coefficients lowest
    /// first, leading 1 included.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_modulus: Option<Vec<u32>>,
    /// Modulus over the base: `rel_degree + 1` coefficient blocks.
    pub modulus: Vec<u32>,
    /// Normal generator: `δ⁻¹` for Artin-Schreier levels, `γ` for Kummer.
    pub generator: Vec<u32>,
    pub b: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<Vec<u32>>,
    pub tables: Vec<TableRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerFileV1 {
    pub format_version: u32,
    pub p: u32,
    pub levels: Vec<LevelRecord>,
}

/// A file rebuilt into live objects.
#[derive(Debug, Clone)]
pub enum Rebuilt {
    Tower(TowerSpec),
    Kummer(KummerLevel, MultTable),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Also expand every table to all `m²` products.
    pub deep: bool,
    pub oracle: Oracle,
}

fn coords(e: &FieldElement) -> Vec<u32> {
    e.coords().to_vec()
}

fn modulus_coords(ctx: &FieldCtx) -> Vec<u32> {
    ctx.modulus_poly().coeffs().iter().flat_map(|c| c.coords().to_vec()).collect()
}

fn row_record(row: &SparseRow, k: &FieldCtx) -> Result<RowRecord> {
    let constant = match &row.constant {
        Some(c) => c.coords_in(k)?,
        None => vec![0; k.abs_degree()],
    };
    let terms = row
        .terms
        .iter()
        .map(|(i, c)| Ok((*i, c.coords_in(k)?)))
        .collect::<Result<_>>()?;
    Ok(RowRecord { constant, terms })
}

fn table_record(name: &str, table: &MultTable) -> Result<TableRecord> {
    let k = table.ctx().base().expect("tables live in an extension");
    let square = table
        .square_row
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("table has no square row".into()))?;
    Ok(TableRecord {
        name: name.to_string(),
        step: table.step,
        rows: table.rows.iter().map(|r| row_record(r, k)).collect::<Result<_>>()?,
        square_row: row_record(square, k)?,
    })
}

fn element(ctx: &FieldCtx, v: &[u32], what: &str) -> Result<FieldElement> {
    let p = ctx.p().get();
    if v.len() != ctx.abs_degree() {
        return Err(Error::Format(format!(
            "{what}: expected {} coordinates, got {}",
            ctx.abs_degree(),
            v.len()
        )));
    }
    if v.iter().any(|&x| x >= p) {
        return Err(Error::Format(format!("{what}: coordinate out of range 0..{p}")));
    }
    ctx.from_flat(&v.iter().map(|&x| x as i64).collect::<Vec<_>>())
}

fn poly_coeffs(k: &FieldCtx, v: &[u32], what: &str) -> Result<Vec<FieldElement>> {
    let n = k.abs_degree();
    if v.len() < 2 * n || v.len() % n != 0 {
        return Err(Error::Format(format!("{what}: bad length {}", v.len())));
    }
    v.chunks(n).map(|c| element(k, c, what)).collect()
}

fn parse_row(k: &FieldCtx, rec: &RowRecord, what: &str) -> Result<SparseRow> {
    let constant = Coefficient::from_field(element(k, &rec.constant, what)?);
    let terms = rec
        .terms
        .iter()
        .map(|(i, c)| Ok((*i, Coefficient::from_field(element(k, c, what)?))))
        .collect::<Result<_>>()?;
    SparseRow::new(constant, terms).map_err(|e| Error::Format(format!("{what}: {e}")))
}

fn parse_table(generator: &FieldElement, rec: &TableRecord) -> Result<MultTable> {
    let k = generator
        .ctx()
        .base()
        .ok_or_else(|| Error::Format("table over the prime field".into()))?;
    let rows = rec
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| parse_row(k, r, &format!("{} row {}", rec.name, i + 1)))
        .collect::<Result<_>>()?;
    let square = parse_row(k, &rec.square_row, &format!("{} square row", rec.name))?;
    MultTable::new(generator.clone(), rec.step, rows, square)
        .map_err(|e| Error::Format(format!("table {}: {e}", rec.name)))
}

impl TowerFileV1 {
    pub fn from_tower(t: &TowerSpec) -> Result<Self> {
        let levels = t
            .levels
            .iter()
            .zip(&t.tables)
            .map(|(level, tables)| {
                Ok(LevelRecord {
                    kind: LevelKind::ArtinSchreier,
                    degree: level.degree(),
                    base_modulus: None,
                    modulus: modulus_coords(&level.ctx),
                    generator: coords(&level.delta_inv),
                    b: vec![level.b.value()],
                    q: None,
                    l: None,
                    r: None,
                    s: None,
                    xi: None,
                    zeta: None,
                    tables: vec![
                        table_record("gamma", &tables.gamma)?,
                        table_record("delta", &tables.delta)?,
                    ],
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            format_version: FORMAT_VERSION,
            p: t.p.get(),
            levels,
        })
    }

    pub fn from_kummer(level: &KummerLevel) -> Result<Self> {
        let k = level.base();
        let table = kummer_table(level)?;
        let kp = &level.params;
        Ok(Self {
            format_version: FORMAT_VERSION,
            p: kp.p,
            levels: vec![LevelRecord {
                kind: LevelKind::Kummer,
                degree: level.ctx.abs_degree(),
                base_modulus: (!k.is_prime_field()).then(|| modulus_coords(k)),
                modulus: modulus_coords(&level.ctx),
                generator: coords(&level.gamma),
                b: coords(&level.b),
                q: Some(kp.q),
                l: Some(kp.l),
                r: Some(kp.r),
                s: Some(kp.s),
                xi: Some(coords(&level.xi)),
                zeta: Some(coords(&level.zeta)),
                tables: vec![table_record("gamma", &table)?],
            }],
        })
    }

    /// Pretty JSON with a trailing newline; stable across save/load.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: Self = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        if f.format_version != FORMAT_VERSION {
            return Err(Error::Format(format!(
                "unsupported format_version {}",
                f.format_version
            )));
        }
        if f.levels.is_empty() {
            return Err(Error::Format("no levels".into()));
        }
        PrimeModulus::new(f.p as u64).map_err(|e| Error::Format(e.to_string()))?;
        Ok(f)
    }

    fn prime(&self) -> Result<PrimeModulus> {
        PrimeModulus::new(self.p as u64).map_err(|e| Error::Format(e.to_string()))
    }

    /// Rebuild live objects from the moduli and `b` values in the file,
    /// regenerating tables from the closed forms.
    pub fn rebuild(&self, oracle: &Oracle) -> Result<Rebuilt> {
        let p = self.prime()?;
        match self.levels[0].kind {
            LevelKind::ArtinSchreier => {
                let mut base = FieldCtx::prime(p);
                let mut levels = Vec::new();
                let mut tables = Vec::new();
                for (i, rec) in self.levels.iter().enumerate() {
                    if rec.kind != LevelKind::ArtinSchreier {
                        return Err(Error::Format("mixed level kinds".into()));
                    }
                    let level = rebuild_as_level(i + 1, &base, rec)?;
                    tables.push(LevelTables {
                        gamma: gamma_table(&level)?,
                        delta: delta_table(&level)?,
                    });
                    base = level.ctx.clone();
                    levels.push(level);
                }
                let b = levels[0].b;
                Ok(Rebuilt::Tower(TowerSpec { p, b, levels, tables }))
            }
            LevelKind::Kummer => {
                if self.levels.len() != 1 {
                    return Err(Error::Format("a Kummer file has exactly one level".into()));
                }
                let level = rebuild_kummer(p, &self.levels[0], oracle)?;
                let table = kummer_table(&level)?;
                Ok(Rebuilt::Kummer(level, table))
            }
        }
    }

    /// Re-run every invariant check on the file contents. Malformed input is
    /// an `Err`; mathematical failures are report entries.
    pub fn verify(&self, opts: &VerifyOptions) -> Result<VerificationReport> {
        let p = self.prime()?;
        let mut report = VerificationReport::new();
        match self.levels[0].kind {
            LevelKind::ArtinSchreier => {
                let mut base = FieldCtx::prime(p);
                let mut prev_delta = base.one();
                for (i, rec) in self.levels.iter().enumerate() {
                    if rec.kind != LevelKind::ArtinSchreier {
                        return Err(Error::Format("mixed level kinds".into()));
                    }
                    let index = i + 1;
                    match verify_as_level(index, &base, &prev_delta, rec, opts, &mut report)? {
                        Some(level) => {
                            prev_delta = level.delta.clone();
                            base = level.ctx;
                        }
                        None => break,
                    }
                }
            }
            LevelKind::Kummer => {
                if self.levels.len() != 1 {
                    return Err(Error::Format("a Kummer file has exactly one level".into()));
                }
                verify_kummer_level(p, &self.levels[0], opts, &mut report)?;
            }
        }
        Ok(report)
    }
}

fn as_alpha(base: &FieldCtx, rec: &LevelRecord) -> Result<FieldElement> {
    let c = poly_coeffs(base, &rec.modulus, "modulus")?;
    let p = base.p().get() as usize;
    let shape_ok = c.len() == p + 1
        && c[p].is_one()
        && c[1] == base.scalar(-1)
        && c[2..p].iter().all(FieldElement::is_zero);
    if !shape_ok {
        return Err(Error::Format("modulus is not of the form x^p - x - alpha".into()));
    }
    Ok(-&c[0])
}

fn as_b(p: PrimeModulus, rec: &LevelRecord) -> Result<FpScalar> {
    match rec.b.as_slice() {
        [v] if *v < p.get() => Ok(p.scalar(*v as u64)),
        _ => Err(Error::Format("b must be a single prime-field value".into())),
    }
}

fn rebuild_as_level(index: usize, base: &FieldCtx, rec: &LevelRecord) -> Result<AsLevel> {
    let alpha = as_alpha(base, rec)?;
    let b = as_b(base.p(), rec)?;
    AsLevel::new(index, base, &alpha, b)
}

/// Records one failure per mismatching row, named by table and row.
fn compare_tables(report: &mut VerificationReport, level_tag: &str, loaded: &MultTable, expected: &MultTable, name: &str) {
    for ((label, row, _), (_, exp, _)) in loaded.labelled_rows().into_iter().zip(expected.labelled_rows()) {
        report.check(
            row == exp,
            format!("{name} {label} matches closed form"),
            level_tag,
            format_args!("{exp}"),
            format_args!("{row}"),
        );
    }
}

fn check_table(
    report: &mut VerificationReport,
    level_tag: &str,
    table: &MultTable,
    expected: &MultTable,
    name: &str,
    deep: bool,
) -> Result<()> {
    compare_tables(report, level_tag, table, expected, name);
    let mut direct = verify_table(table);
    for f in &mut direct.failures {
        f.check = format!("{name} {} equals direct product", f.check);
        f.input = level_tag.to_string();
    }
    report.merge(direct);
    if deep {
        let full = full_table(table)?;
        let mut r = verify_full_table(table, &full);
        for f in &mut r.failures {
            f.check = format!("{name} full table {}", f.check);
            f.input = level_tag.to_string();
        }
        report.merge(r);
    }
    Ok(())
}

fn find_table<'a>(rec: &'a LevelRecord, name: &str) -> Result<&'a TableRecord> {
    rec.tables
        .iter()
        .find(|t| t.name == name)
        .ok_or_else(|| Error::Format(format!("missing table {name}")))
}

fn verify_as_level(
    index: usize,
    base: &FieldCtx,
    prev_delta: &FieldElement,
    rec: &LevelRecord,
    opts: &VerifyOptions,
    report: &mut VerificationReport,
) -> Result<Option<AsLevel>> {
    let tag = format!("level {index}");
    let alpha = as_alpha(base, rec)?;
    let b = as_b(base.p(), rec)?;
    report.check_eq("alpha continues the tower", &tag, prev_delta, &alpha);
    let degree = base.abs_degree() * base.p().get() as usize;
    report.check_eq("degree", &tag, degree, rec.degree);
    if !report.check(
        crate::artin_schreier::as_irreducible(base, &alpha)?,
        "trace criterion",
        &tag,
        "nonzero trace",
        "zero trace",
    ) {
        return Ok(None);
    }
    if b.is_zero() {
        report.check(false, "b nonzero", &tag, "nonzero", 0);
        return Ok(None);
    }
    let level = match AsLevel::new(index, base, &alpha, b) {
        Ok(l) => l,
        Err(e) => {
            report.check(false, "level construction", &tag, "ok", e);
            return Ok(None);
        }
    };
    let ctx = &level.ctx;
    if degree <= crate::artin_schreier::ORACLE_IRREDUCIBILITY_LIMIT.min(opts.oracle.max_degree) {
        let irr = opts.oracle.is_irreducible_bruteforce(base, &ctx.modulus_poly())?;
        report.check(irr, "modulus irreducible (sieve)", &tag, true, irr);
    }
    let g = element(ctx, &rec.generator, "generator")?;
    report.check_eq("generator = beta^-1 - b", &tag, &level.delta_inv, &g);
    if degree <= opts.oracle.max_degree {
        let over_base = opts.oracle.is_normal_bruteforce(ctx, &g, level.n())?;
        report.check(over_base, "generator normal over base", &tag, true, over_base);
        let over_prime = opts.oracle.is_normal_bruteforce(ctx, &g, 1)?;
        report.check(over_prime, "generator normal over F_p", &tag, true, over_prime);
    }
    let tr = ctx.trace_to_prime(&level.delta);
    report.check(!tr.is_zero(), "trace of delta nonzero", &tag, "nonzero", tr);
    let sum = ctx.relative_conjugate_sum(&level.delta, level.n())?;
    let closed = ctx.lift(&alpha.inv()?)?.scale((b * b).inv()?.value());
    report.check_eq("conjugate sum of delta = b^-2 alpha^-1", &tag, closed, sum);

    let gamma = parse_table(&level.gamma, find_table(rec, "gamma")?)?;
    check_table(report, &tag, &gamma, &gamma_table(&level)?, "gamma", opts.deep)?;
    let delta = parse_table(&level.delta_inv, find_table(rec, "delta")?)?;
    check_table(report, &tag, &delta, &delta_table(&level)?, "delta", opts.deep)?;
    Ok(Some(level))
}

fn kummer_base(p: PrimeModulus, rec: &LevelRecord) -> Result<FieldCtx> {
    let fp = FieldCtx::prime(p);
    match &rec.base_modulus {
        None => Ok(fp),
        Some(m) => {
            let c = poly_coeffs(&fp, m, "base_modulus")?;
            if !c.last().unwrap().is_one() {
                return Err(Error::Format("base_modulus must be monic".into()));
            }
            generic_extension(&fp, &c)
        }
    }
}

fn kummer_fields(rec: &LevelRecord) -> Result<(u32, u32, u32, u32)> {
    match (rec.q, rec.l, rec.r, rec.s) {
        (Some(q), Some(l), Some(r), Some(s)) => Ok((q, l, r, s)),
        _ => Err(Error::Format("Kummer level needs q, l, r and s".into())),
    }
}

fn rebuild_kummer(p: PrimeModulus, rec: &LevelRecord, oracle: &Oracle) -> Result<KummerLevel> {
    let (q, l, _, s) = kummer_fields(rec)?;
    let k = kummer_base(p, rec)?;
    let params = kummer_params(p.get() as u64, q as u64, l)?.with_s(s)?;
    let xi = element(&k, rec.xi.as_deref().unwrap_or_default(), "xi")?;
    let b = element(&k, &rec.b, "b")?;
    kummer_extend(&k, &params, &xi, &b, oracle)
}

fn verify_kummer_level(
    p: PrimeModulus,
    rec: &LevelRecord,
    opts: &VerifyOptions,
    report: &mut VerificationReport,
) -> Result<()> {
    let tag = "kummer level".to_string();
    let (q, l, r, s) = kummer_fields(rec)?;
    let k = kummer_base(p, rec)?;
    report.check_eq("base degree = l", &tag, l as usize, k.abs_degree());
    if let Some(m) = &rec.base_modulus {
        let fp = FieldCtx::prime(p);
        let f = PolyRing::new(&fp).poly(poly_coeffs(&fp, m, "base_modulus")?);
        let irr = opts.oracle.is_irreducible_bruteforce(&fp, &f)?;
        report.check(irr, "base modulus irreducible (sieve)", &tag, true, irr);
    }
    let params = match kummer_params(p.get() as u64, q as u64, l).and_then(|kp| kp.with_s(s)) {
        Ok(kp) => kp,
        Err(e) => {
            report.check(false, "parameters", &tag, "valid q, l, s", e);
            return Ok(());
        }
    };
    report.check_eq("r", &tag, params.r, r);
    let level = match rebuild_kummer(p, rec, &opts.oracle) {
        Ok(lv) => lv,
        Err(e @ Error::Format(_)) => return Err(e),
        Err(e) => {
            report.check(false, "level construction", &tag, "ok", e);
            return Ok(());
        }
    };
    let ctx = &level.ctx;
    report.check_eq("modulus = x^(q^s) - xi", &tag, modulus_coords(ctx), rec.modulus.clone());
    report.check_eq("degree", &tag, ctx.abs_degree(), rec.degree);
    let zeta = element(level.base(), rec.zeta.as_deref().unwrap_or_default(), "zeta")?;
    report.check_eq("zeta = xi^(m q^(r-s))", &tag, &level.zeta, &zeta);
    let g = element(ctx, &rec.generator, "generator")?;
    report.check_eq("generator = (alpha - b)^-1", &tag, &level.gamma, &g);
    let normal = kummer_normality(&level)?;
    report.check(normal, "gamma normal over K", &tag, true, normal);
    let closed = ctx.lift(&conj_sum(&level)?)?;
    let direct = ctx.relative_conjugate_sum(&level.gamma, level.step())?;
    report.check_eq("conjugate sum closed form", &tag, closed, direct);
    let table = parse_table(&level.gamma, find_table(rec, "gamma")?)?;
    check_table(report, &tag, &table, &kummer_table(&level)?, "gamma", opts.deep)?;
    Ok(())
}
