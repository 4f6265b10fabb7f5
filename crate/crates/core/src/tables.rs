//! Sparse multiplication tables for normal bases `{g^(p^(i·step))}`.
//!
//! Row `i` (for `1 <= i < m`) expresses `g · g^(p^(i·step))` and the square row
//! expresses `g²`, each as `constant + Σ coeff_k · g^(p^(k·step))`. The
//! constant slot is the redundant `1` adjoined to the basis.

use std::fmt;

use serde::Serialize;

use crate::artin_schreier::AsLevel;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement, FpScalar};
use crate::oracle::VerificationReport;

/// A table coefficient, kept as a prime-field scalar whenever its value lies
/// in `F_p`.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Prime(FpScalar),
    /// Element of the coefficient field (the base of the generator's field).
    Field(FieldElement),
}

impl Coefficient {
    /// Canonical form: `Prime` iff the value lies in `F_p`.
    pub fn from_field(e: FieldElement) -> Self {
        match e.to_prime() {
            Some(s) => Coefficient::Prime(s),
            None => Coefficient::Field(e),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Prime(s) => s.is_zero(),
            Coefficient::Field(e) => e.is_zero(),
        }
    }

    pub fn is_prime(&self) -> bool {
        matches!(self, Coefficient::Prime(_))
    }

    /// The coefficient as an element of `ctx`, which must contain it.
    pub fn widen(&self, ctx: &FieldCtx) -> Result<FieldElement> {
        match self {
            Coefficient::Prime(s) => Ok(ctx.from_fp(*s)),
            Coefficient::Field(e) => ctx.lift(e),
        }
    }

    /// Apply `x -> x^(p^k)`.
    pub fn frobenius(&self, k: usize) -> Self {
        match self {
            Coefficient::Prime(s) => Coefficient::Prime(*s),
            Coefficient::Field(e) => Coefficient::from_field(e.frobenius(k)),
        }
    }

    /// Flat prime-field coordinates in `ctx`.
    pub fn coords_in(&self, ctx: &FieldCtx) -> Result<Vec<u32>> {
        Ok(self.widen(ctx)?.coords().to_vec())
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Prime(s) => write!(f, "{s}"),
            Coefficient::Field(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseRow {
    pub constant: Option<Coefficient>,
    /// `(conjugate index, coefficient)`, indices strictly increasing,
    /// coefficients nonzero.
    pub terms: Vec<(usize, Coefficient)>,
}

impl SparseRow {
    /// Drops zero coefficients and sorts by index. Repeated indices are an
    /// error.
    pub fn new(constant: Coefficient, terms: Vec<(usize, Coefficient)>) -> Result<Self> {
        let mut terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|(k, _)| *k);
        if terms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidParameter("repeated conjugate index in row".into()));
        }
        Ok(Self {
            constant: (!constant.is_zero()).then_some(constant),
            terms,
        })
    }

    /// Basis terms plus the constant, if present.
    pub fn weight(&self) -> usize {
        self.terms.len() + usize::from(self.constant.is_some())
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &Coefficient> {
        self.constant.iter().chain(self.terms.iter().map(|(_, c)| c))
    }

    pub fn coefficient(&self, index: usize) -> Option<&Coefficient> {
        self.terms.iter().find(|(k, _)| *k == index).map(|(_, c)| c)
    }

    /// `constant + Σ c_k · conj[k]` in the field of `conj`.
    pub fn evaluate(&self, ctx: &FieldCtx, conj: &[FieldElement]) -> Result<FieldElement> {
        let mut acc = match &self.constant {
            Some(c) => c.widen(ctx)?,
            None => ctx.zero(),
        };
        for (k, c) in &self.terms {
            let basis = conj.get(*k).ok_or_else(|| {
                Error::InvalidParameter(format!("conjugate index {k} out of range"))
            })?;
            let term = match c {
                Coefficient::Prime(s) => basis.scale(s.value()),
                Coefficient::Field(_) => &c.widen(ctx)? * basis,
            };
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// The image of this row under `x -> x^(p^(shift·step))`: indices move by
    /// `shift` modulo `m` and coefficients are mapped by Frobenius.
    pub fn shifted(&self, shift: usize, m: usize, step: usize) -> SparseRow {
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .map(|(k, c)| ((k + shift) % m, c.frobenius(shift * step)))
            .collect();
        terms.sort_by_key(|(k, _)| *k);
        SparseRow {
            constant: self.constant.as_ref().map(|c| c.frobenius(shift * step)),
            terms,
        }
    }
}

impl fmt::Display for SparseRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if let Some(c) = &self.constant {
            parts.push(format!("{c}"));
        }
        for (k, c) in &self.terms {
            parts.push(format!("{c}*g{k}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientField {
    Prime,
    Base,
}

#[derive(Debug, Clone)]
pub struct MultTable {
    pub generator: FieldElement,
    /// Conjugates are `g^(p^(i·step))`.
    pub step: usize,
    /// Number of conjugates; 0 for an empty table.
    pub m: usize,
    /// `rows[i - 1]` expresses `g · g_i`.
    pub rows: Vec<SparseRow>,
    pub square_row: Option<SparseRow>,
    pub coefficient_field: CoefficientField,
}

impl MultTable {
    pub fn new(
        generator: FieldElement,
        step: usize,
        rows: Vec<SparseRow>,
        square_row: SparseRow,
    ) -> Result<Self> {
        let ctx = generator.ctx().clone();
        if step == 0 || ctx.abs_degree() % step != 0 {
            return Err(Error::BadStep {
                step,
                degree: ctx.abs_degree(),
            });
        }
        let m = ctx.abs_degree() / step;
        if rows.len() + 1 != m {
            return Err(Error::BadLength {
                expected: m - 1,
                actual: rows.len(),
            });
        }
        if rows
            .iter()
            .chain(std::iter::once(&square_row))
            .any(|r| r.terms.iter().any(|(k, _)| *k >= m))
        {
            return Err(Error::InvalidParameter("conjugate index out of range".into()));
        }
        let all_prime = rows
            .iter()
            .chain(std::iter::once(&square_row))
            .all(|r| r.coefficients().all(Coefficient::is_prime));
        Ok(Self {
            generator,
            step,
            m,
            rows,
            square_row: Some(square_row),
            coefficient_field: if all_prime {
                CoefficientField::Prime
            } else {
                CoefficientField::Base
            },
        })
    }

    /// A table with no rows.
    pub fn empty(generator: FieldElement) -> Self {
        let step = generator.ctx().abs_degree();
        Self {
            generator,
            step,
            m: 0,
            rows: Vec::new(),
            square_row: None,
            coefficient_field: CoefficientField::Prime,
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.generator.ctx()
    }

    pub fn conjugates(&self) -> Vec<FieldElement> {
        if self.m == 0 {
            return Vec::new();
        }
        self.ctx().conjugates_step(&self.generator, self.step)
    }

    /// `(label, row, conjugate index of the second factor)` for every row.
    pub fn labelled_rows(&self) -> Vec<(String, &SparseRow, usize)> {
        let mut out: Vec<_> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (format!("row {}", i + 1), r, i + 1))
            .collect();
        if let Some(sq) = &self.square_row {
            out.push(("square row".to_string(), sq, 0));
        }
        out
    }
}

/// Coefficient `ih` inverted, as a prime-field scalar.
fn inv_ih(level: &AsLevel, i: usize) -> Result<FpScalar> {
    (level.p().scalar(i as u64) * level.h).inv()
}

/// `Σ_{1<=i<p} (ih)⁻¹`: `h⁻¹` for `p = 2` and `0` otherwise.
fn sum_inv_ih(level: &AsLevel) -> Result<FpScalar> {
    if level.p().get() == 2 {
        level.h.inv()
    } else {
        Ok(level.p().scalar(0))
    }
}

/// Table for `γ = β⁻¹`:
/// `γ^(1+p^(in)) = (ih)⁻¹γ - (ih)⁻¹γ^(p^(in))` and
/// `γ² = (-α⁻¹ - Σ(ih)⁻¹)γ + Σ_{i>=1}(ih)⁻¹γ^(p^(in))`.
pub fn gamma_table(level: &AsLevel) -> Result<MultTable> {
    let p = level.p().get() as usize;
    let base = level.base();
    let zero = Coefficient::Prime(level.p().scalar(0));
    let mut rows = Vec::with_capacity(p - 1);
    let mut square_terms = Vec::with_capacity(p);
    for i in 1..p {
        let c = inv_ih(level, i)?;
        rows.push(SparseRow::new(
            zero.clone(),
            vec![(0, Coefficient::Prime(c)), (i, Coefficient::Prime(-c))],
        )?);
        square_terms.push((i, Coefficient::Prime(c)));
    }
    let alpha_inv = level.alpha.inv()?;
    let c0 = &(-&alpha_inv) - &base.from_fp(sum_inv_ih(level)?);
    square_terms.push((0, Coefficient::from_field(c0)));
    let square = SparseRow::new(zero, square_terms)?;
    MultTable::new(level.gamma.clone(), level.n(), rows, square)
}

/// Table for `δ⁻¹ = γ - b`:
/// `δ^-(1+p^(in)) = ((ih)⁻¹ - b)δ⁻¹ - ((ih)⁻¹ + b)δ^(-p^(in)) - b²` and
/// `δ⁻² = -b(b + α⁻¹) - (2b + α⁻¹ + Σ(ih)⁻¹)δ⁻¹ + Σ_{i>=1}(ih)⁻¹δ^(-p^(in))`.
pub fn delta_table(level: &AsLevel) -> Result<MultTable> {
    let p = level.p().get() as usize;
    let base = level.base();
    let b = level.b;
    let mut rows = Vec::with_capacity(p - 1);
    let mut square_terms = Vec::with_capacity(p);
    for i in 1..p {
        let c = inv_ih(level, i)?;
        rows.push(SparseRow::new(
            Coefficient::Prime(-(b * b)),
            vec![
                (0, Coefficient::Prime(c - b)),
                (i, Coefficient::Prime(-(c + b))),
            ],
        )?);
        square_terms.push((i, Coefficient::Prime(c)));
    }
    let alpha_inv = level.alpha.inv()?;
    let b_el = base.from_fp(b);
    let constant = -&(&b_el * &(&b_el + &alpha_inv));
    let two_b = base.from_fp(b + b);
    let c0 = -&(&(&two_b + &alpha_inv) + &base.from_fp(sum_inv_ih(level)?));
    square_terms.push((0, Coefficient::from_field(c0)));
    let square = SparseRow::new(Coefficient::from_field(constant), square_terms)?;
    MultTable::new(level.delta_inv.clone(), level.n(), rows, square)
}

/// Re-evaluate every row against a direct product.
pub fn verify_table(table: &MultTable) -> VerificationReport {
    let mut report = VerificationReport::new();
    if table.m == 0 {
        return report;
    }
    let ctx = table.ctx();
    let conj = table.conjugates();
    for (label, row, j) in table.labelled_rows() {
        let expected = &conj[0] * &conj[j];
        match row.evaluate(ctx, &conj) {
            Ok(actual) => {
                report.check_eq(label, row, expected, actual);
            }
            Err(e) => {
                report.check(false, label, row, expected, e);
            }
        }
    }
    report
}

/// Structure constants for every product `g_i · g_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct FullTable {
    pub m: usize,
    /// `entries[i][j]` expresses `g_i · g_j`.
    pub entries: Vec<Vec<SparseRow>>,
}

/// Expand the generator rows to all `m²` products: `g_i g_j` is the
/// `p^(i·step)`-power image of `g · g_(j-i)`.
pub fn full_table(table: &MultTable) -> Result<FullTable> {
    let m = table.m;
    if m == 0 {
        return Ok(FullTable {
            m,
            entries: Vec::new(),
        });
    }
    let square = table
        .square_row
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("table has no square row".into()))?;
    let entries = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let d = (j + m - i) % m;
                    let row = if d == 0 { square } else { &table.rows[d - 1] };
                    row.shifted(i, m, table.step)
                })
                .collect()
        })
        .collect();
    Ok(FullTable { m, entries })
}

/// Check all `m²` expanded rows against direct multiplication.
pub fn verify_full_table(table: &MultTable, full: &FullTable) -> VerificationReport {
    let mut report = VerificationReport::new();
    let ctx = table.ctx();
    let conj = table.conjugates();
    for (i, row_i) in full.entries.iter().enumerate() {
        for (j, row) in row_i.iter().enumerate() {
            let expected = &conj[i] * &conj[j];
            let label = format!("product ({i}, {j})");
            match row.evaluate(ctx, &conj) {
                Ok(actual) => {
                    report.check_eq(label, row, expected, actual);
                }
                Err(e) => {
                    report.check(false, label, row, expected, e);
                }
            }
        }
    }
    report
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SparsityReport {
    /// Nonzero basis coefficients over all rows, square row included.
    pub nonzero_structure_constants: usize,
    /// Off-square rows with exactly two basis terms.
    pub rows_with_two_terms: usize,
    /// Largest count of basis terms plus constant in any row.
    pub max_row_weight: usize,
    /// Rows with a nonzero constant.
    pub constant_terms_used: usize,
    /// All off-square coefficients, constants included, lie in `F_p`.
    pub coefficients_in_prime_field: bool,
    /// Nonzero coefficients in `F_p`, over all rows and constants.
    pub prime_field_coefficients: usize,
    pub total_coefficients: usize,
}

impl SparsityReport {
    /// `prime_field_coefficients / total_coefficients`, if any.
    pub fn prime_field_ratio(&self) -> Option<f64> {
        (self.total_coefficients > 0)
            .then(|| self.prime_field_coefficients as f64 / self.total_coefficients as f64)
    }
}

pub fn sparsity(table: &MultTable) -> SparsityReport {
    let mut r = SparsityReport {
        coefficients_in_prime_field: true,
        ..SparsityReport::default()
    };
    for row in &table.rows {
        if row.terms.len() == 2 {
            r.rows_with_two_terms += 1;
        }
        if !row.coefficients().all(Coefficient::is_prime) {
            r.coefficients_in_prime_field = false;
        }
    }
    for row in table.rows.iter().chain(table.square_row.iter()) {
        r.nonzero_structure_constants += row.terms.len();
        r.max_row_weight = r.max_row_weight.max(row.weight());
        r.constant_terms_used += usize::from(row.constant.is_some());
        for c in row.coefficients() {
            r.total_coefficients += 1;
            r.prime_field_coefficients += usize::from(c.is_prime());
        }
    }
    r
}
