//! Throughput comparison of normal-basis and polynomial-basis arithmetic.
//!
//! Three multipliers are timed on the same seeded inputs:
//! - the absolute normal basis `{g^(p^k)}` over `F_p` with its Massey-Omura
//!   matrix `λ` (bit-packed when `p = 2` and the degree fits in a word),
//! - the relative sparse-row table over the base field,
//! - the polynomial basis via `ext_mul`.
//!
//! Every product is mapped back to the polynomial basis and compared.

use std::fmt;
use std::hint::black_box;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::linalg::{invert_mod_p, mat_vec_mod_p};
use crate::field::{FieldCtx, FieldElement, PrimeModulus};
use crate::tables::{full_table, Coefficient, MultTable};

/// `λ` for the normal basis `c_k = g^(p^k)` of `E` over `F_p`:
/// `(a·b)_k = Σ_ij λ_ij a_(i+k) b_(j+k)`.
#[derive(Debug, Clone)]
pub struct AbsoluteNormalBasis {
    p: PrimeModulus,
    n: usize,
    /// Columns are the conjugates of `g` in polynomial coordinates.
    to_poly: Vec<Vec<u32>>,
    from_poly: Vec<Vec<u32>>,
    /// Row `i` of `λ` as `(j, λ_ij)`, zeros dropped.
    lambda: Vec<Vec<(usize, u32)>>,
}

impl AbsoluteNormalBasis {
    /// `None` if `g` is not normal over `F_p`.
    pub fn new(g: &FieldElement) -> Option<Self> {
        let ctx = g.ctx();
        let p = ctx.p();
        let n = ctx.abs_degree();
        let conj = ctx.conjugates(g);
        let to_poly: Vec<Vec<u32>> = (0..n).map(|r| conj.iter().map(|c| c.coords()[r]).collect()).collect();
        let from_poly = invert_mod_p(p, &to_poly)?;
        // m[d] = normal coordinates of c_0 · c_d
        let m: Vec<Vec<u32>> = conj
            .iter()
            .map(|c| mat_vec_mod_p(p, &from_poly, (&conj[0] * c).coords()))
            .collect();
        let lambda = (0..n)
            .map(|i| {
                (0..n)
                    .filter_map(|j| {
                        let v = m[(j + n - i) % n][(n - i) % n];
                        (v != 0).then_some((j, v))
                    })
                    .collect()
            })
            .collect();
        Some(Self {
            p,
            n,
            to_poly,
            from_poly,
            lambda,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn nonzeros(&self) -> usize {
        self.lambda.iter().map(Vec::len).sum()
    }

    pub fn to_poly(&self, a: &[u32]) -> Vec<u32> {
        mat_vec_mod_p(self.p, &self.to_poly, a)
    }

    pub fn from_poly(&self, a: &[u32]) -> Vec<u32> {
        mat_vec_mod_p(self.p, &self.from_poly, a)
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = self.n;
        let p = self.p;
        (0..n)
            .map(|k| {
                let mut acc = 0u64;
                for (i, row) in self.lambda.iter().enumerate() {
                    let ai = a[(i + k) % n];
                    if ai == 0 {
                        continue;
                    }
                    let inner: u64 = row.iter().map(|&(j, l)| l as u64 * b[(j + k) % n] as u64).sum();
                    acc += ai as u64 * p.reduce(inner) as u64;
                }
                p.reduce(acc)
            })
            .collect()
    }

    /// `a^p`: a cyclic shift of coordinates.
    pub fn frobenius(&self, a: &mut [u32]) {
        a.rotate_right(1);
    }

    /// Word-packed multiplier for `p = 2`, `n <= 64`.
    pub fn packed(&self) -> Option<PackedBinary> {
        (self.p.get() == 2 && self.n <= 64).then(|| PackedBinary {
            n: self.n as u32,
            mask: if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 },
            rows: self
                .lambda
                .iter()
                .enumerate()
                .filter(|(_, r)| !r.is_empty())
                .map(|(i, r)| (i as u32, r.iter().map(|&(j, _)| j as u32).collect()))
                .collect(),
        })
    }
}

/// Bit `k` holds coordinate `k`.
#[derive(Debug, Clone)]
pub struct PackedBinary {
    n: u32,
    mask: u64,
    rows: Vec<(u32, Vec<u32>)>,
}

impl PackedBinary {
    /// Bit `t` of the result is bit `t + k` of `x`.
    fn rot_down(&self, x: u64, k: u32) -> u64 {
        if k == 0 {
            x
        } else {
            ((x >> k) | (x << (self.n - k))) & self.mask
        }
    }

    pub fn pack(a: &[u32]) -> u64 {
        a.iter().enumerate().fold(0, |w, (i, &v)| w | ((v as u64 & 1) << i))
    }

    pub fn unpack(&self, w: u64) -> Vec<u32> {
        (0..self.n).map(|i| ((w >> i) & 1) as u32).collect()
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let mut c = 0;
        for (i, js) in &self.rows {
            let s = js.iter().fold(0, |s, &j| s ^ self.rot_down(b, j));
            c ^= self.rot_down(a, *i) & s;
        }
        c
    }

    pub fn frobenius(&self, a: u64) -> u64 {
        if self.n == 1 {
            a
        } else {
            self.rot_down(a, self.n - 1)
        }
    }
}

enum Coef {
    Prime(u32),
    Field(FieldElement),
}

/// Basis terms and folded-away constant of one product `g_i g_j`.
type Entry = (Vec<(usize, Coef)>, Option<FieldElement>);

/// Products of relative conjugates from the full sparse table, with each
/// constant folded into the basis through `1 = S⁻¹ Σ g_k`.
pub struct RelativeMultiplier {
    k: FieldCtx,
    m: usize,
    entries: Vec<Vec<Entry>>,
    s_inv: FieldElement,
    to_poly: Vec<Vec<u32>>,
    from_poly: Option<Vec<Vec<u32>>>,
}

impl RelativeMultiplier {
    pub fn new(table: &MultTable) -> Result<Self> {
        let ctx = table.ctx();
        let k = ctx
            .base()
            .ok_or_else(|| Error::InvalidParameter("table over the prime field".into()))?
            .clone();
        let full = full_table(table)?;
        let conj = table.conjugates();
        let s = ctx.relative_conjugate_sum(&table.generator, table.step)?;
        let s_inv = ctx
            .restrict(&s, &k)
            .ok_or_else(|| Error::InvalidParameter("conjugate sum outside the base".into()))?
            .inv()?;
        let coef = |c: &Coefficient| -> Result<Coef> {
            Ok(match c {
                Coefficient::Prime(v) => Coef::Prime(v.value()),
                Coefficient::Field(_) => Coef::Field(c.widen(&k)?),
            })
        };
        let entries = full
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        let terms = e
                            .terms
                            .iter()
                            .map(|(t, c)| Ok((*t, coef(c)?)))
                            .collect::<Result<Vec<_>>>()?;
                        let constant = e.constant.as_ref().map(|c| c.widen(&k)).transpose()?;
                        Ok((terms, constant))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let c = k.abs_degree();
        let n = ctx.abs_degree();
        let mut cols = Vec::with_capacity(n);
        for g in &conj {
            for t in 0..c {
                let mut e = vec![0i64; c];
                e[t] = 1;
                let et = ctx.lift(&k.from_flat(&e)?)?;
                cols.push((&et * g).coords().to_vec());
            }
        }
        let to_poly: Vec<Vec<u32>> = (0..n).map(|r| cols.iter().map(|col| col[r]).collect()).collect();
        let from_poly = invert_mod_p(ctx.p(), &to_poly);
        Ok(Self {
            k,
            m: table.m,
            entries,
            s_inv,
            to_poly,
            from_poly,
        })
    }

    pub fn nonzeros(&self) -> usize {
        self.entries
            .iter()
            .flatten()
            .map(|(t, c)| t.len() + usize::from(c.is_some()))
            .sum()
    }

    pub fn split(&self, flat: &[u32]) -> Result<Vec<FieldElement>> {
        flat.chunks(self.k.abs_degree())
            .map(|ch| self.k.from_flat(&ch.iter().map(|&v| v as i64).collect::<Vec<_>>()))
            .collect()
    }

    pub fn to_poly(&self, x: &[FieldElement]) -> Vec<u32> {
        let flat: Vec<u32> = x.iter().flat_map(|e| e.coords().to_vec()).collect();
        mat_vec_mod_p(self.k.p(), &self.to_poly, &flat)
    }

    pub fn from_poly(&self, a: &[u32]) -> Result<Vec<FieldElement>> {
        let inv = self
            .from_poly
            .as_ref()
            .ok_or_else(|| Error::NormalityFailure("relative conjugates are dependent".into()))?;
        self.split(&mat_vec_mod_p(self.k.p(), inv, a))
    }

    pub fn mul(&self, x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
        let mut acc = vec![self.k.zero(); self.m];
        let mut constant = self.k.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let xy = xi * yj;
                let (terms, c) = &self.entries[i][j];
                for (t, coef) in terms {
                    let v = match coef {
                        Coef::Prime(s) => xy.scale(*s),
                        Coef::Field(f) => &xy * f,
                    };
                    acc[*t] = &acc[*t] + &v;
                }
                if let Some(c) = c {
                    constant = &constant + &(&xy * c);
                }
            }
        }
        if !constant.is_zero() {
            let share = &constant * &self.s_inv;
            for a in &mut acc {
                *a = &*a + &share;
            }
        }
        acc
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub name: String,
    pub ops_per_sec: f64,
    pub ns_per_op: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub degree: usize,
    pub p: u32,
    pub ops: usize,
    pub seed: u64,
    /// Nonzero entries of the absolute `λ` matrix, if `g` is normal over `F_p`.
    pub lambda_nonzeros: Option<usize>,
    pub relative_table_nonzeros: usize,
    pub rows: Vec<BenchRow>,
    /// Input pairs on which the multipliers or Frobenius maps disagree.
    pub mismatches: usize,
    /// Polynomial-basis Frobenius time over normal-basis rotation time.
    pub frobenius_ratio: Option<f64>,
}

impl BenchReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "degree {} over F_{}, {} ops, seed {}",
            self.degree, self.p, self.ops, self.seed
        )?;
        if self.ops == 0 {
            return writeln!(f, "no operations requested");
        }
        match self.lambda_nonzeros {
            Some(n) => writeln!(f, "absolute lambda nonzeros: {n}")?,
            None => writeln!(f, "generator not normal over F_{}; absolute basis skipped", self.p)?,
        }
        writeln!(f, "relative table nonzeros: {}", self.relative_table_nonzeros)?;
        writeln!(f, "{:<34} {:>14} {:>12}", "operation", "ops/sec", "ns/op")?;
        for r in &self.rows {
            writeln!(f, "{:<34} {:>14.0} {:>12.1}", r.name, r.ops_per_sec, r.ns_per_op)?;
        }
        if let Some(ratio) = self.frobenius_ratio {
            writeln!(f, "frobenius matrix / rotation: {ratio:.1}x")?;
        }
        writeln!(f, "mismatches: {}", self.mismatches)
    }
}

fn timed<T>(name: &str, ops: usize, rows: &mut Vec<BenchRow>, mut f: impl FnMut(usize) -> T) -> (Vec<T>, f64) {
    let start = Instant::now();
    let out: Vec<T> = (0..ops).map(|i| black_box(f(i))).collect();
    let ns = start.elapsed().as_nanos() as f64 / ops as f64;
    rows.push(BenchRow {
        name: name.to_string(),
        ops_per_sec: if ns > 0.0 { 1e9 / ns } else { f64::INFINITY },
        ns_per_op: ns,
    });
    (out, ns)
}

/// Time every multiplier on `ops` seeded input pairs for the table's
/// generator and count disagreements.
pub fn run_bench(table: &MultTable, ops: usize, seed: u64) -> Result<BenchReport> {
    let ctx = table.ctx().clone();
    let mut report = BenchReport {
        degree: ctx.abs_degree(),
        p: ctx.p().get(),
        ops,
        seed,
        lambda_nonzeros: None,
        relative_table_nonzeros: 0,
        rows: Vec::new(),
        mismatches: 0,
        frobenius_ratio: None,
    };
    if ops == 0 {
        return Ok(report);
    }
    let abs = AbsoluteNormalBasis::new(&table.generator);
    let packed = abs.as_ref().and_then(AbsoluteNormalBasis::packed);
    let rel = RelativeMultiplier::new(table)?;
    report.lambda_nonzeros = abs.as_ref().map(AbsoluteNormalBasis::nonzeros);
    report.relative_table_nonzeros = rel.nonzeros();

    let n = ctx.abs_degree();
    let p = ctx.p().get();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || -> Vec<u32> { (0..n).map(|_| rng.gen_range(0..p)).collect() };
    // Each input is drawn as normal coordinates, then expressed in the
    // other bases before any timing starts.
    let mut poly_in = Vec::with_capacity(2 * ops);
    let mut normal_in = Vec::new();
    let mut rel_in = Vec::with_capacity(2 * ops);
    for _ in 0..2 * ops {
        let v = draw();
        let (poly, r) = match &abs {
            Some(a) => {
                let poly = a.to_poly(&v);
                let r = rel.from_poly(&poly)?;
                normal_in.push(v);
                (poly, r)
            }
            None => {
                let r = rel.split(&v)?;
                (rel.to_poly(&r), r)
            }
        };
        poly_in.push(ctx.from_flat(&poly.iter().map(|&x| x as i64).collect::<Vec<_>>())?);
        rel_in.push(r);
    }

    let mut rows = Vec::new();
    let (poly_out, _) = timed("mul polynomial basis", ops, &mut rows, |i| {
        &poly_in[2 * i] * &poly_in[2 * i + 1]
    });
    let (rel_out, _) = timed("mul relative sparse rows", ops, &mut rows, |i| {
        rel.mul(&rel_in[2 * i], &rel_in[2 * i + 1])
    });
    let normal_out = abs.as_ref().map(|a| {
        timed("mul normal basis (lambda)", ops, &mut rows, |i| {
            a.mul(&normal_in[2 * i], &normal_in[2 * i + 1])
        })
        .0
    });
    let packed_words: Option<Vec<u64>> =
        packed.as_ref().map(|_| normal_in.iter().map(|v| PackedBinary::pack(v)).collect());
    let packed_out = packed.as_ref().zip(packed_words.as_ref()).map(|(pk, w)| {
        timed("mul normal basis (packed u64)", ops, &mut rows, |i| {
            pk.mul(w[2 * i], w[2 * i + 1])
        })
        .0
    });

    let (frob_poly, poly_ns) = timed("frobenius polynomial (matrix)", ops, &mut rows, |i| {
        poly_in[2 * i].frobenius(1)
    });
    let mut frob_normal = None;
    let mut rot_ns = None;
    if let Some(a) = &abs {
        let (out, ns) = timed("frobenius normal (rotation)", ops, &mut rows, |i| {
            let mut v = normal_in[2 * i].clone();
            a.frobenius(&mut v);
            v
        });
        frob_normal = Some(out);
        rot_ns = Some(ns);
    }
    let mut frob_packed = None;
    if let (Some(pk), Some(w)) = (&packed, &packed_words) {
        let (out, ns) = timed("frobenius normal (packed rotation)", ops, &mut rows, |i| {
            pk.frobenius(w[2 * i])
        });
        frob_packed = Some(out);
        rot_ns = Some(ns);
    }
    report.frobenius_ratio = rot_ns.filter(|&r| r > 0.0).map(|r| poly_ns / r);

    for i in 0..ops {
        let want = poly_out[i].coords();
        let mut ok = rel.to_poly(&rel_out[i]) == want;
        if let (Some(a), Some(no)) = (&abs, &normal_out) {
            ok &= a.to_poly(&no[i]) == want;
            if let Some(fnm) = &frob_normal {
                ok &= a.to_poly(&fnm[i]) == frob_poly[i].coords();
            }
        }
        if let (Some(pk), Some(po), Some(no)) = (&packed, &packed_out, &normal_out) {
            ok &= pk.unpack(po[i]) == no[i];
        }
        if let (Some(pk), Some(fp), Some(fnm)) = (&packed, &frob_packed, &frob_normal) {
            ok &= pk.unpack(fp[i]) == fnm[i];
        }
        if !ok {
            report.mismatches += 1;
        }
    }
    report.rows = rows;
    Ok(report)
}
