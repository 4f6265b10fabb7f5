#![allow(dead_code)]

use nbtower::artin_schreier::{build_tower, TowerSpec};
use nbtower::{FieldCtx, FieldElement, PrimeModulus};

pub fn pm(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

pub fn tower(p: u64, levels: usize) -> TowerSpec {
    let p = pm(p);
    build_tower(p, levels, p.scalar(1)).unwrap()
}

pub fn el(ctx: &FieldCtx, flat: &[i64]) -> FieldElement {
    ctx.from_flat(flat).unwrap()
}
