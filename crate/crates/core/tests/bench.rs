mod common;

use common::tower;
use nbtower::bench::{run_bench, AbsoluteNormalBasis, PackedBinary, RelativeMultiplier};
use nbtower::kummer::{build_kummer, kummer_table};
use nbtower::tables::delta_table;
use nbtower::Oracle;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn binary_degree_32_paths_agree() {
    let t = tower(2, 5);
    let table = &t.tables[4].delta;
    let r = run_bench(table, 2000, 7).unwrap();
    assert_eq!(r.degree, 32);
    assert_eq!(r.mismatches, 0, "{r}");
    assert!(r.lambda_nonzeros.is_some());
    assert!(r.frobenius_ratio.is_some());
    let names: Vec<&str> = r.rows.iter().map(|x| x.name.as_str()).collect();
    assert!(names.contains(&"mul normal basis (packed u64)"));
    assert!(names.contains(&"mul polynomial basis"));
}

#[test]
fn odd_characteristic_and_kummer_paths_agree() {
    for (p, levels) in [(3, 2), (5, 1), (7, 2)] {
        let t = tower(p, levels);
        let r = run_bench(&t.tables.last().unwrap().delta, 300, 1).unwrap();
        assert_eq!(r.mismatches, 0, "p={p}: {r}");
        let r = run_bench(&t.tables.last().unwrap().gamma, 300, 2).unwrap();
        assert_eq!(r.mismatches, 0, "p={p}: {r}");
    }
    for (p, q, l, s) in [(7, 3, 1, 1), (5, 2, 1, 2), (2, 3, 2, 1)] {
        let lv = build_kummer(p, q, l, s, 1, &Oracle::default()).unwrap();
        let r = run_bench(&kummer_table(&lv).unwrap(), 300, 3).unwrap();
        assert_eq!(r.mismatches, 0, "({p},{q},{l},{s}): {r}");
    }
}

#[test]
fn zero_ops_is_an_empty_report() {
    let t = tower(2, 2);
    let r = run_bench(&t.tables[1].delta, 0, 0).unwrap();
    assert!(r.rows.is_empty());
    assert_eq!(r.mismatches, 0);
    assert!(r.lambda_nonzeros.is_none());
}

#[test]
fn same_seed_same_inputs() {
    let t = tower(3, 2);
    let a = run_bench(&t.tables[1].delta, 50, 11).unwrap();
    let b = run_bench(&t.tables[1].delta, 50, 11).unwrap();
    assert_eq!(a.lambda_nonzeros, b.lambda_nonzeros);
    assert_eq!(a.rows.len(), b.rows.len());
}

#[test]
fn normal_basis_multiplier_matches_field_products() {
    let t = tower(2, 4);
    let level = t.top();
    let ctx = &level.ctx;
    let nb = AbsoluteNormalBasis::new(&level.delta_inv).unwrap();
    let pk = nb.packed().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let a = ctx.random(&mut rng);
        let b = ctx.random(&mut rng);
        let (na, nb_) = (nb.from_poly(a.coords()), nb.from_poly(b.coords()));
        let prod = nb.mul(&na, &nb_);
        assert_eq!(nb.to_poly(&prod), (&a * &b).coords());
        let packed = pk.mul(PackedBinary::pack(&na), PackedBinary::pack(&nb_));
        assert_eq!(pk.unpack(packed), prod);
        let mut f = na.clone();
        nb.frobenius(&mut f);
        assert_eq!(nb.to_poly(&f), a.frobenius(1).coords());
    }
    // 1 = Σ c_k has all-ones coordinates
    assert_eq!(nb.from_poly(ctx.one().coords()), vec![1; 16]);
}

#[test]
fn one_is_not_normal() {
    let t = tower(2, 2);
    assert!(AbsoluteNormalBasis::new(&t.top().ctx.one()).is_none());
}

#[test]
fn relative_multiplier_round_trips() {
    let t = tower(3, 2);
    let table = delta_table(t.top()).unwrap();
    let rel = RelativeMultiplier::new(&table).unwrap();
    let ctx = &t.top().ctx;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let a = ctx.random(&mut rng);
        let b = ctx.random(&mut rng);
        let x = rel.from_poly(a.coords()).unwrap();
        let y = rel.from_poly(b.coords()).unwrap();
        assert_eq!(rel.to_poly(&x), a.coords());
        assert_eq!(rel.to_poly(&rel.mul(&x, &y)), (&a * &b).coords());
    }
}
