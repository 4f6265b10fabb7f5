mod common;

use common::{pm, tower};
use nbtower::artin_schreier::build_tower;
use nbtower::file::{Rebuilt, TowerFileV1, VerifyOptions};
use nbtower::kummer::build_kummer;
use nbtower::{Error, Oracle};
use proptest::prelude::*;

fn deep() -> VerifyOptions {
    VerifyOptions {
        deep: true,
        ..VerifyOptions::default()
    }
}

#[test]
fn fresh_towers_verify() {
    for (p, levels) in [(2, 4), (3, 2), (5, 1)] {
        let f = TowerFileV1::from_tower(&tower(p, levels)).unwrap();
        let r = f.verify(&deep()).unwrap();
        assert!(r.passed(), "p={p}: {r}");
        assert!(r.checks_run > 10 * levels);
    }
}

#[test]
fn fresh_kummer_files_verify() {
    for (p, q, l, s) in [(7, 3, 1, 1), (5, 2, 1, 2), (3, 2, 2, 3), (2, 3, 2, 1)] {
        let lv = build_kummer(p, q, l, s, 1, &Oracle::default()).unwrap();
        let f = TowerFileV1::from_kummer(&lv).unwrap();
        assert_eq!(f.levels[0].base_modulus.is_some(), l > 1);
        let text = f.to_json();
        let back = TowerFileV1::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        let r = back.verify(&deep()).unwrap();
        assert!(r.passed(), "({p},{q},{l},{s}): {r}");
        match back.rebuild(&Oracle::default()).unwrap() {
            Rebuilt::Kummer(rebuilt, _) => assert_eq!(rebuilt.gamma.coords(), lv.gamma.coords()),
            Rebuilt::Tower(_) => panic!("expected a Kummer level"),
        }
    }
}

#[test]
fn f4_file_contents() {
    let f = TowerFileV1::from_tower(&tower(2, 1)).unwrap();
    let level = &f.levels[0];
    assert_eq!(level.degree, 2);
    // x^2 - x - 1 = x^2 + x + 1 over F_2
    assert_eq!(level.modulus, vec![1, 1, 1]);
    // δ⁻¹ = β⁻¹ - 1 = β
    assert_eq!(level.generator, vec![0, 1]);
    let delta = &level.tables[1];
    assert_eq!(delta.name, "delta");
    assert_eq!(delta.rows[0].constant, vec![1]);
    assert!(delta.rows[0].terms.is_empty());
}

#[test]
fn corrupted_row_is_named() {
    let mut f = TowerFileV1::from_tower(&tower(3, 2)).unwrap();
    let row = &mut f.levels[1].tables[1].rows[0];
    let c = &mut row.terms[0].1[0];
    *c = (*c + 1) % 3;
    let r = f.verify(&VerifyOptions::default()).unwrap();
    assert!(!r.passed());
    assert!(r.failures.iter().all(|x| x.input == "level 2"));
    assert!(r.failures.iter().any(|x| x.check.starts_with("delta row 1")));
    assert!(!r.failures.iter().any(|x| x.check.starts_with("gamma")));
}

#[test]
fn corrupted_generator_and_chain_are_flagged() {
    let base = TowerFileV1::from_tower(&tower(2, 3)).unwrap();

    let mut f = base.clone();
    f.levels[2].generator[0] ^= 1;
    let r = f.verify(&VerifyOptions::default()).unwrap();
    assert!(r.failures.iter().any(|x| x.check.starts_with("generator")));

    let mut f = base.clone();
    f.levels[2].b = vec![0];
    let r = f.verify(&VerifyOptions::default()).unwrap();
    assert!(!r.passed());
}

#[test]
fn malformed_files_are_errors() {
    assert!(matches!(TowerFileV1::from_json("{"), Err(Error::Format(_))));
    let f = TowerFileV1::from_tower(&tower(2, 1)).unwrap();
    let text = f.to_json().replacen("\"p\": 2", "\"p\": 2, \"extra\": 1", 1);
    assert!(matches!(TowerFileV1::from_json(&text), Err(Error::Format(_))));
    let text = f.to_json().replacen("\"format_version\": 1", "\"format_version\": 9", 1);
    assert!(matches!(TowerFileV1::from_json(&text), Err(Error::Format(_))));

    let mut bad = f.clone();
    bad.levels[0].modulus = vec![1, 1];
    assert!(matches!(bad.verify(&VerifyOptions::default()), Err(Error::Format(_))));
    let mut bad = f.clone();
    bad.levels[0].generator = vec![1, 7];
    assert!(matches!(bad.verify(&VerifyOptions::default()), Err(Error::Format(_))));
}

#[test]
fn rebuild_matches_original_tower() {
    let p = pm(3);
    let t = build_tower(p, 3, p.scalar(2)).unwrap();
    let f = TowerFileV1::from_tower(&t).unwrap();
    match f.rebuild(&Oracle::default()).unwrap() {
        Rebuilt::Tower(r) => {
            assert_eq!(r.degrees(), t.degrees());
            assert_eq!(r.top().delta_inv.coords(), t.top().delta_inv.coords());
            assert_eq!(
                TowerFileV1::from_tower(&r).unwrap().to_json(),
                f.to_json()
            );
        }
        Rebuilt::Kummer(..) => panic!("expected a tower"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn save_load_save_is_byte_identical(which in 0usize..5, b in 1u64..7) {
        let (p, levels) = [(2u64, 5usize), (3, 3), (5, 2), (7, 1), (7, 2)][which];
        let pm = pm(p);
        let t = build_tower(pm, levels, pm.scalar(b % p)).or_else(|_| build_tower(pm, levels, pm.scalar(1))).unwrap();
        let text = TowerFileV1::from_tower(&t).unwrap().to_json();
        let loaded = TowerFileV1::from_json(&text).unwrap();
        prop_assert_eq!(loaded.to_json(), text);
    }
}
