mod common;

use common::{el, pm, tower};
use nbtower::artin_schreier::as_irreducible;
use nbtower::{Error, FieldCtx, Oracle, PolyRing};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn normality_examples() {
    let t = tower(2, 1);
    let f4 = &t.levels[0].ctx;
    let o = Oracle::default();
    assert!(o.is_normal_bruteforce(f4, &el(f4, &[0, 1]), 1).unwrap());
    assert!(!o.is_normal_bruteforce(f4, &f4.one(), 1).unwrap());
    assert!(!o.is_normal_bruteforce(f4, &f4.zero(), 1).unwrap());
    assert!(matches!(
        o.is_normal_bruteforce(f4, &f4.one(), 3),
        Err(Error::BadStep { .. })
    ));
}

#[test]
fn subfield_basis_spans_fixed_field() {
    let t = tower(2, 3);
    let ctx = &t.levels[2].ctx;
    let o = Oracle::default();
    for step in [1, 2, 4, 8] {
        let basis = o.subfield_basis(ctx, step).unwrap();
        assert_eq!(basis.len(), step);
        for b in &basis {
            assert_eq!(b.frobenius(step), *b);
        }
    }
}

#[test]
fn irreducibility_examples() {
    let o = Oracle::default();
    let f2 = FieldCtx::prime(pm(2));
    let r2 = PolyRing::new(&f2);
    assert!(o
        .is_irreducible_bruteforce(&f2, &r2.poly(vec![f2.one(), f2.one(), f2.one()]))
        .unwrap());

    let t = tower(2, 1);
    let f4 = &t.levels[0].ctx;
    let r4 = PolyRing::new(f4);
    assert!(!o
        .is_irreducible_bruteforce(f4, &r4.poly(vec![f4.one(), f4.one(), f4.one()]))
        .unwrap());

    let f7 = FieldCtx::prime(pm(7));
    let r7 = PolyRing::new(&f7);
    let f = r7.poly(vec![f7.scalar(-2), f7.zero(), f7.zero(), f7.one()]);
    assert!(o.is_irreducible_bruteforce(&f7, &f).unwrap());
    // (x - 1)^2 is caught by the first gcd
    let sq = r7.poly(vec![f7.one(), f7.scalar(-2), f7.one()]);
    assert!(!o.is_irreducible_bruteforce(&f7, &sq).unwrap());

    let small = Oracle::new(2);
    assert!(matches!(
        small.is_irreducible_bruteforce(&f7, &f),
        Err(Error::ScaleExceeded { .. })
    ));
}

#[test]
fn min_poly_examples() {
    let t = tower(2, 1);
    let f4 = &t.levels[0].ctx;
    let o = Oracle::default();
    let vals = |e: &nbtower::FieldElement| -> Vec<u32> {
        o.min_poly_via_conjugates(f4, e)
            .unwrap()
            .coeffs()
            .iter()
            .map(|c| c.value())
            .collect()
    };
    assert_eq!(vals(&el(f4, &[0, 1])), vec![1, 1, 1]);
    assert_eq!(vals(&f4.one()), vec![1, 1]);
    assert_eq!(vals(&el(f4, &[1, 1])), vec![1, 1, 1]);
}

#[test]
fn reciprocal_relations_hold_on_towers() {
    let o = Oracle::default();
    for (p, levels) in [(2, 5), (3, 3), (5, 2), (7, 2)] {
        let t = tower(p, levels);
        for level in &t.levels {
            let r = o.verify_reciprocal_relations(level).unwrap();
            assert!(r.passed(), "p={p} level {}: {r}", level.index);
            let expect = if level.n() >= 2 && level.n() % p as usize == 0 { 7 } else { 6 };
            assert_eq!(r.checks_run, expect);
        }
    }
}

#[test]
fn perturbed_min_poly_is_flagged() {
    let o = Oracle::default();
    let t = tower(2, 2);
    for level in &t.levels {
        let m_alpha = o.min_poly_via_conjugates(level.base(), &level.alpha).unwrap();
        let p = level.p();
        let ring = PolyRing::new(&p);
        let bumped = ring.add(&m_alpha, &ring.constant(p.scalar(1)));
        let r = o.verify_reciprocal_relations_with(level, &bumped).unwrap();
        assert!(!r.passed());
    }
}

#[test]
fn trace_criterion_agrees_with_sieve_exhaustively_on_small_fields() {
    let o = Oracle::default();
    for (p, levels) in [(2, 3), (3, 2), (5, 1)] {
        let t = tower(p, levels);
        for level in &t.levels {
            let base = &level.ctx;
            let ring = PolyRing::new(base);
            let pp = p as usize;
            for alpha in base.elements().take(400) {
                let mut c = vec![base.zero(); pp + 1];
                c[0] = -&alpha;
                c[1] = base.scalar(-1);
                c[pp] = base.one();
                let f = ring.poly(c);
                assert_eq!(
                    as_irreducible(base, &alpha).unwrap(),
                    o.is_irreducible_bruteforce(base, &f).unwrap(),
                    "p={p} alpha={alpha}"
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn min_poly_methods_agree(seed in any::<u64>(), which in 0usize..4) {
        let (p, levels) = [(2u64, 4usize), (3, 2), (5, 1), (7, 1)][which];
        let t = tower(p, levels);
        let ctx = &t.top().ctx;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = ctx.random(&mut rng);
        let via = Oracle::default().min_poly_via_conjugates(ctx, &a).unwrap();
        prop_assert_eq!(ctx.min_poly(&a), via);
    }

    #[test]
    fn normality_oracle_matches_prime_rank(seed in any::<u64>()) {
        let t = tower(3, 2);
        let ctx = &t.top().ctx;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = ctx.random(&mut rng);
        let by_rank = ctx.rank_over_prime(&ctx.conjugates(&a)).unwrap() == ctx.abs_degree();
        prop_assert_eq!(Oracle::default().is_normal_bruteforce(ctx, &a, 1).unwrap(), by_rank);
    }
}
