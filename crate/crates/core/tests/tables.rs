mod common;

use common::{el, pm, tower};
use nbtower::tables::{
    delta_table, full_table, gamma_table, sparsity, verify_full_table, verify_table, Coefficient,
    CoefficientField, MultTable, SparseRow,
};

fn prime_terms(row: &SparseRow) -> Vec<(usize, u32)> {
    row.terms
        .iter()
        .map(|(k, c)| match c {
            Coefficient::Prime(s) => (*k, s.value()),
            Coefficient::Field(e) => panic!("unexpected field coefficient {e}"),
        })
        .collect()
}

#[test]
fn gamma_table_f4() {
    let t = tower(2, 1);
    let level = &t.levels[0];
    let table = gamma_table(level).unwrap();
    assert_eq!(table.m, 2);
    assert_eq!(table.rows.len(), 1);
    assert_eq!(prime_terms(&table.rows[0]), vec![(0, 1), (1, 1)]);
    assert!(table.rows[0].constant.is_none());
    let g = &level.gamma;
    assert_eq!(*g, el(&level.ctx, &[1, 1]));
    // γ³ = 1 = γ + γ²
    assert!(g.pow(3).is_one());
    assert!(verify_table(&table).passed());
    assert_eq!(sparsity(&table).max_row_weight, 2);
}

#[test]
fn gamma_square_row_f16() {
    let t = tower(2, 2);
    let level = &t.levels[1];
    let f4 = level.base();
    let table = gamma_table(level).unwrap();
    let sq = table.square_row.as_ref().unwrap();
    assert!(sq.constant.is_none());
    assert_eq!(
        sq.coefficient(0),
        Some(&Coefficient::Field(el(f4, &[1, 1])))
    );
    assert_eq!(sq.coefficient(1), Some(&Coefficient::Prime(pm(2).scalar(1))));
    let g = &level.gamma;
    let f16 = &level.ctx;
    let rhs = &(&f16.lift(&el(f4, &[1, 1])).unwrap() * g) + &g.frobenius(2);
    assert_eq!(g * g, rhs);
    assert_eq!(table.coefficient_field, CoefficientField::Base);
}

#[test]
fn delta_table_f4_row_is_constant_one() {
    let t = tower(2, 1);
    let level = &t.levels[0];
    let table = delta_table(level).unwrap();
    let row = &table.rows[0];
    assert!(row.terms.is_empty());
    assert_eq!(row.constant, Some(Coefficient::Prime(pm(2).scalar(1))));
    assert!(level.delta_inv.pow(3).is_one());
    assert!(verify_table(&table).passed());
}

#[test]
fn delta_square_row_f16() {
    let t = tower(2, 2);
    let level = &t.levels[1];
    let f4 = level.base();
    let table = delta_table(level).unwrap();
    let sq = table.square_row.as_ref().unwrap();
    let one_beta = Coefficient::Field(el(f4, &[1, 1]));
    assert_eq!(sq.constant.as_ref(), Some(&one_beta));
    assert_eq!(sq.coefficient(0), Some(&one_beta));
    assert_eq!(sq.coefficient(1), Some(&Coefficient::Prime(pm(2).scalar(1))));
    assert!(verify_table(&table).passed());
}

#[test]
fn every_row_exact_on_towers() {
    for (p, levels, b) in [(2, 6, 1), (3, 4, 1), (5, 3, 1), (3, 2, 2), (7, 2, 3)] {
        let pm = pm(p);
        let t = nbtower::artin_schreier::build_tower(pm, levels, pm.scalar(b)).unwrap();
        for level in &t.levels {
            for table in [gamma_table(level).unwrap(), delta_table(level).unwrap()] {
                let r = verify_table(&table);
                assert!(r.passed(), "p={p} level={}: {r}", level.index);
                assert_eq!(r.checks_run, p as usize);
            }
        }
    }
}

#[test]
fn row_shapes_and_weights() {
    for (p, levels) in [(2, 5), (3, 3), (5, 2), (7, 2)] {
        let t = tower(p, levels);
        for level in &t.levels {
            let g = gamma_table(level).unwrap();
            for (i, row) in g.rows.iter().enumerate() {
                let c = (pm(p).scalar(i as u64 + 1) * level.h).inv().unwrap();
                assert_eq!(prime_terms(row), vec![(0, c.value()), (i + 1, (-c).value())]);
                assert!(row.constant.is_none());
            }
            let rep = sparsity(&g);
            assert_eq!(rep.rows_with_two_terms, p as usize - 1);
            assert!(rep.coefficients_in_prime_field);
            assert!(g.square_row.as_ref().unwrap().weight() <= p as usize + 1);

            let d = delta_table(level).unwrap();
            let b2 = -(level.b * level.b);
            for (i, row) in d.rows.iter().enumerate() {
                assert_eq!(row.constant, Some(Coefficient::Prime(b2)));
                let keys: Vec<usize> = row.terms.iter().map(|(k, _)| *k).collect();
                assert!(keys.iter().all(|&k| k == 0 || k == i + 1));
            }
            assert!(sparsity(&d).coefficients_in_prime_field);
            assert!(d.square_row.as_ref().unwrap().weight() <= p as usize + 2);
        }
    }
}

#[test]
fn conjugate_sum_and_product_of_gamma() {
    for (p, levels) in [(2, 5), (3, 3), (5, 2)] {
        let t = tower(p, levels);
        for level in &t.levels {
            let ctx = &level.ctx;
            let conj = ctx.conjugates_step(&level.gamma, level.n());
            let sum = conj.iter().fold(ctx.zero(), |a, c| &a + c);
            let prod = conj.iter().fold(ctx.one(), |a, c| &a * c);
            let minus_alpha_inv = -&ctx.lift(&level.alpha.inv().unwrap()).unwrap();
            assert_eq!(sum, minus_alpha_inv);
            assert_eq!(-&prod, minus_alpha_inv);
        }
    }
}

#[test]
fn full_table_f4_and_commutativity() {
    let t = tower(2, 1);
    let table = gamma_table(&t.levels[0]).unwrap();
    let full = full_table(&table).unwrap();
    assert_eq!(full.m, 2);
    let r = verify_full_table(&table, &full);
    assert!(r.passed());
    assert_eq!(r.checks_run, 4);
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(full.entries[i][j], full.entries[j][i]);
        }
    }
}

#[test]
fn full_table_matches_direct_products_up_to_degree_64() {
    for (p, levels) in [(2, 6), (3, 3), (5, 2)] {
        let t = tower(p, levels);
        for level in &t.levels {
            for table in [gamma_table(level).unwrap(), delta_table(level).unwrap()] {
                let full = full_table(&table).unwrap();
                let r = verify_full_table(&table, &full);
                assert!(r.passed(), "{r}");
                let m = table.m;
                for i in 0..m {
                    for j in 0..m {
                        assert_eq!(full.entries[i][j], full.entries[j][i]);
                    }
                }
            }
        }
    }
}

#[test]
fn degenerate_single_conjugate_table() {
    // In F_4 with step 2 the only conjugate of β is β, and β² = 1 + β.
    let t = tower(2, 1);
    let f4 = &t.levels[0].ctx;
    let one = Coefficient::Prime(pm(2).scalar(1));
    let sq = SparseRow::new(one.clone(), vec![(0, one)]).unwrap();
    let table = MultTable::new(el(f4, &[0, 1]), 2, vec![], sq.clone()).unwrap();
    assert_eq!(table.m, 1);
    assert!(verify_table(&table).passed());
    let full = full_table(&table).unwrap();
    assert_eq!(full.entries, vec![vec![sq]]);
}

#[test]
fn perturbed_coefficient_flags_exactly_that_row() {
    let t = tower(5, 2);
    let level = &t.levels[1];
    let table = gamma_table(level).unwrap();
    for target in 0..table.rows.len() {
        let mut bad = table.clone();
        let (_, c) = &mut bad.rows[target].terms[0];
        if let Coefficient::Prime(s) = c {
            *s = *s + pm(5).scalar(1);
        }
        let r = verify_table(&bad);
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].check, format!("row {}", target + 1));
    }
}

#[test]
fn empty_table() {
    let t = tower(2, 1);
    let table = MultTable::empty(t.levels[0].gamma.clone());
    let r = verify_table(&table);
    assert!(r.passed());
    assert_eq!(r.checks_run, 0);
    let s = sparsity(&table);
    assert_eq!(s.nonzero_structure_constants, 0);
    assert_eq!(s.rows_with_two_terms, 0);
    assert_eq!(s.max_row_weight, 0);
    assert_eq!(s.constant_terms_used, 0);
    assert_eq!(s.total_coefficients, 0);
    assert_eq!(s.prime_field_ratio(), None);
    assert_eq!(full_table(&table).unwrap().entries.len(), 0);
}

#[test]
fn sparse_row_normalises_terms() {
    let p = pm(3);
    let row = SparseRow::new(
        Coefficient::Prime(p.scalar(0)),
        vec![
            (2, Coefficient::Prime(p.scalar(1))),
            (1, Coefficient::Prime(p.scalar(0))),
            (0, Coefficient::Prime(p.scalar(2))),
        ],
    )
    .unwrap();
    assert!(row.constant.is_none());
    assert_eq!(prime_terms(&row), vec![(0, 2), (2, 1)]);
    assert!(SparseRow::new(
        Coefficient::Prime(p.scalar(0)),
        vec![(1, Coefficient::Prime(p.scalar(1))), (1, Coefficient::Prime(p.scalar(2)))],
    )
    .is_err());
}
