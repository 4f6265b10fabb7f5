//! Gaussian elimination over a [`FieldOps`] context.

use super::ops::FieldOps;
use super::prime::PrimeModulus;

/// Rank of the row set `rows` (all rows the same length).
pub fn rank<F: FieldOps>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m: Vec<Vec<F::Elem>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !field.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = field.inv(&m[rank][col]).expect("pivot is nonzero");
        let pivot_row: Vec<F::Elem> = m[rank].iter().map(|x| field.mul(x, &inv)).collect();
        for r in rank + 1..m.len() {
            if field.is_zero(&m[r][col]) {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..ncols {
                m[r][c] = field.sub(&m[r][c], &field.mul(&f, &pivot_row[c]));
            }
        }
        m[rank] = pivot_row;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank over `F_p` of integer rows already reduced into `[0, p)`.
pub fn rank_mod_p(p: PrimeModulus, rows: &[Vec<u32>]) -> usize {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = p.inv(m[rank][col]).expect("pivot is nonzero");
        for c in col..ncols {
            m[rank][c] = p.mul(m[rank][c], inv);
        }
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for c in col..ncols {
                row[c] = p.sub(row[c], p.mul(f, pivot_row[c]));
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Basis of the right null space `{v : A v = 0}` of the `rows x ncols`
/// matrix `a` over `F_p`.
pub fn nullspace_mod_p(p: PrimeModulus, a: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut m: Vec<Vec<u32>> = a.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = p.inv(m[rank][col]).unwrap();
        for c in 0..ncols {
            m[rank][c] = p.mul(m[rank][c], inv);
        }
        for r in 0..m.len() {
            if r == rank || m[r][col] == 0 {
                continue;
            }
            let f = m[r][col];
            for c in 0..ncols {
                let t = p.mul(f, m[rank][c]);
                m[r][c] = p.sub(m[r][c], t);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = p.neg(m[r][fc]);
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix over `F_p`, or `None` if singular.
pub fn invert_mod_p(p: PrimeModulus, a: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
    let n = a.len();
    let mut m: Vec<Vec<u32>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r][col] != 0)?;
        m.swap(col, piv);
        let inv = p.inv(m[col][col]).ok()?;
        for c in 0..2 * n {
            m[col][c] = p.mul(m[col][c], inv);
        }
        for r in 0..n {
            if r == col || m[r][col] == 0 {
                continue;
            }
            let f = m[r][col];
            for c in 0..2 * n {
                let t = p.mul(f, m[col][c]);
                m[r][c] = p.sub(m[r][c], t);
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// `y = A x` over `F_p` with `A` stored row-major.
pub fn mat_vec_mod_p(p: PrimeModulus, a: &[Vec<u32>], x: &[u32]) -> Vec<u32> {
    a.iter()
        .map(|row| {
            let s: u64 = row
                .iter()
                .zip(x)
                .map(|(&r, &v)| r as u64 * v as u64)
                .sum();
            p.reduce(s)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_small() {
        let p = PrimeModulus::new(2).unwrap();
        assert_eq!(rank_mod_p(p, &[vec![0, 1], vec![1, 1]]), 2);
        assert_eq!(rank_mod_p(p, &[vec![1, 0], vec![1, 0]]), 1);
        assert_eq!(rank_mod_p(p, &[]), 0);
        let rows: Vec<Vec<_>> = [[0u64, 1], [1, 1]]
            .iter()
            .map(|r| r.iter().map(|&v| p.scalar(v)).collect())
            .collect();
        assert_eq!(rank(&p, &rows), 2);
    }

    #[test]
    fn nullspace_and_inverse() {
        let p = PrimeModulus::new(5).unwrap();
        let a = vec![vec![1, 2, 3], vec![0, 1, 4]];
        let ns = nullspace_mod_p(p, &a, 3);
        assert_eq!(ns.len(), 1);
        assert_eq!(mat_vec_mod_p(p, &a, &ns[0]), vec![0, 0]);

        let m = vec![vec![1, 2], vec![3, 4]];
        let inv = invert_mod_p(p, &m).unwrap();
        for (j, e) in [[1u32, 0], [0, 1]].iter().enumerate() {
            let col: Vec<u32> = inv.iter().map(|r| r[j]).collect();
            assert_eq!(mat_vec_mod_p(p, &m, &col), e.to_vec());
        }
        assert!(invert_mod_p(p, &[vec![1, 2], vec![2, 4]]).is_none());
    }
}
