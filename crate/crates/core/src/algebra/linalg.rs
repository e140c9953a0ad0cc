//! Small dense matrices over finite fields and over `Q`.

use num_traits::{One, Zero};

use super::field::{Elem, FieldCtx};
use super::Rat;

pub type FqMatrix = Vec<Vec<Elem>>;

pub fn rank_fq(k: &FieldCtx, m: &FqMatrix) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = k.inv(a[rank][c]);
        for x in a[rank].iter_mut() {
            *x = k.mul(*x, inv);
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for cc in 0..cols {
                    let t = k.mul(f, a[rank][cc]);
                    a[r][cc] = k.sub(a[r][cc], t);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn mul_fq(k: &FieldCtx, a: &FqMatrix, b: &FqMatrix) -> FqMatrix {
    let n = a.len();
    let inner = b.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..inner).fold(0, |acc, l| k.add(acc, k.mul(a[i][l], b[l][j]))))
                .collect()
        })
        .collect()
}

/// Entrywise `x ↦ x^{p^e}`.
pub fn frobenius_twist(k: &FieldCtx, a: &FqMatrix, e: u32) -> FqMatrix {
    let exp = (k.p() as u64).pow(e);
    a.iter()
        .map(|row| row.iter().map(|&x| k.pow(x, exp)).collect())
        .collect()
}

/// Rank of `A · A^{(p)} · ... · A^{(p^{g-1})}`, the stable rank of the
/// `p`-semilinear map with matrix `A`.
pub fn stable_rank_fq(k: &FieldCtx, a: &FqMatrix) -> usize {
    let g = a.len();
    if g == 0 {
        return 0;
    }
    let mut acc = a.clone();
    for e in 1..g as u32 {
        acc = mul_fq(k, &acc, &frobenius_twist(k, a, e));
    }
    rank_fq(k, &acc)
}

/// Rank of `A^{(p^{g-1})} · ... · A^{(p)} · A`. When `A` holds the raw
/// coefficients of a Cartier operator, which acts by `v ↦ A^{(1/p)} v^{(1/p)}`,
/// this is the rank of its `g`-th iterate.
pub fn cartier_stable_rank_fq(k: &FieldCtx, a: &FqMatrix) -> usize {
    let g = a.len();
    if g == 0 {
        return 0;
    }
    let mut acc = a.clone();
    for e in 1..g as u32 {
        acc = mul_fq(k, &frobenius_twist(k, a, e), &acc);
    }
    rank_fq(k, &acc)
}

/// Reduced row echelon form over `Q` in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = Rat::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn mul_q(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(Rat::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_int;

    #[test]
    fn fq_rank() {
        let k = FieldCtx::new(5).unwrap();
        let m = vec![vec![1, 2, 3], vec![2, 3, 1], vec![3, 0, 4]];
        // row3 = row1 + row2
        assert_eq!(rank_fq(&k, &m), 2);
        assert_eq!(rank_fq(&k, &vec![vec![0, 0], vec![0, 0]]), 0);
    }

    #[test]
    fn nilpotent_stable_rank() {
        let k = FieldCtx::new(3).unwrap();
        let n = vec![vec![0, 1], vec![0, 0]];
        assert_eq!(rank_fq(&k, &n), 1);
        assert_eq!(stable_rank_fq(&k, &n), 0);
    }

    #[test]
    fn rational_rref() {
        let mut m = vec![
            vec![rat_int(2), rat_int(4), rat_int(6)],
            vec![rat_int(1), rat_int(3), rat_int(5)],
        ];
        let piv = rref(&mut m);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(m[0], vec![rat_int(1), rat_int(0), rat_int(-1)]);
        assert_eq!(m[1], vec![rat_int(0), rat_int(1), rat_int(2)]);
    }
}
