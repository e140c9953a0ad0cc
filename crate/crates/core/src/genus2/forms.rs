//! Binary forms `F(X, Z) = Σ c_i X^i Z^{d-i}` stored as `c_0..=c_d`.

use crate::algebra::field::{Elem, FieldCtx};
use crate::algebra::poly;

/// `[a, b, c, d]` acting by `X ↦ aX + bZ`, `Z ↦ cX + dZ`.
pub type Mat2 = [Elem; 4];

/// Coefficients of `F(aX + bZ, cX + dZ)`.
pub fn transform(k: &FieldCtx, f: &[Elem], m: &Mat2) -> Vec<Elem> {
    let d = f.len() - 1;
    let [a, b, c, dd] = *m;
    // (aX+bZ)^i and (cX+dZ)^j as polynomials in X (Z = 1)
    let mut lin1 = vec![vec![1 as Elem]];
    let mut lin2 = vec![vec![1 as Elem]];
    for i in 1..=d {
        lin1.push(poly::mul(k, &lin1[i - 1], &[b, a]));
        lin2.push(poly::mul(k, &lin2[i - 1], &[dd, c]));
    }
    let mut out = vec![0; d + 1];
    for (i, &ci) in f.iter().enumerate() {
        if ci == 0 {
            continue;
        }
        let t = poly::mul(k, &lin1[i], &lin2[d - i]);
        for (j, &x) in t.iter().enumerate() {
            out[j] = k.add(out[j], k.mul(ci, x));
        }
    }
    out
}

/// All invertible `2×2` matrices over `k`.
pub fn gl2(k: &FieldCtx) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in k.elements() {
        for b in k.elements() {
            for c in k.elements() {
                for d in k.elements() {
                    if k.sub(k.mul(a, d), k.mul(b, c)) != 0 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

pub fn gl2_order(q: i64) -> i64 {
    (q * q - 1) * (q * q - q)
}

/// Index of a form with `len` coefficients, base `q`, low coefficient first.
pub fn encode(f: &[Elem], q: u64) -> u64 {
    f.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64)
}

pub fn decode(mut idx: u64, q: u64, len: usize) -> Vec<Elem> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((idx % q) as Elem);
        idx /= q;
    }
    out
}

/// Squarefree as a binary form of degree `f.len() - 1`: the dehomogenized
/// polynomial is squarefree and drops at most one degree.
pub fn binary_squarefree(k: &FieldCtx, f: &[Elem]) -> bool {
    let d = f.len() - 1;
    match poly::degree(f) {
        Some(e) if e + 1 >= d => poly::is_squarefree(k, &f[..=e]),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform_composes() {
        let k = FieldCtx::new(5).unwrap();
        let f = vec![1, 0, 3, 0, 0, 2, 4];
        let m1 = [1, 2, 0, 3];
        let m2 = [2, 1, 1, 1];
        // F∘m1∘m2 = F∘(m1 m2)
        let lhs = transform(&k, &transform(&k, &f, &m1), &m2);
        let prod = [
            k.add(k.mul(m1[0], m2[0]), k.mul(m1[1], m2[2])),
            k.add(k.mul(m1[0], m2[1]), k.mul(m1[1], m2[3])),
            k.add(k.mul(m1[2], m2[0]), k.mul(m1[3], m2[2])),
            k.add(k.mul(m1[2], m2[1]), k.mul(m1[3], m2[3])),
        ];
        assert_eq!(lhs, transform(&k, &f, &prod));
        assert_eq!(gl2(&k).len() as i64, gl2_order(5));
    }

    #[test]
    fn squarefree_forms() {
        let k = FieldCtx::new(3).unwrap();
        // x^5 - x as a sextic: simple root at infinity
        assert!(binary_squarefree(&k, &[0, 2, 0, 0, 0, 1, 0]));
        // degree 4 as a sextic: double root at infinity
        assert!(!binary_squarefree(&k, &[1, 0, 0, 0, 1, 0, 0]));
    }
}
