//! Hyperelliptic curves `y^2 + h(x) y = f(x)` over `F_q`, `q = 2^m`.
//!
//! Here `h` is a binary form of degree `g + 1` and `f` one of degree
//! `2g + 2`. The substitutions `x ↦ M·x`, `y ↦ (e y + u(x))/(cx + d)^{g+1}`
//! form a group of order `(q - 1) #GL_2 q^{g+2}` acting with kernel of order
//! `q - 1`. For fixed `h` the shifts `f ↦ f + u^2 + u h` form an
//! `F_2`-subspace `W_h` of index `2 q^{g+1}` (the kernel is `{0, h}`), so it
//! suffices to enumerate one `f` per coset, each with mass `1/(2 #GL_2)`.
//!
//! Point counts use `#{y : y^2 + b y = c} = 2` iff `Tr(c/b^2) = 0` for
//! `b ≠ 0`. The Cartier operator on `x^j dx/h` is read off from the odd
//! coefficients of `x^j h`, so the `p`-rank and `a`-number depend on `h` only.

use rayon::prelude::*;

use super::forms::{decode, gl2, gl2_order, transform};
use crate::algebra::field::{Elem, FieldCtx};
use crate::algebra::linalg::{cartier_stable_rank_fq, rank_fq, FqMatrix};
use crate::algebra::{poly, Rat, WeilData};
use crate::error::{CensusError, Result};
use crate::strata::table::{StrataCensus, StrataKey, Tally};

/// Cartier matrix of `y^2 + h y = f`: entry `(i, j)` is the coefficient of
/// `x^{2i+1}` in `x^j h(x)`.
pub fn cartier_matrix_char2(h: &[Elem], g: usize) -> FqMatrix {
    (0..g)
        .map(|i| {
            (0..g)
                .map(|j| {
                    let e = 2 * i + 1;
                    if e >= j && e - j < h.len() {
                        h[e - j]
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

/// Distinct zeros of `h` as a binary form of degree `g + 1` on `P^1`, minus one.
pub fn p_rank_char2(k: &FieldCtx, h: &[Elem], g: usize) -> usize {
    let affine = poly::distinct_root_count(k, h);
    let at_infinity = (poly::degree(h).unwrap_or(0) < g + 1) as usize;
    affine + at_infinity - 1
}

/// Smooth as a projective curve in both charts.
pub fn is_smooth_char2(k: &FieldCtx, h: &[Elem], f: &[Elem], g: usize) -> bool {
    if h.iter().all(|&c| c == 0) {
        return false;
    }
    if h[g + 1] == 0 {
        let t = k.add(k.mul(k.mul(h[g], h[g]), f[2 * g + 2]), k.mul(f[2 * g + 1], f[2 * g + 1]));
        if t == 0 {
            return false;
        }
    }
    let hp = poly::derivative(k, h);
    let fp = poly::derivative(k, f);
    let lhs = poly::mul(k, &poly::mul(k, &hp, &hp), f);
    let rhs = poly::mul(k, &fp, &fp);
    let s = poly::add(k, &lhs, &rhs);
    let hh = poly::trimmed(h);
    if poly::degree(&hh) == Some(0) {
        return true;
    }
    poly::degree(&poly::gcd(k, &hh, &s)) == Some(0)
}

struct PointTables {
    /// per degree: embedding of the base field and the field itself
    fields: Vec<(FieldCtx, Vec<Elem>)>,
}

impl PointTables {
    fn new(k: &FieldCtx, g: usize) -> Result<Self> {
        let mut fields = Vec::new();
        for d in 1..=g as u32 {
            let big = FieldCtx::with_pm(2, k.m() * d)?;
            let embed = k.embed_into(&big)?;
            fields.push((big, embed));
        }
        Ok(PointTables { fields })
    }
}

/// Per-`h` data: which points of `P^1(F_{q^d})` are zeros of `h`, and for
/// each basis vector of the coset complement the bitmask of points where it
/// contributes trace one.
struct HData {
    zeros: Vec<u32>,
    nonzero: Vec<u32>,
    masks: Vec<Vec<u128>>,
}

fn h_data(tables: &PointTables, h: &[Elem], basis: &[(usize, Elem)], g: usize) -> HData {
    let mut zeros = Vec::new();
    let mut nonzero = Vec::new();
    let mut masks = vec![Vec::new(); basis.len()];
    for (big, embed) in &tables.fields {
        let he: Vec<Elem> = h.iter().map(|&c| embed[c as usize]).collect();
        // points: affine x, then infinity
        let mut hv: Vec<Elem> = big.elements().map(|x| big.eval(&he, x)).collect();
        hv.push(he[g + 1]);
        let z = hv.iter().filter(|&&v| v == 0).count() as u32;
        zeros.push(z);
        nonzero.push(hv.len() as u32 - z);
        let inv_sq: Vec<Elem> = hv
            .iter()
            .map(|&v| if v == 0 { 0 } else { big.inv(big.mul(v, v)) })
            .collect();
        let n_aff = big.q() as usize;
        for (b, &(i, c)) in basis.iter().enumerate() {
            let c = embed[c as usize];
            let mut mask = 0u128;
            for (pt, &w) in inv_sq.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                let val = if pt < n_aff {
                    big.mul(c, big.pow(pt as Elem, i as u64))
                } else if i == 2 * g + 2 {
                    c
                } else {
                    0
                };
                if big.trace(big.mul(val, w)) == 1 {
                    mask |= 1u128 << pt;
                }
            }
            masks[b].push(mask);
        }
    }
    HData { zeros, nonzero, masks }
}

/// Complement of `W_h = {u^2 + u h}` inside forms of degree `2g + 2`, as a
/// list of unit vectors `(degree, coefficient)`.
fn coset_complement(k: &FieldCtx, h: &[Elem], g: usize) -> Result<Vec<(usize, Elem)>> {
    let m = k.m() as usize;
    let nf = 2 * g + 3;
    let to_bits = |f: &[Elem]| -> u64 {
        f.iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (c as u64) << (i * m))
    };
    let mut basis: Vec<u64> = Vec::new();
    for j in 0..=g + 1 {
        for l in 0..m {
            let mut u = vec![0; j + 1];
            u[j] = 1 << l;
            let mut w = poly::add(k, &poly::mul(k, &u, &u), &poly::mul(k, &u, h));
            w.resize(nf, 0);
            let mut v = to_bits(&w);
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
    }
    if basis.len() != (g + 2) * m - 1 {
        return Err(CensusError::Consistency(format!(
            "coset space W_h has F_2-dimension {}, expected {}",
            basis.len(),
            (g + 2) * m - 1
        )));
    }
    let leads: Vec<u32> = basis.iter().map(|b| 63 - b.leading_zeros()).collect();
    Ok((0..(nf * m) as u32)
        .filter(|bit| !leads.contains(bit))
        .map(|bit| ((bit as usize) / m, 1 << (bit as usize % m)))
        .collect())
}

pub const MAX_POINTS: u64 = 128;

/// Mass table by Weil polynomial, `p`-rank, `a`-number and stable Cartier rank.
pub fn enumerate_hyperelliptic_char2(k: &FieldCtx, g: usize) -> Result<StrataCensus> {
    if k.p() != 2 {
        return Err(CensusError::Usage("characteristic 2 required".into()));
    }
    if !(1..=3).contains(&g) {
        return Err(CensusError::Usage(format!("genus {g} outside 1..=3")));
    }
    let q = k.q() as u64;
    if q.pow(g as u32) + 1 > MAX_POINTS || k.m() > 3 {
        return Err(CensusError::Capacity(format!(
            "characteristic-2 census of genus {g} over F_{q} exceeds bound"
        )));
    }
    let tables = PointTables::new(k, g)?;
    let nh = q.pow(g as u32 + 2);
    let steps = (2 * g + 3) * k.m() as usize;
    let tally = (1..nh)
        .into_par_iter()
        .map(|idx| -> Result<Tally> {
            let h = decode(idx, q, g + 2);
            let cart = cartier_matrix_char2(&h, g);
            let a_number = g - rank_fq(k, &cart);
            let stable_rank = cartier_stable_rank_fq(k, &cart);
            let p_rank = p_rank_char2(k, &h, g);
            let basis = coset_complement(k, &h, g)?;
            let data = h_data(&tables, &h, &basis, g);
            let mut out = Tally::default();
            let mut f = vec![0 as Elem; 2 * g + 3];
            let mut masks = vec![0u128; g];
            for step in 0..(1u64 << basis.len()) {
                if step > 0 {
                    // Gray code: flip one basis vector
                    let b = step.trailing_zeros() as usize;
                    let (i, c) = basis[b];
                    f[i] = k.add(f[i], c);
                    for d in 0..g {
                        masks[d] ^= data.masks[b][d];
                    }
                }
                if !is_smooth_char2(k, &h, &f, g) {
                    continue;
                }
                let n: Vec<i64> = (0..g)
                    .map(|d| {
                        data.zeros[d] as i64 + 2 * (data.nonzero[d] as i64 - masks[d].count_ones() as i64)
                    })
                    .collect();
                let w = WeilData::from_counts(q as i64, &n)?;
                let key = StrataKey {
                    weil: w.coefficients().to_vec(),
                    p_rank,
                    a_number,
                    stable_rank,
                };
                out.add(key, 1, (idx << steps) | step, || (h.clone(), f.clone()));
            }
            Ok(out)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    let denom = Rat::from_integer((2 * gl2_order(q as i64)).into());
    Ok(tally.into_census(2, k.q(), g, &denom))
}

pub fn enumerate_g2_char2(k: &FieldCtx) -> Result<StrataCensus> {
    enumerate_hyperelliptic_char2(k, 2)
}

/// Brute-force classes of genus-two curves over `F_2` with automorphism
/// counts: every pair `(h, f)` and the full substitution group.
pub fn char2_classes_bruteforce(k: &FieldCtx) -> Result<Vec<((Vec<Elem>, Vec<Elem>), u32)>> {
    if k.q() != 2 {
        return Err(CensusError::Capacity("brute-force characteristic-2 classes only over F_2".into()));
    }
    let q = 2u64;
    let group = gl2(k);
    let encode_pair = |h: &[Elem], f: &[Elem]| -> usize {
        let mut idx = 0usize;
        for &c in h.iter().rev().chain(f.iter().rev()) {
            idx = idx * 2 + c as usize;
        }
        idx
    };
    let total = 1usize << 11;
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    for idx in 0..total {
        if seen[idx] {
            continue;
        }
        let f = decode(idx as u64 & 0x7f, q, 7);
        let h = decode(idx as u64 >> 7, q, 4);
        if !is_smooth_char2(k, &h, &f, 2) {
            seen[idx] = true;
            continue;
        }
        let mut stab = 0;
        for m in &group {
            let hh = transform(k, &h, m);
            let ff = transform(k, &f, m);
            for u_idx in 0..16u64 {
                let u = decode(u_idx, q, 4);
                let shifted = poly::add(k, &poly::add(k, &ff, &poly::mul(k, &u, &u)), &poly::mul(k, &u, &hh));
                let mut f2 = shifted;
                f2.resize(7, 0);
                let j = encode_pair(&hh, &f2);
                seen[j] = true;
                if j == idx {
                    stab += 1;
                }
            }
        }
        out.push(((h, f), stab));
    }
    Ok(out)
}

/// Direct point count over `big` of `y^2 + h y = f` with coefficients in a subfield.
pub fn count_points_char2(big: &FieldCtx, embed: &[Elem], h: &[Elem], f: &[Elem], g: usize) -> i64 {
    let he: Vec<Elem> = h.iter().map(|&c| embed[c as usize]).collect();
    let fe: Vec<Elem> = f.iter().map(|&c| embed[c as usize]).collect();
    let fiber = |b: Elem, c: Elem| -> i64 {
        if b == 0 {
            1
        } else if big.trace(big.div(c, big.mul(b, b))) == 0 {
            2
        } else {
            0
        }
    };
    let mut n = fiber(he[g + 1], fe[2 * g + 2]);
    for x in big.elements() {
        n += fiber(big.eval(&he, x), big.eval(&fe, x));
    }
    n
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::algebra::rat_int;

    #[test]
    fn cartier_of_supersingular_elliptic() {
        // y^2 + y = x^3: h = 1 as a quadratic form
        let k = FieldCtx::new(2).unwrap();
        let m = cartier_matrix_char2(&[1, 0, 0], 1);
        assert_eq!(rank_fq(&k, &m), 0);
        assert_eq!(p_rank_char2(&k, &[1, 0, 0], 1), 0);
    }

    #[test]
    fn genus_two_total_mass() {
        for q in [2u64, 4] {
            let k = FieldCtx::new(q).unwrap();
            let c = enumerate_g2_char2(&k).unwrap();
            assert_eq!(c.total(), rat_int(q.pow(3)));
        }
    }

    #[test]
    fn bruteforce_classes_match_cosets() {
        let k = FieldCtx::new(2).unwrap();
        let classes = char2_classes_bruteforce(&k).unwrap();
        let total: Rat = classes.iter().map(|(_, a)| Rat::new(1.into(), (*a as i64).into())).sum();
        assert_eq!(total, rat_int(8));
        let c = enumerate_g2_char2(&k).unwrap().weil_masses().unwrap();
        let mut by_key: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        let tables = PointTables::new(&k, 2).unwrap();
        for ((h, f), aut) in classes {
            let n: Vec<i64> = tables
                .fields
                .iter()
                .map(|(big, embed)| count_points_char2(big, embed, &h, &f, 2))
                .collect();
            let w = WeilData::from_counts(2, &n).unwrap();
            *by_key.entry((w.a(1), w.a(2))).or_insert_with(|| rat_int(0)) += Rat::new(1.into(), (aut as i64).into());
        }
        assert_eq!(by_key, c.masses);
    }
}
