//! Strata censuses: masses by Weil polynomial, `p`-rank and `a`-number.

use rayon::prelude::*;

use super::models::{cartier_manin_odd, cartier_manin_quartic, hasse_invariant, projective_plane, QUARTIC_MONOMIALS};
use super::newton::NewtonPolygon;
use super::table::{StrataCensus, StrataKey, Tally};
use crate::algebra::field::{Elem, FieldCtx};
use crate::algebra::linalg::{cartier_stable_rank_fq, rank_fq};
use crate::algebra::{Rat, WeilData};
use crate::census::EllipticCensus;
use crate::error::{CensusError, Result};
use crate::genus2::forms::gl2_order;
use crate::genus2::odd::{smooth_sextics_indexed, SexticCounter};
use crate::genus2::{enumerate_g2_char2, enumerate_hyperelliptic_char2};

/// Elliptic curves over `F_q` by trace, with Hasse invariant and Newton polygon.
pub fn strata_census_g1(k: &FieldCtx) -> Result<StrataCensus> {
    let census = EllipticCensus::new(k)?;
    let mut tally = Tally::default();
    for (i, r) in census.records().iter().enumerate() {
        let w = WeilData::from_coefficients(k.q() as i64, &[r.trace()])?;
        let stable_rank = (hasse_invariant(k, &r.model) != 0) as usize;
        let key = StrataKey {
            weil: vec![r.trace()],
            p_rank: NewtonPolygon::from_weil(&w, k.p()).p_rank(),
            a_number: 1 - stable_rank,
            stable_rank,
        };
        // every automorphism group order divides 24
        tally.add(key, 24 / r.aut as i64, i as u64, || (Vec::new(), r.model.to_vec()));
    }
    Ok(tally.into_census(k.p(), k.q(), 1, &Rat::from_integer(24.into())))
}

/// Genus two over odd `F_q`: `p`-rank from the Newton polygon, `a`-number and
/// stable rank from the Cartier–Manin matrix of `y^2 = f`.
pub fn strata_census_g2_odd(k: &FieldCtx) -> Result<StrataCensus> {
    if k.p() == 2 {
        return Err(CensusError::Usage("odd characteristic required".into()));
    }
    if k.q() > crate::genus2::odd::DEFAULT_MAX_Q {
        return Err(CensusError::Capacity(format!("genus-two strata census over F_{}", k.q())));
    }
    let counter = SexticCounter::new(k)?;
    let q = k.q() as i64;
    let half = (q - 1) / 2;
    let nonsquare = k.nonzero().find(|&e| k.chi(e) == -1).expect("odd field has non-squares");
    let tally = smooth_sextics_indexed(k)
        .try_fold(Tally::default, |mut acc, (idx, f)| -> Result<Tally> {
            let (a1, a2) = counter.key(&f);
            let m = cartier_manin_odd(k, &f, 2);
            let a_number = 2 - rank_fq(k, &m);
            let stable_rank = cartier_stable_rank_fq(k, &m);
            for (twist, sign) in [(false, 1), (true, -1)] {
                let w = WeilData::from_coefficients(q, &[sign * a1, a2])?;
                let key = StrataKey {
                    weil: vec![sign * a1, a2],
                    p_rank: NewtonPolygon::from_weil(&w, k.p()).p_rank(),
                    a_number,
                    stable_rank,
                };
                acc.add(key, half, 2 * idx + twist as u64, || {
                    let g: Vec<Elem> = if twist { f.iter().map(|&c| k.mul(c, nonsquare)).collect() } else { f.clone() };
                    (Vec::new(), g)
                });
            }
            Ok(acc)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    let denom = Rat::from_integer(gl2_order(q).into());
    Ok(tally.into_census(k.p(), k.q(), 2, &denom))
}

pub fn strata_census_g2(k: &FieldCtx) -> Result<StrataCensus> {
    if k.p() == 2 {
        strata_census_g2_char2(k)
    } else {
        strata_census_g2_odd(k)
    }
}

/// Genus two in characteristic 2, `q ∈ {2, 4, 8}`.
pub fn strata_census_g2_char2(k: &FieldCtx) -> Result<StrataCensus> {
    if k.p() != 2 || k.m() > 3 {
        return Err(CensusError::Capacity(format!("characteristic-2 strata census over F_{}", k.q())));
    }
    enumerate_g2_char2(k)
}

/// Masses of the closed `p`-rank strata `f ≤ g, f ≤ g - 1, ..., f ≤ 0`,
/// followed by the superspecial mass `a = g`.
pub fn closed_strata(census: &StrataCensus) -> Vec<Rat> {
    let g = census.genus;
    let mut out: Vec<Rat> = (0..=g).rev().map(|f| census.mass_where(|key| key.p_rank <= f)).collect();
    out.push(census.mass_where(|key| key.a_number == g));
    out
}

/// Supersingular mass: all Newton slopes `1/2`.
pub fn supersingular_mass(census: &StrataCensus) -> Result<Rat> {
    let mut acc = Rat::from_integer(0.into());
    for (key, m) in &census.table {
        if census.newton(key)?.is_supersingular() {
            acc += m;
        }
    }
    Ok(acc)
}

/// `F, F_x, F_y, F_z` at a point, packed into disjoint bit fields.
fn packed_monomial_values(big: &FieldCtx, pt: (Elem, Elem, Elem)) -> [u32; 15] {
    let bits = big.m();
    let (x, y, z) = pt;
    let mono = |i: u32, j: u32, l: u32| -> Elem {
        big.mul(big.mul(big.pow(x, i as u64), big.pow(y, j as u64)), big.pow(z, l as u64))
    };
    let mut out = [0u32; 15];
    for (slot, &(i, j, l)) in QUARTIC_MONOMIALS.iter().enumerate() {
        let mut w = mono(i, j, l);
        // characteristic 2: the derivative of x^i is x^{i-1} for odd i, else 0
        if i % 2 == 1 {
            w |= mono(i - 1, j, l) << bits;
        }
        if j % 2 == 1 {
            w |= mono(i, j - 1, l) << (2 * bits);
        }
        if l % 2 == 1 {
            w |= mono(i, j, l - 1) << (3 * bits);
        }
        out[slot] = w;
    }
    out
}

fn point_values(big: &FieldCtx, pt: (Elem, Elem, Elem)) -> [u32; 15] {
    let (x, y, z) = pt;
    let mut out = [0u32; 15];
    for (slot, &(i, j, l)) in QUARTIC_MONOMIALS.iter().enumerate() {
        out[slot] = big.mul(big.mul(big.pow(x, i as u64), big.pow(y, j as u64)), big.pow(z, l as u64));
    }
    out
}

/// Smooth plane quartics over `F_2`, each with mass `1/#GL_3(F_2)`.
///
/// A singular quartic has a singular point of degree at most 6, so it is
/// detected on `P^2(F_16)`, `P^2(F_32)` or `P^2(F_64)`. Coefficients lie in
/// `F_2`, so every value is a XOR of per-monomial values and the forms are
/// walked in Gray-code order.
pub fn quartic_census_f2() -> Result<StrataCensus> {
    let k = FieldCtx::new(2)?;
    let mut sing_pts: Vec<[u32; 15]> = Vec::new();
    for m in [4u32, 5, 6] {
        let big = FieldCtx::with_pm(2, m)?;
        sing_pts.extend(projective_plane(&big).into_iter().map(|pt| packed_monomial_values(&big, pt)));
    }
    let count_fields: Vec<(FieldCtx, Vec<[u32; 15]>)> = (1..=3u32)
        .map(|m| {
            let big = FieldCtx::with_pm(2, m)?;
            let pts = projective_plane(&big).into_iter().map(|pt| point_values(&big, pt)).collect();
            Ok((big, pts))
        })
        .collect::<Result<_>>()?;
    let chunks = 64u64;
    let per = (1u64 << 15) / chunks;
    let tally = (0..chunks)
        .into_par_iter()
        .map(|chunk| -> Result<Tally> {
            let mut out = Tally::default();
            let start = chunk * per;
            let gray = |s: u64| s ^ (s >> 1);
            let mut mask = gray(start);
            let mut acc: Vec<u32> = sing_pts
                .iter()
                .map(|vals| (0..15).filter(|b| mask >> b & 1 == 1).fold(0, |a, b| a ^ vals[b]))
                .collect();
            for step in start..start + per {
                if step > start {
                    let b = step.trailing_zeros() as usize;
                    mask ^= 1 << b;
                    for (a, vals) in acc.iter_mut().zip(&sing_pts) {
                        *a ^= vals[b];
                    }
                }
                if mask == 0 || acc.contains(&0) {
                    continue;
                }
                let coeffs: Vec<Elem> = (0..15).map(|b| (mask >> b & 1) as Elem).collect();
                let counts: Vec<i64> = count_fields
                    .iter()
                    .map(|(_, pts)| {
                        pts.iter()
                            .filter(|vals| (0..15).filter(|b| mask >> b & 1 == 1).fold(0, |a, b| a ^ vals[b]) == 0)
                            .count() as i64
                    })
                    .collect();
                let w = WeilData::from_counts(2, &counts)?;
                let cm = cartier_manin_quartic(&k, &coeffs);
                let stable_rank = cartier_stable_rank_fq(&k, &cm);
                let key = StrataKey {
                    weil: w.coefficients().to_vec(),
                    p_rank: NewtonPolygon::from_weil(&w, 2).p_rank(),
                    a_number: 3 - rank_fq(&k, &cm),
                    stable_rank,
                };
                out.add(key, 1, mask, || (Vec::new(), coeffs.clone()));
            }
            Ok(out)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    Ok(tally.into_census(2, 2, 3, &Rat::from_integer(168.into())))
}

/// Genus three over `F_2`: plane quartics and hyperelliptic curves.
#[derive(Debug, Clone, PartialEq)]
pub struct Genus3Census {
    pub quartic: StrataCensus,
    pub hyperelliptic: StrataCensus,
}

impl Genus3Census {
    pub fn all(&self) -> Result<StrataCensus> {
        let mut t = self.quartic.clone();
        t.merge(self.hyperelliptic.clone())?;
        Ok(t)
    }
}

pub fn strata_census_g3_char2() -> Result<Genus3Census> {
    Ok(Genus3Census {
        quartic: quartic_census_f2()?,
        hyperelliptic: enumerate_hyperelliptic_char2(&FieldCtx::new(2)?, 3)?,
    })
}
