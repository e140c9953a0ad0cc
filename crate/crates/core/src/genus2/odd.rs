//! Genus-two curves `y^2 = f(x)` over `F_q`, `q` odd.
//!
//! Curves correspond to squarefree binary sextics up to the action of
//! `GL_2 × G_m` by `f ↦ e^2 f∘M`, whose kernel `{(μI, μ^3)}` has order
//! `q - 1`. The effective group has order `#GL_2(F_q)` and stabilizers are
//! automorphism groups, so each form carries mass `1/#GL_2(F_q)`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::forms::{binary_squarefree, decode, gl2_order};
use crate::algebra::field::{Elem, FieldCtx};
use crate::algebra::{Rat, WeilData};
use crate::error::{CensusError, Result};

pub const DEFAULT_MAX_Q: u32 = 37;

/// Evaluation tables for counting points of `y^2 = f` over `F_q` and `F_{q^2}`.
pub struct SexticCounter {
    k: FieldCtx,
    big: FieldCtx,
    embed: Vec<Elem>,
    pow1: Vec<[Elem; 7]>,
    pow2: Vec<[Elem; 7]>,
}

impl SexticCounter {
    pub fn new(k: &FieldCtx) -> Result<Self> {
        let big = FieldCtx::with_pm(k.p(), 2 * k.m())?;
        let embed = k.embed_into(&big)?;
        let powers = |f: &FieldCtx| -> Vec<[Elem; 7]> {
            f.elements()
                .map(|x| {
                    let mut row = [1 as Elem; 7];
                    for i in 1..7 {
                        row[i] = f.mul(row[i - 1], x);
                    }
                    row
                })
                .collect()
        };
        Ok(SexticCounter {
            pow1: powers(k),
            pow2: powers(&big),
            k: k.clone(),
            big,
            embed,
        })
    }

    /// `(N_1, N_2)` for a squarefree sextic form (degree 5 or 6).
    pub fn counts(&self, f: &[Elem]) -> (i64, i64) {
        let (k, big) = (&self.k, &self.big);
        let mut n1 = 1 + k.chi(f[6]) as i64;
        for row in &self.pow1 {
            let v = (0..7).fold(0, |acc, i| k.add(acc, k.mul(f[i], row[i])));
            n1 += 1 + k.chi(v) as i64;
        }
        let g: Vec<Elem> = f.iter().map(|&c| self.embed[c as usize]).collect();
        // every element of F_q is a square in F_{q^2}
        let mut n2 = if f[6] == 0 { 1 } else { 2 };
        for row in &self.pow2 {
            let v = (0..7).fold(0, |acc, i| big.add(acc, big.mul(g[i], row[i])));
            n2 += 1 + big.chi(v) as i64;
        }
        (n1, n2)
    }

    /// Weil key `(a_1, a_2)` with `a_1 = s_1`, `a_2 = (s_1^2 - s_2)/2`.
    pub fn key(&self, f: &[Elem]) -> (i64, i64) {
        let q = self.k.q() as i64;
        let (n1, n2) = self.counts(f);
        weil_key(q, n1, n2)
    }
}

pub fn weil_key(q: i64, n1: i64, n2: i64) -> (i64, i64) {
    let s1 = q + 1 - n1;
    let s2 = q * q + 1 - n2;
    (s1, (s1 * s1 - s2) / 2)
}

/// Mass of genus-two curves per Weil key `(a_1, a_2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SexticOrbitMass {
    pub q: u32,
    pub masses: BTreeMap<(i64, i64), Rat>,
}

impl SexticOrbitMass {
    pub fn total(&self) -> Rat {
        self.masses.values().sum()
    }

    /// True when the table is invariant under `a_1 ↦ -a_1`.
    pub fn twist_symmetric(&self) -> bool {
        self.masses
            .iter()
            .all(|(&(a1, a2), m)| self.masses.get(&(-a1, a2)) == Some(m))
    }

    /// Every key passes the Weil bounds for `t^4 - a_1 t^3 + a_2 t^2 - q a_1 t + q^2`.
    pub fn check_weil_bounds(&self) -> Result<()> {
        for &(a1, a2) in self.masses.keys() {
            let w = WeilData::from_coefficients(self.q as i64, &[a1, a2])?;
            if !w.satisfies_weil_bounds() {
                return Err(CensusError::Consistency(format!(
                    "key ({a1}, {a2}) over F_{} violates the Weil bounds",
                    self.q
                )));
            }
        }
        Ok(())
    }

    pub fn from_counts(q: u32, counts: HashMap<(i64, i64), i64>, denom: i64) -> Self {
        let masses = counts
            .into_iter()
            .map(|(key, n)| (key, Rat::new(n.into(), denom.into())))
            .collect();
        SexticOrbitMass { q, masses }
    }
}

/// Squarefree sextic forms in parallel. With `normalized`, only forms whose
/// leading coefficient (of `x^6`, else `x^5`) is 1.
pub fn smooth_sextics(k: &FieldCtx, normalized: bool) -> impl ParallelIterator<Item = Vec<Elem>> + '_ {
    sextics_indexed(k, normalized).map(|(_, f)| f)
}

/// Normalized squarefree sextics with their enumeration index.
pub fn smooth_sextics_indexed(k: &FieldCtx) -> impl ParallelIterator<Item = (u64, Vec<Elem>)> + '_ {
    sextics_indexed(k, true)
}

fn sextics_indexed(k: &FieldCtx, normalized: bool) -> impl ParallelIterator<Item = (u64, Vec<Elem>)> + '_ {
    let q = k.q() as u64;
    let (deg6, deg5) = if normalized {
        (q.pow(6), q.pow(5))
    } else {
        (q.pow(7), 0)
    };
    (0..deg6 + deg5).into_par_iter().filter_map(move |idx| {
        let f = if !normalized {
            decode(idx, q, 7)
        } else if idx < deg6 {
            let mut f = decode(idx, q, 6);
            f.push(1);
            f
        } else {
            let mut f = decode(idx - deg6, q, 5);
            f.extend([1, 0]);
            f
        };
        binary_squarefree(k, &f).then_some((idx, f))
    })
}

pub fn enumerate_g2(k: &FieldCtx) -> Result<SexticOrbitMass> {
    enumerate_g2_with_bound(k, DEFAULT_MAX_Q)
}

/// Mass table over odd `F_q`. Scaling a form by a square keeps its Weil key
/// and scaling by a non-square twists it, so normalized forms suffice.
pub fn enumerate_g2_with_bound(k: &FieldCtx, max_q: u32) -> Result<SexticOrbitMass> {
    if k.p() == 2 {
        return Err(CensusError::Usage(
            "even characteristic needs the y^2 + h y = f census".into(),
        ));
    }
    if k.q() > max_q {
        return Err(CensusError::Capacity(format!(
            "genus-two census over F_{} exceeds bound {max_q}",
            k.q()
        )));
    }
    let counter = SexticCounter::new(k)?;
    let counts = smooth_sextics(k, true)
        .fold(HashMap::new, |mut acc: HashMap<(i64, i64), i64>, f| {
            *acc.entry(counter.key(&f)).or_insert(0) += 1;
            acc
        })
        .reduce(HashMap::new, merge_counts);
    let half = (k.q() as i64 - 1) / 2;
    let mut full: HashMap<(i64, i64), i64> = HashMap::new();
    for ((a1, a2), n) in counts {
        *full.entry((a1, a2)).or_insert(0) += half * n;
        *full.entry((-a1, a2)).or_insert(0) += half * n;
    }
    let table = SexticOrbitMass::from_counts(k.q(), full, gl2_order(k.q() as i64));
    table.check_weil_bounds()?;
    Ok(table)
}

/// The same table from every form, without the scaling shortcut.
pub fn enumerate_g2_unnormalized(k: &FieldCtx) -> Result<SexticOrbitMass> {
    if k.p() == 2 || k.q() > 9 {
        return Err(CensusError::Capacity(format!(
            "unnormalized sextic enumeration supports odd q <= 9, got {}",
            k.q()
        )));
    }
    let counter = SexticCounter::new(k)?;
    let counts = smooth_sextics(k, false)
        .fold(HashMap::new, |mut acc: HashMap<(i64, i64), i64>, f| {
            *acc.entry(counter.key(&f)).or_insert(0) += 1;
            acc
        })
        .reduce(HashMap::new, merge_counts);
    Ok(SexticOrbitMass::from_counts(k.q(), counts, gl2_order(k.q() as i64)))
}

pub(crate) fn merge_counts<K: std::hash::Hash + Eq>(mut a: HashMap<K, i64>, b: HashMap<K, i64>) -> HashMap<K, i64> {
    for (key, v) in b {
        *a.entry(key).or_insert(0) += v;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_int;

    #[test]
    fn total_mass_is_q_cubed() {
        for q in [3u64, 5] {
            let k = FieldCtx::new(q).unwrap();
            let t = enumerate_g2(&k).unwrap();
            assert_eq!(t.total(), rat_int(q.pow(3)));
            assert!(t.twist_symmetric());
        }
    }

    #[test]
    fn normalization_matches_full_enumeration() {
        let k = FieldCtx::new(3).unwrap();
        assert_eq!(enumerate_g2(&k).unwrap(), enumerate_g2_unnormalized(&k).unwrap());
    }

    #[test]
    fn product_type_key_is_admissible() {
        let q = 5;
        let t = enumerate_g2(&FieldCtx::new(q).unwrap()).unwrap();
        let w = WeilData::from_coefficients(q as i64, &[0, -2 * q as i64]).unwrap();
        assert!(w.satisfies_weil_bounds());
        assert!(t.masses.keys().all(|&(a1, _)| a1 * a1 <= 16 * q as i64));
    }
}
