//! Elliptic curves over `F_q` up to `F_q`-isomorphism.
//!
//! For `p > 3` the census runs over short models `y^2 = x^3 + a x + b` under
//! `(a, b) ↦ (u^4 a, u^6 b)`. In characteristics 2 and 3 it runs over full
//! Weierstrass models under the `(u, r, s, t)` substitution group. Orbits are
//! isomorphism classes and stabilizers are automorphism groups.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::field::{Elem, FieldCtx};
use crate::algebra::sl2::sl2_power_traces;
use crate::algebra::{rat, Int, Rat};
use crate::error::{CensusError, Result};

pub const DEFAULT_MAX_Q: u32 = 1024;
/// Full Weierstrass enumeration is `q^5`; kept to `q ≤ 32`.
pub const MAX_Q_SMALL_CHAR: u32 = 32;

/// Weierstrass coefficients `[a1, a2, a3, a4, a6]`.
pub type Model = [Elem; 5];

#[derive(Debug, Clone, PartialEq)]
pub struct EllipticClassRecord {
    pub q: u32,
    pub model: Model,
    pub j: Elem,
    pub n1: i64,
    pub aut: u32,
}

impl EllipticClassRecord {
    pub fn trace(&self) -> i64 {
        self.q as i64 + 1 - self.n1
    }

    pub fn mass(&self) -> Rat {
        rat(1, self.aut as i64)
    }

    /// `N_d = #E(F_{q^d})` from the Weil recurrence, `d = 1..=d_max`.
    pub fn counts(&self, d_max: usize) -> Vec<i64> {
        weil_counts(self.trace(), self.q as i64, d_max)
    }

    pub fn exact_degree_counts(&self, d_max: usize) -> Vec<i64> {
        exact_from_counts(&self.counts(d_max))
    }
}

/// `N_1..=N_{d_max}` of a genus-1 curve with trace `t` over `F_q`.
pub fn weil_counts(t: i64, q: i64, d_max: usize) -> Vec<i64> {
    // s_d = α^d + ᾱ^d
    let mut s = vec![2i64, t];
    for d in 2..=d_max {
        s.push(t * s[d - 1] - q * s[d - 2]);
    }
    (1..=d_max).map(|d| q.pow(d as u32) + 1 - s[d]).collect()
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Points of exact degree `d` from cumulative counts `N_1..N_D` (index `d-1`).
pub fn exact_from_counts(counts: &[i64]) -> Vec<i64> {
    (1..=counts.len())
        .map(|d| {
            (1..=d)
                .filter(|e| d % e == 0)
                .map(|e| mobius((d / e) as u64) * counts[e - 1])
                .sum()
        })
        .collect()
}

/// Discriminant and `j`-invariant of a Weierstrass model.
pub fn invariants(k: &FieldCtx, m: &Model) -> (Elem, Option<Elem>) {
    let [a1, a2, a3, a4, a6] = *m;
    let c = |n: i64| k.from_int(n);
    let b2 = k.add(k.mul(a1, a1), k.mul(c(4), a2));
    let b4 = k.add(k.mul(c(2), a4), k.mul(a1, a3));
    let b6 = k.add(k.mul(a3, a3), k.mul(c(4), a6));
    let b8 = {
        let t1 = k.mul(k.mul(a1, a1), a6);
        let t2 = k.mul(c(4), k.mul(a2, a6));
        let t3 = k.mul(a1, k.mul(a3, a4));
        let t4 = k.mul(a2, k.mul(a3, a3));
        let t5 = k.mul(a4, a4);
        k.sub(k.add(k.sub(k.add(t1, t2), t3), t4), t5)
    };
    let disc = {
        let t1 = k.mul(k.mul(b2, b2), b8);
        let t2 = k.mul(c(8), k.pow(b4, 3));
        let t3 = k.mul(c(27), k.mul(b6, b6));
        let t4 = k.mul(c(9), k.mul(b2, k.mul(b4, b6)));
        k.add(k.neg(k.add(k.add(t1, t2), t3)), t4)
    };
    if disc == 0 {
        return (0, None);
    }
    let c4 = k.sub(k.mul(b2, b2), k.mul(c(24), b4));
    (disc, Some(k.div(k.pow(c4, 3), disc)))
}

/// Affine points plus the point at infinity.
pub fn count_points(k: &FieldCtx, m: &Model) -> i64 {
    let [a1, a2, a3, a4, a6] = *m;
    let mut n = 1i64;
    let four = k.from_int(4);
    for x in k.elements() {
        let rhs = k.eval(&[a6, a4, a2, 1], x);
        let b = k.add(k.mul(a1, x), a3);
        if k.p() == 2 {
            if b == 0 {
                n += 1;
            } else {
                let z = k.div(rhs, k.mul(b, b));
                if k.trace(z) == 0 {
                    n += 2;
                }
            }
        } else {
            let d = k.add(k.mul(b, b), k.mul(four, rhs));
            n += 1 + k.chi(d) as i64;
        }
    }
    n
}

/// Maps a model over `k` into `big` along `embed`.
pub fn embed_model(m: &Model, embed: &[Elem]) -> Model {
    m.map(|c| embed[c as usize])
}

/// Applies `(u, r, s, t)`: `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
pub fn transform(k: &FieldCtx, m: &Model, u: Elem, r: Elem, s: Elem, t: Elem) -> Model {
    let [a1, a2, a3, a4, a6] = *m;
    let c = |n: i64| k.from_int(n);
    let ui = k.inv(u);
    let ui2 = k.mul(ui, ui);
    let ui3 = k.mul(ui2, ui);
    let ui4 = k.mul(ui2, ui2);
    let ui6 = k.mul(ui3, ui3);
    let n1 = k.add(a1, k.mul(c(2), s));
    let n2 = k.sub(k.add(k.sub(a2, k.mul(s, a1)), k.mul(c(3), r)), k.mul(s, s));
    let n3 = k.add(k.add(a3, k.mul(r, a1)), k.mul(c(2), t));
    let n4 = {
        let mut v = k.sub(a4, k.mul(s, a3));
        v = k.add(v, k.mul(c(2), k.mul(r, a2)));
        v = k.sub(v, k.mul(k.add(t, k.mul(r, s)), a1));
        v = k.add(v, k.mul(c(3), k.mul(r, r)));
        k.sub(v, k.mul(c(2), k.mul(s, t)))
    };
    let n6 = {
        let mut v = k.add(a6, k.mul(r, a4));
        v = k.add(v, k.mul(k.mul(r, r), a2));
        v = k.add(v, k.pow(r, 3));
        v = k.sub(v, k.mul(t, a3));
        v = k.sub(v, k.mul(t, t));
        k.sub(v, k.mul(k.mul(r, t), a1))
    };
    [
        k.mul(n1, ui),
        k.mul(n2, ui2),
        k.mul(n3, ui3),
        k.mul(n4, ui4),
        k.mul(n6, ui6),
    ]
}

#[derive(Debug, Clone)]
pub struct EllipticCensus {
    field: FieldCtx,
    records: Vec<EllipticClassRecord>,
}

fn encode(m: &Model, q: u64) -> usize {
    m.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64) as usize
}

fn decode(mut idx: usize, q: usize) -> Model {
    let mut m = [0; 5];
    for c in m.iter_mut() {
        *c = (idx % q) as Elem;
        idx /= q;
    }
    m
}

impl EllipticCensus {
    pub fn new(field: &FieldCtx) -> Result<Self> {
        Self::with_bound(field, DEFAULT_MAX_Q)
    }

    pub fn with_bound(field: &FieldCtx, max_q: u32) -> Result<Self> {
        let q = field.q();
        if q > max_q {
            return Err(CensusError::Capacity(format!(
                "elliptic census over F_{q} exceeds bound {max_q}"
            )));
        }
        let mut records = if field.p() > 3 {
            enumerate_short(field)
        } else {
            if q > MAX_Q_SMALL_CHAR {
                return Err(CensusError::Capacity(format!(
                    "full Weierstrass census over F_{q} exceeds bound {MAX_Q_SMALL_CHAR}"
                )));
            }
            enumerate_full(field)
        };
        records.par_iter_mut().for_each(|r| {
            r.n1 = count_points(field, &r.model);
        });
        records.sort_by_key(|a| (a.j, a.model));
        Ok(EllipticCensus {
            field: field.clone(),
            records,
        })
    }

    /// Full Weierstrass enumeration regardless of characteristic; an oracle
    /// for the short-model path.
    pub fn full_weierstrass(field: &FieldCtx) -> Result<Self> {
        if field.q() > MAX_Q_SMALL_CHAR {
            return Err(CensusError::Capacity(format!(
                "full Weierstrass census over F_{} exceeds bound {MAX_Q_SMALL_CHAR}",
                field.q()
            )));
        }
        let mut records = enumerate_full(field);
        for r in records.iter_mut() {
            r.n1 = count_points(field, &r.model);
        }
        records.sort_by_key(|a| (a.j, a.model));
        Ok(EllipticCensus {
            field: field.clone(),
            records,
        })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn records(&self) -> &[EllipticClassRecord] {
        &self.records
    }

    pub fn total_mass(&self) -> Rat {
        self.records.iter().map(|r| r.mass()).sum()
    }

    /// Mass per point count `N_1`.
    pub fn frequency_table(&self) -> BTreeMap<i64, Rat> {
        let mut out: BTreeMap<i64, Rat> = BTreeMap::new();
        for r in &self.records {
            *out.entry(r.n1).or_insert_with(Rat::zero) += r.mass();
        }
        out
    }

    /// Mass per trace `t = q + 1 - N_1`.
    pub fn trace_masses(&self) -> BTreeMap<i64, Rat> {
        let q = self.q() as i64;
        self.frequency_table()
            .into_iter()
            .map(|(n, m)| (q + 1 - n, m))
            .collect()
    }

    /// Mass per `j`-invariant; each bucket sums to 1.
    pub fn j_buckets(&self) -> BTreeMap<Elem, Rat> {
        let mut out: BTreeMap<Elem, Rat> = BTreeMap::new();
        for r in &self.records {
            *out.entry(r.j).or_insert_with(Rat::zero) += r.mass();
        }
        out
    }

    /// Largest `F_q`-automorphism group in each `j`-bucket.
    pub fn geometric_aut(&self) -> BTreeMap<Elem, u32> {
        let mut out: BTreeMap<Elem, u32> = BTreeMap::new();
        for r in &self.records {
            let e = out.entry(r.j).or_insert(0);
            *e = (*e).max(r.aut);
        }
        out
    }

    /// `σ_k(q) = -Σ_E h_k(t_E, q)/#Aut(E)`.
    pub fn sigma_k(&self, k: u32) -> Result<Int> {
        Ok(self.sigma_table(k)?.swap_remove(k as usize))
    }

    /// `σ_0(q), ..., σ_{k_max}(q)`.
    pub fn sigma_table(&self, k_max: u32) -> Result<Vec<Int>> {
        let q = self.q() as i64;
        let mut acc = vec![Rat::zero(); k_max as usize + 1];
        for (t, m) in self.trace_masses() {
            let h = sl2_power_traces(k_max, t, q);
            for (k, hk) in h.into_iter().enumerate() {
                acc[k] -= &m * Rat::from_integer(hk);
            }
        }
        acc.into_iter()
            .enumerate()
            .map(|(k, v)| {
                if !v.is_integer() {
                    return Err(CensusError::Consistency(format!(
                        "sigma_{k}(F_{q}) = {v} is not integral"
                    )));
                }
                if k % 2 == 1 && !v.is_zero() {
                    return Err(CensusError::Consistency(format!(
                        "odd sigma_{k}(F_{q}) = {v} does not vanish"
                    )));
                }
                Ok(v.to_integer())
            })
            .collect()
    }
}

fn enumerate_short(k: &FieldCtx) -> Vec<EllipticClassRecord> {
    let q = k.q() as usize;
    let units: Vec<(Elem, Elem)> = k
        .nonzero()
        .map(|u| (k.pow(u, 4), k.pow(u, 6)))
        .collect();
    let four = k.from_int(4);
    let tw7 = k.from_int(27);
    let mut seen = vec![false; q * q];
    let mut out = Vec::new();
    for a in k.elements() {
        for b in k.elements() {
            if seen[(a as usize) * q + b as usize] {
                continue;
            }
            let disc = k.add(k.mul(four, k.pow(a, 3)), k.mul(tw7, k.mul(b, b)));
            let mut stab = 0;
            for &(u4, u6) in &units {
                let (a2, b2) = (k.mul(u4, a), k.mul(u6, b));
                seen[(a2 as usize) * q + b2 as usize] = true;
                if a2 == a && b2 == b {
                    stab += 1;
                }
            }
            if disc == 0 {
                continue;
            }
            let model = [0, 0, 0, a, b];
            let j = invariants(k, &model).1.expect("nonsingular");
            out.push(EllipticClassRecord {
                q: k.q(),
                model,
                j,
                n1: 0,
                aut: stab,
            });
        }
    }
    out
}

fn enumerate_full(k: &FieldCtx) -> Vec<EllipticClassRecord> {
    let q = k.q() as usize;
    let total = q.pow(5);
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    for idx in 0..total {
        if seen[idx] {
            continue;
        }
        let m = decode(idx, q);
        let (_, j) = invariants(k, &m);
        let Some(j) = j else {
            seen[idx] = true;
            continue;
        };
        let mut stab = 0u32;
        for u in k.nonzero() {
            for r in k.elements() {
                for s in k.elements() {
                    for t in k.elements() {
                        let m2 = transform(k, &m, u, r, s, t);
                        let i2 = encode(&m2, q as u64);
                        seen[i2] = true;
                        if i2 == idx {
                            stab += 1;
                        }
                    }
                }
            }
        }
        out.push(EllipticClassRecord {
            q: k.q(),
            model: m,
            j,
            n1: 0,
            aut: stab,
        });
    }
    out
}

/// Sum of `w · f(t)` over trace buckets.
pub fn weighted_sum<F: Fn(i64) -> Rat>(census: &EllipticCensus, f: F) -> Rat {
    census
        .trace_masses()
        .into_iter()
        .map(|(t, m)| m * f(t))
        .fold(Rat::zero(), |a, b| a + b)
}
