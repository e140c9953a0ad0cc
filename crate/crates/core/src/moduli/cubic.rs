//! Groupoid count of genus-one curves through smooth plane cubics.
//!
//! Every genus-one curve `C/F_q` is a plane cubic, and the number of ternary
//! cubic forms whose zero locus is isomorphic to `C` is
//! `#Pic^3(C) · (q-1) · #PGL_3(F_q) / #Aut(C)`, with `#Pic^3(C) = N_1(C)`.
//! Summing `#{tuples}/(N_1 (q-1) #PGL_3)` over smooth forms therefore gives
//! the stacky count of pointed genus-one curves with any Frobenius twist of
//! the markings. Exponential in `q`; meant for `q ≤ 3`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::{falling_product, CycleType};
use crate::algebra::field::{Elem, FieldCtx};
use crate::algebra::Rat;
use crate::census::g1::exact_from_counts;
use crate::error::{CensusError, Result};

pub const MAX_Q: u32 = 4;

const MONOMIALS: [[u32; 3]; 10] = [
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

fn projective_points(k: &FieldCtx) -> Vec<[Elem; 3]> {
    let mut pts = Vec::new();
    for y in k.elements() {
        for z in k.elements() {
            pts.push([1, y, z]);
        }
    }
    for z in k.elements() {
        pts.push([0, 1, z]);
    }
    pts.push([0, 0, 1]);
    pts
}

fn normalize(k: &FieldCtx, p: [Elem; 3]) -> [Elem; 3] {
    let lead = p.iter().copied().find(|&c| c != 0).expect("nonzero point");
    let inv = k.inv(lead);
    p.map(|c| k.mul(c, inv))
}

/// One point per Frobenius orbit over `F_q` of `P^2(big)`.
fn orbit_representatives(big: &FieldCtx, q: u64) -> Vec<[Elem; 3]> {
    projective_points(big)
        .into_iter()
        .filter(|&p| {
            let mut cur = p;
            loop {
                cur = normalize(big, cur.map(|c| big.pow(c, q)));
                if cur == p {
                    return true;
                }
                if cur < p {
                    return false;
                }
            }
        })
        .collect()
}

struct Evaluator {
    big: FieldCtx,
    embed: Vec<Elem>,
    values: Vec<[Elem; 10]>,
    partials: Vec<[[Elem; 10]; 3]>,
}

impl Evaluator {
    fn new(k: &FieldCtx, big: FieldCtx, points: &[[Elem; 3]]) -> Result<Self> {
        let embed = k.embed_into(&big)?;
        let mono = |p: &[Elem; 3], e: [u32; 3]| -> Elem {
            (0..3).fold(1, |acc, i| big.mul(acc, big.pow(p[i], e[i] as u64)))
        };
        let values = points
            .iter()
            .map(|p| MONOMIALS.map(|e| mono(p, e)))
            .collect();
        let partials = points
            .iter()
            .map(|p| {
                [0, 1, 2].map(|axis| {
                    MONOMIALS.map(|e| {
                        if e[axis] == 0 {
                            return 0;
                        }
                        let mut d = e;
                        d[axis] -= 1;
                        big.mul(big.from_int(e[axis] as i64), mono(p, d))
                    })
                })
            })
            .collect();
        Ok(Evaluator {
            big,
            embed,
            values,
            partials,
        })
    }

    fn dot(&self, coeffs: &[Elem; 10], row: &[Elem; 10]) -> Elem {
        let mut acc = 0;
        for i in 0..10 {
            if coeffs[i] != 0 && row[i] != 0 {
                acc = self.big.add(acc, self.big.mul(self.embed[coeffs[i] as usize], row[i]));
            }
        }
        acc
    }

    fn singular_somewhere(&self, coeffs: &[Elem; 10]) -> bool {
        (0..self.values.len()).any(|i| {
            self.dot(coeffs, &self.values[i]) == 0
                && self.partials[i].iter().all(|row| self.dot(coeffs, row) == 0)
        })
    }

    fn zeros(&self, coeffs: &[Elem; 10]) -> i64 {
        self.values
            .iter()
            .filter(|row| self.dot(coeffs, row) == 0)
            .count() as i64
    }
}

/// Histogram of `(N_1, ..., N_{d_max})` over all smooth ternary cubic forms.
pub fn smooth_cubic_counts(k: &FieldCtx, d_max: usize) -> Result<BTreeMap<Vec<i64>, u64>> {
    if k.q() > MAX_Q {
        return Err(CensusError::Capacity(format!(
            "plane cubic enumeration over F_{} exceeds bound {MAX_Q}",
            k.q()
        )));
    }
    let q = k.q() as u64;
    let ext = |d: u32| FieldCtx::with_pm(k.p(), k.m() * d);
    // singular points of a plane cubic are defined over F_q, F_{q^2} or F_{q^3}
    let mut sing = Vec::new();
    for d in [2u32, 3] {
        let big = ext(d)?;
        let reps = orbit_representatives(&big, q);
        sing.push(Evaluator::new(k, big, &reps)?);
    }
    let mut counters = Vec::new();
    for d in 1..=d_max as u32 {
        let big = ext(d)?;
        let pts = projective_points(&big);
        counters.push(Evaluator::new(k, big, &pts)?);
    }
    let total = q.pow(10);
    let hist = (1..total)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<Vec<i64>, u64>, idx| {
            let mut coeffs = [0 as Elem; 10];
            let mut r = idx;
            for c in coeffs.iter_mut() {
                *c = (r % q) as Elem;
                r /= q;
            }
            if sing.iter().any(|e| e.singular_somewhere(&coeffs)) {
                return acc;
            }
            let counts: Vec<i64> = counters.iter().map(|e| e.zeros(&coeffs)).collect();
            *acc.entry(counts).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (key, v) in b {
                *a.entry(key).or_insert(0) += v;
            }
            a
        });
    Ok(hist)
}

pub fn pgl3_order(q: i64) -> i64 {
    q.pow(3) * (q.pow(3) - 1) * (q * q - 1)
}

/// Twisted count of `M_{1,n}` from a smooth-cubic histogram.
pub fn m1n_cubic_oracle(q: i64, hist: &BTreeMap<Vec<i64>, u64>, ct: &CycleType) -> Result<Rat> {
    let d_max = ct.max_length();
    let mut acc = Rat::zero();
    for (counts, &forms) in hist {
        if counts.len() < d_max {
            return Err(CensusError::Usage(format!(
                "histogram tracks degrees up to {}, cycle type {ct} needs {d_max}",
                counts.len()
            )));
        }
        let exact = exact_from_counts(&counts[..d_max]);
        let tuples = falling_product(ct, &exact);
        let denom = BigInt::from(counts[0]) * BigInt::from((q - 1) * pgl3_order(q));
        acc += Rat::new(tuples * BigInt::from(forms), denom);
    }
    Ok(acc)
}
