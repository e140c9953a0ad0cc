//! Characters of `Sym^k` of the standard representation, homogenized:
//! `h_k(α, ᾱ) = α^k + α^{k-1}ᾱ + ... + ᾱ^k` with `α + ᾱ = t`, `αᾱ = q`.

use num_traits::{One, Zero};

use super::Int;

/// `h_k` via `h_k = t h_{k-1} - q h_{k-2}`, `h_0 = 1`, `h_{-1} = 0`.
pub fn sl2_power_trace(k: u32, t: i64, q: i64) -> Int {
    let t = Int::from(t);
    let q = Int::from(q);
    let mut prev = Int::zero();
    let mut cur = Int::one();
    for _ in 0..k {
        let next = &t * &cur - &q * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `h_0..=h_k` in one pass.
pub fn sl2_power_traces(k: u32, t: i64, q: i64) -> Vec<Int> {
    let t = Int::from(t);
    let q = Int::from(q);
    let mut out = vec![Int::one()];
    let mut prev = Int::zero();
    for _ in 0..k {
        let cur = out.last().unwrap().clone();
        let next = &t * &cur - &q * &prev;
        prev = cur;
        out.push(next);
    }
    out
}
