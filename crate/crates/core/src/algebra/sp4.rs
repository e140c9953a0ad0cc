//! Characters of irreducible `Sp(4)` representations evaluated on Frobenius.
//!
//! For highest weight `(a, b)` with `a ≥ b ≥ 0` and eigenvalues
//! `α_1, q/α_1, α_2, q/α_2`, the homogenized character is
//!
//! `h_a (h_b + q h_{b-2}) - h_{b-1} (h_{a+1} + q h_{a-1})`
//!
//! where `h_m` are the complete homogeneous symmetric functions of the four
//! eigenvalues and `h_m = 0` for `m < 0`.

use num_traits::{One, Zero};

use super::{Int, WeilData};
use crate::error::{CensusError, Result};

/// Complete homogeneous functions `h_0..=h_n` from `e_1 = a_1, e_2 = a_2,
/// e_3 = q a_1, e_4 = q^2`.
pub fn complete_homogeneous(a1: &Int, a2: &Int, q: &Int, n: usize) -> Vec<Int> {
    let e = [a1.clone(), a2.clone(), q * a1, q * q];
    let mut h: Vec<Int> = Vec::with_capacity(n + 1);
    h.push(Int::one());
    for m in 1..=n {
        let mut acc = Int::zero();
        for i in 1..=4.min(m) {
            let term = &e[i - 1] * &h[m - i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        h.push(acc);
    }
    h
}

fn check_weight(a: i64, b: i64) -> Result<()> {
    if b < 0 || a < b {
        return Err(CensusError::Usage(format!(
            "Sp(4) highest weight needs a >= b >= 0, got ({a}, {b})"
        )));
    }
    Ok(())
}

/// Character value from raw Weil parameters `(a_1, a_2, q)`.
pub fn sp4_character_raw(a: i64, b: i64, a1: &Int, a2: &Int, q: &Int) -> Result<Int> {
    check_weight(a, b)?;
    let h = complete_homogeneous(a1, a2, q, (a + 1) as usize);
    let get = |m: i64| -> Int {
        if m < 0 {
            Int::zero()
        } else {
            h[m as usize].clone()
        }
    };
    let first = get(a) * (get(b) + q * get(b - 2));
    let second = get(b - 1) * (get(a + 1) + q * get(a - 1));
    Ok(first - second)
}

pub fn sp4_character(a: i64, b: i64, w: &WeilData) -> Result<Int> {
    if w.genus() != 2 {
        return Err(CensusError::Usage(format!(
            "Sp(4) character needs genus 2 Weil data, got genus {}",
            w.genus()
        )));
    }
    sp4_character_raw(
        a,
        b,
        &Int::from(w.a(1)),
        &Int::from(w.a(2)),
        &Int::from(w.q()),
    )
}

/// Evaluates `(a, b)` on many Weil keys at once, sharing nothing but the weight.
pub struct Sp4Evaluator {
    a: i64,
    b: i64,
}

impl Sp4Evaluator {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        check_weight(a, b)?;
        Ok(Sp4Evaluator { a, b })
    }

    pub fn eval(&self, a1: i64, a2: i64, q: i64) -> Int {
        sp4_character_raw(self.a, self.b, &Int::from(a1), &Int::from(a2), &Int::from(q))
            .expect("weight validated at construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_weights() {
        let (a1, a2, q) = (Int::from(3), Int::from(-4), Int::from(5));
        assert_eq!(sp4_character_raw(0, 0, &a1, &a2, &q).unwrap(), Int::from(1));
        assert_eq!(sp4_character_raw(1, 0, &a1, &a2, &q).unwrap(), a1);
        assert_eq!(sp4_character_raw(1, 1, &a1, &a2, &q).unwrap(), &a2 - &q);
        assert!(sp4_character_raw(1, 2, &a1, &a2, &q).is_err());
        assert!(sp4_character_raw(1, -1, &a1, &a2, &q).is_err());
    }

    #[test]
    fn sym2_dimension() {
        // identity element: eigenvalues all 1, q = 1, a_1 = 4, a_2 = 6
        let one = Int::from(1);
        let dim = |a, b| sp4_character_raw(a, b, &Int::from(4), &Int::from(6), &one).unwrap();
        assert_eq!(dim(2, 0), Int::from(10));
        assert_eq!(dim(1, 1), Int::from(5));
        assert_eq!(dim(2, 2), Int::from(14));
        assert_eq!(dim(3, 1), Int::from(35));
    }
}
