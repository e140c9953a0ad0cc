//! Bernoulli numbers and the zeta values `ζ(1-2k)`.

use num_traits::One;

use super::{rat_int, Int, Rat};

/// `B_0..=B_n` by the Akiyama–Tanigawa recurrence (convention `B_1 = +1/2`).
pub fn bernoulli_table(n: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(n + 1);
    let mut a: Vec<Rat> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(Rat::new(Int::one(), Int::from(m as u64 + 1)));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff * rat_int(j as u64);
        }
        out.push(a[0].clone());
    }
    out
}

pub fn bernoulli(n: usize) -> Rat {
    bernoulli_table(n).pop().unwrap()
}

/// `ζ(1-2k) = -B_{2k}/(2k)` for `k ≥ 1`.
pub fn zeta_one_minus_2k(k: usize) -> Rat {
    assert!(k >= 1);
    -bernoulli(2 * k) / rat_int(2 * k as u64)
}

/// `p(g) = (-1)^{g(g+1)/2} 2^{-g} ∏_{k=1}^{g} ζ(1-2k)`.
pub fn bernoulli_zeta(g: usize) -> Rat {
    assert!(g >= 1);
    let b = bernoulli_table(2 * g);
    let mut acc = Rat::one();
    for k in 1..=g {
        acc *= -&b[2 * k] / rat_int(2 * k as u64);
    }
    acc /= rat_int(Int::one() << g);
    if (g * (g + 1) / 2) % 2 == 1 {
        acc = -acc;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use num_traits::Zero;

    #[test]
    fn small_bernoulli() {
        let b = bernoulli_table(12);
        assert_eq!(b[0], rat(1, 1));
        assert_eq!(b[1], rat(1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[12], rat(-691, 2730));
        for i in [3, 5, 7, 9, 11] {
            assert!(b[i].is_zero());
        }
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_one_minus_2k(1), rat(-1, 12));
        assert_eq!(zeta_one_minus_2k(2), rat(1, 120));
        assert_eq!(zeta_one_minus_2k(6), rat(691, 32760));
    }

    #[test]
    fn p_of_g() {
        assert_eq!(bernoulli_zeta(1), rat(1, 24));
        assert_eq!(bernoulli_zeta(2), rat(1, 5760));
        assert_eq!(bernoulli_zeta(3), rat(1, 2903040));
        assert_eq!(bernoulli_zeta(4), rat(1, 1393459200));
    }
}
