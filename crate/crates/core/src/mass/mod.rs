//! Closed mass and degree formulas for supersingular loci, with census
//! cross-checks.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::bernoulli::bernoulli_zeta;
use crate::algebra::field::{is_prime, FieldCtx};
use crate::algebra::{rat, Int, Rat};
use crate::census::EllipticCensus;
use crate::error::{CensusError, Result};

/// `deg λ_1` on the compactified moduli of elliptic curves.
pub fn deg_lambda1() -> Rat {
    rat(1, 24)
}

/// `deg λ_1 λ_2` on the compactified moduli of abelian surfaces.
pub fn deg_lambda1_lambda2() -> Rat {
    rat(1, 5760)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassReport {
    pub label: String,
    #[serde(with = "crate::algebra::serde_frac")]
    pub formula: Rat,
    #[serde(with = "crate::algebra::serde_frac::option")]
    pub census: Option<Rat>,
}

impl MassReport {
    pub fn matches(&self) -> bool {
        self.census.as_ref().is_none_or(|c| *c == self.formula)
    }
}

/// Kronecker symbol `(a/p)` for a prime `p`.
pub fn kronecker(a: i64, p: u64) -> i64 {
    let p = p as i64;
    if p == 2 {
        return match a.rem_euclid(8) {
            0 | 2 | 4 | 6 => 0,
            1 | 7 => 1,
            _ => -1,
        };
    }
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    let mut r = 1i64;
    let (mut b, mut e) = (a as i128, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = (r as i128 * b % p as i128) as i64;
        }
        b = b * b % p as i128;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(CensusError::Usage(format!("{p} is not prime")))
    }
}

/// Number of supersingular `j`-invariants in characteristic `p`.
pub fn deuring_class_number(p: u64) -> Result<Int> {
    check_prime(p)?;
    let p_i = p as i64;
    let h = rat(p_i - 1, 12) + rat(1 - kronecker(-3, p), 3) + rat(1 - kronecker(-4, p), 4);
    if !h.is_integer() {
        return Err(CensusError::NonIntegral(format!("h_{p} = {h}")));
    }
    Ok(h.to_integer())
}

/// `(h_p, Σ 1/#Aut(E))` over supersingular `E / F̄_p`.
pub fn deuring(p: u64) -> Result<(Int, Rat)> {
    Ok((deuring_class_number(p)?, rat(p as i64 - 1, 24)))
}

/// The same pair from the census over `F_{p^2}`: supersingular curves are
/// those with trace divisible by `p`, and the geometric automorphism group
/// of each `j` is the largest one among its twists over `F_{p^2}`.
pub fn deuring_census(p: u64) -> Result<(Int, Rat)> {
    check_prime(p)?;
    let census = EllipticCensus::new(&FieldCtx::new(p * p)?)?;
    let ss: BTreeSet<_> = census
        .records()
        .iter()
        .filter(|r| r.trace().rem_euclid(p as i64) == 0)
        .map(|r| r.j)
        .collect();
    let aut = census.geometric_aut();
    let mass = ss.iter().map(|j| rat(1, aut[j] as i64)).sum();
    Ok((Int::from(ss.len()), mass))
}

pub fn deuring_report(p: u64) -> Result<Vec<MassReport>> {
    let (h, m) = deuring(p)?;
    let (hc, mc) = deuring_census(p)?;
    Ok(vec![
        MassReport {
            label: format!("h_{p}"),
            formula: Rat::from_integer(h),
            census: Some(Rat::from_integer(hc)),
        },
        MassReport {
            label: format!("supersingular mass p={p}"),
            formula: m,
            census: Some(mc),
        },
    ])
}

/// `p(g) = (-1)^{g(g+1)/2} 2^{-g} ζ(-1) ζ(-3) ... ζ(1 - 2g)`.
pub fn proportionality_constant(g: usize) -> Rat {
    bernoulli_zeta(g)
}

pub const MAX_MASS_GENUS: usize = 12;

/// Mass of principally polarized superspecial abelian varieties of
/// dimension `g`: `∏_{i=1}^{g} (p^i + (-1)^i) · p(g)`.
pub fn ekedahl_ss_mass(g: usize, p: u64) -> Result<Rat> {
    check_prime(p)?;
    if !(1..=MAX_MASS_GENUS).contains(&g) {
        return Err(CensusError::Capacity(format!("genus {g} outside 1..={MAX_MASS_GENUS}")));
    }
    let mut acc = Int::one();
    for i in 1..=g as u32 {
        let pi = Int::from(p).pow(i);
        acc *= if i % 2 == 0 { pi + 1 } else { pi - 1 };
    }
    Ok(Rat::from_integer(acc) * proportionality_constant(g))
}

/// Scalar in `[V_f] = (p - 1)(p^2 - 1) ... (p^{g-f} - 1) λ_{g-f}`.
pub fn vf_coefficient(g: u32, f: u32, p: u64) -> Result<Int> {
    if f > g {
        return Err(CensusError::Usage(format!("p-rank {f} exceeds genus {g}")));
    }
    Ok((1..=g - f).map(|i| Int::from(p).pow(i) - 1).product())
}

/// `deg V_0 = (p - 1) deg λ_1` for elliptic curves.
pub fn deg_v0_g1(p: u64) -> Result<Rat> {
    check_prime(p)?;
    Ok(Rat::from_integer(vf_coefficient(1, 0, p)?) * deg_lambda1())
}

/// Coefficient of `λ_1 λ_3` in the class of the superspecial locus in genus three.
pub fn s3_class_coefficient(p: u64) -> Int {
    let pi = Int::from(p);
    (&pi - 1u32) * (&pi - 1u32) * (pi.pow(3) - 1u32) * (pi.pow(4) - 1u32)
}

/// `#Sp_4(Z/n) = n^{10} ∏_{ℓ | n} (1 - ℓ^{-2})(1 - ℓ^{-4})`.
pub fn sp4_group_order(n: u64) -> Result<Int> {
    if n == 0 {
        return Err(CensusError::Usage("level must be positive".into()));
    }
    let mut acc = Int::from(n).pow(10);
    let mut m = n;
    let mut l = 2;
    while m > 1 {
        if m.is_multiple_of(l) {
            while m.is_multiple_of(l) {
                m /= l;
            }
            let li = Int::from(l);
            acc = acc / li.pow(6) * (li.pow(2) - 1u32) * (li.pow(4) - 1u32);
        }
        l += 1;
    }
    Ok(acc)
}

pub const MAX_BRUTE_FORCE_LEVEL: u64 = 3;

/// `#Sp_4(Z/n)` by enumerating the columns `c_1, ..., c_4` of `M` with
/// `ω(c_i, c_j) = J_{ij}` for the standard form `J = [[0, I], [-I, 0]]`.
pub fn sp4_bruteforce(n: u64) -> Result<u64> {
    if n == 0 || n > MAX_BRUTE_FORCE_LEVEL {
        return Err(CensusError::Capacity(format!("brute-force Sp_4(Z/{n}) supports 1..={MAX_BRUTE_FORCE_LEVEL}")));
    }
    let n = n as i64;
    let vecs: Vec<[i64; 4]> = (0..n.pow(4))
        .map(|mut i| {
            let mut v = [0i64; 4];
            for c in v.iter_mut() {
                *c = i % n;
                i /= n;
            }
            v
        })
        .collect();
    let omega = |u: &[i64; 4], v: &[i64; 4]| (u[0] * v[2] + u[1] * v[3] - u[2] * v[0] - u[3] * v[1]).rem_euclid(n);
    let one = 1 % n;
    let count = vecs
        .par_iter()
        .map(|c1| {
            let mut count = 0u64;
            for c3 in vecs.iter().filter(|c3| omega(c1, c3) == one) {
                for c2 in vecs.iter().filter(|c2| omega(c1, c2) == 0 && omega(c2, c3) == 0) {
                    count += vecs
                        .iter()
                        .filter(|c4| omega(c1, c4) == 0 && omega(c3, c4) == 0 && omega(c2, c4) == one)
                        .count() as u64;
                }
            }
            count
        })
        .sum();
    Ok(count)
}

/// Supersingular locus of `A_2` with level `n` structure in characteristic `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoretBailly {
    pub p: u64,
    pub n: u64,
    #[serde(with = "crate::algebra::serde_frac::int")]
    pub r: Int,
    /// `(p^2 - 1) r(n) / 5760` projective lines.
    #[serde(with = "crate::algebra::serde_frac")]
    pub lines: Rat,
    /// `(p - 1)(p^2 + 1) r(n) / 5760` superspecial points.
    #[serde(with = "crate::algebra::serde_frac")]
    pub superspecial: Rat,
    /// `(p - 1)(p - 2)(p - 3) r(n) / 5760` of them lying on Jacobians of smooth curves.
    #[serde(with = "crate::algebra::serde_frac")]
    pub m2_points: Rat,
}

impl MoretBailly {
    pub fn is_integral(&self) -> bool {
        self.lines.is_integer() && self.superspecial.is_integer() && self.m2_points.is_integer()
    }

    /// Each line carries `p^2 + 1` superspecial points and `p + 1` lines
    /// pass through each of them.
    pub fn incidence_holds(&self) -> bool {
        let p = Rat::from_integer(self.p.into());
        &self.lines * (&p * &p + Rat::one()) == &self.superspecial * (p + Rat::one())
    }
}

pub fn moret_bailly(p: u64, n: u64) -> Result<MoretBailly> {
    check_prime(p)?;
    let r = sp4_group_order(n)?;
    let pi = p as i64;
    let scaled = |c: i64| Rat::from_integer(Int::from(c) * &r) * deg_lambda1_lambda2();
    Ok(MoretBailly {
        p,
        n,
        lines: scaled(pi * pi - 1),
        superspecial: scaled((pi - 1) * (pi * pi + 1)),
        m2_points: scaled((pi - 1) * (pi - 2) * (pi - 3)),
        r,
    })
}

/// Levels where the counts are integers: `n ≥ 3` prime to `p`.
pub fn fine_level(p: u64, n: u64) -> bool {
    n >= 3 && !n.is_multiple_of(p)
}

/// Superspecial mass in genus two from the level-`n` count: `S / r(n)`.
pub fn superspecial_mass_from_level(mb: &MoretBailly) -> Rat {
    if mb.r.is_zero() {
        return Rat::zero();
    }
    &mb.superspecial / Rat::from_integer(mb.r.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_values() {
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(-1, 5), 1);
        assert_eq!(kronecker(-1, 7), -1);
        assert_eq!(kronecker(-3, 7), 1);
    }

    #[test]
    fn class_numbers() {
        let h: Vec<Int> = [2u64, 3, 5, 7, 11, 13, 37].iter().map(|&p| deuring_class_number(p).unwrap()).collect();
        let want: Vec<Int> = [1, 1, 1, 1, 2, 1, 3].into_iter().map(Int::from).collect();
        assert_eq!(h, want);
    }

    #[test]
    fn level_two() {
        assert_eq!(sp4_group_order(2).unwrap(), Int::from(720));
        assert_eq!(sp4_group_order(1).unwrap(), Int::one());
    }
}
