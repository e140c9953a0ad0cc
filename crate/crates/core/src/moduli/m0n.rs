//! `M_{0,n}`: configurations of `n` distinct points on `P^1` modulo `PGL_2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{falling_product, CycleType};
use crate::census::g1::mobius;
use crate::error::{CensusError, Result};

/// `#M_{0,n}(F_q) = ∏_{i=2}^{n-2} (q - i)`.
pub fn m0n_count(q: i64, n: usize) -> Result<BigInt> {
    if n < 3 {
        return Err(CensusError::Usage(format!("M_0,{n} needs n >= 3")));
    }
    Ok((2..=n as i64 - 2).fold(BigInt::one(), |acc, i| acc * (q - i)))
}

/// Points of `P^1` of exact degree `d` over `F_q`.
pub fn p1_exact_degree(q: i64, d: usize) -> i64 {
    (1..=d)
        .filter(|e| d.is_multiple_of(*e))
        .map(|e| mobius((d / e) as u64) * (q.pow(e as u32) + 1))
        .sum()
}

/// Fixed points of `F∘σ` on `M_{0,n}` for `σ` of cycle type `ct`.
pub fn m0n_equivariant(q: i64, ct: &CycleType) -> Result<BigInt> {
    let n = ct.n();
    if n < 3 {
        return Err(CensusError::Usage(format!("M_0,{n} needs n >= 3")));
    }
    let exact: Vec<i64> = (1..=ct.max_length()).map(|d| p1_exact_degree(q, d)).collect();
    let configs = falling_product(ct, &exact);
    let pgl2 = BigInt::from(q * (q * q - 1));
    let (quo, rem) = configs.div_rem(&pgl2);
    if !rem.is_zero() {
        return Err(CensusError::NonIntegral(format!(
            "M_0,{n} twisted by {ct} over F_{q}: {configs}/{pgl2}"
        )));
    }
    Ok(quo)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products() {
        assert_eq!(m0n_count(7, 3).unwrap(), BigInt::from(1));
        assert_eq!(m0n_count(5, 4).unwrap(), BigInt::from(3));
        assert_eq!(m0n_count(3, 5).unwrap(), BigInt::from(0));
        assert!(m0n_count(3, 2).is_err());
    }

    #[test]
    fn identity_matches_product() {
        for q in [2i64, 3, 4, 5, 7, 8, 9] {
            for n in 3..=8 {
                assert_eq!(
                    m0n_equivariant(q, &CycleType::identity(n)).unwrap(),
                    m0n_count(q, n).unwrap()
                );
            }
        }
    }

    #[test]
    fn exact_degrees() {
        assert_eq!(p1_exact_degree(2, 1), 3);
        assert_eq!(p1_exact_degree(2, 2), 2);
        assert_eq!(p1_exact_degree(2, 3), 6);
        assert_eq!(p1_exact_degree(3, 4), 72);
    }
}
