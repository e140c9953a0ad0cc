//! `#M_{1,n}(F_q)` by two independent routes.
//!
//! The direct route sums over the elliptic census. A genus-one curve `C`
//! over `F_q` is isomorphic to its Jacobian `E`, and `Aut(C)` is
//! `E(F_q) ⋊ Aut(E)`, so twisted counts are
//! `Σ_E (1/#Aut E) · #{tuples}/N_1(E)`.
//!
//! The residue route uses only `σ_k(q)`:
//! `#M_{1,n}(F_q) = -Σ_k σ_k(q) · Res_{t=0} [ (X)_{n-1} (t - q/t) t^{-k-2} ]`
//! with `X = q - t - q/t` and `(X)_{n-1}` the falling factorial.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{falling_product, CycleType};
use crate::algebra::laurent::LaurentSeries;
use crate::algebra::{rat_int, Int, Rat};
use crate::census::g1::exact_from_counts;
use crate::census::EllipticCensus;
use crate::error::{CensusError, Result};

pub const MAX_N: usize = 11;

/// Fixed points of `F∘σ` on `M_{1,n}` for `σ` of cycle type `ct`.
pub fn m1n_equivariant(census: &EllipticCensus, ct: &CycleType) -> Result<Int> {
    let n = ct.n();
    if n == 0 {
        return Err(CensusError::Usage("M_1,n needs n >= 1".into()));
    }
    let q = census.q() as i64;
    let d_max = ct.max_length();
    let mut acc = Rat::zero();
    for (t, mass) in census.trace_masses() {
        let counts = crate::census::g1::weil_counts(t, q, d_max);
        let exact = exact_from_counts(&counts);
        let tuples = falling_product(ct, &exact);
        acc += mass * Rat::new(tuples, BigInt::from(counts[0]));
    }
    if !acc.is_integer() {
        return Err(CensusError::NonIntegral(format!(
            "M_1,{n} twisted by {ct} over F_{q}: {acc}"
        )));
    }
    Ok(acc.to_integer())
}

/// `#M_{1,n}(F_q)` from the census: `Σ_E (1/#Aut E) ∏_{i=1}^{n-1} (N_1 - i)`.
pub fn m1n_direct(census: &EllipticCensus, n: usize) -> Result<Int> {
    if n == 0 || n > MAX_N {
        return Err(CensusError::Usage(format!("M_1,n direct route needs 1 <= n <= {MAX_N}, got {n}")));
    }
    m1n_equivariant(census, &CycleType::identity(n))
}

/// The Laurent polynomial `(X)_{n-1} (t - q/t)`, `X = q - t - q/t`.
pub fn getzler_kernel(q: i64, n: usize) -> LaurentSeries {
    let x = LaurentSeries::poly([(0, rat_int(q)), (1, rat_int(-1)), (-1, rat_int(-q))]);
    let mut acc = LaurentSeries::one();
    for i in 0..n.saturating_sub(1) {
        acc = acc.mul(&x.sub(&LaurentSeries::monomial(0, rat_int(i as i64))));
    }
    acc.mul(&LaurentSeries::poly([(1, rat_int(1)), (-1, rat_int(-q))]))
}

/// `#M_{1,n}(F_q)` from `σ_0(q), σ_1(q), ...`; needs `sigma.len() >= n`.
pub fn m1n_getzler(sigma: &[Int], q: i64, n: usize) -> Result<Int> {
    if n == 0 {
        return Err(CensusError::Usage("M_1,n needs n >= 1".into()));
    }
    if sigma.len() < n {
        return Err(CensusError::Usage(format!(
            "residue route for n = {n} needs sigma_0..sigma_{}, got {} values",
            n - 1,
            sigma.len()
        )));
    }
    let kernel = getzler_kernel(q, n);
    // the kernel lives in degrees [-n, n], so t^{-k-2} has no residue once k >= n
    if let Some((top, _)) = kernel.terms().last() {
        if top > n as i64 {
            return Err(CensusError::Window {
                exponent: top,
                lo: -(n as i64),
                hi: n as i64,
            });
        }
    }
    let mut acc = Rat::zero();
    for (k, s) in sigma.iter().enumerate().take(n) {
        if s.is_zero() {
            continue;
        }
        let res = kernel
            .mul(&LaurentSeries::monomial(-(k as i64) - 2, Rat::one()))
            .residue()?;
        acc -= Rat::from_integer(s.clone()) * res;
    }
    if !acc.is_integer() {
        return Err(CensusError::NonIntegral(format!("residue route M_1,{n}: {acc}")));
    }
    Ok(acc.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldCtx;

    #[test]
    fn table_values_at_2_and_3() {
        let c2 = EllipticCensus::new(&FieldCtx::new(2).unwrap()).unwrap();
        let c3 = EllipticCensus::new(&FieldCtx::new(3).unwrap()).unwrap();
        let want2 = [2, 4, 7, 9, 6, 0, 0];
        let want3 = [3, 9, 26, 66, 132, 180, 120];
        for n in 1..=7 {
            assert_eq!(m1n_direct(&c2, n).unwrap(), Int::from(want2[n - 1]));
            assert_eq!(m1n_direct(&c3, n).unwrap(), Int::from(want3[n - 1]));
        }
    }

    #[test]
    fn routes_agree() {
        for q in [2u64, 3, 5] {
            let c = EllipticCensus::new(&FieldCtx::new(q).unwrap()).unwrap();
            let sigma = c.sigma_table(8).unwrap();
            for n in 1..=8 {
                assert_eq!(
                    m1n_direct(&c, n).unwrap(),
                    m1n_getzler(&sigma, q as i64, n).unwrap(),
                    "q = {q}, n = {n}"
                );
            }
        }
    }
}
