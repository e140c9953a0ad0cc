//! Exact polynomial interpolation of point counts, with the integrality and
//! palindromic checks expected of a smooth proper moduli space.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{Int, Rat};
use crate::error::{CensusError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialInQ {
    /// `c_0..=c_d`, low to high.
    pub coeffs: Vec<Int>,
}

impl PolynomialInQ {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, q: i64) -> Int {
        let q = Int::from(q);
        self.coeffs
            .iter()
            .rev()
            .fold(Int::zero(), |acc, c| acc * &q + c)
    }

    /// `P(x) = x^d P(1/x)`.
    pub fn is_palindromic(&self) -> bool {
        let c = &self.coeffs;
        (0..c.len()).all(|i| c[i] == c[c.len() - 1 - i])
    }
}

impl fmt::Display for PolynomialInQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = a.is_one();
            match i {
                0 => write!(f, "{a}")?,
                1 if unit => write!(f, "q")?,
                1 => write!(f, "{a}q")?,
                _ if unit => write!(f, "q^{i}")?,
                _ => write!(f, "{a}q^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Interpolates the samples by a polynomial of degree at most `d`, checks any
/// surplus samples against it, requires integer coefficients and, when
/// `complete`, palindromic symmetry of degree exactly `d`.
pub fn poly_fit_and_check(samples: &[(i64, Int)], d: usize, complete: bool) -> Result<PolynomialInQ> {
    let mut xs: Vec<i64> = samples.iter().map(|s| s.0).collect();
    xs.sort_unstable();
    xs.dedup();
    if xs.len() != samples.len() {
        return Err(CensusError::PolyCheck("repeated sample point".into()));
    }
    if samples.len() < d + 1 {
        return Err(CensusError::PolyCheck(format!(
            "degree {d} needs {} samples, got {}",
            d + 1,
            samples.len()
        )));
    }
    let (fit, extra) = samples.split_at(d + 1);
    let mut coeffs = vec![Rat::zero(); d + 1];
    for (i, (xi, yi)) in fit.iter().enumerate() {
        // basis polynomial ∏_{j≠i} (x - x_j)/(x_i - x_j)
        let mut basis = vec![Rat::one()];
        let mut denom = Rat::one();
        for (j, (xj, _)) in fit.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Rat::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * Rat::from_integer(Int::from(*xj));
            }
            basis = next;
            denom *= Rat::from_integer(Int::from(xi - xj));
        }
        let scale = Rat::from_integer(yi.clone()) / denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    if let Some((k, c)) = coeffs.iter().enumerate().find(|(_, c)| !c.is_integer()) {
        return Err(CensusError::PolyCheck(format!(
            "coefficient of q^{k} is {c}, not an integer"
        )));
    }
    let mut ints: Vec<Int> = coeffs.into_iter().map(|c| c.to_integer()).collect();
    while ints.len() > 1 && ints.last().is_some_and(|c| c.is_zero()) {
        ints.pop();
    }
    let p = PolynomialInQ { coeffs: ints };
    for (x, y) in extra {
        if &p.eval(*x) != y {
            return Err(CensusError::PolyCheck(format!(
                "surplus sample q = {x}: polynomial gives {}, count is {y}",
                p.eval(*x)
            )));
        }
    }
    if complete && (p.degree() != d || !p.is_palindromic()) {
        return Err(CensusError::PolyCheck(format!("{p} is not palindromic of degree {d}")));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[(i64, i64)]) -> Vec<(i64, Int)> {
        v.iter().map(|&(x, y)| (x, Int::from(y))).collect()
    }

    #[test]
    fn recovers_square() {
        let p = poly_fit_and_check(&s(&[(2, 9), (3, 16), (5, 36)]), 2, true).unwrap();
        assert_eq!(p.to_string(), "q^2+2q+1");
    }

    #[test]
    fn open_space_is_not_palindromic() {
        let p = poly_fit_and_check(&s(&[(2, 7), (3, 26), (4, 63), (5, 124)]), 3, false).unwrap();
        assert_eq!(p.to_string(), "q^3-1");
        assert!(poly_fit_and_check(&s(&[(2, 7), (3, 26), (4, 63), (5, 124)]), 3, true).is_err());
    }

    #[test]
    fn constants_and_failures() {
        let p = poly_fit_and_check(&s(&[(2, 5)]), 0, false).unwrap();
        assert_eq!(p.to_string(), "5");
        assert!(poly_fit_and_check(&s(&[(2, 1), (4, 2)]), 1, false).is_err());
        assert!(poly_fit_and_check(&s(&[(2, 1), (3, 2), (4, 4)]), 1, false).is_err());
    }
}
