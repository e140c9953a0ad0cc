//! Truncated Laurent series in one variable `t` with rational coefficients.
//!
//! A series carries a valuation bound `lo` (every coefficient below `lo` is
//! exactly zero) and an optional precision `hi` (coefficients above `hi` are
//! unknown). `hi = None` means the series is an exact Laurent polynomial.
//! Reading an unknown coefficient is an error, never a silent zero.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::Rat;
use crate::error::{CensusError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries {
    lo: i64,
    hi: Option<i64>,
    terms: BTreeMap<i64, Rat>,
}

impl LaurentSeries {
    /// Exact Laurent polynomial from `(exponent, coefficient)` pairs.
    pub fn poly<I: IntoIterator<Item = (i64, Rat)>>(terms: I) -> Self {
        let mut s = LaurentSeries {
            lo: i64::MAX,
            hi: None,
            terms: BTreeMap::new(),
        };
        for (e, c) in terms {
            *s.terms.entry(e).or_insert_with(Rat::zero) += c;
        }
        s.terms.retain(|_, c| !c.is_zero());
        s.lo = s.terms.keys().next().copied().unwrap_or(0);
        s
    }

    pub fn zero() -> Self {
        Self::poly(std::iter::empty())
    }

    pub fn one() -> Self {
        Self::monomial(0, Rat::one())
    }

    pub fn monomial(e: i64, c: Rat) -> Self {
        Self::poly([(e, c)])
    }

    /// Series known on the window `[lo, hi]`, zero below `lo`, unknown above `hi`.
    pub fn windowed<I: IntoIterator<Item = (i64, Rat)>>(lo: i64, hi: i64, terms: I) -> Result<Self> {
        let mut s = Self::poly(std::iter::empty());
        s.lo = lo;
        s.hi = Some(hi);
        for (e, c) in terms {
            if e < lo || e > hi {
                return Err(CensusError::Window { exponent: e, lo, hi });
            }
            *s.terms.entry(e).or_insert_with(Rat::zero) += c;
        }
        s.terms.retain(|_, c| !c.is_zero());
        Ok(s)
    }

    pub fn valuation_bound(&self) -> i64 {
        self.lo
    }

    pub fn precision(&self) -> Option<i64> {
        self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.hi.is_none()
    }

    /// Coefficient of `t^e`; errors if `e` lies beyond the known precision.
    pub fn coeff(&self, e: i64) -> Result<Rat> {
        if let Some(hi) = self.hi {
            if e > hi {
                return Err(CensusError::Window {
                    exponent: e,
                    lo: self.lo,
                    hi,
                });
            }
        }
        Ok(self.terms.get(&e).cloned().unwrap_or_else(Rat::zero))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn residue(&self) -> Result<Rat> {
        self.coeff(-1)
    }

    fn min_hi(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let hi = Self::min_hi(self.hi, other.hi);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            *terms.entry(*e).or_insert_with(Rat::zero) += c;
        }
        terms.retain(|e, c| !c.is_zero() && hi.is_none_or(|h| *e <= h));
        LaurentSeries {
            lo: self.lo.min(other.lo),
            hi,
            terms,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.terms.clear();
        } else {
            for v in out.terms.values_mut() {
                *v *= c;
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product; the result is known up to `min(hi_a + lo_b, hi_b + lo_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let hi = Self::min_hi(
            self.hi.map(|h| h + other.lo),
            other.hi.map(|h| h + self.lo),
        );
        let mut terms: BTreeMap<i64, Rat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if hi.is_none_or(|h| e <= h) {
                    *terms.entry(e).or_insert_with(Rat::zero) += c1 * c2;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentSeries {
            lo: self.lo + other.lo,
            hi,
            terms,
        }
    }

    /// Drops everything above `hi`, turning the series into a truncated one.
    pub fn truncate(&self, hi: i64) -> Self {
        let hi = Self::min_hi(self.hi, Some(hi));
        let mut out = self.clone();
        out.hi = hi;
        out.terms.retain(|e, _| hi.is_none_or(|h| *e <= h));
        out
    }

    /// `1/(1 - x)` as `Σ_{j≥0} x^j`, for `x` with strictly positive valuation,
    /// known up to exponent `hi`.
    pub fn geometric(x: &Self, hi: i64) -> Result<Self> {
        let v = x
            .terms
            .keys()
            .next()
            .copied()
            .unwrap_or(i64::MAX)
            .max(x.lo);
        if v <= 0 {
            return Err(CensusError::Window {
                exponent: v,
                lo: 1,
                hi,
            });
        }
        let mut acc = Self::one().truncate(hi);
        let mut power = Self::one().truncate(hi);
        let mut e = 0;
        while e + v <= hi {
            power = power.mul(x).truncate(hi);
            acc = acc.add(&power);
            e += v;
        }
        Ok(acc)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Free-standing residue, mirroring [`LaurentSeries::residue`].
pub fn laurent_residue(s: &LaurentSeries) -> Result<Rat> {
    s.residue()
}
