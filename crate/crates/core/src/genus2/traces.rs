//! `σ_{a,b}(q)` and the genus-two and genus-three trace formulas.

use num_traits::{One, Zero};

use super::calibration::{Calibration, ANCHORS, BraceSelector, CALIBRATION};
use super::char2::enumerate_g2_char2;
use super::degree3::SigmaAbcStore;
use super::odd::{enumerate_g2, SexticOrbitMass};
use crate::algebra::field::FieldCtx;
use crate::algebra::sp4::Sp4Evaluator;
use crate::algebra::{Int, Rat};
use crate::census::EllipticCensus;
use crate::error::{CensusError, Result};
use crate::modforms::dim_cusp;

/// Everything `σ_{a,b}(q)` needs: the genus-two masses and the elliptic
/// censuses over `F_q` and `F_{q^2}` for the product locus.
#[derive(Debug, Clone)]
pub struct Genus2Data {
    pub masses: SexticOrbitMass,
    pub base: EllipticCensus,
    pub quadratic: EllipticCensus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SigmaABReport {
    pub a: i64,
    pub b: i64,
    pub q: u32,
    pub value: Int,
    pub m2_part: Rat,
    pub a11_part: Int,
}

impl Genus2Data {
    pub fn new(k: &FieldCtx) -> Result<Self> {
        let masses = if k.p() == 2 {
            enumerate_g2_char2(k)?.weil_masses()?
        } else {
            enumerate_g2(k)?
        };
        let base = EllipticCensus::new(k)?;
        let quadratic = EllipticCensus::new(&FieldCtx::with_pm(k.p(), 2 * k.m())?)?;
        Self::from_parts(masses, base, quadratic)
    }

    pub fn from_parts(masses: SexticOrbitMass, base: EllipticCensus, quadratic: EllipticCensus) -> Result<Self> {
        let q = base.q();
        if masses.q != q || quadratic.q() != q * q {
            return Err(CensusError::Usage(format!(
                "inconsistent fields: masses over F_{}, censuses over F_{q} and F_{}",
                masses.q,
                quadratic.q()
            )));
        }
        Ok(Genus2Data {
            masses,
            base,
            quadratic,
        })
    }

    pub fn q(&self) -> u32 {
        self.base.q()
    }

    /// `Σ mass · char_{a,b}` over Jacobians.
    pub fn m2_sum(&self, a: i64, b: i64) -> Result<Rat> {
        let ev = Sp4Evaluator::new(a, b)?;
        let q = self.q() as i64;
        Ok(self
            .masses
            .masses
            .iter()
            .map(|(&(a1, a2), m)| m * Rat::from_integer(ev.eval(a1, a2, q)))
            .sum())
    }

    /// Products of elliptic curves: ordered pairs over `F_q` and Weil
    /// restrictions from `F_{q^2}`, halved.
    pub fn a11_contribution(&self, a: i64, b: i64) -> Result<Int> {
        a11_contribution(&self.base, &self.quadratic, a, b)
    }

    /// Uncalibrated `Σ` over all principally polarized abelian surfaces.
    pub fn raw_sum(&self, a: i64, b: i64) -> Result<(Rat, Int)> {
        Ok((self.m2_sum(a, b)?, self.a11_contribution(a, b)?))
    }

    pub fn sigma_ab(&self, a: i64, b: i64, cal: &Calibration) -> Result<SigmaABReport> {
        if b < 0 || a < b {
            return Err(CensusError::Usage(format!("σ_(a,b) needs a >= b >= 0, got ({a}, {b})")));
        }
        let q = self.q();
        if (a + b) % 2 != 0 {
            return Ok(SigmaABReport {
                a,
                b,
                q,
                value: Int::zero(),
                m2_part: Rat::zero(),
                a11_part: Int::zero(),
            });
        }
        let (m2, a11) = self.raw_sum(a, b)?;
        let total = &m2 + Rat::from_integer(a11.clone());
        if !total.is_integer() {
            return Err(CensusError::NonIntegral(format!("σ_({a},{b})({q}) = {total}")));
        }
        Ok(SigmaABReport {
            a,
            b,
            q,
            value: total.to_integer() * cal.sign,
            m2_part: m2,
            a11_part: a11,
        })
    }
}

pub fn a11_contribution(base: &EllipticCensus, quadratic: &EllipticCensus, a: i64, b: i64) -> Result<Int> {
    let ev = Sp4Evaluator::new(a, b)?;
    let q = base.q() as i64;
    let traces = base.trace_masses();
    let mut acc = Rat::zero();
    for (t1, w1) in &traces {
        for (t2, w2) in &traces {
            let v = ev.eval(t1 + t2, t1 * t2 + 2 * q, q);
            acc += w1 * w2 * Rat::from_integer(v);
        }
    }
    // t^4 - s t^2 + q^2 with s the trace over F_{q^2}
    for (s, w) in quadratic.trace_masses() {
        acc += w * Rat::from_integer(ev.eval(0, -s, q));
    }
    acc /= Rat::from_integer(Int::from(2));
    if !acc.is_integer() {
        return Err(CensusError::NonIntegral(format!("A_1,1 contribution ({a},{b}) over F_{q}: {acc}")));
    }
    Ok(acc.to_integer())
}

/// `dim S_k(SL_2(Z))`, with the convention `s_2 = -1`.
pub fn s_dim(k: i64) -> i64 {
    match k {
        2 => -1,
        k if k < 0 => 0,
        k => dim_cusp(k as u32) as i64,
    }
}

/// `c_{a,b}(p)` from its ingredients. `sigma(w)` is the genus-one counting
/// function indexed by weight `w`, i.e. the census `σ_{w-2}`.
pub fn c_ab_formula(
    p: i64,
    a: i64,
    b: i64,
    s: &dyn Fn(i64) -> i64,
    sigma: &dyn Fn(i64) -> Int,
    brace: BraceSelector,
) -> Int {
    let mut v = Int::from(s(a - b + 2)) - Int::from(s(a + b + 4)) * sigma(a - b + 2) * Int::from(p).pow((b + 1) as u32);
    if brace.top(a) {
        v += sigma(b + 2);
    } else {
        v += Int::one() - sigma(a + 3);
    }
    v
}

/// Genus-two trace engine at one field.
#[derive(Debug, Clone)]
pub struct TraceEngine {
    pub data: Genus2Data,
    pub calibration: Calibration,
}

impl TraceEngine {
    pub fn new(k: &FieldCtx) -> Result<Self> {
        Ok(Self::from_data(Genus2Data::new(k)?))
    }

    pub fn from_data(data: Genus2Data) -> Self {
        TraceEngine {
            data,
            calibration: CALIBRATION,
        }
    }

    pub fn with_calibration(mut self, cal: Calibration) -> Self {
        self.calibration = cal;
        self
    }

    pub fn q(&self) -> u32 {
        self.data.q()
    }

    /// Genus-one counting function by weight: census `σ_{w-2}`.
    pub fn sigma_weight(&self, w: i64) -> Result<Int> {
        if w < 2 {
            return Err(CensusError::Usage(format!("weight {w} below 2")));
        }
        self.data.base.sigma_k((w - 2) as u32)
    }

    pub fn sigma_ab(&self, a: i64, b: i64) -> Result<SigmaABReport> {
        self.data.sigma_ab(a, b, &self.calibration)
    }

    pub fn c_ab(&self, a: i64, b: i64) -> Result<Int> {
        if b < 0 || a < b {
            return Err(CensusError::Usage(format!("c_(a,b) needs a >= b >= 0, got ({a}, {b})")));
        }
        if (a + b) % 2 != 0 {
            return Ok(Int::zero());
        }
        let table = self.data.base.sigma_table((a + 1) as u32)?;
        let sigma = |w: i64| table[(w - 2) as usize].clone();
        Ok(c_ab_formula(self.q() as i64, a, b, &s_dim, &sigma, self.calibration.brace))
    }

    /// `Tr(T_p, S_{j,k})` for `k ≥ 3`, through `(a, b) = (j + k - 3, k - 3)`.
    pub fn trace_degree2(&self, j: i64, k: i64) -> Result<Int> {
        if k < 3 || j < 0 {
            return Err(CensusError::Usage(format!("weight (j, k) = ({j}, {k}) needs j >= 0, k >= 3")));
        }
        let (a, b) = (j + k - 3, k - 3);
        if (a + b) % 2 != 0 {
            return Ok(Int::zero());
        }
        Ok(self.sigma_ab(a, b)?.value + self.c_ab(a, b)?)
    }

    fn sigma2(&self, a: i64, b: i64) -> Result<Int> {
        Ok(self.sigma_ab(a, b)?.value)
    }

    /// `c_{a,b,c}(p)`, built from genus-two and genus-one terms.
    pub fn c_abc(&self, a: i64, b: i64, c: i64) -> Result<Int> {
        if c < 0 || b < c || a < b {
            return Err(CensusError::Usage(format!("c_(a,b,c) needs a >= b >= c >= 0, got ({a}, {b}, {c})")));
        }
        let (s1, s2, s3) = (self.sigma2(a + 1, b + 1)?, self.sigma2(a + 1, c)?, self.sigma2(b, c)?);
        let (c1, c2, c3) = (self.c_ab(a + 1, b + 1)?, self.c_ab(a + 1, c)?, self.c_ab(b, c)?);
        let v = -&s1 + &s2 - &s3 - &c1 * self.sigma_weight(c + 2)? + &c2 * self.sigma_weight(b + 3)?
            - &c3 * self.sigma_weight(a + 4)?
            + &c1
            - &c2
            + &c3;
        Ok(v)
    }

    /// `Tr(T_p, S_{i,j,k})` for `k ≥ 4`, with `(a, b, c) = (i + j + k - 4, j + k - 4, k - 4)`.
    pub fn trace_degree3(&self, i: i64, j: i64, k: i64, store: &SigmaAbcStore) -> Result<Int> {
        if i < 0 || j < 0 || k < 4 {
            return Err(CensusError::Usage(format!("weight ({i}, {j}, {k}) needs i, j >= 0, k >= 4")));
        }
        let c = k - 4;
        let b = j + c;
        let a = i + b;
        let sigma = store.get(self.q() as u64, a, b, c)?;
        Ok(sigma + self.c_abc(a, b, c)?)
    }
}

/// Every calibration reproducing the anchors at the engine's prime.
pub fn calibrate(engine: &TraceEngine) -> Result<Vec<Calibration>> {
    let p = engine.q() as u64;
    let anchors: Vec<_> = ANCHORS.iter().filter(|x| x.p == p).collect();
    if anchors.is_empty() {
        return Err(CensusError::Usage(format!("no calibration anchor at p = {p}")));
    }
    let mut out = Vec::new();
    for sign in [1, -1] {
        for brace in BraceSelector::ALL {
            let cal = Calibration { sign, brace };
            let e = engine.clone().with_calibration(cal);
            let mut ok = true;
            for anchor in &anchors {
                let want: Int = anchor
                    .eigenvalue
                    .parse()
                    .map_err(|_| CensusError::Parse(anchor.eigenvalue.to_string()))?;
                if e.trace_degree2(anchor.j, anchor.k)? != want {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(cal);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_weight_counts_a11() {
        for q in [3u64, 5] {
            let k = FieldCtx::new(q).unwrap();
            let base = EllipticCensus::new(&k).unwrap();
            let quad = EllipticCensus::new(&FieldCtx::new(q * q).unwrap()).unwrap();
            assert_eq!(a11_contribution(&base, &quad, 0, 0).unwrap(), Int::from(q * q));
        }
    }

    #[test]
    fn zero_ingredients() {
        let v = c_ab_formula(5, 4, 2, &|_| 0, &|_| Int::zero(), BraceSelector::TopWhenAEven);
        assert_eq!(v, Int::zero());
    }
}
