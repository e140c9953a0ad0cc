//! Level-one elliptic modular forms via `q`-expansions.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::algebra::linalg::rref;
use crate::algebra::{rat_int, Int, Rat};
use crate::census::EllipticCensus;
use crate::error::{CensusError, Result};

/// Truncated `q`-expansion `a_0 + a_1 q + ... + a_prec q^prec`.
#[derive(Debug, Clone, PartialEq)]
pub struct QSeries {
    pub coeffs: Vec<Rat>,
    pub weight: Option<u32>,
}

impl QSeries {
    pub fn zero(prec: usize) -> Self {
        QSeries {
            coeffs: vec![Rat::zero(); prec + 1],
            weight: None,
        }
    }

    pub fn one(prec: usize) -> Self {
        let mut s = Self::zero(prec);
        s.coeffs[0] = Rat::one();
        s.weight = Some(0);
        s
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let prec = self.prec().min(other.prec());
        let mut out = Self::zero(prec);
        for (i, a) in self.coeffs.iter().enumerate().take(prec + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(prec + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out.weight = match (self.weight, other.weight) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        };
        out
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let prec = self.prec().min(other.prec());
        QSeries {
            coeffs: (0..=prec).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
            weight: if self.weight == other.weight { self.weight } else { None },
        }
    }

    pub fn scale(&self, c: &Rat) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            weight: self.weight,
        }
    }

    pub fn pow(&self, e: u32) -> QSeries {
        let mut acc = Self::one(self.prec());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

fn divisor_power_sum(n: usize, k: u32) -> Int {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| Int::from(d).pow(k))
        .sum()
}

/// `E_4 = 1 + 240 Σ σ_3(n) q^n`, `E_6 = 1 - 504 Σ σ_5(n) q^n`.
pub fn eisenstein(k: u32, prec: usize) -> Result<QSeries> {
    let (c, e) = match k {
        4 => (240, 3),
        6 => (-504, 5),
        _ => return Err(CensusError::Usage(format!("Eisenstein series of weight {k} not provided"))),
    };
    let mut s = QSeries::one(prec);
    for n in 1..=prec {
        s.coeffs[n] = Rat::from_integer(divisor_power_sum(n, e) * c);
    }
    s.weight = Some(k);
    Ok(s)
}

/// `q ∏ (1 - q^m)^24`.
pub fn delta_eta(prec: usize) -> QSeries {
    let mut prod = vec![Int::zero(); prec + 1];
    prod[0] = Int::one();
    for m in 1..=prec {
        for _ in 0..24 {
            for i in (m..=prec).rev() {
                let t = prod[i - m].clone();
                prod[i] -= t;
            }
        }
    }
    let mut s = QSeries::zero(prec);
    for i in 1..=prec {
        s.coeffs[i] = Rat::from_integer(prod[i - 1].clone());
    }
    s.weight = Some(12);
    s
}

/// `Δ`, computed as `(E_4^3 - E_6^2)/1728` and as the eta product; the two
/// must agree.
pub fn delta_tau(prec: usize) -> Result<QSeries> {
    if prec < 2 {
        return Err(CensusError::Usage("delta needs precision >= 2".into()));
    }
    let e4 = eisenstein(4, prec)?;
    let e6 = eisenstein(6, prec)?;
    let a = e4.pow(3).sub(&e6.pow(2)).scale(&Rat::new(Int::one(), Int::from(1728)));
    let b = delta_eta(prec);
    if a.coeffs != b.coeffs {
        return Err(CensusError::Consistency("two constructions of delta disagree".into()));
    }
    Ok(b)
}

pub fn tau(n: usize) -> Result<Int> {
    Ok(delta_tau(n.max(2))?.coeffs[n].to_integer())
}

pub fn dim_modular(k: u32) -> usize {
    if k % 2 == 1 || k == 2 {
        return 0;
    }
    let base = (k / 12) as usize;
    if k % 12 == 2 {
        base
    } else {
        base + 1
    }
}

pub fn dim_cusp(k: u32) -> usize {
    if k < 12 || k % 2 == 1 {
        0
    } else {
        dim_modular(k) - 1
    }
}

/// Echelonized basis of `S_k` with `f_i = q^i + O(q^{d+1})`.
#[derive(Debug, Clone)]
pub struct CuspSpace {
    pub weight: u32,
    pub basis: Vec<QSeries>,
}

impl CuspSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn prec(&self) -> usize {
        self.basis.first().map_or(usize::MAX, |f| f.prec())
    }
}

type SpaceCache = RwLock<HashMap<(u32, usize), Arc<CuspSpace>>>;

fn cache() -> &'static SpaceCache {
    static CACHE: OnceLock<SpaceCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Miller-style basis from `Δ^i E_4^a E_6^b`, reduced to echelon form.
pub fn cusp_space(k: u32, prec: usize) -> Result<Arc<CuspSpace>> {
    if k % 2 == 1 {
        return Err(CensusError::Usage(format!("odd weight {k} has no level-one forms")));
    }
    if let Some(s) = cache().read().expect("cache lock").get(&(k, prec)) {
        return Ok(s.clone());
    }
    let d = dim_cusp(k);
    if prec < d {
        return Err(CensusError::Usage(format!(
            "precision {prec} too small for S_{k} of dimension {d}"
        )));
    }
    let e4 = eisenstein(4, prec)?;
    let e6 = eisenstein(6, prec)?;
    let delta = delta_tau(prec.max(2))?;
    let mut rows = Vec::with_capacity(d);
    for i in 1..=d as u32 {
        let rest = k - 12 * i;
        let (a, b) = (0..=rest / 4)
            .find_map(|a| {
                let r = rest - 4 * a;
                r.is_multiple_of(6).then_some((a, r / 6))
            })
            .ok_or_else(|| CensusError::Consistency(format!("no monomial of weight {rest}")))?;
        let f = delta.pow(i).mul(&e4.pow(a)).mul(&e6.pow(b));
        rows.push(f.coeffs[..=prec].to_vec());
    }
    let pivots = rref(&mut rows);
    if pivots != (1..=d).collect::<Vec<_>>() {
        return Err(CensusError::Consistency(format!("S_{k} basis is not in Miller form")));
    }
    if rows.iter().flatten().any(|c| !c.is_integer()) {
        return Err(CensusError::Consistency(format!("S_{k} echelon basis is not integral")));
    }
    let space = Arc::new(CuspSpace {
        weight: k,
        basis: rows
            .into_iter()
            .map(|coeffs| QSeries {
                coeffs,
                weight: Some(k),
            })
            .collect(),
    });
    cache().write().expect("cache lock").insert((k, prec), space.clone());
    Ok(space)
}

/// Matrix of `T_p` on the echelon basis: entry `(i, j)` is the `f_j`
/// coordinate of `T_p f_i`.
pub fn hecke_matrix(k: u32, p: u64) -> Result<Vec<Vec<Rat>>> {
    let d = dim_cusp(k);
    let prec = d * p as usize + 10;
    let space = cusp_space(k, prec)?;
    let pk1 = rat_int(Int::from(p).pow(k - 1));
    let p = p as usize;
    Ok(space
        .basis
        .iter()
        .map(|f| {
            (1..=d)
                .map(|n| {
                    let mut v = f.coeffs[n * p].clone();
                    if n % p == 0 {
                        v += &pk1 * &f.coeffs[n / p];
                    }
                    v
                })
                .collect()
        })
        .collect())
}

pub fn hecke_trace(k: u32, p: u64) -> Result<Int> {
    if !crate::algebra::field::is_prime(p) {
        return Err(CensusError::Usage(format!("{p} is not prime")));
    }
    let m = hecke_matrix(k, p)?;
    let tr: Rat = (0..m.len()).map(|i| m[i][i].clone()).sum();
    if !tr.is_integer() {
        return Err(CensusError::Consistency(format!("trace of T_{p} on S_{k} is {tr}")));
    }
    Ok(tr.to_integer())
}

/// `σ_k(p) = Tr(T_p, S_{k+2}) + 1`.
pub fn eichler_shimura_check(k: u32, census: &EllipticCensus) -> Result<bool> {
    let p = census.q() as u64;
    Ok(census.sigma_k(k)? == hecke_trace(k + 2, p)? + Int::one())
}
