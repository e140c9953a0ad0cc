//! Weil polynomials of curves of genus at most 3.

use num_traits::{Signed, Zero};

use super::{rat_int, Rat};
use crate::error::{CensusError, Result};

/// Frobenius data of a genus-`g` curve over `F_q`: power sums
/// `s_d = q^d + 1 - N_d` and elementary symmetric functions `a_1..a_g` of
/// the Frobenius eigenvalues. The characteristic polynomial is
/// `t^{2g} - a_1 t^{2g-1} + a_2 t^{2g-2} - ... + q^g`.
pub const MAX_GENUS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeilData {
    g: usize,
    q: i64,
    s: Vec<i64>,
    a: Vec<i64>,
}

impl WeilData {
    /// From point counts `N_1..N_g` over `F_q, ..., F_{q^g}`.
    pub fn from_counts(q: i64, counts: &[i64]) -> Result<Self> {
        let s: Vec<i64> = counts
            .iter()
            .enumerate()
            .map(|(i, &n)| q.pow(i as u32 + 1) + 1 - n)
            .collect();
        Self::from_power_sums(q, &s)
    }

    pub fn from_power_sums(q: i64, s: &[i64]) -> Result<Self> {
        let g = s.len();
        if !(1..=MAX_GENUS).contains(&g) {
            return Err(CensusError::Usage(format!("genus {g} outside 1..={MAX_GENUS}")));
        }
        let mut e = vec![1i64];
        for k in 1..=g {
            let mut acc = 0i64;
            for i in 1..=k {
                let term = e[k - i] * s[i - 1];
                acc += if i % 2 == 1 { term } else { -term };
            }
            if acc % k as i64 != 0 {
                return Err(CensusError::NonIntegral(format!(
                    "Newton identity e_{k} = {acc}/{k} from power sums {s:?}"
                )));
            }
            e.push(acc / k as i64);
        }
        Ok(WeilData {
            g,
            q,
            s: s.to_vec(),
            a: e[1..].to_vec(),
        })
    }

    /// From `a_1..a_g` directly.
    pub fn from_coefficients(q: i64, a: &[i64]) -> Result<Self> {
        let g = a.len();
        if !(1..=MAX_GENUS).contains(&g) {
            return Err(CensusError::Usage(format!("genus {g} outside 1..={MAX_GENUS}")));
        }
        let mut e = vec![1i64];
        e.extend_from_slice(a);
        let mut s = Vec::with_capacity(g);
        for k in 1..=g {
            // s_k = Σ_{i=1}^{k-1} (-1)^{i-1} e_i s_{k-i} + (-1)^{k-1} k e_k
            let mut acc = 0i64;
            for i in 1..k {
                let term: i64 = e[i] * s[k - i - 1];
                acc += if i % 2 == 1 { term } else { -term };
            }
            let last = k as i64 * e[k];
            acc += if k % 2 == 1 { last } else { -last };
            s.push(acc);
        }
        Ok(WeilData {
            g,
            q,
            s,
            a: a.to_vec(),
        })
    }

    pub fn genus(&self) -> usize {
        self.g
    }
    pub fn q(&self) -> i64 {
        self.q
    }
    /// `a_i` for `1 ≤ i ≤ g`.
    pub fn a(&self, i: usize) -> i64 {
        self.a[i - 1]
    }
    pub fn coefficients(&self) -> &[i64] {
        &self.a
    }
    /// `s_d` for `1 ≤ d ≤ g`.
    pub fn s(&self, d: usize) -> i64 {
        self.s[d - 1]
    }
    pub fn power_sums(&self) -> &[i64] {
        &self.s
    }

    /// Point count over `F_{q^d}` for `d ≤ g`.
    pub fn count(&self, d: usize) -> i64 {
        self.q.pow(d as u32) + 1 - self.s(d)
    }

    /// Elementary symmetric functions `e_0..=e_{2g}` of all `2g` eigenvalues,
    /// completed with `e_{2g-i} = q^{g-i} e_i`.
    pub fn elementary(&self) -> Vec<i128> {
        let g = self.g;
        let mut e = vec![0i128; 2 * g + 1];
        e[0] = 1;
        for i in 1..=g {
            e[i] = self.a[i - 1] as i128;
        }
        for i in 0..g {
            e[2 * g - i] = (self.q as i128).pow((g - i) as u32) * e[i];
        }
        e
    }

    /// Characteristic polynomial coefficients, index `i` holding the
    /// coefficient of `t^{2g-i}`.
    pub fn charpoly(&self) -> Vec<i128> {
        self.elementary()
            .into_iter()
            .enumerate()
            .map(|(i, e)| if i % 2 == 0 { e } else { -e })
            .collect()
    }

    /// Checks `c_{2g-i} = q^{g-i} c_i` on the charpoly (coefficient of `t^i`
    /// against coefficient of `t^{2g-i}`).
    pub fn functional_equation_holds(&self) -> bool {
        let c = self.charpoly();
        let g = self.g;
        (0..=g).all(|i| c[i] * (self.q as i128).pow((g - i) as u32) == c[2 * g - i])
    }

    /// The real Weil polynomial `h(x)` with `P(t) = t^g h(t + q/t)`,
    /// coefficients low to high.
    pub fn real_polynomial(&self) -> Vec<Rat> {
        let g = self.g;
        let q = self.q as i128;
        let c = self.charpoly();
        // rest[j + g] is the coefficient of t^j in P(t)/t^g
        let mut rest: Vec<i128> = (0..=2 * g).map(|j| c[2 * g - j]).collect();
        let mut h = vec![0i128; g + 1];
        for k in (0..=g).rev() {
            let hk = rest[k + g];
            h[k] = hk;
            // subtract hk (t + q/t)^k
            let mut binom = 1i128;
            for i in 0..=k {
                rest[k + g - 2 * i] -= hk * binom * q.pow(i as u32);
                binom = binom * (k - i) as i128 / (i + 1) as i128;
            }
        }
        h.into_iter().map(|x| rat_int(x as i64)).collect()
    }

    /// True when every Frobenius eigenvalue has absolute value `√q`, i.e.
    /// the real Weil polynomial splits over `R` with roots in `[-2√q, 2√q]`.
    pub fn satisfies_weil_bounds(&self) -> bool {
        let s1 = self.s[0] as i128;
        let g = self.g as i128;
        if s1 * s1 > 4 * g * g * self.q as i128 {
            return false;
        }
        roots_in_weil_interval(&self.real_polynomial(), self.q)
    }
}

fn rtrim(v: &mut Vec<Rat>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn rdiv_rem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r = a.to_vec();
    rtrim(&mut r);
    let db = b.len() - 1;
    let mut quo = vec![Rat::zero(); r.len().saturating_sub(db)];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let c = &r[dr] / &b[db];
        for i in 0..=db {
            let t = &c * &b[i];
            r[dr - db + i] -= t;
        }
        quo[dr - db] = c;
        rtrim(&mut r);
    }
    (quo, r)
}

fn rderiv(a: &[Rat]) -> Vec<Rat> {
    let mut d: Vec<Rat> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * rat_int(i as i64))
        .collect();
    rtrim(&mut d);
    d
}

fn rgcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    rtrim(&mut x);
    rtrim(&mut y);
    while !y.is_empty() {
        let (_, r) = rdiv_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

/// Sign of `A + B√q` for rationals `A, B` and positive integer `q`.
fn sign_surd(a: &Rat, b: &Rat, q: i64) -> i32 {
    let sa = if a.is_zero() { 0 } else if a.is_positive() { 1 } else { -1 };
    let sb = if b.is_zero() { 0 } else if b.is_positive() { 1 } else { -1 };
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    let lhs = a * a;
    let rhs = b * b * rat_int(q);
    if lhs > rhs {
        sa
    } else if lhs < rhs {
        sb
    } else {
        0
    }
}

/// Sign of `f(ε·2√q)`.
fn sign_at_edge(f: &[Rat], q: i64, eps: i64) -> i32 {
    let mut a = Rat::zero();
    let mut b = Rat::zero();
    for (k, c) in f.iter().enumerate() {
        // (2ε)^k q^{k/2}
        let base = rat_int((2 * eps).pow(k as u32)) * rat_int(q.pow(k as u32 / 2));
        if k % 2 == 0 {
            a += c * base;
        } else {
            b += c * base;
        }
    }
    sign_surd(&a, &b, q)
}

fn sign_changes(signs: &[i32]) -> usize {
    let nz: Vec<i32> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Every complex root of `f` is real and lies in `[-2√q, 2√q]`.
pub fn roots_in_weil_interval(f: &[Rat], q: i64) -> bool {
    let mut f = f.to_vec();
    rtrim(&mut f);
    if f.len() <= 1 {
        return true;
    }
    let g = rgcd(&f, &rderiv(&f));
    let sf = if g.len() > 1 { rdiv_rem(&f, &g).0 } else { f };
    let deg = sf.len() - 1;
    let mut seq = vec![sf.clone(), rderiv(&sf)];
    loop {
        let n = seq.len();
        let (_, r) = rdiv_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let lo: Vec<i32> = seq.iter().map(|p| sign_at_edge(p, q, -1)).collect();
    let hi: Vec<i32> = seq.iter().map(|p| sign_at_edge(p, q, 1)).collect();
    let mut count = sign_changes(&lo) as i64 - sign_changes(&hi) as i64;
    if lo[0] == 0 {
        count += 1;
    }
    count == deg as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_round_trip() {
        let w = WeilData::from_counts(3, &[4, 10]).unwrap();
        assert_eq!(w.s(1), 0);
        assert_eq!(w.s(2), 0);
        assert_eq!(w.a(1), 0);
        assert_eq!(w.a(2), 0);
        let v = WeilData::from_coefficients(5, &[2, 7]).unwrap();
        let u = WeilData::from_power_sums(5, v.power_sums()).unwrap();
        assert_eq!(u.coefficients(), &[2, 7]);
        // a_2 = (s_1^2 - s_2)/2
        assert_eq!(v.a(2), (v.s(1) * v.s(1) - v.s(2)) / 2);
    }

    #[test]
    fn product_of_elliptic_curves() {
        // E1 with trace 1, E2 with trace -2 over F_5
        let (t1, t2, q) = (1i64, -2i64, 5i64);
        let w = WeilData::from_coefficients(q, &[t1 + t2, t1 * t2 + 2 * q]).unwrap();
        let n1 = (q + 1 - t1) + (q + 1 - t2) - (q + 1);
        assert_eq!(w.count(1), n1);
        assert!(w.satisfies_weil_bounds());
        assert!(w.functional_equation_holds());
    }

    #[test]
    fn weil_bounds() {
        assert!(WeilData::from_coefficients(4, &[4]).unwrap().satisfies_weil_bounds());
        assert!(!WeilData::from_coefficients(4, &[5]).unwrap().satisfies_weil_bounds());
        // x^2 + 2q: a_1 = 0, a_2 = 4q gives real roots? h = x^2 + 2q has none
        assert!(!WeilData::from_coefficients(3, &[0, 12]).unwrap().satisfies_weil_bounds());
        assert!(WeilData::from_coefficients(3, &[0, -6]).unwrap().satisfies_weil_bounds());
        assert!(WeilData::from_coefficients(3, &[0, 6]).unwrap().satisfies_weil_bounds());
        assert!(!WeilData::from_coefficients(3, &[0, -7]).unwrap().satisfies_weil_bounds());
    }

    #[test]
    fn real_polynomial_small_genus() {
        let q = 7;
        let r = |v: &[i64]| v.iter().map(|&x| rat_int(x)).collect::<Vec<_>>();
        let w = WeilData::from_coefficients(q, &[3, 5, -4]).unwrap();
        assert_eq!(w.real_polynomial(), r(&[-(-4 - 2 * q * 3), 5 - 3 * q, -3, 1]));
        let w = WeilData::from_coefficients(q, &[1, 2]).unwrap();
        assert_eq!(w.real_polynomial(), r(&[2 - 2 * q, -1, 1]));
        // E^4 with E supersingular of trace 0 over F_2: (t^2 + 2)^4
        let w = WeilData::from_coefficients(2, &[0, 8, 0, 24]).unwrap();
        assert_eq!(w.real_polynomial(), r(&[0, 0, 0, 0, 1]));
        assert!(w.satisfies_weil_bounds());
    }
}
