//! Finite fields `F_{p^m}` with table-driven arithmetic.
//!
//! Elements are `u32` indices: the element `c_0 + c_1 z + ... + c_{m-1} z^{m-1}`
//! of `F_p[z]/(modulus)` is encoded as `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`.
//! The prime subfield is therefore `0..p` with its usual integer labels.
//!
//! The modulus is always the least monic irreducible polynomial of degree `m`
//! when coefficient vectors are read as base-`p` integers with `c_{m-1}` most
//! significant. Two contexts built for the same `(p, m)` are identical.

use crate::error::{CensusError, Result};

pub type Elem = u32;

/// Largest field this module will tabulate.
pub const MAX_FIELD_SIZE: u64 = 1 << 22;

const ADD_TABLE_LIMIT: u32 = 1024;

#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

/// Splits `q` as `p^m`; `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut r = q;
    let mut m = 0;
    while r.is_multiple_of(p) {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p as u32, m))
}

pub fn is_prime(n: u64) -> bool {
    matches!(prime_power(n), Some((_, 1)))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p, coefficients low to high, no trailing zeros.
fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        for i in 0..=db {
            let idx = dr - db + i;
            r[idx] = (r[idx] + p - (c as u64 * b[i] as u64 % p as u64) as u32) % p;
        }
        trim(&mut r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn digits(mut x: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for t in 0..count {
            let mut g = digits(t as u32, p, d as u32);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Least monic irreducible polynomial of degree `m` over `F_p`.
pub fn least_irreducible(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(m);
    for t in 0..count {
        let mut f = digits(t as u32, p, m);
        if f[0] == 0 {
            continue;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldCtx {
    /// Builds `F_q`; `q` must be a prime power no larger than [`MAX_FIELD_SIZE`].
    pub fn new(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or(CensusError::NotPrimePower(q))?;
        Self::with_pm(p, m)
    }

    pub fn with_pm(p: u32, m: u32) -> Result<Self> {
        let q64 = (p as u64).pow(m);
        if q64 > MAX_FIELD_SIZE {
            return Err(CensusError::Capacity(format!(
                "field of size {q64} exceeds table limit {MAX_FIELD_SIZE}"
            )));
        }
        let q = q64 as u32;
        let modulus = least_irreducible(p, m);

        let slow_mul = |a: u32, b: u32| -> u32 {
            let da = digits(a, p, m);
            let db = digits(b, p, m);
            let mut prod = vec![0u32; 2 * m as usize];
            for (i, &x) in da.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
                }
            }
            let mut r = poly_rem(&prod, &modulus, p);
            r.resize(m as usize, 0);
            undigits(&r, p)
        };
        let slow_pow = |mut b: u32, mut e: u64| -> u32 {
            let mut r = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    r = slow_mul(r, b);
                }
                b = slow_mul(b, b);
                e >>= 1;
            }
            r
        };

        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let generator = if q == 2 {
            1
        } else {
            (2..q)
                .chain(std::iter::once(1))
                .find(|&g| factors.iter().all(|&r| slow_pow(g, order / r) != 1))
                .expect("multiplicative group is cyclic")
        };

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = slow_mul(x, generator);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }

        let neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits(a, p, m).iter().map(|&c| (p - c) % p).collect();
                undigits(&d, p)
            })
            .collect();

        let mut ctx = FieldCtx {
            p,
            m,
            q,
            modulus,
            exp,
            log,
            neg,
            add_table: None,
        };
        if p != 2 && m > 1 && q <= ADD_TABLE_LIMIT {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = ctx.add_digits(a, b);
                }
            }
            ctx.add_table = Some(t);
        }
        Ok(ctx)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }
    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.q
    }

    pub fn nonzero(&self) -> std::ops::Range<Elem> {
        1..self.q
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else if self.m == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if let Some(t) = &self.add_table {
            t[(a * self.q + b) as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Absolute Frobenius `a ↦ a^p`.
    #[inline]
    pub fn frob(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    /// Discrete log with respect to the fixed generator.
    #[inline]
    pub fn log(&self, a: Elem) -> u32 {
        debug_assert!(a != 0);
        self.log[a as usize]
    }

    pub fn generator(&self) -> Elem {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    /// Quadratic character: 0, 1 or -1. In characteristic 2 every element is a square.
    #[inline]
    pub fn chi(&self, a: Elem) -> i32 {
        if a == 0 {
            0
        } else if self.p == 2 || self.log[a as usize].is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Square root, when one exists.
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return Some(0);
        }
        let l = self.log[a as usize];
        let n = self.q - 1;
        if self.p == 2 {
            // squaring is a bijection; n is odd
            let half = ((l as u64 * (n as u64).div_ceil(2)) % n as u64) as usize;
            return Some(self.exp[half]);
        }
        l.is_multiple_of(2).then(|| self.exp[(l / 2) as usize])
    }

    /// Absolute trace to `F_p`, returned as an integer in `0..p`.
    pub fn trace(&self, a: Elem) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.m {
            acc = self.add(acc, x);
            x = self.frob(x);
        }
        debug_assert!(acc < self.p);
        acc
    }

    /// Embedding table `F_self → F_big`, indexed by element.
    pub fn embed_into(&self, big: &FieldCtx) -> Result<Vec<Elem>> {
        if self.p != big.p || !big.m.is_multiple_of(self.m) {
            return Err(CensusError::Usage(format!(
                "F_{} does not embed in F_{}",
                self.q, big.q
            )));
        }
        let root = big
            .elements()
            .find(|&r| {
                let mut acc = 0;
                for &c in self.modulus.iter().rev() {
                    acc = big.add(big.mul(acc, r), c);
                }
                acc == 0
            })
            .ok_or_else(|| CensusError::Consistency("modulus has no root in extension".into()))?;
        let mut powers = Vec::with_capacity(self.m as usize);
        let mut x = 1;
        for _ in 0..self.m {
            powers.push(x);
            x = big.mul(x, root);
        }
        Ok(self
            .elements()
            .map(|a| {
                digits(a, self.p, self.m)
                    .iter()
                    .zip(&powers)
                    .fold(0, |acc, (&c, &pw)| big.add(acc, big.mul(c, pw)))
            })
            .collect())
    }

    /// Elements of the subfield of size `p^d` (in this field's encoding).
    pub fn subfield(&self, d: u32) -> Vec<Elem> {
        let sub_q = (self.p as u64).pow(d);
        self.elements().filter(|&a| self.pow(a, sub_q) == a).collect()
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(0, |a, b| self.add(a, b))
    }

    /// Horner evaluation of a polynomial with coefficients low to high.
    #[inline]
    pub fn eval(&self, coeffs: &[Elem], x: Elem) -> Elem {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}
impl Eq for FieldCtx {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(1024), Some((2, 10)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn least_moduli() {
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(least_irreducible(2, 3), vec![1, 1, 0, 1]);
    }

    #[test]
    fn f4_arithmetic() {
        let f = FieldCtx::new(4).unwrap();
        // z^2 = z + 1
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.inv(2), 3);
        assert_eq!(f.trace(2), 1);
        assert_eq!(f.trace(1), 0);
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let small = FieldCtx::new(9).unwrap();
        let big = FieldCtx::new(729).unwrap();
        let e = small.embed_into(&big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(e[small.mul(a, b) as usize], big.mul(e[a as usize], e[b as usize]));
                assert_eq!(e[small.add(a, b) as usize], big.add(e[a as usize], e[b as usize]));
            }
        }
        assert!(small.embed_into(&FieldCtx::new(27).unwrap()).is_err());
    }

    #[test]
    fn sqrt_and_chi_agree() {
        for q in [3u64, 5, 9, 25, 8] {
            let f = FieldCtx::new(q).unwrap();
            for a in f.elements() {
                match f.sqrt(a) {
                    Some(r) => assert_eq!(f.mul(r, r), a),
                    None => assert_eq!(f.chi(a), -1),
                }
            }
        }
    }
}
