//! Dense univariate polynomials over a [`FieldCtx`], coefficients low to high.

use super::field::{Elem, FieldCtx};

pub type Poly = Vec<Elem>;

pub fn trim(f: &mut Poly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub fn trimmed(f: &[Elem]) -> Poly {
    let mut v = f.to_vec();
    trim(&mut v);
    v
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(f: &[Elem]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn add(k: &FieldCtx, a: &[Elem], b: &[Elem]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| k.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(&mut out);
    out
}

pub fn sub(k: &FieldCtx, a: &[Elem], b: &[Elem]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| k.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(&mut out);
    out
}

pub fn scale(k: &FieldCtx, a: &[Elem], c: Elem) -> Poly {
    let mut out: Poly = a.iter().map(|&x| k.mul(x, c)).collect();
    trim(&mut out);
    out
}

pub fn mul(k: &FieldCtx, a: &[Elem], b: &[Elem]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; panics if `b` is zero.
pub fn divrem(k: &FieldCtx, a: &[Elem], b: &[Elem]) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = trimmed(a);
    let inv = k.inv(b[db]);
    let mut quo = vec![0; r.len().saturating_sub(db)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = k.mul(r[dr], inv);
        quo[dr - db] = c;
        for i in 0..=db {
            r[dr - db + i] = k.sub(r[dr - db + i], k.mul(c, b[i]));
        }
        trim(&mut r);
    }
    trim(&mut quo);
    (quo, r)
}

pub fn rem(k: &FieldCtx, a: &[Elem], b: &[Elem]) -> Poly {
    divrem(k, a, b).1
}

pub fn monic(k: &FieldCtx, a: &[Elem]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(k, &a[..=d], k.inv(a[d])),
    }
}

pub fn gcd(k: &FieldCtx, a: &[Elem], b: &[Elem]) -> Poly {
    let mut x = trimmed(a);
    let mut y = trimmed(b);
    while !y.is_empty() {
        let r = rem(k, &x, &y);
        x = y;
        y = r;
    }
    monic(k, &x)
}

pub fn derivative(k: &FieldCtx, a: &[Elem]) -> Poly {
    let mut out: Poly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| k.mul(k.from_int(i as i64), c))
        .collect();
    trim(&mut out);
    out
}

/// True when `f` has no repeated factor over the algebraic closure.
pub fn is_squarefree(k: &FieldCtx, f: &[Elem]) -> bool {
    let f = trimmed(f);
    if f.is_empty() {
        return false;
    }
    let d = derivative(k, &f);
    if d.is_empty() {
        return degree(&f) == Some(0);
    }
    degree(&gcd(k, &f, &d)) == Some(0)
}

pub fn eval(k: &FieldCtx, f: &[Elem], x: Elem) -> Elem {
    k.eval(f, x)
}

/// Number of distinct roots in `F_q`.
pub fn distinct_roots(k: &FieldCtx, f: &[Elem]) -> usize {
    k.elements().filter(|&x| k.eval(f, x) == 0).count()
}

/// Coefficientwise `p`-th root of a polynomial whose derivative vanishes.
fn pth_root(k: &FieldCtx, f: &[Elem]) -> Poly {
    let p = k.p() as usize;
    let e = (k.q() / k.p()) as u64;
    let mut out: Poly = f.iter().step_by(p).map(|&c| k.pow(c, e)).collect();
    trim(&mut out);
    out
}

/// Product of the distinct monic irreducible factors of `f`.
pub fn radical(k: &FieldCtx, f: &[Elem]) -> Poly {
    let f = monic(k, f);
    if degree(&f).is_none_or(|d| d == 0) {
        return f;
    }
    let d = derivative(k, &f);
    if d.is_empty() {
        return radical(k, &pth_root(k, &f));
    }
    let c = gcd(k, &f, &d);
    let w = divrem(k, &f, &c).0;
    // strip the factors of w from c; what remains is a p-th power
    let mut z = c;
    loop {
        let y = gcd(k, &z, &w);
        if degree(&y) == Some(0) {
            break;
        }
        z = divrem(k, &z, &y).0;
    }
    mul(k, &w, &radical(k, &z))
}

/// Number of distinct roots over the algebraic closure.
pub fn distinct_root_count(k: &FieldCtx, f: &[Elem]) -> usize {
    degree(&radical(k, f)).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let k = FieldCtx::new(7).unwrap();
        let a = vec![3, 0, 5, 1, 6];
        let b = vec![2, 1, 1];
        let (qq, r) = divrem(&k, &a, &b);
        assert_eq!(add(&k, &mul(&k, &qq, &b), &r), trimmed(&a));
        assert!(degree(&r).is_none_or(|d| d < 2));
    }

    #[test]
    fn squarefree_detection() {
        let k = FieldCtx::new(5).unwrap();
        // (x-1)^2 (x+2)
        let f = mul(&k, &mul(&k, &[4, 1], &[4, 1]), &[2, 1]);
        assert!(!is_squarefree(&k, &f));
        assert!(is_squarefree(&k, &mul(&k, &[4, 1], &[2, 1])));
        // x^5 - x is squarefree, x^5 is not
        assert!(is_squarefree(&k, &[0, 4, 0, 0, 0, 1]));
        assert!(!is_squarefree(&k, &[0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn radicals_in_small_characteristic() {
        let k = FieldCtx::new(2).unwrap();
        // (x+1)^2 x over F_2: two distinct roots although the derivative is (x+1)^2
        let f = mul(&k, &mul(&k, &[1, 1], &[1, 1]), &[0, 1]);
        assert_eq!(distinct_root_count(&k, &f), 2);
        // x^4 + 1 = (x+1)^4
        assert_eq!(distinct_root_count(&k, &[1, 0, 0, 0, 1]), 1);
        let k = FieldCtx::new(4).unwrap();
        // x^3 + 1 splits into three distinct linear factors over F_4
        assert_eq!(distinct_root_count(&k, &[1, 0, 0, 1]), 3);
        let k = FieldCtx::new(3).unwrap();
        // (x^3 - x)^3 (x^2 + 1)^2: five distinct roots
        let a = [0, 2, 0, 1];
        let a3 = mul(&k, &mul(&k, &a, &a), &a);
        let b = [1, 0, 1];
        assert_eq!(distinct_root_count(&k, &mul(&k, &a3, &mul(&k, &b, &b))), 5);
    }
}
