//! Artin–Schreier type curves `L(y) = f(x)` with `L` additive, and the
//! supersingular families built from them.
//!
//! The genus is computed from the elementary abelian cover of the `x`-line:
//! for every root `b ≠ 0` of the adjoint `L^*`, the function `b f` lies in
//! `℘(K) = {w^p - w}` of the function field, so `z^p - z = b f` is a degree-`p`
//! quotient. Each quotient has genus `(p - 1)(d_b - 1)/2` where `d_b` is the
//! degree of `b f` after removing `p`-th powers, and the genus of the curve is
//! the sum over quotients.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::newton::NewtonPolygon;
use crate::algebra::field::{Elem, FieldCtx, MAX_FIELD_SIZE};
use crate::algebra::WeilData;
use crate::error::{CensusError, Result};

/// `Σ c_e y^e = Σ d_e x^e` over `F_{p^m}`; terms are `(exponent, coefficient)`
/// with nonzero coefficients, exponents descending. Coefficients are field
/// elements in the crate's encoding, i.e. residues when `m = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsModel {
    pub p: u32,
    pub m: u32,
    pub lhs: Vec<(u64, Elem)>,
    pub rhs: Vec<(u64, Elem)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Claimed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupersingularModel {
    pub model: AsModel,
    pub claimed_genus: u64,
    /// From the quotient decomposition; `None` when the splitting field of
    /// `L^*` is too large to tabulate.
    pub computed_genus: Option<u64>,
    pub supersingular: Status,
    /// Newton slopes when point counts were feasible.
    pub slopes: Option<String>,
}

fn normalize(terms: &mut Vec<(u64, Elem)>, k: &FieldCtx) {
    terms.sort_by(|a, b| b.0.cmp(&a.0));
    let mut out: Vec<(u64, Elem)> = Vec::new();
    for &(e, c) in terms.iter() {
        match out.last_mut() {
            Some(last) if last.0 == e => last.1 = k.add(last.1, c),
            _ => out.push((e, c)),
        }
    }
    out.retain(|t| t.1 != 0);
    *terms = out;
}

fn parse_side(s: &str, var: char, k: &FieldCtx) -> Result<Vec<(u64, Elem)>> {
    let bad = |why: &str| CensusError::Parse(format!("`{s}`: {why}"));
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && *c != '{' && *c != '}' && *c != '*').collect();
    if cleaned.is_empty() {
        return Err(bad("empty side"));
    }
    let mut terms = Vec::new();
    let mut rest = cleaned.as_str();
    while !rest.is_empty() {
        let (neg, body) = match rest.as_bytes()[0] {
            b'+' => (false, &rest[1..]),
            b'-' => (true, &rest[1..]),
            _ if terms.is_empty() => (false, rest),
            _ => return Err(bad("expected + or -")),
        };
        let end = body[1..].find(['+', '-']).map(|i| i + 1).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let digits_end = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
        let coeff: u64 = if digits_end == 0 {
            1
        } else {
            term[..digits_end].parse().map_err(|_| bad("coefficient"))?
        };
        let tail = &term[digits_end..];
        let exp = if tail.is_empty() {
            0
        } else {
            let mut chars = tail.chars();
            if chars.next() != Some(var) {
                return Err(bad(&format!("unexpected variable in `{term}`")));
            }
            let after = chars.as_str();
            if after.is_empty() {
                1
            } else if let Some(e) = after.strip_prefix('^') {
                e.parse().map_err(|_| bad("exponent"))?
            } else {
                return Err(bad(&format!("malformed term `{term}`")));
            }
        };
        if coeff >= k.q() as u64 {
            return Err(bad(&format!("coefficient {coeff} outside F_{}", k.q())));
        }
        let c = coeff as Elem;
        terms.push((exp, if neg { k.neg(c) } else { c }));
    }
    normalize(&mut terms, k);
    Ok(terms)
}

fn is_power_of(mut e: u64, p: u64) -> bool {
    if e == 0 {
        return false;
    }
    while e.is_multiple_of(p) {
        e /= p;
    }
    e == 1
}

impl AsModel {
    pub fn new(k: &FieldCtx, mut lhs: Vec<(u64, Elem)>, mut rhs: Vec<(u64, Elem)>) -> Result<Self> {
        normalize(&mut lhs, k);
        normalize(&mut rhs, k);
        let model = AsModel {
            p: k.p(),
            m: k.m(),
            lhs,
            rhs,
        };
        model.check()?;
        Ok(model)
    }

    /// Parses `"y^4+y = x^5+x^3"` over `k`; braces, `*` and spaces are ignored.
    pub fn parse(k: &FieldCtx, s: &str) -> Result<Self> {
        let (l, r) = s
            .split_once('=')
            .ok_or_else(|| CensusError::Parse(format!("`{s}`: missing `=`")))?;
        Self::new(k, parse_side(l, 'y', k)?, parse_side(r, 'x', k)?)
    }

    fn check(&self) -> Result<()> {
        let p = self.p as u64;
        if self.lhs.iter().any(|&(e, _)| !is_power_of(e, p)) {
            return Err(CensusError::Unsupported("left side must be additive in y".into()));
        }
        if self.lhs.last().map(|t| t.0) != Some(1) {
            return Err(CensusError::Unsupported("left side must contain a linear term".into()));
        }
        if self.lhs.len() < 2 {
            return Err(CensusError::Unsupported("left side must have degree at least p".into()));
        }
        if self.rhs.first().is_none_or(|t| t.0 == 0) {
            return Err(CensusError::Unsupported("right side must be non-constant".into()));
        }
        Ok(())
    }

    pub fn field(&self) -> Result<FieldCtx> {
        FieldCtx::with_pm(self.p, self.m)
    }

    /// `h` with `deg L = p^h`.
    pub fn height(&self) -> u32 {
        let mut e = self.lhs[0].0;
        let mut h = 0;
        while e > 1 {
            e /= self.p as u64;
            h += 1;
        }
        h
    }

    /// Smallest `n` with `m | n` such that `L^*` splits over `F_{p^n}`, with
    /// the field and the embedding of the coefficient field.
    fn adjoint_roots(&self, k: &FieldCtx) -> Result<Option<(FieldCtx, Vec<Elem>, Vec<Elem>)>> {
        let h = self.height();
        let want = (self.p as u64).pow(h);
        let mut n = self.m;
        while (self.p as u64).pow(n) <= MAX_FIELD_SIZE {
            let big = FieldCtx::with_pm(self.p, n)?;
            let embed = k.embed_into(&big)?;
            // L^*(b)^{p^h} = Σ_i (c_i b)^{p^{h - i}}
            let terms: Vec<(u64, Elem)> = self
                .lhs
                .iter()
                .map(|&(e, c)| ((self.p as u64).pow(h) / e, embed[c as usize]))
                .collect();
            let roots: Vec<Elem> = big
                .elements()
                .filter(|&b| big.sum(terms.iter().map(|&(pe, c)| big.pow(big.mul(c, b), pe))) == 0)
                .collect();
            if roots.len() as u64 == want {
                return Ok(Some((big, embed, roots)));
            }
            n += self.m;
        }
        Ok(None)
    }

    /// Genus from the quotient decomposition; `None` if out of reach.
    pub fn genus(&self) -> Result<Option<u64>> {
        let k = self.field()?;
        let Some((big, embed, roots)) = self.adjoint_roots(&k)? else {
            return Ok(None);
        };
        let p = self.p as u64;
        let deg = self.rhs[0].0 as usize;
        let root_exp = (self.p as u64).pow(big.m() - 1);
        let mut total = 0u64;
        for &b in roots.iter().filter(|&&b| b != 0) {
            let mut f = vec![0 as Elem; deg + 1];
            for &(e, c) in &self.rhs {
                f[e as usize] = big.mul(b, embed[c as usize]);
            }
            for e in (1..=deg).rev() {
                if f[e] != 0 && (e as u64).is_multiple_of(p) {
                    let c = big.pow(f[e], root_exp);
                    f[e] = 0;
                    let t = e / p as usize;
                    f[t] = big.add(f[t], c);
                }
            }
            let d = (1..=deg).rev().find(|&e| f[e] != 0).ok_or_else(|| {
                CensusError::Unsupported(format!("{self} is not geometrically irreducible"))
            })? as u64;
            total += d - 1;
        }
        // (p - 1) roots per quotient, each quotient of genus (p - 1)(d - 1)/2
        Ok(Some(total / 2))
    }

    /// `N_1..N_g` of the smooth complete model over `F_q`. There is a single
    /// point above `x = ∞`.
    pub fn point_counts(&self, g: usize) -> Result<Vec<i64>> {
        let k = self.field()?;
        let mut out = Vec::new();
        for d in 1..=g as u32 {
            if (self.p as u64).pow(self.m * d) > 1 << 20 {
                return Err(CensusError::Capacity(format!("point count over F_{}^{}", self.p, self.m * d)));
            }
            let big = FieldCtx::with_pm(self.p, self.m * d)?;
            let embed = k.embed_into(&big)?;
            let lhs: Vec<(u64, Elem)> = self.lhs.iter().map(|&(e, c)| (e, embed[c as usize])).collect();
            let mut fiber = vec![0i64; big.q() as usize];
            for y in big.elements() {
                let v = big.sum(lhs.iter().map(|&(e, c)| big.mul(c, big.pow(y, e))));
                fiber[v as usize] += 1;
            }
            let rhs: Vec<(u64, Elem)> = self.rhs.iter().map(|&(e, c)| (e, embed[c as usize])).collect();
            let mut n = 1;
            for x in big.elements() {
                let v = big.sum(rhs.iter().map(|&(e, c)| big.mul(c, big.pow(x, e))));
                n += fiber[v as usize];
            }
            out.push(n);
        }
        Ok(out)
    }
}

fn fmt_side(f: &mut fmt::Formatter<'_>, terms: &[(u64, Elem)], var: char) -> fmt::Result {
    for (i, &(e, c)) in terms.iter().enumerate() {
        if i > 0 {
            write!(f, "+")?;
        }
        match (c, e) {
            (c, 0) => write!(f, "{c}")?,
            (1, 1) => write!(f, "{var}")?,
            (1, e) => write!(f, "{var}^{e}")?,
            (c, 1) => write!(f, "{c}{var}")?,
            (c, e) => write!(f, "{c}{var}^{e}")?,
        }
    }
    Ok(())
}

impl fmt::Display for AsModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_side(f, &self.lhs, 'y')?;
        write!(f, " = ")?;
        fmt_side(f, &self.rhs, 'x')
    }
}

/// Largest claimed genus whose supersingularity is checked by point counts.
pub const VERIFY_MAX_GENUS: u64 = 4;

fn finish(model: AsModel, claimed: u64) -> Result<SupersingularModel> {
    let computed = model.genus()?;
    if let Some(g) = computed {
        if g != claimed {
            return Err(CensusError::Consistency(format!("{model}: genus {g}, claimed {claimed}")));
        }
    }
    let (supersingular, slopes) = if claimed <= VERIFY_MAX_GENUS {
        let q = (model.p as i64).pow(model.m);
        let w = WeilData::from_counts(q, &model.point_counts(claimed as usize)?)?;
        let np = NewtonPolygon::from_weil(&w, model.p);
        if !np.is_supersingular() {
            return Err(CensusError::Consistency(format!("{model} has Newton slopes {np}")));
        }
        (Status::Verified, Some(np.to_string()))
    } else {
        (Status::Claimed, None)
    };
    Ok(SupersingularModel {
        model,
        claimed_genus: claimed,
        computed_genus: computed,
        supersingular,
        slopes,
    })
}

/// `y^2 + y = x R(x)` with `R = Σ_{i ≤ h} a_i x^{2^i}`, `a_h ≠ 0`, `h ≥ 1`:
/// genus `2^{h-1}`.
pub fn build_ss_char2(k: &FieldCtx, r: &[Elem]) -> Result<SupersingularModel> {
    if k.p() != 2 {
        return Err(CensusError::Usage("characteristic 2 required".into()));
    }
    if r.len() < 2 || *r.last().unwrap() == 0 {
        return Err(CensusError::Usage("R needs degree 2^h with h >= 1 and nonzero top coefficient".into()));
    }
    let h = r.len() as u32 - 1;
    let rhs = r.iter().enumerate().map(|(i, &a)| ((1u64 << i) + 1, a)).collect();
    let model = AsModel::new(k, vec![(2, 1), (1, 1)], rhs)?;
    finish(model, 1 << (h - 1))
}

/// `y^p - y = x R(x)` with `R = Σ_{i ≤ h} a_i x^{p^i}` over odd `p`: genus `p^h (p - 1)/2`.
pub fn build_ss_oddp(k: &FieldCtx, r: &[Elem]) -> Result<SupersingularModel> {
    let p = k.p() as u64;
    if p == 2 {
        return Err(CensusError::Usage("odd characteristic required".into()));
    }
    if r.is_empty() || *r.last().unwrap() == 0 {
        return Err(CensusError::Usage("R needs a nonzero top coefficient".into()));
    }
    let h = r.len() as u32 - 1;
    let rhs = r.iter().enumerate().map(|(i, &a)| (p.pow(i as u32) + 1, a)).collect();
    let model = AsModel::new(k, vec![(p, 1), (1, k.neg(1))], rhs)?;
    finish(model, p.pow(h) * (p - 1) / 2)
}

/// `y^{p^m} - y = x^d` over `F_p` with `d | p^h + 1`: genus `(p^m - 1)(d - 1)/2`.
pub fn quotient_curve(p: u32, m: u32, d: u64, h: u32) -> Result<SupersingularModel> {
    let k = FieldCtx::new(p as u64)?;
    let pp = p as u64;
    if m == 0 || d < 2 || !(pp.pow(h) + 1).is_multiple_of(d) {
        return Err(CensusError::Usage(format!("need m >= 1 and 2 <= d | {p}^{h} + 1, got m = {m}, d = {d}")));
    }
    let model = AsModel::new(&k, vec![(pp.pow(m), 1), (1, k.neg(1))], vec![(d, 1)])?;
    finish(model, (pp.pow(m) - 1) * (d - 1) / 2)
}

/// A model given as text with its claimed genus over `F_p`.
pub fn from_equation(p: u32, equation: &str, claimed: u64) -> Result<SupersingularModel> {
    let k = FieldCtx::new(p as u64)?;
    finish(AsModel::parse(&k, equation)?, claimed)
}

/// Two fibre-product examples of large genus over `F_2` and `F_3`.
pub fn large_genus_examples() -> Result<Vec<SupersingularModel>> {
    Ok(vec![
        from_equation(2, "y^256+y^64+y^4+y = x^68+x^20+x^17+x^12+x^10", 2021)?,
        from_equation(3, "y^27+y^9+y^3+y = x^246+x^84+x^82", 999)?,
    ])
}
