//! Curve models with Hasse–Witt matrices and point counts.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::field::{Elem, FieldCtx};
use crate::algebra::linalg::{cartier_stable_rank_fq, rank_fq, FqMatrix};
use crate::algebra::{poly, WeilData};
use crate::census::g1::{count_points as count_points_g1, embed_model, Model};
use crate::error::{CensusError, Result};
use crate::genus2::char2::{cartier_matrix_char2, count_points_char2, is_smooth_char2, p_rank_char2};

/// Exponents `(i, j, k)` of `x^i y^j z^k`, `i + j + k = 4`, in the order used
/// for quartic coefficient vectors.
pub const QUARTIC_MONOMIALS: [(u32, u32, u32); 15] = [
    (4, 0, 0),
    (3, 1, 0),
    (3, 0, 1),
    (2, 2, 0),
    (2, 1, 1),
    (2, 0, 2),
    (1, 3, 0),
    (1, 2, 1),
    (1, 1, 2),
    (1, 0, 3),
    (0, 4, 0),
    (0, 3, 1),
    (0, 2, 2),
    (0, 1, 3),
    (0, 0, 4),
];

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CurveModel {
    /// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`, coefficients `[a1, a2, a3, a4, a6]`.
    Elliptic { a: Vec<Elem> },
    /// `y^2 + h y = f` with `h` a binary form of degree `g + 1` (empty for
    /// `h = 0`) and `f` one of degree `2g + 2`, low coefficients first.
    Hyperelliptic { genus: usize, h: Vec<Elem>, f: Vec<Elem> },
    /// Ternary quartic, coefficients in [`QUARTIC_MONOMIALS`] order.
    PlaneQuartic { coeffs: Vec<Elem> },
}

/// Raw Cartier–Manin coefficients; the operator acts `p^{-1}`-linearly, so
/// the stable rank is that of `A^{(p^{g-1})} ... A^{(p)} A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseWittMatrix {
    pub matrix: FqMatrix,
}

impl HasseWittMatrix {
    pub fn genus(&self) -> usize {
        self.matrix.len()
    }

    pub fn rank(&self, k: &FieldCtx) -> usize {
        rank_fq(k, &self.matrix)
    }

    pub fn stable_rank(&self, k: &FieldCtx) -> usize {
        cartier_stable_rank_fq(k, &self.matrix)
    }

    pub fn a_number(&self, k: &FieldCtx) -> usize {
        self.genus() - self.rank(k)
    }
}

impl CurveModel {
    pub fn genus(&self) -> usize {
        match self {
            CurveModel::Elliptic { .. } => 1,
            CurveModel::Hyperelliptic { genus, .. } => *genus,
            CurveModel::PlaneQuartic { .. } => 3,
        }
    }

    pub fn validate(&self, k: &FieldCtx) -> Result<()> {
        let in_field = |v: &[Elem]| v.iter().all(|&c| c < k.q());
        let ok = match self {
            CurveModel::Elliptic { a } => a.len() == 5 && in_field(a),
            CurveModel::Hyperelliptic { genus, h, f } => {
                *genus >= 1
                    && f.len() == 2 * genus + 3
                    && (h.is_empty() || h.len() == genus + 2)
                    && in_field(h)
                    && in_field(f)
                    && (k.p() != 2 || !h.is_empty())
            }
            CurveModel::PlaneQuartic { coeffs } => coeffs.len() == 15 && in_field(coeffs),
        };
        if ok {
            Ok(())
        } else {
            Err(CensusError::Unsupported(format!("malformed model over F_{}: {self:?}", k.q())))
        }
    }
}

/// `y^2 = f + h^2/4` in odd characteristic.
fn odd_hyperelliptic_rhs(k: &FieldCtx, genus: usize, h: &[Elem], f: &[Elem]) -> Vec<Elem> {
    if h.is_empty() {
        return f.to_vec();
    }
    let quarter = k.inv(k.from_int(4));
    let mut out = poly::add(k, f, &poly::scale(k, &poly::mul(k, h, h), quarter));
    out.resize(2 * genus + 3, 0);
    out
}

/// Coefficient of `x^{ip - j}` in `f^{(p-1)/2}`, `1 ≤ i, j ≤ g`.
pub fn cartier_manin_odd(k: &FieldCtx, f: &[Elem], g: usize) -> FqMatrix {
    let p = k.p() as usize;
    let mut pw = vec![1];
    for _ in 0..(p - 1) / 2 {
        pw = poly::mul(k, &pw, f);
    }
    (1..=g)
        .map(|i| {
            (1..=g)
                .map(|j| {
                    let e = i * p - j;
                    pw.get(e).copied().unwrap_or(0)
                })
                .collect()
        })
        .collect()
}

/// Hasse invariant of a Weierstrass model.
pub fn hasse_invariant(k: &FieldCtx, a: &[Elem]) -> Elem {
    let (a1, a2, a3, a4, a6) = (a[0], a[1], a[2], a[3], a[4]);
    if k.p() == 2 {
        return a1;
    }
    let c = |n: i64| k.from_int(n);
    let b2 = k.add(k.mul(a1, a1), k.mul(c(4), a2));
    let b4 = k.add(k.mul(a1, a3), k.mul(c(2), a4));
    let b6 = k.add(k.mul(a3, a3), k.mul(c(4), a6));
    let f = [k.div(b6, c(4)), k.div(b4, c(2)), k.div(b2, c(4)), 1];
    cartier_manin_odd(k, &f, 1)[0][0]
}

type Mono = (u32, u32, u32);

fn quartic_power(k: &FieldCtx, coeffs: &[Elem], e: usize) -> HashMap<Mono, Elem> {
    let mut acc: HashMap<Mono, Elem> = HashMap::from([((0, 0, 0), 1)]);
    for _ in 0..e {
        let mut next: HashMap<Mono, Elem> = HashMap::new();
        for (&(a, b, c), &u) in &acc {
            for (&(i, j, l), &v) in QUARTIC_MONOMIALS.iter().zip(coeffs) {
                if v == 0 {
                    continue;
                }
                let slot = next.entry((a + i, b + j, c + l)).or_insert(0);
                *slot = k.add(*slot, k.mul(u, v));
            }
        }
        acc = next;
    }
    acc
}

/// Cartier–Manin matrix of a smooth plane quartic `F = 0`: the coefficient of
/// `x^{p u_1 - v_1} y^{p u_2 - v_2} z^{p u_3 - v_3}` in `F^{p-1}`, with `u, v`
/// running over `(2,1,1), (1,2,1), (1,1,2)`.
pub fn cartier_manin_quartic(k: &FieldCtx, coeffs: &[Elem]) -> FqMatrix {
    let p = k.p();
    let pw = quartic_power(k, coeffs, p as usize - 1);
    let basis: [Mono; 3] = [(2, 1, 1), (1, 2, 1), (1, 1, 2)];
    basis
        .iter()
        .map(|u| {
            basis
                .iter()
                .map(|v| {
                    let e = (p * u.0 - v.0, p * u.1 - v.1, p * u.2 - v.2);
                    pw.get(&e).copied().unwrap_or(0)
                })
                .collect()
        })
        .collect()
}

pub fn hasse_witt(k: &FieldCtx, model: &CurveModel) -> Result<HasseWittMatrix> {
    model.validate(k)?;
    let matrix = match model {
        CurveModel::Elliptic { a } => vec![vec![hasse_invariant(k, a)]],
        CurveModel::Hyperelliptic { genus, h, f } => {
            if k.p() == 2 {
                cartier_matrix_char2(h, *genus)
            } else {
                cartier_manin_odd(k, &odd_hyperelliptic_rhs(k, *genus, h, f), *genus)
            }
        }
        CurveModel::PlaneQuartic { coeffs } => cartier_manin_quartic(k, coeffs),
    };
    Ok(HasseWittMatrix { matrix })
}

/// `p`-rank read off the model when a closed form exists: the number of
/// distinct zeros of `h` minus one for `y^2 + h y = f` in characteristic 2.
pub fn p_rank_from_model(k: &FieldCtx, model: &CurveModel) -> Option<usize> {
    match model {
        CurveModel::Hyperelliptic { genus, h, .. } if k.p() == 2 => Some(p_rank_char2(k, h, *genus)),
        _ => None,
    }
}

fn quartic_eval(k: &FieldCtx, coeffs: &[Elem], x: Elem, y: Elem, z: Elem) -> Elem {
    QUARTIC_MONOMIALS.iter().zip(coeffs).fold(0, |acc, (&(i, j, l), &c)| {
        if c == 0 {
            acc
        } else {
            let m = k.mul(k.mul(k.pow(x, i as u64), k.pow(y, j as u64)), k.pow(z, l as u64));
            k.add(acc, k.mul(c, m))
        }
    })
}

/// Points of `P^2(F)` normalized with the last nonzero coordinate equal to 1.
pub fn projective_plane(k: &FieldCtx) -> Vec<(Elem, Elem, Elem)> {
    let mut pts = Vec::with_capacity((k.q() * k.q() + k.q() + 1) as usize);
    for x in k.elements() {
        for y in k.elements() {
            pts.push((x, y, 1));
        }
    }
    for x in k.elements() {
        pts.push((x, 1, 0));
    }
    pts.push((1, 0, 0));
    pts
}

pub const MAX_COUNT_FIELD: u64 = 1 << 16;

/// `N_1..N_g` over `F_q, ..., F_{q^g}`. The model is assumed smooth.
pub fn point_counts(k: &FieldCtx, model: &CurveModel) -> Result<Vec<i64>> {
    model.validate(k)?;
    let g = model.genus();
    let mut out = Vec::with_capacity(g);
    for d in 1..=g as u32 {
        let big_q = (k.q() as u64).pow(d);
        if big_q > MAX_COUNT_FIELD {
            return Err(CensusError::Capacity(format!("point count over F_{big_q}")));
        }
        let big = FieldCtx::with_pm(k.p(), k.m() * d)?;
        let embed = k.embed_into(&big)?;
        let e = |v: &[Elem]| -> Vec<Elem> { v.iter().map(|&c| embed[c as usize]).collect() };
        let n = match model {
            CurveModel::Elliptic { a } => {
                let m: Model = [a[0], a[1], a[2], a[3], a[4]];
                count_points_g1(&big, &embed_model(&m, &embed))
            }
            CurveModel::Hyperelliptic { genus, h, f } => {
                if k.p() == 2 {
                    count_points_char2(&big, &embed, h, f, *genus)
                } else {
                    let rhs = e(&odd_hyperelliptic_rhs(k, *genus, h, f));
                    let top = rhs[2 * genus + 2];
                    let mut n = if top == 0 { 1 } else { 1 + big.chi(top) as i64 };
                    for x in big.elements() {
                        n += 1 + big.chi(big.eval(&rhs, x)) as i64;
                    }
                    n
                }
            }
            CurveModel::PlaneQuartic { coeffs } => {
                let c = e(coeffs);
                projective_plane(&big)
                    .into_iter()
                    .filter(|&(x, y, z)| quartic_eval(&big, &c, x, y, z) == 0)
                    .count() as i64
            }
        };
        out.push(n);
    }
    Ok(out)
}

pub fn weil_data(k: &FieldCtx, model: &CurveModel) -> Result<WeilData> {
    WeilData::from_counts(k.q() as i64, &point_counts(k, model)?)
}

/// Partial derivatives of a ternary quartic, as maps on the monomial list.
fn quartic_partials(k: &FieldCtx, coeffs: &[Elem]) -> [Vec<(Mono, Elem)>; 3] {
    let mut out: [Vec<(Mono, Elem)>; 3] = Default::default();
    for (&(i, j, l), &c) in QUARTIC_MONOMIALS.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        let terms = [(i, (i.saturating_sub(1), j, l)), (j, (i, j.saturating_sub(1), l)), (l, (i, j, l.saturating_sub(1)))];
        for (slot, (e, mono)) in terms.into_iter().enumerate() {
            let v = k.mul(c, k.from_int(e as i64));
            if e > 0 && v != 0 {
                out[slot].push((mono, v));
            }
        }
    }
    out
}

fn eval_terms(k: &FieldCtx, terms: &[(Mono, Elem)], x: Elem, y: Elem, z: Elem) -> Elem {
    terms.iter().fold(0, |acc, &((i, j, l), c)| {
        let m = k.mul(k.mul(k.pow(x, i as u64), k.pow(y, j as u64)), k.pow(z, l as u64));
        k.add(acc, k.mul(c, m))
    })
}

/// Smoothness of a plane quartic by searching for singular points over
/// `F_{q^d}`, `d ≤ 6`. A reduced quartic has at most six singular points and a
/// non-reduced one is singular along a curve with rational points, so every
/// singular quartic has a singular point of degree at most 6.
pub fn quartic_is_smooth(k: &FieldCtx, coeffs: &[Elem]) -> Result<bool> {
    if (k.q() as u64).pow(6) > 1 << 12 {
        return Err(CensusError::Capacity(format!("quartic smoothness search over F_{}", k.q())));
    }
    for d in [4u32, 5, 6] {
        let big = FieldCtx::with_pm(k.p(), k.m() * d)?;
        let embed = k.embed_into(&big)?;
        let c: Vec<Elem> = coeffs.iter().map(|&v| embed[v as usize]).collect();
        let parts = quartic_partials(&big, &c);
        for (x, y, z) in projective_plane(&big) {
            if quartic_eval(&big, &c, x, y, z) == 0 && parts.iter().all(|t| eval_terms(&big, t, x, y, z) == 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_smooth(k: &FieldCtx, model: &CurveModel) -> Result<bool> {
    model.validate(k)?;
    Ok(match model {
        CurveModel::Elliptic { a } => {
            let m: Model = [a[0], a[1], a[2], a[3], a[4]];
            crate::census::g1::invariants(k, &m).1.is_some()
        }
        CurveModel::Hyperelliptic { genus, h, f } => {
            if k.p() == 2 {
                is_smooth_char2(k, h, f, *genus)
            } else {
                let rhs = odd_hyperelliptic_rhs(k, *genus, h, f);
                crate::genus2::forms::binary_squarefree(k, &rhs)
            }
        }
        CurveModel::PlaneQuartic { coeffs } => quartic_is_smooth(k, coeffs)?,
    })
}
