//! Newton polygons of Weil polynomials.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{fmt_rat, rat, Rat, WeilData};

/// Slopes in non-decreasing order, `2g` of them, normalized so that `v(q) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NewtonPolygon {
    slopes: Vec<Rat>,
}

fn valuation(mut n: i128, p: i128) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Some(v)
}

impl NewtonPolygon {
    /// Lower convex hull of `(i, v_p(c_i))` where `c_i` is the coefficient of
    /// `t^{2g-i}` in the characteristic polynomial of Frobenius.
    pub fn from_weil(w: &WeilData, p: u32) -> Self {
        let q = w.q();
        let mut m = 0i64;
        let mut x = q;
        while x > 1 {
            x /= p as i64;
            m += 1;
        }
        let pts: Vec<(i64, Rat)> = w
            .charpoly()
            .iter()
            .enumerate()
            .filter_map(|(i, &c)| valuation(c, p as i128).map(|v| (i as i64, rat(v as i64, m))))
            .collect();
        let mut slopes = Vec::new();
        let mut cur = 0;
        while cur + 1 < pts.len() {
            // steepest-descent: smallest slope to any later point, farthest on ties
            let (x0, y0) = &pts[cur];
            let mut best = cur + 1;
            let mut best_slope = (&pts[best].1 - y0) / Rat::from_integer((pts[best].0 - x0).into());
            for (j, (xj, yj)) in pts.iter().enumerate().skip(cur + 2) {
                let s = (yj - y0) / Rat::from_integer((xj - x0).into());
                if s <= best_slope {
                    best = j;
                    best_slope = s;
                }
            }
            for _ in 0..(pts[best].0 - x0) {
                slopes.push(best_slope.clone());
            }
            cur = best;
        }
        NewtonPolygon { slopes }
    }

    pub fn from_slopes(mut slopes: Vec<Rat>) -> Self {
        slopes.sort();
        NewtonPolygon { slopes }
    }

    pub fn slopes(&self) -> &[Rat] {
        &self.slopes
    }

    /// Multiplicity of slope 0, the `p`-rank.
    pub fn p_rank(&self) -> usize {
        self.slopes.iter().filter(|s| s.is_zero()).count()
    }

    pub fn is_supersingular(&self) -> bool {
        let half = rat(1, 2);
        self.slopes.iter().all(|s| *s == half)
    }

    pub fn is_ordinary(&self) -> bool {
        self.slopes.iter().all(|s| s.is_zero() || s.is_one())
    }

    /// Slope `s` occurs as often as `1 - s`.
    pub fn is_symmetric(&self) -> bool {
        let n = self.slopes.len();
        (0..n).all(|i| &self.slopes[i] + &self.slopes[n - 1 - i] == Rat::one())
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.slopes.iter().map(fmt_rat).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elliptic_polygons() {
        let ss = NewtonPolygon::from_weil(&WeilData::from_coefficients(5, &[0]).unwrap(), 5);
        assert_eq!(ss.slopes(), &[rat(1, 2), rat(1, 2)]);
        let ord = NewtonPolygon::from_weil(&WeilData::from_coefficients(5, &[1]).unwrap(), 5);
        assert_eq!(ord.slopes(), &[rat(0, 1), rat(1, 1)]);
        // over F_4, trace 2 is supersingular
        let ss4 = NewtonPolygon::from_weil(&WeilData::from_coefficients(4, &[2]).unwrap(), 2);
        assert!(ss4.is_supersingular());
    }

    #[test]
    fn product_of_ordinary_and_supersingular() {
        // (t^2 - t + 3)(t^2 + 3) over F_3
        let w = WeilData::from_coefficients(3, &[1, 6]).unwrap();
        let np = NewtonPolygon::from_weil(&w, 3);
        assert_eq!(np.slopes(), &[rat(0, 1), rat(1, 2), rat(1, 2), rat(1, 1)]);
        assert!(np.is_symmetric());
        assert_eq!(np.p_rank(), 1);
    }
}
