//! Known and conjectured upper bounds on the `a`-number.

use serde::{Deserialize, Serialize};

use crate::algebra::{rat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// Superspecial (`a = g`) forces `g ≤ p(p - 1)/2`.
    Ekedahl,
    /// `a = g - 1` forces `g ≤ p + p(p - 1)/2`.
    Zhou,
    /// `a ≤ (p - 1) g / p + (p - 1)/2`, conjectural.
    Conjecture,
    /// In characteristic 2, `a ≤ (g + 1)/2`.
    StohrVoloch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub bound: Bound,
    pub genus: u64,
    pub a_number: u64,
    pub p: u64,
}

/// Every bound the triple `(g, a, p)` violates.
pub fn bound_check(genus: u64, a_number: u64, p: u64) -> Vec<Violation> {
    let (g, a) = (genus, a_number);
    let mut out = Vec::new();
    let mut flag = |bound| {
        out.push(Violation {
            bound,
            genus,
            a_number,
            p,
        })
    };
    if g >= 1 && a == g && g > p * (p - 1) / 2 {
        flag(Bound::Ekedahl);
    }
    if g >= 1 && a + 1 == g && g > p + p * (p - 1) / 2 {
        flag(Bound::Zhou);
    }
    let (gi, ai, pi) = (g as i64, a as i64, p as i64);
    if Rat::from_integer(ai.into()) > rat((pi - 1) * gi, pi) + rat(pi - 1, 2) {
        flag(Bound::Conjecture);
    }
    if p == 2 && Rat::from_integer(ai.into()) > rat(gi + 1, 2) {
        flag(Bound::StohrVoloch);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_and_hypothetical_cases() {
        assert!(bound_check(1, 1, 2).is_empty());
        assert!(bound_check(7, 0, 3).is_empty());
        let v = bound_check(3, 3, 2);
        assert!(v.iter().any(|x| x.bound == Bound::Ekedahl));
        assert!(v.iter().any(|x| x.bound == Bound::StohrVoloch));
        assert!(bound_check(3, 3, 3).is_empty());
        assert!(bound_check(7, 6, 3).iter().any(|x| x.bound == Bound::Zhou));
    }
}
