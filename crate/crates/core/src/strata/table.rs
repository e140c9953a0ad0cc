//! Mass tables keyed by Weil polynomial and `p`-adic invariants.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::bounds::bound_check;
use super::newton::NewtonPolygon;
use crate::algebra::field::Elem;
use crate::algebra::{Rat, WeilData};
use crate::error::{CensusError, Result};
use crate::genus2::SexticOrbitMass;

/// Invariants of one curve; the census is a mass per key.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StrataKey {
    /// `a_1..a_g` of the Weil polynomial.
    pub weil: Vec<i64>,
    pub p_rank: usize,
    pub a_number: usize,
    /// Rank of the `g`-th iterate of the Cartier operator.
    pub stable_rank: usize,
}

/// A curve model standing for a key: `(h, f)` for `y^2 + h y = f`, or the
/// coefficient vector of a plane quartic with `h` empty.
pub type Representative = (Vec<Elem>, Vec<Elem>);

#[derive(Debug, Clone, PartialEq)]
pub struct StrataCensus {
    pub p: u32,
    pub q: u32,
    pub genus: usize,
    pub table: BTreeMap<StrataKey, Rat>,
    pub reps: BTreeMap<StrataKey, Representative>,
}

impl StrataCensus {
    pub fn total(&self) -> Rat {
        self.table.values().sum()
    }

    pub fn mass_where<F: Fn(&StrataKey) -> bool>(&self, pred: F) -> Rat {
        self.table
            .iter()
            .filter(|(key, _)| pred(key))
            .map(|(_, m)| m.clone())
            .sum()
    }

    pub fn weil(&self, key: &StrataKey) -> Result<WeilData> {
        WeilData::from_coefficients(self.q as i64, &key.weil)
    }

    pub fn newton(&self, key: &StrataKey) -> Result<NewtonPolygon> {
        Ok(NewtonPolygon::from_weil(&self.weil(key)?, self.p))
    }

    /// Genus-two masses per `(a_1, a_2)`.
    pub fn weil_masses(&self) -> Result<SexticOrbitMass> {
        if self.genus != 2 {
            return Err(CensusError::Usage(format!("genus {} census has no (a_1, a_2) table", self.genus)));
        }
        let mut masses: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        for (key, m) in &self.table {
            *masses.entry((key.weil[0], key.weil[1])).or_insert_with(|| Rat::from_integer(0.into())) += m;
        }
        Ok(SexticOrbitMass { q: self.q, masses })
    }

    /// Invariance of the table under the quadratic twist `a_i ↦ (-1)^i a_i`.
    pub fn twist_symmetric(&self) -> bool {
        self.table.iter().all(|(key, m)| {
            let mut t = key.clone();
            for (i, a) in t.weil.iter_mut().enumerate() {
                if i % 2 == 0 {
                    *a = -*a;
                }
            }
            self.table.get(&t) == Some(m)
        })
    }

    /// Per key: Newton slope-0 count = stable Cartier rank = `p`-rank,
    /// `a + f ≤ g`, superspecial implies supersingular, and no `a`-number
    /// bound is violated. With `twist_closed`, also twist symmetry.
    pub fn check_invariants(&self, twist_closed: bool) -> Result<()> {
        let g = self.genus;
        let fail = |what: String| Err(CensusError::Consistency(format!("{what} over F_{}", self.q)));
        for key in self.table.keys() {
            let np = self.newton(key)?;
            if !np.is_symmetric() {
                return fail(format!("asymmetric Newton polygon {np} at {key:?}"));
            }
            if np.p_rank() != key.p_rank || key.stable_rank != key.p_rank {
                return fail(format!("Newton p-rank {}, stable rank {} at {key:?}", np.p_rank(), key.stable_rank));
            }
            if key.a_number + key.p_rank > g {
                return fail(format!("a + f > g at {key:?}"));
            }
            if key.a_number == g && !np.is_supersingular() {
                return fail(format!("superspecial but slopes {np} at {key:?}"));
            }
            if let Some(v) = bound_check(g as u64, key.a_number as u64, self.p as u64).first() {
                return fail(format!("{:?} bound violated at {key:?}", v.bound));
            }
        }
        if twist_closed && !self.twist_symmetric() {
            return fail("table not invariant under quadratic twist".into());
        }
        Ok(())
    }

    pub fn merge(&mut self, other: StrataCensus) -> Result<()> {
        if (self.q, self.genus) != (other.q, other.genus) {
            return Err(CensusError::Usage("merging censuses of different shape".into()));
        }
        for (key, m) in other.table {
            *self.table.entry(key).or_insert_with(|| Rat::from_integer(0.into())) += m;
        }
        for (key, r) in other.reps {
            self.reps.entry(key).or_insert(r);
        }
        Ok(())
    }
}

/// Per-worker accumulator: form count and the representative with the
/// smallest enumeration index per key, so the result is independent of how
/// the work was split.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    counts: std::collections::HashMap<StrataKey, (i64, u64, Representative)>,
}

impl Tally {
    pub fn add(&mut self, key: StrataKey, weight: i64, order: u64, rep: impl FnOnce() -> Representative) {
        match self.counts.get_mut(&key) {
            Some(e) => {
                e.0 += weight;
                if order < e.1 {
                    e.1 = order;
                    e.2 = rep();
                }
            }
            None => {
                self.counts.insert(key, (weight, order, rep()));
            }
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        for (key, (n, order, r)) in other.counts {
            match self.counts.get_mut(&key) {
                Some(e) => {
                    e.0 += n;
                    if order < e.1 {
                        e.1 = order;
                        e.2 = r;
                    }
                }
                None => {
                    self.counts.insert(key, (n, order, r));
                }
            }
        }
        self
    }

    pub fn into_census(self, p: u32, q: u32, genus: usize, denom: &Rat) -> StrataCensus {
        let mut table = BTreeMap::new();
        let mut reps = BTreeMap::new();
        for (key, (n, _, r)) in self.counts {
            table.insert(key.clone(), Rat::from_integer(n.into()) / denom);
            reps.insert(key, r);
        }
        StrataCensus {
            p,
            q,
            genus,
            table,
            reps,
        }
    }
}
