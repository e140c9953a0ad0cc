//! Point counts of `M_{0,n}`, `M_{1,n}` and `M̄_{1,n}`, plain and twisted by
//! a permutation of the markings.

pub mod cubic;
pub mod m0n;
pub mod m1n;
pub mod mbar;
pub mod polyfit;
pub mod stable_graph;

use std::collections::BTreeMap;

/// A partition of `n`, stored as cycle lengths in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut lengths: Vec<usize>) -> Self {
        lengths.retain(|&d| d > 0);
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(lengths)
    }

    pub fn identity(n: usize) -> Self {
        CycleType(vec![1; n])
    }

    /// Cycle type of a permutation given as images `perm[i]`.
    pub fn of_perm(perm: &[usize]) -> Self {
        let mut seen = vec![false; perm.len()];
        let mut lengths = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            lengths.push(len);
        }
        CycleType::new(lengths)
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    /// `d ↦ m_d`.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &d in &self.0 {
            *m.entry(d).or_insert(0) += 1;
        }
        m
    }

    pub fn max_length(&self) -> usize {
        self.0.first().copied().unwrap_or(1)
    }

    /// Sign of any permutation of this type.
    pub fn sign(&self) -> i64 {
        if self.0.iter().filter(|&&d| d % 2 == 0).count() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All partitions of `n`.
    pub fn partitions(n: usize) -> Vec<CycleType> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<CycleType>) {
            if n == 0 {
                out.push(CycleType(cur.clone()));
                return;
            }
            for d in (1..=n.min(max)).rev() {
                cur.push(d);
                rec(n - d, d, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Number of permutations of this type, `n! / ∏ d^{m_d} m_d!`.
    pub fn class_size(&self) -> u128 {
        let mut size: u128 = (1..=self.n() as u128).product();
        for (d, m) in self.multiplicities() {
            size /= (d as u128).pow(m as u32);
            size /= (1..=m as u128).product::<u128>();
        }
        size
    }
}

impl std::fmt::Display for CycleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Number of ways to fill the cycles of `ct` with points, given the counts
/// `exact[d-1]` of points of exact degree `d`: `∏_d ∏_{i<m_d} (N_d - i d)`.
pub fn falling_product(ct: &CycleType, exact: &[i64]) -> num_bigint::BigInt {
    let mut acc = num_bigint::BigInt::from(1);
    for (d, m) in ct.multiplicities() {
        for i in 0..m {
            let f = exact[d - 1] - (i * d) as i64;
            if f <= 0 {
                return num_bigint::BigInt::from(0);
            }
            acc *= f;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_and_class_sizes() {
        let p4 = CycleType::partitions(4);
        assert_eq!(p4.len(), 5);
        let total: u128 = p4.iter().map(|c| c.class_size()).sum();
        assert_eq!(total, 24);
        assert_eq!(CycleType::of_perm(&[1, 0, 2, 4, 3]), CycleType::new(vec![2, 2, 1]));
        assert_eq!(CycleType::new(vec![2, 1]).sign(), -1);
    }
}
