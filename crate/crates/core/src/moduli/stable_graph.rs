//! Stable graphs of genus one with `n` labelled legs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{CensusError, Result};

pub const MAX_LEGS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StableGraph {
    /// Genus of each vertex.
    pub genera: Vec<u32>,
    /// Vertex carrying leg `i`.
    pub legs: Vec<usize>,
    /// Edges as vertex pairs `(a, b)` with `a ≤ b`; loops have `a == b`.
    pub edges: Vec<(usize, usize)>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

impl StableGraph {
    pub fn smooth(genus: u32, n: usize) -> Self {
        StableGraph {
            genera: vec![genus],
            legs: vec![0; n],
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.genera.len()
    }

    pub fn n(&self) -> usize {
        self.legs.len()
    }

    /// Number of half-edges at `v`, legs included.
    pub fn valence(&self, v: usize) -> usize {
        let legs = self.legs.iter().filter(|&&w| w == v).count();
        let ends: usize = self
            .edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum();
        legs + ends
    }

    pub fn betti(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count()
    }

    pub fn genus(&self) -> u32 {
        self.genera.iter().sum::<u32>() + self.betti() as u32
    }

    pub fn is_stable(&self) -> bool {
        (0..self.vertex_count()).all(|v| 2 * self.genera[v] as i64 - 2 + self.valence(v) as i64 >= 1)
    }

    fn relabel(&self, perm: &[usize]) -> StableGraph {
        let mut genera = vec![0; self.genera.len()];
        for (v, &g) in self.genera.iter().enumerate() {
            genera[perm[v]] = g;
        }
        let legs = self.legs.iter().map(|&v| perm[v]).collect();
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a], perm[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        StableGraph { genera, legs, edges }
    }

    /// Smallest relabelling over all vertex permutations.
    pub fn canonical(&self) -> StableGraph {
        permutations(self.vertex_count())
            .iter()
            .map(|p| self.relabel(p))
            .min()
            .expect("at least one vertex")
    }

    /// Half-edges: legs `0..n`, then edge `e` contributes `n + 2e` (at its
    /// first endpoint) and `n + 2e + 1` (at its second).
    pub fn half_edge_vertex(&self, h: usize) -> usize {
        let n = self.n();
        if h < n {
            self.legs[h]
        } else {
            let (a, b) = self.edges[(h - n) / 2];
            if (h - n).is_multiple_of(2) {
                a
            } else {
                b
            }
        }
    }

    pub fn half_edge_count(&self) -> usize {
        self.n() + 2 * self.edges.len()
    }

    pub fn half_edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.half_edge_count())
            .filter(|&h| self.half_edge_vertex(h) == v)
            .collect()
    }

    /// All automorphisms as half-edge permutations fixing every leg.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let nv = self.vertex_count();
        let mut out = Vec::new();
        for pi in permutations(nv) {
            if (0..nv).any(|v| self.genera[pi[v]] != self.genera[v]) {
                continue;
            }
            if self.legs.iter().any(|&v| pi[v] != v) {
                continue;
            }
            let image = |e: usize| {
                let (a, b) = self.edges[e];
                let (x, y) = (pi[a], pi[b]);
                (x.min(y), x.max(y))
            };
            let mut src: Vec<(usize, usize)> = (0..self.edges.len()).map(image).collect();
            src.sort_unstable();
            if src != self.edges {
                continue;
            }
            // assign each edge an image edge with the same endpoints, then orientations
            let mut assignments: Vec<Vec<usize>> = vec![Vec::new()];
            for e in 0..self.edges.len() {
                let target = image(e);
                let mut next = Vec::new();
                for partial in &assignments {
                    for f in 0..self.edges.len() {
                        if self.edges[f] == target && !partial.contains(&f) {
                            let mut p = partial.clone();
                            p.push(f);
                            next.push(p);
                        }
                    }
                }
                assignments = next;
            }
            for assign in assignments {
                let loops: Vec<usize> = (0..self.edges.len())
                    .filter(|&e| self.edges[e].0 == self.edges[e].1)
                    .collect();
                for mask in 0..(1usize << loops.len()) {
                    let mut phi: Vec<usize> = (0..n).collect();
                    phi.resize(self.half_edge_count(), usize::MAX);
                    for e in 0..self.edges.len() {
                        let f = assign[e];
                        let (a, _) = self.edges[e];
                        let flip = match loops.iter().position(|&l| l == e) {
                            Some(i) => mask >> i & 1 == 1,
                            None => {
                                let (fa, _) = self.edges[f];
                                pi[a] != fa
                            }
                        };
                        phi[n + 2 * e] = n + 2 * f + flip as usize;
                        phi[n + 2 * e + 1] = n + 2 * f + (!flip) as usize;
                    }
                    out.push(phi);
                }
            }
        }
        out
    }

    /// Graphs obtained by one degeneration: a loop at a genus-one vertex, or
    /// splitting a vertex along a new edge.
    fn degenerations(&self) -> Vec<StableGraph> {
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            if self.genera[v] >= 1 {
                let mut g = self.clone();
                g.genera[v] -= 1;
                g.edges.push((v, v));
                g.edges.sort_unstable();
                out.push(g);
            }
            let hs = self.half_edges_at(v);
            let w = self.vertex_count();
            for g1 in 0..=self.genera[v] {
                let g2 = self.genera[v] - g1;
                for mask in 0..(1usize << hs.len()) {
                    let mut g = self.clone();
                    g.genera[v] = g1;
                    g.genera.push(g2);
                    let n = self.n();
                    let mut edges = self.edges.clone();
                    for (i, &h) in hs.iter().enumerate() {
                        if mask >> i & 1 == 0 {
                            continue;
                        }
                        if h < n {
                            g.legs[h] = w;
                        } else {
                            let e = (h - n) / 2;
                            if (h - n).is_multiple_of(2) {
                                edges[e].0 = w;
                            } else {
                                edges[e].1 = w;
                            }
                        }
                    }
                    edges.push((v, w));
                    g.edges = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
                    g.edges.sort_unstable();
                    if g.is_stable() {
                        out.push(g);
                    }
                }
            }
        }
        out
    }
}

/// Every stable graph of genus `genus` with `n` legs, one per isomorphism class.
pub fn enumerate_stable_graphs(genus: u32, n: usize) -> Result<Vec<StableGraph>> {
    if genus > 1 {
        return Err(CensusError::Unsupported(format!("stable graphs of genus {genus}")));
    }
    if n > MAX_LEGS {
        return Err(CensusError::Capacity(format!(
            "stable graph enumeration with {n} legs exceeds bound {MAX_LEGS}"
        )));
    }
    let start = StableGraph::smooth(genus, n);
    if !start.is_stable() {
        return Err(CensusError::Usage(format!("M_{genus},{n} is not stable")));
    }
    let mut seen: BTreeSet<StableGraph> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let c = start.canonical();
    seen.insert(c.clone());
    queue.push_back(c);
    while let Some(g) = queue.pop_front() {
        for d in g.degenerations() {
            let c = d.canonical();
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Graph counts grouped by number of edges (codimension).
pub fn count_by_codimension(graphs: &[StableGraph]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for g in graphs {
        *out.entry(g.edges.len()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_leg() {
        let gs = enumerate_stable_graphs(1, 1).unwrap();
        assert_eq!(gs.len(), 2);
        let lp = gs.iter().find(|g| g.genera == vec![0]).unwrap();
        assert_eq!(lp.automorphisms().len(), 2);
    }

    #[test]
    fn two_legs() {
        // smooth; loop; g1 vertex + rational tail; 2-cycle of rational vertices;
        // loop on a rational vertex attached to a rational tail carrying both legs
        let gs = enumerate_stable_graphs(1, 2).unwrap();
        assert_eq!(gs.len(), 5);
        let two_cycle = gs
            .iter()
            .find(|g| g.edges.len() == 2 && g.edges[0] == g.edges[1])
            .unwrap();
        assert_eq!(two_cycle.automorphisms().len(), 2);
        for g in &gs {
            assert_eq!(g.genus(), 1);
            assert!(g.is_stable());
        }
    }

    #[test]
    fn genus_zero_counts() {
        // M̄_{0,n} boundary strata: 1 graph for n=3, 4 for n=4 (smooth + 3 splits)
        assert_eq!(enumerate_stable_graphs(0, 3).unwrap().len(), 1);
        assert_eq!(enumerate_stable_graphs(0, 4).unwrap().len(), 4);
    }
}
