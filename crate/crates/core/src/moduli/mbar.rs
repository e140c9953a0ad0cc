//! `#M̄_{1,n}(F_q)` assembled over stable graphs.
//!
//! The open stratum of a graph `Γ` is `(∏_v M_{g_v,n_v}) / Aut Γ`. Its
//! `F_q`-points are `(1/#Aut Γ) Σ_h #Fix(F∘h)`, and for a cycle of vertices of
//! length `r` under `h` the fixed points are those of `F^r∘h^r` on a single
//! factor: a twisted count over `F_{q^r}`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::m0n::m0n_equivariant;
use super::m1n::m1n_equivariant;
use super::stable_graph::{enumerate_stable_graphs, StableGraph};
use super::CycleType;
use crate::algebra::{Int, Rat};
use crate::census::EllipticCensus;
use crate::error::{CensusError, Result};

pub const MAX_N: usize = 6;

/// Contribution of one graph's open stratum.
pub fn stratum_count(g: &StableGraph, census: &EllipticCensus) -> Result<Rat> {
    let q = census.q() as i64;
    let auts = g.automorphisms();
    let mut total = Rat::zero();
    for phi in &auts {
        let nv = g.vertex_count();
        // vertex permutation induced by phi
        let mut pi = vec![usize::MAX; nv];
        for h in 0..g.half_edge_count() {
            pi[g.half_edge_vertex(h)] = g.half_edge_vertex(phi[h]);
        }
        let mut seen = vec![false; nv];
        let mut term = BigInt::from(1);
        for v in 0..nv {
            if seen[v] {
                continue;
            }
            let mut r = 0;
            let mut w = v;
            while !seen[w] {
                seen[w] = true;
                w = pi[w];
                r += 1;
            }
            let hs = g.half_edges_at(v);
            let local: Vec<usize> = hs
                .iter()
                .map(|&h| {
                    let mut x = h;
                    for _ in 0..r {
                        x = phi[x];
                    }
                    hs.iter().position(|&y| y == x).expect("phi^r preserves the vertex")
                })
                .collect();
            let ct = CycleType::of_perm(&local);
            let factor = match g.genera[v] {
                0 => m0n_equivariant(q.pow(r as u32), &ct)?,
                1 => {
                    if r != 1 {
                        return Err(CensusError::Consistency(
                            "genus-one vertex moved by a graph automorphism".into(),
                        ));
                    }
                    m1n_equivariant(census, &ct)?
                }
                g => return Err(CensusError::Unsupported(format!("vertex of genus {g}"))),
            };
            term *= factor;
            if term.is_zero() {
                break;
            }
        }
        total += Rat::from_integer(term);
    }
    Ok(total / Rat::from_integer(BigInt::from(auts.len())))
}

pub fn mbar1n(census: &EllipticCensus, n: usize) -> Result<Int> {
    if n == 0 || n > MAX_N {
        return Err(CensusError::Capacity(format!("M̄_1,n assembly supports 1 <= n <= {MAX_N}, got {n}")));
    }
    let graphs = enumerate_stable_graphs(1, n)?;
    let mut acc = Rat::zero();
    for g in &graphs {
        acc += stratum_count(g, census)?;
    }
    if !acc.is_integer() {
        return Err(CensusError::NonIntegral(format!("M̄_1,{n} over F_{}: {acc}", census.q())));
    }
    Ok(acc.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldCtx;

    #[test]
    fn small_n() {
        for q in [2u64, 3, 5] {
            let c = EllipticCensus::new(&FieldCtx::new(q).unwrap()).unwrap();
            let q = q as i64;
            assert_eq!(mbar1n(&c, 1).unwrap(), Int::from(q + 1));
            assert_eq!(mbar1n(&c, 2).unwrap(), Int::from((q + 1) * (q + 1)));
            assert_eq!(mbar1n(&c, 3).unwrap(), Int::from(q.pow(3) + 5 * q * q + 5 * q + 1));
        }
    }
}
