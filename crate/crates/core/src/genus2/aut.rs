//! Exhaustive automorphism groups and isomorphism classes of small
//! genus-two curves; an oracle for the family-and-divide masses.

use std::collections::BTreeMap;

use super::forms::{binary_squarefree, decode, encode, gl2, transform};
use super::odd::SexticCounter;
use crate::algebra::field::{Elem, FieldCtx};
use crate::algebra::Rat;
use crate::error::{CensusError, Result};

pub const MAX_Q: u32 = 9;

fn check_field(k: &FieldCtx) -> Result<()> {
    if k.q() > MAX_Q {
        return Err(CensusError::Capacity(format!(
            "brute-force automorphisms over F_{} exceed bound {MAX_Q}",
            k.q()
        )));
    }
    if k.p() == 2 {
        return Err(CensusError::Usage("odd characteristic required".into()));
    }
    Ok(())
}

/// `#Aut_{F_q}` of `y^2 = f`: pairs `(M, e)` with `f∘M = e^2 f`, modulo the
/// `q - 1` scalar pairs acting trivially. The hyperelliptic involution is
/// `(I, -1)`.
pub fn aut_bruteforce_g2(k: &FieldCtx, f: &[Elem]) -> Result<u32> {
    check_field(k)?;
    if f.len() != 7 || !binary_squarefree(k, f) {
        return Err(CensusError::Usage("expected a squarefree sextic form".into()));
    }
    let squares: Vec<Elem> = k.nonzero().map(|e| k.mul(e, e)).collect();
    let mut count = 0u32;
    for m in gl2(k) {
        let g = transform(k, f, &m);
        for &s in &squares {
            if g.iter().zip(f).all(|(&x, &y)| x == k.mul(s, y)) {
                count += 1;
            }
        }
    }
    Ok(count / (k.q() - 1))
}

/// One representative per isomorphism class with its automorphism count.
pub fn g2_classes_bruteforce(k: &FieldCtx) -> Result<Vec<(Vec<Elem>, u32)>> {
    check_field(k)?;
    let q = k.q() as u64;
    let total = q.pow(7) as usize;
    let group = gl2(k);
    let squares: Vec<Elem> = k.nonzero().map(|e| k.mul(e, e)).collect();
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    for idx in 0..total {
        if seen[idx] {
            continue;
        }
        let f = decode(idx as u64, q, 7);
        if !binary_squarefree(k, &f) {
            seen[idx] = true;
            continue;
        }
        let mut stab = 0u32;
        for m in &group {
            let g = transform(k, &f, m);
            for &s in &squares {
                let h: Vec<Elem> = g.iter().map(|&c| k.mul(c, s)).collect();
                let j = encode(&h, q) as usize;
                seen[j] = true;
                if j == idx {
                    stab += 1;
                }
            }
        }
        out.push((f, stab / (k.q() - 1)));
    }
    Ok(out)
}

/// `Σ 1/#Aut` per Weil key over the brute-force classes.
pub fn class_masses_by_key(k: &FieldCtx) -> Result<BTreeMap<(i64, i64), Rat>> {
    let counter = SexticCounter::new(k)?;
    let mut out: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
    for (f, aut) in g2_classes_bruteforce(k)? {
        *out.entry(counter.key(&f)).or_insert_with(|| Rat::from_integer(0.into())) +=
            Rat::new(1.into(), (aut as i64).into());
    }
    Ok(out)
}
