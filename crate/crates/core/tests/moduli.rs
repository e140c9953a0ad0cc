use num_integer::Integer;
use num_traits::Zero;

use moduli_census::algebra::{rat, FieldCtx, Int, Rat};
use moduli_census::census::g1::embed_model;
use moduli_census::census::EllipticCensus;
use moduli_census::moduli::m0n::{m0n_count, m0n_equivariant};
use moduli_census::moduli::m1n::{m1n_direct, m1n_equivariant, m1n_getzler};
use moduli_census::moduli::mbar::mbar1n;
use moduli_census::moduli::polyfit::poly_fit_and_check;
use moduli_census::moduli::stable_graph::enumerate_stable_graphs;
use moduli_census::moduli::CycleType;
use moduli_census::CensusError;

fn census(q: u64) -> EllipticCensus {
    EllipticCensus::new(&FieldCtx::new(q).unwrap()).unwrap()
}

fn int(n: i64) -> Int {
    Int::from(n)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

/// Cycles of `perm` as index lists.
fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        let mut cyc = Vec::new();
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            cyc.push(i);
            i = perm[i];
        }
        if !cyc.is_empty() {
            out.push(cyc);
        }
    }
    out
}

fn lcm_of_cycles(perm: &[usize]) -> u32 {
    cycles(perm).iter().fold(1usize, |l, c| l.lcm(&c.len())) as u32
}

/// Tuples `(P_i)` of distinct points with `F(P_i) = P_{σ(i)}`, by search
/// over all points of the ambient set.
fn twisted_configurations<P: Copy + PartialEq>(perm: &[usize], points: &[P], frob: impl Fn(P) -> P) -> i64 {
    fn rec<P: Copy + PartialEq>(
        cyc: &[Vec<usize>],
        points: &[P],
        frob: &impl Fn(P) -> P,
        chosen: &mut Vec<P>,
    ) -> i64 {
        let Some((first, rest)) = cyc.split_first() else {
            return 1;
        };
        let mut total = 0;
        for &p in points {
            let mut orbit = vec![p];
            for _ in 1..first.len() {
                orbit.push(frob(*orbit.last().unwrap()));
            }
            if frob(*orbit.last().unwrap()) != p {
                continue;
            }
            let distinct = orbit.iter().enumerate().all(|(i, a)| !orbit[..i].contains(a) && !chosen.contains(a));
            if !distinct {
                continue;
            }
            let mark = chosen.len();
            chosen.extend(&orbit);
            total += rec(rest, points, frob, chosen);
            chosen.truncate(mark);
        }
        total
    }
    rec(&cycles(perm), points, &frob, &mut Vec::new())
}

fn m0n_bruteforce(q: u64, perm: &[usize]) -> Rat {
    let big = FieldCtx::new(q.pow(lcm_of_cycles(perm))).unwrap();
    let mut points: Vec<Option<u32>> = big.elements().map(Some).collect();
    points.push(None);
    let configs = twisted_configurations(perm, &points, |p| p.map(|x| big.pow(x, q)));
    let q = q as i64;
    rat(configs, q * (q * q - 1))
}

fn m1n_bruteforce(census: &EllipticCensus, perm: &[usize]) -> Rat {
    let k = census.field();
    let q = k.q() as u64;
    let big = FieldCtx::new(q.pow(lcm_of_cycles(perm))).unwrap();
    let embed = k.embed_into(&big).unwrap();
    let mut total = Rat::zero();
    for r in census.records() {
        let [a1, a2, a3, a4, a6] = embed_model(&r.model, &embed);
        let mut points: Vec<Option<(u32, u32)>> = vec![None];
        for x in big.elements() {
            for y in big.elements() {
                let lhs = big.add(big.mul(y, y), big.mul(y, big.add(big.mul(a1, x), a3)));
                let rhs = big.eval(&[a6, a4, a2, 1], x);
                if lhs == rhs {
                    points.push(Some((x, y)));
                }
            }
        }
        let configs = twisted_configurations(perm, &points, |p| p.map(|(x, y)| (big.pow(x, q), big.pow(y, q))));
        total += rat(configs, r.n1) / rat(r.aut as i64, 1);
    }
    total
}

#[test]
fn m0n_examples() {
    for q in [2, 3, 4, 5, 7] {
        assert_eq!(m0n_count(q, 3).unwrap(), int(1));
        assert_eq!(m0n_equivariant(q, &CycleType::identity(3)).unwrap(), int(1));
    }
    assert_eq!(m0n_count(5, 4).unwrap(), int(3));
    assert_eq!(m0n_equivariant(5, &CycleType::identity(4)).unwrap(), int(3));
    assert_eq!(m0n_count(3, 5).unwrap(), int(0));
    assert!(matches!(m0n_count(5, 2), Err(CensusError::Usage(_))));
}

#[test]
fn m0n_equivariant_matches_bruteforce() {
    for q in [2u64, 3] {
        for n in 3..=4 {
            for perm in permutations(n) {
                let want = m0n_bruteforce(q, &perm);
                let got = m0n_equivariant(q as i64, &CycleType::of_perm(&perm)).unwrap();
                assert_eq!(Rat::from_integer(got), want, "q = {q}, σ = {perm:?}");
            }
        }
    }
}

#[test]
fn m0n_alternating_part_vanishes() {
    for q in [2i64, 3, 4, 5, 7, 8, 9] {
        for n in 3..=6 {
            let alt: Int = CycleType::partitions(n)
                .iter()
                .map(|ct| m0n_equivariant(q, ct).unwrap() * Int::from(ct.class_size()) * ct.sign())
                .sum();
            assert!(alt.is_zero(), "q = {q}, n = {n}: {alt}");
        }
    }
}

#[test]
fn m1n_examples() {
    for q in [2u64, 3, 4, 5, 7] {
        let c = census(q);
        assert_eq!(m1n_direct(&c, 1).unwrap(), int(q as i64));
        assert_eq!(m1n_getzler(&c.sigma_table(1).unwrap(), q as i64, 1).unwrap(), int(q as i64));
    }
    assert_eq!(m1n_direct(&census(2), 3).unwrap(), int(7));
    assert_eq!(m1n_direct(&census(3), 4).unwrap(), int(66));
    let c2 = census(2);
    assert_eq!(m1n_getzler(&c2.sigma_table(5).unwrap(), 2, 5).unwrap(), int(6));
    assert!(matches!(m1n_direct(&c2, 12), Err(CensusError::Usage(_))));
}

#[test]
fn m1n_equivariant_matches_bruteforce() {
    for q in [2u64, 3] {
        let c = census(q);
        for n in 1..=4 {
            for perm in permutations(n) {
                let want = m1n_bruteforce(&c, &perm);
                let got = m1n_equivariant(&c, &CycleType::of_perm(&perm)).unwrap();
                assert_eq!(Rat::from_integer(got), want, "q = {q}, σ = {perm:?}");
            }
        }
    }
}

#[test]
fn m1n_transposition_example() {
    // σ = (1 2) on M_{1,2}: Σ_C (#C(F_{q^2}) - #C(F_q)) / #Aut C over genus-one
    // curves C, whose automorphisms include the N_1 translations
    for q in [3u64, 5, 7] {
        let c = census(q);
        let want: Rat = c
            .records()
            .iter()
            .map(|r| {
                let n = r.counts(2);
                rat(n[1] - n[0], r.aut as i64 * n[0])
            })
            .sum();
        let got = m1n_equivariant(&c, &CycleType::new(vec![2])).unwrap();
        assert_eq!(Rat::from_integer(got), want);
    }
}

#[test]
fn mbar1n_examples() {
    for q in [2u64, 3, 4, 5] {
        assert_eq!(mbar1n(&census(q), 1).unwrap(), int(q as i64 + 1));
    }
    assert_eq!(mbar1n(&census(3), 2).unwrap(), int(16));
    assert_eq!(mbar1n(&census(2), 4).unwrap(), int(229));
}

#[test]
fn genus_one_stable_graphs() {
    assert_eq!(enumerate_stable_graphs(1, 1).unwrap().len(), 2);
    assert_eq!(enumerate_stable_graphs(1, 2).unwrap().len(), 5);
    for n in 1..=4 {
        for g in enumerate_stable_graphs(1, n).unwrap() {
            assert!(g.is_stable());
            assert_eq!(g.genus(), 1);
            assert_eq!(g.n(), n);
        }
    }
}

#[test]
fn polyfit_examples() {
    let samples: Vec<(i64, Int)> = [2u64, 3, 5]
        .iter()
        .map(|&q| (q as i64, mbar1n(&census(q), 2).unwrap()))
        .collect();
    let p = poly_fit_and_check(&samples, 2, true).unwrap();
    assert_eq!(p.coeffs, vec![int(1), int(2), int(1)]);
    assert!(p.is_palindromic());

    let samples: Vec<(i64, Int)> = [2u64, 3, 4, 5]
        .iter()
        .map(|&q| (q as i64, m1n_direct(&census(q), 3).unwrap()))
        .collect();
    let p = poly_fit_and_check(&samples, 3, false).unwrap();
    assert_eq!(p.to_string(), "q^3-1");
    assert!(matches!(poly_fit_and_check(&samples, 3, true), Err(CensusError::PolyCheck(_))));

    let constant = poly_fit_and_check(&[(2, int(5)), (3, int(5)), (4, int(5))], 2, false).unwrap();
    assert_eq!(constant.coeffs.iter().filter(|c| !c.is_zero()).count(), 1);
    assert_eq!(constant.eval(100), int(5));

    let half = poly_fit_and_check(&[(2, int(1)), (3, int(2))], 1, false);
    assert!(half.is_ok());
    assert!(poly_fit_and_check(&[(2, int(1)), (4, int(2))], 1, false).is_err());
}
