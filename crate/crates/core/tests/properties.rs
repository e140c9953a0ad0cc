use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use proptest::prelude::*;

use moduli_census::algebra::sl2::sl2_power_trace;
use moduli_census::algebra::sp4::sp4_character_raw;
use moduli_census::algebra::{fmt_rat, parse_rat, rat, FieldCtx, Int, Rat, WeilData};
use moduli_census::census::g1::{exact_from_counts, weil_counts};
use moduli_census::census::EllipticCensus;
use moduli_census::moduli::polyfit::{poly_fit_and_check, PolynomialInQ};
use moduli_census::moduli::CycleType;
use moduli_census::store::*;
use moduli_census::strata::CurveModel;

const FIELD_ORDERS: [u64; 20] = [
    2, 4, 8, 16, 3, 9, 27, 81, 5, 25, 125, 625, 7, 49, 343, 11, 121, 13, 169, 47,
];

fn fields() -> &'static Vec<FieldCtx> {
    static F: OnceLock<Vec<FieldCtx>> = OnceLock::new();
    F.get_or_init(|| FIELD_ORDERS.iter().map(|&q| FieldCtx::new(q).unwrap()).collect())
}

proptest! {
    #[test]
    fn field_axioms(i in 0..FIELD_ORDERS.len(), x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let k = &fields()[i];
        let q = k.q();
        let (a, b, c) = (x % q, y % q, z % q);
        prop_assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.add(a, k.neg(a)), 0);
        prop_assert_eq!(k.sub(k.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(k.mul(a, k.inv(a)), 1);
            prop_assert_eq!(k.div(k.mul(a, b), a), b);
        }
        prop_assert_eq!(k.frob(k.add(a, b)), k.add(k.frob(a), k.frob(b)));
        prop_assert_eq!(k.frob(k.mul(a, b)), k.mul(k.frob(a), k.frob(b)));
        prop_assert_eq!(k.pow(a, q as u64), a);
    }

    #[test]
    fn sl2_power_trace_matches_quadratic_ring(q in 2i64..60, k in 0u32..=20, u in 0.0f64..1.0) {
        let bound = (4 * q) as f64;
        let t = ((u * 2.0 - 1.0) * bound.sqrt()).trunc() as i64;
        // α^i ᾱ^{k-i} in Z[α]/(α^2 - tα + q), elements x + yα
        let (ti, qi) = (Int::from(t), Int::from(q));
        let mul = |a: &(Int, Int), b: &(Int, Int)| {
            let yy = &a.1 * &b.1;
            (&a.0 * &b.0 - &qi * &yy, &a.0 * &b.1 + &a.1 * &b.0 + &ti * &yy)
        };
        let alpha = (Int::zero(), Int::one());
        let alpha_bar = (ti.clone(), -Int::one());
        let pow = |base: &(Int, Int), e: u32| (0..e).fold((Int::one(), Int::zero()), |acc, _| mul(&acc, base));
        let mut sum = (Int::zero(), Int::zero());
        for i in 0..=k {
            let term = mul(&pow(&alpha, i), &pow(&alpha_bar, k - i));
            sum = (sum.0 + term.0, sum.1 + term.1);
        }
        prop_assert!(sum.1.is_zero());
        prop_assert_eq!(sl2_power_trace(k, t, q), sum.0);
    }

    #[test]
    fn sp4_character_matches_weyl_formula(
        c in prop::sample::select(vec![4i64, 6, 8, 9, 10, 12]),
        pick in any::<prop::sample::Index>(),
        (a, b) in (0i64..=5).prop_flat_map(|b| (b..=10 - b).prop_map(move |a| (a, b))),
    ) {
        let q = c * c;
        // eigenvalues x, q/x with x ≠ c and no coincidence between the two pairs,
        // so the Weyl denominator is nonzero
        let divisors: Vec<i64> = (1..=q).filter(|d| q % d == 0 && *d != c).collect();
        let pairs: Vec<(i64, i64)> = divisors
            .iter()
            .flat_map(|&x1| divisors.iter().map(move |&x2| (x1, x2)))
            .filter(|&(x1, x2)| x1 != x2 && x1 * x2 != q)
            .collect();
        let (x1, x2) = *pick.get(&pairs);
        let eig = [rat(x1, 1), rat(q, x1), rat(x2, 1), rat(q, x2)];
        let mut e = [Rat::zero(), Rat::zero()];
        for i in 0..4 {
            e[0] += &eig[i];
            for j in i + 1..4 {
                e[1] += &eig[i] * &eig[j];
            }
        }
        // unitary eigenvalues y_i = x_i / c
        let y = [rat(x1, c), rat(x2, c)];
        let denom = weyl_alternant(&y, [2, 1]);
        prop_assert!(!denom.is_zero());
        let numer = weyl_alternant(&y, [a + 2, b + 1]);
        let homogenized = numer / denom * Rat::from_integer(Int::from(c).pow((a + b) as u32));
        let got = sp4_character_raw(a, b, e[0].numer(), e[1].numer(), &Int::from(q)).unwrap();
        prop_assert!(e[0].is_integer() && e[1].is_integer());
        prop_assert_eq!(Rat::from_integer(got), homogenized);
    }

    #[test]
    fn weil_data_round_trips(q in 2i64..30, g in 1usize..=4, raw in proptest::collection::vec(-20i64..20, 4)) {
        let a = &raw[..g];
        let w = WeilData::from_coefficients(q, a).unwrap();
        prop_assert!(w.functional_equation_holds());
        let counts: Vec<i64> = (1..=g).map(|d| w.count(d)).collect();
        let back = WeilData::from_counts(q, &counts).unwrap();
        prop_assert_eq!(back.coefficients(), a);
        if g == 2 {
            prop_assert_eq!(2 * w.a(2), w.s(1) * w.s(1) - w.s(2));
        }
    }

    #[test]
    fn exact_degree_counts_sum(q in 2i64..50, u in 0.0f64..1.0, big_d in 1usize..=8) {
        let t = ((u * 2.0 - 1.0) * ((4 * q) as f64).sqrt()).trunc() as i64;
        let counts = weil_counts(t, q, big_d);
        let exact = exact_from_counts(&counts);
        for d in 1..=big_d {
            let total: i64 = (1..=d).filter(|e| d % e == 0).map(|e| exact[e - 1]).sum();
            prop_assert_eq!(total, counts[d - 1]);
            if d > 1 {
                prop_assert_eq!(exact[d - 1] % d as i64, 0);
            }
        }
    }

    #[test]
    fn cycle_type_of_permutation(perm in (1usize..=9).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())) {
        let ct = CycleType::of_perm(&perm);
        prop_assert_eq!(ct.n(), perm.len());
        let weighted: usize = ct.multiplicities().iter().map(|(d, m)| d * m).sum();
        prop_assert_eq!(weighted, perm.len());
        let inversions = (0..perm.len())
            .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        prop_assert_eq!(ct.sign(), if inversions % 2 == 0 { 1 } else { -1 });
    }

    #[test]
    fn polyfit_recovers_integer_polynomials(coeffs in proptest::collection::vec(-50i64..50, 1..=5), extra in 0usize..3) {
        let p = PolynomialInQ { coeffs: coeffs.iter().map(|&c| Int::from(c)).collect() };
        let d = coeffs.len() - 1;
        let samples: Vec<(i64, Int)> = (0..=(d + extra) as i64).map(|i| (i + 2, p.eval(i + 2))).collect();
        let fit = poly_fit_and_check(&samples, d, false).unwrap();
        for x in -3..10 {
            prop_assert_eq!(fit.eval(x), p.eval(x));
        }
    }

    #[test]
    fn rationals_format_and_parse(n in any::<i64>(), d in 1i64..i64::MAX) {
        let r = rat(n, d);
        prop_assert_eq!(parse_rat(&fmt_rat(&r)), Some(r));
    }

    #[test]
    fn cache_records_round_trip(rows in proptest::collection::vec(
        (0usize..3, proptest::collection::vec(0u32..9, 5), -100i64..100, 1i64..10_000, 1i64..10_000),
        0..40,
    )) {
        let fields = [FieldSpec::of(&fields()[0]), FieldSpec::of(&fields()[4]), FieldSpec::of(&fields()[5])];
        let mut records: Vec<CensusCacheRecord> = rows
            .into_iter()
            .map(|(f, a, n1, num, den)| CensusCacheRecord {
                schema: SCHEMA_VERSION,
                kind: RecordKind::G1,
                field: fields[f].clone(),
                model: CurveModel::Elliptic { a },
                counts: vec![n1],
                weight: rat(num, den),
                p_rank: 1,
                a_number: 0,
                slopes: vec![rat(0, 1), rat(1, 1)],
            })
            .collect();
        sort_records(&mut records);
        let text = emit_records(&records).unwrap();
        let back = parse_records(&text).unwrap();
        prop_assert_eq!(&back, &records);
        prop_assert_eq!(emit_records(&back).unwrap(), text);
    }
}

/// `Σ_{w ∈ W(C_2)} sgn(w) y^{w(λ)}` with `y^{(e1,e2)} = y_1^{e1} y_2^{e2}`.
fn weyl_alternant(y: &[Rat; 2], lambda: [i64; 2]) -> Rat {
    let pw = |base: &Rat, e: i64| -> Rat {
        if e >= 0 {
            num_traits::pow(base.clone(), e as usize)
        } else {
            num_traits::pow(base.recip(), (-e) as usize)
        }
    };
    let mut total = Rat::zero();
    for swap in [false, true] {
        let (l1, l2) = if swap { (lambda[1], lambda[0]) } else { (lambda[0], lambda[1]) };
        for s1 in [1i64, -1] {
            for s2 in [1i64, -1] {
                let sign = if swap { -1 } else { 1 } * s1 * s2;
                let term = pw(&y[0], s1 * l1) * pw(&y[1], s2 * l2);
                total += if sign > 0 { term } else { -term };
            }
        }
    }
    total
}

#[test]
fn partitions_cover_symmetric_group() {
    for n in 1..=10usize {
        let total: u128 = CycleType::partitions(n).iter().map(|ct| ct.class_size()).sum();
        assert_eq!(total, (1..=n as u128).product::<u128>());
        for ct in CycleType::partitions(n) {
            assert_eq!(ct.n(), n);
        }
    }
}

#[test]
fn elliptic_census_invariants() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25] {
        let k = FieldCtx::new(q).unwrap();
        let census = EllipticCensus::new(&k).unwrap();
        let qi = q as i64;
        assert_eq!(census.total_mass(), rat(qi, 1), "q = {q}");
        for (j, mass) in census.j_buckets() {
            assert_eq!(mass, Rat::one(), "q = {q}, j = {j}");
        }
        for r in census.records() {
            assert!(r.trace() * r.trace() <= 4 * qi);
            assert!(r.aut >= 2 && 24 % r.aut == 0, "q = {q}, aut {}", r.aut);
        }
        let freq_mass: Rat = census.frequency_table().values().sum();
        assert_eq!(freq_mass, rat(qi, 1));
        let weighted: Rat = census.frequency_table().iter().map(|(n, m)| m * rat(*n, 1)).sum();
        let direct: Rat = census.records().iter().map(|r| r.mass() * rat(r.n1, 1)).sum();
        assert_eq!(weighted, direct);
        assert_eq!(census.sigma_k(0).unwrap(), Int::from(-qi));
        for odd in [1u32, 3, 5, 7, 9, 11] {
            assert!(census.sigma_k(odd).unwrap().is_zero(), "q = {q}, k = {odd}");
        }
    }
}

#[test]
fn census_records_satisfy_functional_equation() {
    use moduli_census::strata::{quartic_census_f2, strata_census_g2};
    let mut all = Vec::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let k = FieldCtx::new(q).unwrap();
        all.extend(records_g1(&EllipticCensus::new(&k).unwrap()).unwrap());
        if q <= 5 {
            all.extend(records_from_strata(&strata_census_g2(&k).unwrap(), &k).unwrap());
        }
    }
    all.extend(records_from_strata(&quartic_census_f2().unwrap(), &FieldCtx::new(2).unwrap()).unwrap());
    let mut by_genus = BTreeMap::new();
    for r in &all {
        let w = r.weil().unwrap();
        assert!(w.functional_equation_holds(), "{r:?}");
        assert!(w.satisfies_weil_bounds(), "{r:?}");
        *by_genus.entry(r.genus()).or_insert(0usize) += 1;
    }
    assert_eq!(by_genus.keys().copied().collect::<Vec<_>>(), vec![1, 2, 3]);
}
