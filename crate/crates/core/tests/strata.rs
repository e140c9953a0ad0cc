use moduli_census::algebra::field::FieldCtx;
use moduli_census::algebra::{rat, rat_int, Rat, WeilData};
use moduli_census::genus2::enumerate_g2;
use moduli_census::strata::*;

fn check_invariants(c: &StrataCensus, twist_closed: bool) {
    c.check_invariants(twist_closed).unwrap();
    for key in c.table.keys() {
        assert!(bound_check(c.genus as u64, key.a_number as u64, c.p as u64).is_empty());
    }
}

#[test]
fn genus_two_char2_closed_strata() {
    for q in [2u64, 4, 8] {
        let c = strata_census_g2_char2(&FieldCtx::new(q).unwrap()).unwrap();
        assert_eq!(closed_strata(&c), vec![rat_int(q.pow(3)), rat_int(q * q), rat_int(q), rat_int(0)], "q = {q}");
        check_invariants(&c, true);
    }
}

#[test]
fn genus_two_odd_strata() {
    for q in [3u64, 5, 9] {
        let k = FieldCtx::new(q).unwrap();
        let c = strata_census_g2_odd(&k).unwrap();
        assert_eq!(c.total(), rat_int(q.pow(3)));
        assert_eq!(c.weil_masses().unwrap(), enumerate_g2(&k).unwrap());
        check_invariants(&c, true);
        let strata = closed_strata(&c);
        assert!(strata.windows(2).take(2).all(|w| w[0] >= w[1]));
    }
}

#[test]
fn elliptic_strata() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25] {
        let c = strata_census_g1(&FieldCtx::new(q).unwrap()).unwrap();
        assert_eq!(c.total(), rat_int(q));
        check_invariants(&c, true);
    }
}

#[test]
fn genus_three_char2() {
    let c = strata_census_g3_char2().unwrap();
    let all = c.all().unwrap();
    assert_eq!(all.total(), rat_int(97));
    assert_eq!(closed_strata(&all)[..4], [rat_int(97), rat_int(48), rat_int(28), rat_int(12)]);
    assert_eq!(supersingular_mass(&all).unwrap(), rat_int(4));
    let h = &c.hyperelliptic;
    assert_eq!(closed_strata(h)[..4], [rat_int(32), rat_int(16), rat_int(12), rat_int(4)]);
    assert_eq!(supersingular_mass(h).unwrap(), rat_int(0));
    assert_eq!(closed_strata(&all)[4], rat_int(0));
    // a twisted Jacobian of a non-hyperelliptic curve is not a Jacobian
    check_invariants(&c.quartic, false);
    assert!(!c.quartic.twist_symmetric());
    check_invariants(h, true);
}

#[test]
fn hasse_witt_examples() {
    let k2 = FieldCtx::new(2).unwrap();
    let e = CurveModel::Elliptic { a: vec![0, 0, 1, 0, 0] };
    assert_eq!(hasse_witt(&k2, &e).unwrap().stable_rank(&k2), 0);

    let k3 = FieldCtx::new(3).unwrap();
    let c = CurveModel::Hyperelliptic {
        genus: 2,
        h: vec![],
        f: vec![1, 0, 0, 0, 0, 1, 0],
    };
    let hw = hasse_witt(&k3, &c).unwrap();
    assert_eq!(hw.matrix, vec![vec![0, 0], vec![1, 0]]);
    assert_eq!((hw.rank(&k3), hw.stable_rank(&k3), hw.a_number(&k3)), (1, 0, 1));
    let w = moduli_census::strata::models::weil_data(&k3, &c).unwrap();
    assert!(NewtonPolygon::from_weil(&w, 3).is_supersingular());
}

#[test]
fn klein_quartic_is_smooth() {
    use moduli_census::strata::models::{quartic_is_smooth, QUARTIC_MONOMIALS};
    let k = FieldCtx::new(2).unwrap();
    let coeffs = |monos: &[(u32, u32, u32)]| -> Vec<u32> {
        QUARTIC_MONOMIALS.iter().map(|m| monos.contains(m) as u32).collect()
    };
    // x^3 y + y^3 z + z^3 x
    assert!(quartic_is_smooth(&k, &coeffs(&[(3, 1, 0), (0, 3, 1), (1, 0, 3)])).unwrap());
    // nodal cubic times a line: (y^2 z + x^3 + x^2 z) x
    assert!(!quartic_is_smooth(&k, &coeffs(&[(1, 2, 1), (4, 0, 0), (3, 0, 1)])).unwrap());
}

#[test]
fn supersingular_constructions() {
    let k2 = FieldCtx::new(2).unwrap();
    let c = build_ss_char2(&k2, &[1, 0, 1]).unwrap();
    assert_eq!(c.model.to_string(), "y^2+y = x^5+x^2");
    assert_eq!((c.claimed_genus, c.computed_genus, c.supersingular), (2, Some(2), Status::Verified));
    let c = build_ss_char2(&k2, &[0, 1, 0, 1]).unwrap();
    assert_eq!((c.claimed_genus, c.supersingular), (4, Status::Verified));
    let c = build_ss_char2(&k2, &[1, 1, 1, 1, 1]).unwrap();
    assert_eq!((c.claimed_genus, c.computed_genus, c.supersingular), (8, Some(8), Status::Claimed));

    let k3 = FieldCtx::new(3).unwrap();
    let c = build_ss_oddp(&k3, &[1, 1]).unwrap();
    assert_eq!((c.claimed_genus, c.computed_genus, c.supersingular), (3, Some(3), Status::Verified));
    let c = build_ss_oddp(&FieldCtx::new(5).unwrap(), &[2]).unwrap();
    assert_eq!((c.claimed_genus, c.supersingular), (2, Status::Verified));

    let c = quotient_curve(3, 1, 2, 1).unwrap();
    assert_eq!((c.claimed_genus, c.supersingular), (1, Status::Verified));
    let c = quotient_curve(3, 2, 2, 1).unwrap();
    assert_eq!((c.claimed_genus, c.supersingular), (4, Status::Verified));
    let c = quotient_curve(5, 1, 3, 1).unwrap();
    assert_eq!((c.claimed_genus, c.supersingular), (4, Status::Verified));
    assert!(quotient_curve(5, 1, 4, 1).is_err());
}

#[test]
fn large_genus_models() {
    let ex = large_genus_examples().unwrap();
    assert_eq!(ex[0].model.to_string(), "y^256+y^64+y^4+y = x^68+x^20+x^17+x^12+x^10");
    assert_eq!(ex[1].model.to_string(), "y^27+y^9+y^3+y = x^246+x^84+x^82");
    assert_eq!(ex[0].computed_genus, Some(2021));
    assert_eq!(ex[1].computed_genus, Some(999));
    assert!(ex.iter().all(|e| e.supersingular == Status::Claimed));
}

#[test]
fn newton_polygon_of_product() {
    let w = WeilData::from_coefficients(5, &[3, 10]).unwrap();
    // (t^2 - 3t + 5)(t^2 + 5)
    assert_eq!(NewtonPolygon::from_weil(&w, 5).slopes(), &[rat(0, 1), rat(1, 2), rat(1, 2), rat(1, 1)]);
    let _: Rat = rat(0, 1);
}
