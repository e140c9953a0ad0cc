use moduli_census::algebra::{rat, Int, Rat};
use moduli_census::mass::*;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[test]
fn deuring_against_census() {
    for p in PRIMES {
        let (h, m) = deuring(p).unwrap();
        let (hc, mc) = deuring_census(p).unwrap();
        assert_eq!(h, hc, "h_{p}");
        assert_eq!(m, mc, "mass at p = {p}");
        assert!(deuring_report(p).unwrap().iter().all(MassReport::matches));
    }
    assert_eq!(deuring(2).unwrap().1, rat(1, 24));
    assert_eq!(deuring_class_number(11).unwrap(), Int::from(2));
    assert_eq!(deuring_class_number(13).unwrap(), Int::from(1));
}

#[test]
fn proportionality_constants() {
    let want = [rat(1, 24), rat(1, 5760), rat(1, 2903040), rat(1, 1393459200)];
    for (g, w) in want.iter().enumerate() {
        assert_eq!(&proportionality_constant(g + 1), w);
    }
}

#[test]
fn superspecial_masses() {
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        assert_eq!(ekedahl_ss_mass(1, p).unwrap(), deuring(p).unwrap().1);
        assert_eq!(deg_v0_g1(p).unwrap(), deuring(p).unwrap().1);
    }
    assert_eq!(ekedahl_ss_mass(2, 3).unwrap(), rat(2 * 10, 5760));
    assert_eq!(ekedahl_ss_mass(3, 2).unwrap(), rat(5 * 7, 2903040));
    // genus two: the level-n count divided by r(n) is the same mass
    for p in [3u64, 5, 7, 11] {
        let mb = moret_bailly(p, 3).unwrap();
        assert_eq!(superspecial_mass_from_level(&mb), ekedahl_ss_mass(2, p).unwrap());
    }
}

#[test]
fn cycle_class_coefficients() {
    assert_eq!(vf_coefficient(1, 0, 7).unwrap(), Int::from(6));
    assert_eq!(vf_coefficient(2, 0, 5).unwrap(), Int::from(4 * 24));
    assert_eq!(vf_coefficient(3, 3, 5).unwrap(), Int::from(1));
    assert!(vf_coefficient(1, 2, 5).is_err());
}

#[test]
fn symplectic_group_orders() {
    for n in 1..=3u64 {
        assert_eq!(Int::from(sp4_bruteforce(n).unwrap()), sp4_group_order(n).unwrap(), "n = {n}");
    }
    assert_eq!(sp4_bruteforce(2).unwrap(), 720);
}

#[test]
fn moret_bailly_counts() {
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        for n in 1..=12u64 {
            let mb = moret_bailly(p, n).unwrap();
            assert!(mb.incidence_holds());
            if fine_level(p, n) {
                assert!(mb.is_integral(), "p = {p}, n = {n}");
            }
            assert_eq!(mb.m2_points == Rat::from_integer(0.into()), p <= 3, "p = {p}");
        }
    }
}
