//! The acceptance criteria as runnable checks.

use std::fmt::{self, Debug};
use std::time::{Duration, Instant};

use num_traits::Zero;

use crate::algebra::{rat, rat_int, FieldCtx, Int, Rat};
use crate::census::EllipticCensus;
use crate::error::{CensusError, Result};
use crate::genus2::{calibrate, SigmaAbcStore, TraceEngine, CALIBRATION};
use crate::mass;
use crate::modforms::{eichler_shimura_check, hecke_trace, tau};
use crate::moduli::m1n::{m1n_direct, m1n_getzler};
use crate::moduli::mbar::mbar1n;
use crate::moduli::polyfit::{poly_fit_and_check, PolynomialInQ};
use crate::strata::{
    build_ss_char2, build_ss_oddp, closed_strata, quotient_curve, strata_census_g1, strata_census_g2_char2,
    strata_census_g2_odd, strata_census_g3_char2, supersingular_mass, Status,
};

/// Stored `σ_{a,b,c}(p)` records for the degree-three check.
pub const SIGMA_ABC_FIXTURE: &str = include_str!("../data/sigma_abc.txt");

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub budget: Duration,
    run: fn() -> Result<()>,
}

#[derive(Debug)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub elapsed: Duration,
    pub budget: Duration,
    pub result: Result<()>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.result.is_ok()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let secs = self.elapsed.as_secs_f64();
        match &self.result {
            Ok(()) => write!(f, "criterion {:>2} {}: PASS ({secs:.2}s)", self.id, self.name),
            Err(e) => write!(f, "criterion {:>2} {}: FAIL ({secs:.2}s): {e}", self.id, self.name),
        }
    }
}

impl Criterion {
    pub fn run(&self) -> Outcome {
        let start = Instant::now();
        let mut result = (self.run)();
        let elapsed = start.elapsed();
        if result.is_ok() && elapsed > self.budget {
            result = Err(CensusError::Capacity(format!(
                "took {:.1}s, budget {:.0}s",
                elapsed.as_secs_f64(),
                self.budget.as_secs_f64()
            )));
        }
        Outcome {
            id: self.id,
            name: self.name,
            elapsed,
            budget: self.budget,
            result,
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, secs, run| Criterion {
        id,
        name,
        budget: Duration::from_secs(secs),
        run,
    };
    vec![
        c(1, "elliptic census over F_3", 1, elliptic_f3),
        c(2, "sigma_n table", 1, sigma_table),
        c(3, "Eichler-Shimura", 5, eichler_shimura),
        c(4, "M_1,n two routes", 120, m1n_routes),
        c(5, "compactified M_1,n", 600, mbar1n_table),
        c(6, "genus-two traces", 1800, genus_two_traces),
        c(7, "degree-three composer", 1, degree_three),
        c(8, "characteristic-2 strata", 3600, char2_strata),
        c(9, "strata invariants", 600, strata_invariants),
        c(10, "mass formulas", 30, mass_formulas),
    ]
}

pub fn criterion(id: u32) -> Result<Criterion> {
    criteria()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| CensusError::Usage(format!("no acceptance criterion {id}")))
}

/// Runs every criterion in order, stopping at the first failure when `fail_fast`.
pub fn verify_all(fail_fast: bool, mut report: impl FnMut(&Outcome)) -> Vec<Outcome> {
    let mut out = Vec::new();
    for c in criteria() {
        let o = c.run();
        report(&o);
        let failed = !o.passed();
        out.push(o);
        if failed && fail_fast {
            break;
        }
    }
    out
}

fn expect_eq<T: PartialEq + Debug>(what: impl fmt::Display, got: T, want: T) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(CensusError::Consistency(format!("{what}: got {got:?}, expected {want:?}")))
    }
}

fn expect(what: impl fmt::Display, ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(CensusError::Consistency(what.to_string()))
    }
}

fn census(q: u64) -> Result<EllipticCensus> {
    EllipticCensus::new(&FieldCtx::new(q)?)
}

fn poly(coeffs_high_first: &[i64]) -> PolynomialInQ {
    PolynomialInQ {
        coeffs: coeffs_high_first.iter().rev().map(|&c| Int::from(c)).collect(),
    }
}

fn elliptic_f3() -> Result<()> {
    let c = census(3)?;
    expect_eq("class count", c.records().len(), 8)?;
    // (#C(F_3), #Aut, j)
    let mut want = vec![(6, 2, 2), (2, 2, 2), (3, 2, 1), (5, 2, 1), (4, 2, 0), (4, 6, 0), (7, 6, 0), (1, 6, 0)];
    let mut got: Vec<(i64, u32, u32)> = c.records().iter().map(|r| (r.n1, r.aut, r.j)).collect();
    want.sort_unstable();
    got.sort_unstable();
    expect_eq("classes", got, want)?;
    let freq: Vec<(i64, Rat)> = c.frequency_table().into_iter().collect();
    let want = vec![
        (1, rat(1, 6)),
        (2, rat(1, 2)),
        (3, rat(1, 2)),
        (4, rat(2, 3)),
        (5, rat(1, 2)),
        (6, rat(1, 2)),
        (7, rat(1, 6)),
    ];
    expect_eq("frequency list", freq, want)?;
    for (j, m) in c.j_buckets() {
        expect_eq(format!("mass of j = {j}"), m, rat_int(1))?;
    }
    Ok(())
}

const SIGMA_TABLE: [(u64, [i64; 9]); 4] = [
    (2, [-2, 1, 1, 1, 1, -23, 1, 217, -527]),
    (3, [-3, 1, 1, 1, 1, 253, 1, -3347, -4283]),
    (5, [-5, 1, 1, 1, 1, 4831, 1, 52111, -1025849]),
    (7, [-7, 1, 1, 1, 1, -16743, 1, 2822457, 3225993]),
];

fn sigma_table() -> Result<()> {
    for (p, row) in SIGMA_TABLE {
        let sigma = census(p)?.sigma_table(17)?;
        for (n, s) in sigma.iter().enumerate() {
            let want = if n % 2 == 1 { Int::zero() } else { Int::from(row[n / 2]) };
            expect_eq(format!("sigma_{n}({p})"), s, &want)?;
        }
    }
    Ok(())
}

fn eichler_shimura() -> Result<()> {
    expect_eq("tau(2)", tau(2)?, Int::from(-24))?;
    expect_eq("tau(3)", tau(3)?, Int::from(252))?;
    for p in [2u64, 3, 5, 7] {
        let c = census(p)?;
        for k in (2..=16u32).step_by(2) {
            expect(format!("Eichler-Shimura at k = {k}, p = {p}"), eichler_shimura_check(k, &c)?)?;
            expect_eq(format!("sigma_{k}({p})"), c.sigma_k(k)?, hecke_trace(k + 2, p)? + 1)?;
        }
    }
    Ok(())
}

fn m1n_polynomials() -> Vec<PolynomialInQ> {
    vec![
        poly(&[1, 0]),
        poly(&[1, 0, 0]),
        poly(&[1, 0, 0, -1]),
        poly(&[1, 0, -1, -3, 3]),
        poly(&[1, 0, -5, -1, 15, -12]),
        poly(&[1, 0, -15, 25, 19, -80, 60]),
        poly(&[1, 0, -35, 125, -126, -155, 490, -360]),
    ]
}

fn m1n_routes() -> Result<()> {
    let table = m1n_polynomials();
    for q in [2u64, 3, 4, 5, 7] {
        let c = census(q)?;
        let sigma = c.sigma_table(7)?;
        for n in 1..=7 {
            let direct = m1n_direct(&c, n)?;
            expect_eq(format!("routes for M_1,{n} over F_{q}"), &m1n_getzler(&sigma, q as i64, n)?, &direct)?;
            expect_eq(format!("M_1,{n} over F_{q}"), direct, table[n - 1].eval(q as i64))?;
        }
    }
    let m10 = poly(&[1, 0, -210, 2274, -11655, 34944, -62140, 42126, 89124, -245664, 181440]);
    let m11 = poly(&[1, 0, -330, 4575, -30657, 124992, -336820, 584550, -406769, -865316, 2437776, -1814400]);
    for p in [2u64, 3, 5] {
        let c = census(p)?;
        let sigma = c.sigma_table(10)?;
        for (n, want) in [(10, m10.eval(p as i64)), (11, m11.eval(p as i64) - tau(p as usize)?)] {
            let direct = m1n_direct(&c, n)?;
            expect_eq(format!("routes for M_1,{n} over F_{p}"), &m1n_getzler(&sigma, p as i64, n)?, &direct)?;
            expect_eq(format!("M_1,{n} over F_{p}"), direct, want)?;
        }
    }
    Ok(())
}

fn mbar1n_polynomials() -> Vec<PolynomialInQ> {
    vec![
        poly(&[1, 1]),
        poly(&[1, 2, 1]),
        poly(&[1, 5, 5, 1]),
        poly(&[1, 12, 23, 12, 1]),
        poly(&[1, 27, 102, 102, 27, 1]),
        poly(&[1, 58, 421, 756, 421, 58, 1]),
    ]
}

fn mbar1n_table() -> Result<()> {
    let table = mbar1n_polynomials();
    let qs = [2u64, 3, 4, 5, 7, 8, 9];
    let censuses = qs.iter().map(|&q| census(q)).collect::<Result<Vec<_>>>()?;
    for n in 1..=6 {
        let mut samples = Vec::new();
        for (q, c) in qs.iter().zip(&censuses) {
            let v = mbar1n(c, n)?;
            if [2, 3, 5].contains(q) {
                expect_eq(format!("M̄_1,{n} over F_{q}"), &v, &table[n - 1].eval(*q as i64))?;
            }
            samples.push((*q as i64, v));
        }
        let fit = poly_fit_and_check(&samples, n, true)?;
        expect_eq(format!("fitted M̄_1,{n}"), fit, table[n - 1].clone())?;
    }
    Ok(())
}

const S88: [(u64, &str); 3] = [(3, "-6408"), (5, "-30774900"), (7, "451366384")];
const S035: [(u64, &str); 3] = [
    (3, "-11824551571578840"),
    (5, "9470081642319930937500"),
    (7, "-10370198954152041951342796400"),
];

fn parse_int(s: &str) -> Result<Int> {
    s.parse().map_err(|_| CensusError::Parse(s.into()))
}

fn genus_two_traces() -> Result<()> {
    for ((p, a), (_, b)) in S88.iter().zip(S035.iter()) {
        let e = TraceEngine::new(&FieldCtx::new(*p)?)?;
        expect_eq("calibration in use", e.calibration, CALIBRATION)?;
        if *p == 3 {
            expect_eq("calibrations fitting the anchors", calibrate(&e)?, vec![CALIBRATION])?;
        }
        expect_eq(format!("Tr(T_{p}, S_8,8)"), e.trace_degree2(8, 8)?, parse_int(a)?)?;
        expect_eq(format!("Tr(T_{p}, S_0,35)"), e.trace_degree2(0, 35)?, parse_int(b)?)?;
    }
    Ok(())
}

fn degree_three() -> Result<()> {
    let store = SigmaAbcStore::parse(SIGMA_ABC_FIXTURE)?;
    let cases = [((6, 3, 6), [0i64, -453600]), ((4, 2, 8), [9504, 970272])];
    for (pi, p) in [2u64, 3].into_iter().enumerate() {
        let e = TraceEngine::new(&FieldCtx::new(p)?)?;
        for ((i, j, k), want) in cases {
            expect_eq(format!("Tr(T_{p}, S_{i},{j},{k})"), e.trace_degree3(i, j, k, &store)?, Int::from(want[pi]))?;
        }
    }
    Ok(())
}

fn char2_strata() -> Result<()> {
    for q in [2u64, 4, 8] {
        let c = strata_census_g2_char2(&FieldCtx::new(q)?)?;
        let want = vec![rat_int(q.pow(3)), rat_int(q * q), rat_int(q), rat_int(0)];
        expect_eq(format!("M_2 strata over F_{q}"), closed_strata(&c)[..4].to_vec(), want)?;
    }
    let g3 = strata_census_g3_char2()?;
    let all = g3.all()?;
    expect_eq("#M_3(F_2)", all.total(), rat_int(97))?;
    expect_eq("hyperelliptic mass", g3.hyperelliptic.total(), rat_int(32))?;
    expect_eq("supersingular mass", supersingular_mass(&all)?, rat_int(4))?;
    expect_eq("supersingular hyperelliptic mass", supersingular_mass(&g3.hyperelliptic)?, Rat::zero())?;
    Ok(())
}

fn strata_invariants() -> Result<()> {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25] {
        strata_census_g1(&FieldCtx::new(q)?)?.check_invariants(true)?;
    }
    for q in [3u64, 5, 7, 9] {
        strata_census_g2_odd(&FieldCtx::new(q)?)?.check_invariants(true)?;
    }
    for q in [2u64, 4, 8] {
        strata_census_g2_char2(&FieldCtx::new(q)?)?.check_invariants(true)?;
    }
    let g3 = strata_census_g3_char2()?;
    g3.hyperelliptic.check_invariants(true)?;
    // twisting a non-hyperelliptic Jacobian does not give a Jacobian
    g3.quartic.check_invariants(false)?;
    let (k2, k3, k5) = (FieldCtx::new(2)?, FieldCtx::new(3)?, FieldCtx::new(5)?);
    let models = [
        build_ss_char2(&k2, &[1, 0, 1])?,
        build_ss_char2(&k2, &[0, 1, 0, 1])?,
        build_ss_oddp(&k3, &[1, 1])?,
        build_ss_oddp(&k5, &[2])?,
        quotient_curve(3, 1, 2, 1)?,
        quotient_curve(3, 2, 2, 1)?,
        quotient_curve(5, 1, 3, 1)?,
    ];
    for m in models {
        expect(format!("{} verified supersingular", m.model), m.supersingular == Status::Verified)?;
        expect(format!("{} genus", m.model), m.computed_genus == Some(m.claimed_genus))?;
    }
    Ok(())
}

fn mass_formulas() -> Result<()> {
    for p in [2u64, 3, 5, 7, 11, 13] {
        let formula = mass::deuring(p)?;
        expect_eq(format!("Deuring at p = {p}"), mass::deuring_census(p)?, formula.clone())?;
        expect_eq(format!("(p - 1)/24 at p = {p}"), formula.1, rat(p as i64 - 1, 24))?;
    }
    let want = [rat(1, 24), rat(1, 5760), rat(1, 2903040), rat(1, 1393459200)];
    for (g, w) in want.into_iter().enumerate() {
        expect_eq(format!("p({})", g + 1), mass::proportionality_constant(g + 1), w)?;
    }
    expect_eq("r(2) by enumeration", mass::sp4_bruteforce(2)?, 720)?;
    expect_eq("r(2) by formula", mass::sp4_group_order(2)?, Int::from(720))?;
    for p in [2u64, 3, 5, 7, 11] {
        for n in 3..=12 {
            if !mass::fine_level(p, n) {
                continue;
            }
            let mb = mass::moret_bailly(p, n)?;
            expect(format!("integral counts at p = {p}, n = {n}"), mb.is_integral())?;
            expect(format!("incidence at p = {p}, n = {n}"), mb.incidence_holds())?;
            expect(
                format!("M_2 points at p = {p}, n = {n}"),
                mb.m2_points.is_zero() == (p <= 3),
            )?;
        }
    }
    Ok(())
}

/// Tabulated values, for annotating command output.
pub mod references {
    use super::*;

    pub fn sigma(q: u64, n: i64) -> Option<(String, Int)> {
        let (_, row) = SIGMA_TABLE.iter().find(|(p, _)| *p == q)?;
        let v = match n {
            n if n % 2 == 1 && n > 0 => Int::zero(),
            n if (0..=16).contains(&n) => Int::from(row[n as usize / 2]),
            _ => return None,
        };
        Some((format!("sigma_{n}({q})"), v))
    }

    pub fn m1n(q: u64, n: usize) -> Result<Option<(String, Int)>> {
        let q = q as i64;
        Ok(match n {
            1..=7 => Some(m1n_polynomials()[n - 1].eval(q)),
            10 => Some(poly(&[1, 0, -210, 2274, -11655, 34944, -62140, 42126, 89124, -245664, 181440]).eval(q)),
            11 if crate::algebra::field::is_prime(q as u64) => Some(
                poly(&[1, 0, -330, 4575, -30657, 124992, -336820, 584550, -406769, -865316, 2437776, -1814400]).eval(q)
                    - tau(q as usize)?,
            ),
            _ => None,
        }
        .map(|v| (format!("#M_1,{n}(F_{q})"), v)))
    }

    pub fn mbar1n(q: u64, n: usize) -> Option<(String, Int)> {
        let p = mbar1n_polynomials().get(n.checked_sub(1)?)?.clone();
        Some((format!("{p} at q = {q}"), p.eval(q as i64)))
    }

    pub fn degree2(p: u64, j: i64, k: i64) -> Option<(String, Int)> {
        let table: &[(u64, &str)] = match (j, k) {
            (8, 8) => &[(2, "1344"), S88[0], S88[1], S88[2]],
            (0, 35) => &[(2, "-25073418240"), S035[0], S035[1], S035[2]],
            _ => return None,
        };
        let (_, v) = table.iter().find(|(q, _)| *q == p)?;
        Some((format!("Tr(T_{p}, S_{j},{k})"), v.parse().ok()?))
    }

    pub fn degree3(p: u64, i: i64, j: i64, k: i64) -> Option<(String, Int)> {
        let v = match ((i, j, k), p) {
            ((6, 3, 6), 2) => 0,
            ((6, 3, 6), 3) => -453600,
            ((4, 2, 8), 2) => 9504,
            ((4, 2, 8), 3) => 970272,
            _ => return None,
        };
        Some((format!("Tr(T_{p}, S_{i},{j},{k})"), Int::from(v)))
    }
}
