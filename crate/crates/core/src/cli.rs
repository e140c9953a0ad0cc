//! Command-line surface. [`run`] returns the process exit code: 0 success,
//! 1 verification mismatch, 2 usage, 3 capacity.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{fmt_rat, FieldCtx, Int};
use crate::census::EllipticCensus;
use crate::error::{CensusError, Result};
use crate::genus2::{SigmaAbcStore, TraceEngine};
use crate::mass;
use crate::modforms::hecke_trace;
use crate::moduli::m1n::{m1n_direct, m1n_equivariant, m1n_getzler};
use crate::moduli::mbar::mbar1n;
use crate::moduli::polyfit::poly_fit_and_check;
use crate::moduli::CycleType;
use crate::store::{self, Report};
use crate::strata::{
    self, build_ss_char2, build_ss_oddp, closed_strata, quotient_curve, strata_census_g1, strata_census_g2,
    strata_census_g3_char2, StrataCensus,
};
use crate::verify::{self, references};

#[derive(Parser, Debug)]
#[command(name = "moduli-census", version, about = "Exact stacky point counts of low-genus moduli over finite fields")]
pub struct Cli {
    /// Annotate numbers that have a tabulated reference value.
    #[arg(long, global = true)]
    pub explain: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write census cache records (JSON lines).
    Census {
        family: Family,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Read from or populate the cache under $MODULI_CACHE_DIR.
        #[arg(long)]
        cache: bool,
    },
    /// `σ_k(q)` in genus one, `σ_{a,b}(q)` in genus two.
    Sigma {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        weight: Vec<i64>,
    },
    /// Hecke traces on level-one modular forms of degree 1, 2, 3.
    Trace(TraceArgs),
    /// `#M_{1,n}(F_q)`, optionally twisted by a cycle type.
    M1n {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Route::Direct)]
        route: Route,
        /// Cycle lengths of the permutation twisting the markings.
        #[arg(long, value_delimiter = ',')]
        cycle: Option<Vec<usize>>,
    },
    /// `#M̄_{1,n}(F_q)`.
    Mbar1n {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
    },
    /// Fit a polynomial in `q` to a TSV with columns `q` and `count`.
    Fitpoly {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        degree: usize,
        /// Require palindromic integer coefficients of exact degree.
        #[arg(long)]
        complete: bool,
    },
    /// Masses of `p`-rank strata.
    Strata {
        #[arg(long = "char")]
        characteristic: u32,
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        q: u64,
        /// Print the full table by invariants instead of the closed strata.
        #[arg(long)]
        table: bool,
    },
    /// Mass formulas for supersingular loci.
    Mass {
        #[arg(long, value_enum)]
        what: MassKind,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        g: usize,
    },
    /// Supersingular Artin–Schreier curves.
    BuildSs(BuildSsArgs),
    /// Ingest externally computed values.
    Ingest {
        what: IngestKind,
        file: PathBuf,
    },
    /// Run acceptance checks.
    Verify {
        /// `all` or a criterion number.
        target: String,
    },
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    pub degree: TraceDegree,
    #[arg(long)]
    pub prime: u64,
    /// `k`, `j,k` or `i,j,k`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub weight: Vec<i64>,
    /// `σ_{a,b,c}` records; defaults to the ingested store, then the bundled one.
    #[arg(long)]
    pub sigma_abc: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BuildSsArgs {
    #[arg(long = "char")]
    pub characteristic: u32,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Coefficients of the additive polynomial `R`.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["quotient", "equation"])]
    pub r: Option<Vec<u32>>,
    /// `m,d,h` for `y^{p^m} - y = x^d` with `d | p^h + 1`.
    #[arg(long, value_delimiter = ',', conflicts_with = "equation")]
    pub quotient: Option<Vec<u64>>,
    #[arg(long, requires = "genus")]
    pub equation: Option<String>,
    #[arg(long)]
    pub genus: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    G1,
    G2,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceDegree {
    G1,
    G2,
    G3,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Direct,
    Getzler,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MassKind {
    Deuring,
    Ekedahl,
    MoretBailly,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum IngestKind {
    SigmaAbc,
}

const SIGMA_ABC_FILE: &str = "sigma_abc.txt";

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CensusError::Usage(msg.into()))
}

fn field(q: u64) -> Result<FieldCtx> {
    FieldCtx::new(q)
}

fn prime(p: u64) -> Result<FieldCtx> {
    let k = FieldCtx::new(p)?;
    if k.m() != 1 {
        return usage(format!("{p} is not prime"));
    }
    Ok(k)
}

fn explain_line(out: &mut dyn Write, explain: bool, reference: Option<(String, Int)>, got: &Int) -> Result<()> {
    if let (true, Some((what, want))) = (explain, reference) {
        let verdict = if &want == got { "agrees" } else { "DIFFERS" };
        writeln!(out, "# reference {what} = {want}: {verdict}")?;
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let explain = cli.explain;
    match &cli.command {
        Command::Census { family, q, out: path, cache } => {
            let k = field(*q)?;
            let (kind, build): (store::RecordKind, Box<dyn FnOnce() -> Result<Vec<store::CensusCacheRecord>>>) =
                match family {
                    Family::G1 => (store::RecordKind::G1, Box::new(|| store::records_g1(&EllipticCensus::new(&k)?))),
                    Family::G2 => (
                        if k.p() == 2 { store::RecordKind::G2Char2 } else { store::RecordKind::G2 },
                        Box::new(|| store::records_from_strata(&strata_census_g2(&k)?, &k)),
                    ),
                };
            let records = if *cache {
                store::load_or_build(&store::cache_dir(), kind, &k, build)?
            } else {
                build()?
            };
            match path {
                Some(p) => {
                    store::write_records(p, &records)?;
                    writeln!(err, "{} records, total mass {}", records.len(), fmt_rat(&store::total_weight(&records)))?;
                }
                None => out.write_all(store::emit_records(&records)?.as_bytes())?,
            }
        }
        Command::Sigma { genus, q, weight } => {
            let k = field(*q)?;
            match (genus, weight.as_slice()) {
                (1, &[w]) if w >= 0 => {
                    let v = EllipticCensus::new(&k)?.sigma_k(w as u32)?;
                    writeln!(out, "{v}")?;
                    explain_line(out, explain, references::sigma(*q, w), &v)?;
                }
                (2, &[a, b]) => {
                    let v = TraceEngine::new(&k)?.sigma_ab(a, b)?;
                    writeln!(out, "{}", v.value)?;
                    if explain {
                        writeln!(out, "# M_2 part {}, A_1,1 part {}", fmt_rat(&v.m2_part), v.a11_part)?;
                    }
                }
                (1 | 2, _) => return usage("genus 1 takes --weight k, genus 2 takes --weight a,b"),
                _ => return usage(format!("genus {genus} not supported")),
            }
        }
        Command::Trace(t) => trace(t, explain, out)?,
        Command::M1n { q, n, route, cycle } => {
            let census = EllipticCensus::new(&field(*q)?)?;
            if let Some(lengths) = cycle {
                let ct = CycleType::new(lengths.clone());
                if ct.n() != *n {
                    return usage(format!("cycle type {ct} does not partition {n}"));
                }
                if *route != Route::Direct {
                    return usage("twisted counts use the direct route");
                }
                writeln!(out, "{}", m1n_equivariant(&census, &ct)?)?;
                return Ok(0);
            }
            let direct = matches!(route, Route::Direct | Route::Both).then(|| m1n_direct(&census, *n)).transpose()?;
            let getzler = if matches!(route, Route::Getzler | Route::Both) {
                let sigma = census.sigma_table((*n).max(1) as u32)?;
                Some(m1n_getzler(&sigma, *q as i64, *n)?)
            } else {
                None
            };
            for (name, v) in [("direct", &direct), ("getzler", &getzler)] {
                if let Some(v) = v {
                    writeln!(out, "{name}\t{v}")?;
                    explain_line(out, explain, references::m1n(*q, *n)?, v)?;
                }
            }
            if let (Some(a), Some(b)) = (&direct, &getzler) {
                if a != b {
                    writeln!(err, "routes disagree: direct {a}, getzler {b}")?;
                    return Ok(1);
                }
            }
        }
        Command::Mbar1n { q, n } => {
            let v = mbar1n(&EllipticCensus::new(&field(*q)?)?, *n)?;
            writeln!(out, "{v}")?;
            explain_line(out, explain, references::mbar1n(*q, *n), &v)?;
        }
        Command::Fitpoly { input, degree, complete } => {
            let samples = read_samples(input)?;
            match poly_fit_and_check(&samples, *degree, *complete) {
                Ok(p) => writeln!(out, "{p} symmetric={}", if p.is_palindromic() { "yes" } else { "no" })?,
                Err(CensusError::PolyCheck(msg)) => {
                    writeln!(err, "fit rejected: {msg}")?;
                    return Ok(1);
                }
                Err(e) => return Err(e),
            }
        }
        Command::Strata {
            characteristic,
            genus,
            q,
            table,
        } => {
            let k = field(*q)?;
            if k.p() != *characteristic {
                return usage(format!("F_{q} does not have characteristic {characteristic}"));
            }
            let census = match genus {
                1 => strata_census_g1(&k)?,
                2 => strata_census_g2(&k)?,
                3 if *q == 2 => strata_census_g3_char2()?.all()?,
                3 => return Err(CensusError::Capacity("genus-three strata need q = 2".into())),
                _ => return Err(CensusError::Capacity(format!("no genus-{genus} census"))),
            };
            census.check_invariants(*genus < 3)?;
            let report = if *table { strata_table(&census)? } else { closed_strata_report(&census)? };
            out.write_all(report.to_tsv()?.as_bytes())?;
        }
        Command::Mass { what, p, n, g } => {
            let report = mass_report(*what, *p, *n, *g)?;
            out.write_all(report.to_tsv()?.as_bytes())?;
        }
        Command::BuildSs(args) => {
            let model = build_ss(args)?;
            writeln!(out, "{}", serde_json::to_string(&model)?)?;
        }
        Command::Ingest { what: IngestKind::SigmaAbc, file } => {
            let incoming = SigmaAbcStore::from_file(file)?;
            let path = store::cache_dir().join(SIGMA_ABC_FILE);
            let mut existing = if path.exists() { SigmaAbcStore::from_file(&path)? } else { SigmaAbcStore::new() };
            let added = incoming.len();
            existing.merge(incoming)?;
            std::fs::create_dir_all(store::cache_dir())?;
            std::fs::write(&path, existing.emit())?;
            writeln!(out, "ingested {added} records; {} stored in {}", existing.len(), path.display())?;
        }
        Command::Verify { target } => {
            let outcomes = if target == "all" {
                verify::verify_all(true, |o| {
                    let _ = writeln!(out, "{o}");
                })
            } else {
                let id: u32 = target.parse().map_err(|_| CensusError::Usage(format!("unknown target `{target}`")))?;
                let o = verify::criterion(id)?.run();
                writeln!(out, "{o}")?;
                vec![o]
            };
            if let Some(bad) = outcomes.into_iter().find(|o| !o.passed()) {
                let code = bad.result.as_ref().err().map_or(1, |e| e.exit_code());
                writeln!(err, "criterion {} failed", bad.id)?;
                return Ok(code);
            }
        }
    }
    Ok(0)
}

fn trace(t: &TraceArgs, explain: bool, out: &mut dyn Write) -> Result<()> {
    let k = prime(t.prime)?;
    let p = t.prime;
    match (t.degree, t.weight.as_slice()) {
        (TraceDegree::G1, &[w]) if w >= 0 => {
            let v = hecke_trace(w as u32, p)?;
            writeln!(out, "{v}")?;
        }
        (TraceDegree::G2, &[j, kk]) => {
            let v = TraceEngine::new(&k)?.trace_degree2(j, kk)?;
            writeln!(out, "{v}")?;
            explain_line(out, explain, references::degree2(p, j, kk), &v)?;
        }
        (TraceDegree::G3, &[i, j, kk]) => {
            let store = sigma_abc_store(t.sigma_abc.as_deref())?;
            let v = TraceEngine::new(&k)?.trace_degree3(i, j, kk, &store)?;
            writeln!(out, "{v}")?;
            explain_line(out, explain, references::degree3(p, i, j, kk), &v)?;
        }
        (d, w) => return usage(format!("{d:?} trace does not take weight {w:?}")),
    }
    Ok(())
}

fn sigma_abc_store(path: Option<&Path>) -> Result<SigmaAbcStore> {
    if let Some(p) = path {
        return SigmaAbcStore::from_file(p);
    }
    let ingested = store::cache_dir().join(SIGMA_ABC_FILE);
    if ingested.exists() {
        return SigmaAbcStore::from_file(&ingested);
    }
    SigmaAbcStore::parse(verify::SIGMA_ABC_FIXTURE)
}

fn read_samples(path: &Path) -> Result<Vec<(i64, Int)>> {
    let report = Report::read(path)?;
    let (qi, ci) = (report.column("q")?, report.column("count")?);
    report
        .rows
        .iter()
        .map(|row| {
            let q = row[qi].trim().parse().map_err(|_| CensusError::Parse(format!("bad q `{}`", row[qi])))?;
            let c = row[ci].trim().parse().map_err(|_| CensusError::Parse(format!("bad count `{}`", row[ci])))?;
            Ok((q, c))
        })
        .collect()
}

fn closed_strata_report(census: &StrataCensus) -> Result<Report> {
    let g = census.genus;
    let mut r = Report::new(["stratum", "mass"]);
    for (i, m) in closed_strata(census).iter().enumerate() {
        let label = if i <= g { format!("f<={}", g - i) } else { format!("a={g}") };
        r.push([label, fmt_rat(m)])?;
    }
    r.push(["supersingular".to_string(), fmt_rat(&strata::supersingular_mass(census)?)])?;
    Ok(r)
}

fn strata_table(census: &StrataCensus) -> Result<Report> {
    let mut r = Report::new(["weil", "p_rank", "a_number", "newton", "mass"]);
    for (key, m) in &census.table {
        let weil: Vec<String> = key.weil.iter().map(|a| a.to_string()).collect();
        r.push([
            weil.join(","),
            key.p_rank.to_string(),
            key.a_number.to_string(),
            census.newton(key)?.to_string(),
            fmt_rat(m),
        ])?;
    }
    Ok(r)
}

fn mass_report(what: MassKind, p: u64, n: u64, g: usize) -> Result<Report> {
    let mut r = Report::new(["quantity", "formula", "census"]);
    match what {
        MassKind::Deuring => {
            for m in mass::deuring_report(p)? {
                let census = m.census.as_ref().map_or_else(|| "-".to_string(), fmt_rat);
                r.push([m.label.clone(), fmt_rat(&m.formula), census])?;
            }
        }
        MassKind::Ekedahl => {
            r.push([format!("superspecial mass g={g} p={p}"), fmt_rat(&mass::ekedahl_ss_mass(g, p)?), "-".into()])?;
            r.push([format!("p({g})"), fmt_rat(&mass::proportionality_constant(g)), "-".into()])?;
        }
        MassKind::MoretBailly => {
            let mb = mass::moret_bailly(p, n)?;
            let brute = if n <= mass::MAX_BRUTE_FORCE_LEVEL {
                mass::sp4_bruteforce(n)?.to_string()
            } else {
                "-".into()
            };
            r.push([format!("r({n})"), mb.r.to_string(), brute])?;
            r.push(["lines".to_string(), fmt_rat(&mb.lines), "-".into()])?;
            r.push(["superspecial points".to_string(), fmt_rat(&mb.superspecial), "-".into()])?;
            r.push(["points on Jacobians".to_string(), fmt_rat(&mb.m2_points), "-".into()])?;
            r.push(["integral".to_string(), mb.is_integral().to_string(), "-".into()])?;
            r.push(["incidence".to_string(), mb.incidence_holds().to_string(), "-".into()])?;
        }
    }
    Ok(r)
}

fn build_ss(args: &BuildSsArgs) -> Result<strata::SupersingularModel> {
    let p = args.characteristic;
    if let Some(r) = &args.r {
        let k = FieldCtx::with_pm(p, args.m)?;
        if let Some(&c) = r.iter().find(|&&c| c >= k.q()) {
            return usage(format!("coefficient {c} is not an element of F_{}", k.q()));
        }
        return if p == 2 { build_ss_char2(&k, r) } else { build_ss_oddp(&k, r) };
    }
    if let Some(v) = &args.quotient {
        let &[m, d, h] = v.as_slice() else {
            return usage("--quotient takes m,d,h");
        };
        return quotient_curve(p, m as u32, d, h as u32);
    }
    if let (Some(eq), Some(g)) = (&args.equation, args.genus) {
        return strata::construct::from_equation(p, eq, g);
    }
    usage("build-ss needs --r, --quotient or --equation with --genus")
}
