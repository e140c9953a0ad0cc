//! Census cache records (JSON lines) and TSV reports.

mod report;

pub use report::Report;

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::field::FieldCtx;
use crate::algebra::{serde_frac, Rat, WeilData};
use crate::census::EllipticCensus;
use crate::error::{CensusError, Result};
use crate::strata::models::{hasse_invariant, CurveModel};
use crate::strata::{NewtonPolygon, StrataCensus};

pub const SCHEMA_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "MODULI_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordKind {
    G1,
    G2,
    G2Char2,
    Quartic,
}

impl RecordKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RecordKind::G1 => "g1",
            RecordKind::G2 => "g2",
            RecordKind::G2Char2 => "g2char2",
            RecordKind::Quartic => "quartic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    /// Coefficients of the defining polynomial, low degree first.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn of(k: &FieldCtx) -> Self {
        FieldSpec {
            p: k.p(),
            m: k.m(),
            modulus: k.modulus().to_vec(),
        }
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }
}

/// One curve with its weight and derived invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusCacheRecord {
    pub schema: u32,
    pub kind: RecordKind,
    pub field: FieldSpec,
    pub model: CurveModel,
    /// `N_1..N_g`.
    pub counts: Vec<i64>,
    /// `1/#Aut` for a class, or the total mass of the curves sharing this
    /// record's invariants.
    #[serde(with = "serde_frac")]
    pub weight: Rat,
    pub p_rank: usize,
    pub a_number: usize,
    #[serde(with = "serde_frac::vec")]
    pub slopes: Vec<Rat>,
}

impl CensusCacheRecord {
    fn sort_key(&self) -> (RecordKind, &FieldSpec, &CurveModel, &[i64]) {
        (self.kind, &self.field, &self.model, &self.counts)
    }

    pub fn genus(&self) -> usize {
        self.counts.len()
    }

    pub fn weil(&self) -> Result<WeilData> {
        WeilData::from_counts(self.field.q() as i64, &self.counts)
    }
}

pub fn sort_records(records: &mut [CensusCacheRecord]) {
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

/// One record per elliptic isomorphism class, weighted `1/#Aut`.
pub fn records_g1(census: &EllipticCensus) -> Result<Vec<CensusCacheRecord>> {
    let k = census.field();
    let field = FieldSpec::of(k);
    let mut out = Vec::with_capacity(census.records().len());
    for r in census.records() {
        let np = NewtonPolygon::from_weil(&WeilData::from_coefficients(k.q() as i64, &[r.trace()])?, k.p());
        out.push(CensusCacheRecord {
            schema: SCHEMA_VERSION,
            kind: RecordKind::G1,
            field: field.clone(),
            model: CurveModel::Elliptic { a: r.model.to_vec() },
            counts: vec![r.n1],
            weight: r.mass(),
            p_rank: np.p_rank(),
            a_number: (hasse_invariant(k, &r.model) == 0) as usize,
            slopes: np.slopes().to_vec(),
        });
    }
    sort_records(&mut out);
    Ok(out)
}

/// One record per strata key, carrying the key's representative and mass.
pub fn records_from_strata(census: &StrataCensus, k: &FieldCtx) -> Result<Vec<CensusCacheRecord>> {
    if k.q() != census.q {
        return Err(CensusError::Usage(format!("census over F_{} with field F_{}", census.q, k.q())));
    }
    let field = FieldSpec::of(k);
    let mut out = Vec::with_capacity(census.table.len());
    for (key, weight) in &census.table {
        let (h, f) = census
            .reps
            .get(key)
            .ok_or_else(|| CensusError::Consistency(format!("no representative for {key:?}")))?;
        let (kind, model) = match (census.genus, h.is_empty() && f.len() == 15) {
            (1, _) => (RecordKind::G1, CurveModel::Elliptic { a: f.clone() }),
            (3, true) => (RecordKind::Quartic, CurveModel::PlaneQuartic { coeffs: f.clone() }),
            (2, _) if census.p == 2 => (
                RecordKind::G2Char2,
                CurveModel::Hyperelliptic {
                    genus: 2,
                    h: h.clone(),
                    f: f.clone(),
                },
            ),
            (2, _) => (
                RecordKind::G2,
                CurveModel::Hyperelliptic {
                    genus: 2,
                    h: h.clone(),
                    f: f.clone(),
                },
            ),
            (g, _) => return Err(CensusError::Unsupported(format!("no cache kind for genus {g} records"))),
        };
        let w = census.weil(key)?;
        out.push(CensusCacheRecord {
            schema: SCHEMA_VERSION,
            kind,
            field: field.clone(),
            model,
            counts: (1..=census.genus).map(|d| w.count(d)).collect(),
            weight: weight.clone(),
            p_rank: key.p_rank,
            a_number: key.a_number,
            slopes: census.newton(key)?.slopes().to_vec(),
        });
    }
    sort_records(&mut out);
    Ok(out)
}

pub fn emit_records(records: &[CensusCacheRecord]) -> Result<String> {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r)?);
        out.push('\n');
    }
    Ok(out)
}

#[derive(Deserialize)]
struct SchemaProbe {
    schema: u32,
}

pub fn parse_record(line: &str) -> Result<CensusCacheRecord> {
    let probe: SchemaProbe = serde_json::from_str(line)?;
    if probe.schema != SCHEMA_VERSION {
        return Err(CensusError::Schema {
            found: probe.schema,
            expected: SCHEMA_VERSION,
        });
    }
    Ok(serde_json::from_str(line)?)
}

pub fn parse_records(text: &str) -> Result<Vec<CensusCacheRecord>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(parse_record).collect()
}

pub fn read_records(path: &Path) -> Result<Vec<CensusCacheRecord>> {
    let file = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut out = Vec::new();
    for line in file.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(parse_record(&line)?);
        }
    }
    Ok(out)
}

pub fn write_records(path: &Path, records: &[CensusCacheRecord]) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    file.write_all(emit_records(records)?.as_bytes())?;
    file.flush()?;
    Ok(())
}

/// `$MODULI_CACHE_DIR`, else `.moduli-cache` in the working directory.
pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".moduli-cache"))
}

pub fn cache_path(dir: &Path, kind: RecordKind, k: &FieldCtx) -> PathBuf {
    dir.join(format!("{}-p{}-m{}.jsonl", kind.as_str(), k.p(), k.m()))
}

/// Reads the cached records for `(kind, k)`, building and writing them on a miss.
pub fn load_or_build<F>(dir: &Path, kind: RecordKind, k: &FieldCtx, build: F) -> Result<Vec<CensusCacheRecord>>
where
    F: FnOnce() -> Result<Vec<CensusCacheRecord>>,
{
    let path = cache_path(dir, kind, k);
    if path.exists() {
        let records = read_records(&path)?;
        if let Some(r) = records.iter().find(|r| r.kind != kind || r.field != FieldSpec::of(k)) {
            return Err(CensusError::Consistency(format!(
                "{} holds a {} record over F_{}",
                path.display(),
                r.kind.as_str(),
                r.field.q()
            )));
        }
        return Ok(records);
    }
    let records = build()?;
    write_records(&path, &records)?;
    Ok(records)
}

/// Weighted totals of a record list.
pub fn total_weight(records: &[CensusCacheRecord]) -> Rat {
    records.iter().map(|r| r.weight.clone()).sum()
}
