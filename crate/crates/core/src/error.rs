use thiserror::Error;

/// Errors surfaced by the census engine.
///
/// The CLI maps these onto process exit codes: `Capacity` → 3, `Usage` → 2,
/// everything that signals a broken identity → 1.
#[derive(Debug, Error)]
pub enum CensusError {
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("invalid argument: {0}")]
    Usage(String),

    #[error("not a prime power: {0}")]
    NotPrimePower(u64),

    #[error("laurent window violation: exponent {exponent} outside [{lo}, {hi}]")]
    Window { exponent: i64, lo: i64, hi: i64 },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("non-integral value where an integer was required: {0}")]
    NonIntegral(String),

    #[error("polynomial check failed: {0}")]
    PolyCheck(String),

    #[error("unsupported curve model: {0}")]
    Unsupported(String),

    #[error("missing ingested record for {0}")]
    MissingRecord(String),

    #[error("cache schema mismatch: found version {found}, expected {expected}")]
    Schema { found: u32, expected: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CensusError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CensusError::Capacity(_) => 3,
            CensusError::Usage(_) | CensusError::NotPrimePower(_) | CensusError::Parse(_) | CensusError::Io(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CensusError>;
