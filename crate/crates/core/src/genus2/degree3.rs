//! Externally supplied values of the genus-three counting function
//! `σ_{a,b,c}(p)`, one record per line: `p a b c value`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::algebra::Int;
use crate::error::{CensusError, Result};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SigmaAbcStore {
    records: BTreeMap<(u64, i64, i64, i64), Int>,
}

impl SigmaAbcStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut store = Self::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || CensusError::Parse(format!("line {}: expected `p a b c value`, got `{line}`", lineno + 1));
            if fields.len() != 5 {
                return Err(bad());
            }
            let p: u64 = fields[0].parse().map_err(|_| bad())?;
            let abc: Vec<i64> = fields[1..4]
                .iter()
                .map(|s| s.parse().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            let value: Int = fields[4].parse().map_err(|_| bad())?;
            if !(abc[0] >= abc[1] && abc[1] >= abc[2] && abc[2] >= 0) {
                return Err(CensusError::Parse(format!(
                    "line {}: weight ({}, {}, {}) is not dominant",
                    lineno + 1,
                    abc[0],
                    abc[1],
                    abc[2]
                )));
            }
            store.insert(p, abc[0], abc[1], abc[2], value)?;
        }
        Ok(store)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Rejects a conflicting second value for the same key.
    pub fn insert(&mut self, p: u64, a: i64, b: i64, c: i64, value: Int) -> Result<()> {
        match self.records.get(&(p, a, b, c)) {
            Some(old) if *old != value => Err(CensusError::Consistency(format!(
                "σ_({a},{b},{c})({p}) ingested twice with different values"
            ))),
            _ => {
                self.records.insert((p, a, b, c), value);
                Ok(())
            }
        }
    }

    pub fn merge(&mut self, other: SigmaAbcStore) -> Result<()> {
        for ((p, a, b, c), v) in other.records {
            self.insert(p, a, b, c, v)?;
        }
        Ok(())
    }

    pub fn get(&self, p: u64, a: i64, b: i64, c: i64) -> Result<Int> {
        self.records
            .get(&(p, a, b, c))
            .cloned()
            .ok_or_else(|| CensusError::MissingRecord(format!("σ_({a},{b},{c})({p})")))
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        for ((p, a, b, c), v) in &self.records {
            let _ = writeln!(out, "{p} {a} {b} {c} {v}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_emit() {
        let s = SigmaAbcStore::parse("# comment\n3 10 6 4 -12\n\n2 11 5 2 7\n").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.get(3, 10, 6, 4).unwrap(), Int::from(-12));
        assert_eq!(SigmaAbcStore::parse(&s.emit()).unwrap(), s);
        assert!(matches!(s.get(5, 1, 1, 1), Err(CensusError::MissingRecord(_))));
        assert!(SigmaAbcStore::parse("3 1 2 0 5").is_err());
        assert!(SigmaAbcStore::parse("3 2 1 0 5\n3 2 1 0 6").is_err());
    }
}
