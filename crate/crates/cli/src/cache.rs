//! Append-only JSON-lines cache of scan records.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use ffl_core::lfun::Strategy;
use ffl_core::modl::MaximalityVerdict;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LRecord {
    pub m: u32,
    /// `L(T)` from the constant term up.
    pub coeffs: Vec<i128>,
    pub nu: usize,
    pub sign: i32,
    /// Degree after removing the forced roots at `±1`.
    pub nu_red: usize,
    pub strategy: Strategy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationVerdict {
    Trivial,
    Nontrivial,
    /// Trivial at the verified level, with unconfirmed short candidates.
    Suspect,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub lfun_ms: u64,
    pub relations_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub q: u64,
    pub curve: String,
    /// Twisting polynomial, constant term first.
    pub f: Vec<u32>,
    pub ms: Vec<u32>,
    pub lfunctions: Vec<LRecord>,
    /// `None` when certification or relation detection failed.
    pub verdict: Option<RelationVerdict>,
    pub failure: Option<String>,
    pub extra_rank: Option<usize>,
    /// Saturated relation lattice, only when nontrivial.
    pub lattice: Option<Vec<Vec<i64>>>,
    pub suspects: usize,
    pub height: u64,
    pub precision: u32,
    pub prime_budget: u32,
    pub maximality: Option<MaximalityVerdict>,
    pub timings: Timings,
}

impl ScanRecord {
    pub fn key(&self) -> CacheKey {
        CacheKey {
            q: self.q,
            curve: self.curve.clone(),
            f: self.f.clone(),
            ms: self.ms.clone(),
            height: self.height,
            precision: self.precision,
            prime_budget: self.prime_budget,
        }
    }

    /// One line, keys sorted.
    pub fn to_line(&self) -> Result<String, CliError> {
        Ok(serde_json::to_string(&serde_json::to_value(self)?)?)
    }

    pub fn from_line(s: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub q: u64,
    pub curve: String,
    pub f: Vec<u32>,
    pub ms: Vec<u32>,
    pub height: u64,
    pub precision: u32,
    pub prime_budget: u32,
}

pub struct Cache {
    path: Option<PathBuf>,
    records: HashMap<CacheKey, ScanRecord>,
}

impl Cache {
    pub fn memory() -> Self {
        Self {
            path: None,
            records: HashMap::new(),
        }
    }

    /// Loads every record of `path` (a missing file is an empty cache). Later
    /// lines win.
    pub fn open(path: &Path) -> Result<Self, CliError> {
        let mut records = HashMap::new();
        if path.exists() {
            for (i, line) in BufReader::new(File::open(path)?).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let r = ScanRecord::from_line(&line)
                    .map_err(|e| CliError::Invalid(format!("{}:{}: {e}", path.display(), i + 1)))?;
                records.insert(r.key(), r);
            }
        }
        Ok(Self {
            path: Some(path.to_path_buf()),
            records,
        })
    }

    pub fn get(&self, key: &CacheKey) -> Option<&ScanRecord> {
        self.records.get(key)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Appends in the given order through a single writer.
    pub fn append(&mut self, new: &[ScanRecord]) -> Result<(), CliError> {
        if let Some(path) = &self.path {
            if !new.is_empty() {
                let mut file = OpenOptions::new().create(true).append(true).open(path)?;
                let mut buf = String::new();
                for r in new {
                    buf.push_str(&r.to_line()?);
                    buf.push('\n');
                }
                file.write_all(buf.as_bytes())?;
            }
        }
        for r in new {
            self.records.insert(r.key(), r.clone());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ffl_core::lfun::Strategy;
    use proptest::prelude::*;

    fn record(f: Vec<u32>, coeffs: Vec<i128>, verdict: Option<RelationVerdict>, lfun_ms: u64) -> ScanRecord {
        ScanRecord {
            q: 5,
            curve: "legendre".into(),
            f,
            ms: vec![1],
            lfunctions: vec![LRecord {
                m: 1,
                nu: coeffs.len() - 1,
                coeffs,
                sign: -1,
                nu_red: 4,
                strategy: Strategy::Full,
            }],
            verdict,
            failure: None,
            extra_rank: Some(0),
            lattice: None,
            suspects: 0,
            height: 20,
            precision: 256,
            prime_budget: 100,
            maximality: Some(MaximalityVerdict::NotMaximal),
            timings: Timings { lfun_ms, relations_ms: 3 },
        }
    }

    #[test]
    fn keys_are_sorted() {
        let line = record(vec![2, 0, 1], vec![1, 2, 3], Some(RelationVerdict::Trivial), 1).to_line().unwrap();
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(line.starts_with("{\"curve\":\"legendre\""));
        assert!(line.contains("\"f\":[2,0,1]"));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let a = record(vec![1, 1, 1], vec![1, -4, 25], Some(RelationVerdict::Trivial), 5);
        let b = record(vec![2, 0, 1], vec![1, 0, 25], None, 7);
        let mut c = Cache::open(&path).unwrap();
        assert!(c.is_empty());
        c.append(&[a.clone(), b.clone()]).unwrap();
        let c = Cache::open(&path).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.get(&a.key()), Some(&a));
        assert_eq!(c.get(&b.key()), Some(&b));
    }

    proptest! {
        #[test]
        fn line_round_trip(
            f in proptest::collection::vec(0u32..25, 1..6),
            coeffs in proptest::collection::vec(-(1i128 << 62)..(1i128 << 62), 1..12),
            v in 0usize..4,
            ms in 0u64..100_000,
        ) {
            let verdict = [None, Some(RelationVerdict::Trivial), Some(RelationVerdict::Nontrivial), Some(RelationVerdict::Suspect)][v];
            let r = record(f, coeffs, verdict, ms);
            let back = ScanRecord::from_line(&r.to_line().unwrap()).unwrap();
            prop_assert_eq!(back, r);
        }
    }
}
