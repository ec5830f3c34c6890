//! Experiment harness: twist scans with an on-disk cache, self-tests and
//! table reports for the census, bound and density calculators.

pub mod cache;
pub mod commands;
pub mod config;
pub mod report;
pub mod scan;
pub mod selftest;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("estimated cost {cost:.3e} exceeds the limit {limit:.3e}")]
    Infeasible { cost: f64, limit: f64 },
    #[error("{0}")]
    Failure(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Infeasible { .. } => 3,
            CliError::Failure(_) | CliError::Io(_) | CliError::Json(_) => 1,
        }
    }
}

/// Parses `"1,0,1"` into integers.
pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|x| x.trim())
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| CliError::Invalid(format!("cannot parse {x:?} in {s:?}"))))
        .collect()
}
