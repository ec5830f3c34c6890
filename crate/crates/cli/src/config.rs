use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by every subcommand.
#[derive(Clone, Debug, Args, Serialize)]
pub struct RunConfig {
    #[arg(long, default_value_t = 5, global = true)]
    pub q: u64,
    /// Degree of the twisting polynomial.
    #[arg(long, default_value_t = 2, global = true)]
    pub d: usize,
    /// Number of odd symmetric powers `1, 3, …, 2k-1`.
    #[arg(long, default_value_t = 1, global = true)]
    pub k: u32,
    #[arg(long, default_value_t = 20, global = true)]
    pub height: u64,
    #[arg(long = "precision-bits", default_value_t = 256, global = true)]
    pub precision_bits: u32,
    #[arg(long = "prime-budget", default_value_t = 100, global = true)]
    pub prime_budget: u32,
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[arg(long, global = true)]
    #[serde(skip)]
    pub threads: Option<usize>,
    /// Refusal threshold for the fiber-enumeration cost `Σ q^{2n}`.
    #[arg(long = "max-cost", default_value_t = 1e10, global = true)]
    pub max_cost: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            q: 5,
            d: 2,
            k: 1,
            height: 20,
            precision_bits: 256,
            prime_budget: 100,
            cache: None,
            format: Format::Json,
            seed: 0,
            threads: None,
            max_cost: 1e10,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.k == 0 {
            return Err(CliError::Invalid("k must be at least 1".into()));
        }
        if self.d == 0 {
            return Err(CliError::Invalid("d must be at least 1".into()));
        }
        if self.height < 1 || self.precision_bits < 64 {
            return Err(CliError::Invalid("height ≥ 1 and precision ≥ 64 bits required".into()));
        }
        if ffl_core::algebra::field::prime_power(self.q).is_none() {
            return Err(CliError::Invalid(format!("q = {} is not a prime power", self.q)));
        }
        if self.q % 2 == 0 || self.q % 3 == 0 {
            return Err(CliError::Invalid("characteristic must be at least 5".into()));
        }
        Ok(())
    }

    /// Odd symmetric powers scanned.
    pub fn ms(&self) -> Vec<u32> {
        (1..=self.k).map(|i| 2 * i - 1).collect()
    }
}
