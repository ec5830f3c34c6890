//! Multiplicative relations among the unitarized zeros of reduced
//! L-functions.

pub mod search;
pub mod zeros;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::LatticeError;
use crate::lfun::LfunError;

pub use search::{classify, find_relations, find_relations_with, verify_relation, RelationSearch, Verdict};
pub use zeros::{zero_system, ZeroBlock, ZeroSystem};

pub const DEFAULT_PRECISION: u32 = 256;
pub const DEFAULT_HEIGHT: u64 = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RelationsError {
    #[error("precision {bits} bits is below the {needed} bits required for height {height} in dimension {dim}")]
    Precision {
        bits: u32,
        needed: u32,
        height: u64,
        dim: usize,
    },
    #[error("root residual 2^{log2_residual} exceeds the tolerance 2^-{tolerance_bits}")]
    Residual { log2_residual: i64, tolerance_bits: u32 },
    #[error("the relation lattice does not contain the trivial relations")]
    Containment,
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Lfun(#[from] LfunError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Bits needed to detect relations of height `h` among `dim` angles.
pub fn required_precision(dim: usize, height: u64) -> u32 {
    let lg = (height.max(2) as f64).log2();
    (4.0 * dim as f64 * lg).ceil() as u32 + 64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Triviality {
    Trivial,
    Nontrivial,
}
