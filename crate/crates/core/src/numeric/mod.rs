//! Multiprecision fixed-point arithmetic and polynomial root refinement.

pub mod fixed;
pub mod roots;

use thiserror::Error;

pub use fixed::{atan2, cos_sin, pi, Complex, Fixed};
pub use roots::{polynomial_roots, RootSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericError {
    #[error("root refinement did not converge (last step 2^{last_step_log2})")]
    NoConvergence { last_step_log2: i64 },
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

/// Serializes an exact rational as the string `"p/q"` (or `"p"`).
pub fn serialize_rational<S: serde::Serializer>(r: &num_rational::BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Serializes an integer as its decimal string.
pub fn serialize_bigint<S: serde::Serializer>(n: &num_bigint::BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}
