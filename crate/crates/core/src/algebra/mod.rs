//! Exact arithmetic: finite fields, `Q(√d)`, and univariate polynomials over
//! any of them.

pub mod factor;
pub mod field;
pub mod poly;
pub mod quad;
pub mod ring;

use thiserror::Error;

pub use factor::{
    factor, factor_over_prime_field, irreducibles_up_to, is_irreducible, is_squarefree, FqPoly,
    Factorization,
};
pub use field::{field, FiniteField, FqElem};
pub use poly::UniPoly;
pub use quad::{QuadElem, QuadField};
pub use ring::{Field, Integers, Rationals, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("domain error: {0}")]
    Domain(String),
}

/// Quadratic character of `x` in `field`.
pub fn quad_char(field: &FiniteField, x: FqElem) -> i32 {
    field.quad_char(x)
}
