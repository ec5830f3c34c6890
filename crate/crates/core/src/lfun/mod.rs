//! L-functions of symmetric powers of elliptic curves over `F_q(t)`: point
//! counts, Euler products, certification, unitarization and reduction.

pub mod build;
pub mod local;
pub mod oracle;
pub mod roots;
pub mod series;
pub mod unitary;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::numeric::NumericError;
use crate::surfaces::SurfaceError;

pub use build::{build_lfunction, build_lfunctions, estimate_cost, sign_of, BuildOptions, Certification, LPolynomial, Strategy, StrategyChoice};
pub use local::{sym_local_poly, sym_trace};
pub use oracle::{euler_series, local_factor};
pub use unitary::{angles, paired_inverse_roots, reduce, unitarize, UnitarizedL};

/// The certification step that rejected a candidate L-polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertCheck {
    Integrality,
    ConstantTerm,
    Degree,
    Sign,
    FunctionalEquation,
    RiemannHypothesis,
    Completion,
    Reduction,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LfunError {
    #[error("trace {a} violates the Hasse bound for q^n = {qn}")]
    Hasse { a: i64, qn: i64 },
    #[error("Sym^{m} of a proper quadratic twist equals that of the untwisted curve; even powers are not scanned over twist families")]
    EvenTwist { m: u32 },
    #[error("certification failed ({check:?}): {detail}")]
    Certification { check: CertCheck, detail: String },
    #[error("estimated cost {cost:e} exceeds the limit {limit:e}")]
    CostExceeded { cost: f64, limit: f64 },
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

impl From<AlgebraError> for LfunError {
    fn from(e: AlgebraError) -> Self {
        LfunError::Surface(SurfaceError::Algebra(e))
    }
}
