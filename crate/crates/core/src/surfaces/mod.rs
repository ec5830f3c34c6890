//! Elliptic curves over `F_q(t)` in short Weierstrass form: twists,
//! reduction types at places of `P¹`, and fiber traces.

pub mod curve;
pub mod reduction;
pub mod traces;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use curve::{legendre_curve, quadratic_twist, twisting_space, CurveKey, EllSurface, Provenance};
pub use reduction::{bad_places, conductor_degree, reduction_type, InertiaClass, Place, PlaceData, ReductionType};
pub use traces::{fiber_context, fiber_enumerations, fiber_trace, trace_table, FiberContext, TraceTable};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    #[error("characteristic {0} is not supported (need p >= 5)")]
    UnsupportedCharacteristic(u32),
    #[error("discriminant vanishes identically")]
    Singular,
    #[error("j-invariant is constant")]
    ConstantJ,
    #[error("cannot twist by the zero polynomial")]
    ZeroTwist,
    #[error("fiber is singular at this point")]
    BadFiber,
    #[error("trace {trace} violates the Hasse bound for q^n = {qn}")]
    HasseViolation { trace: i64, qn: i64 },
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
