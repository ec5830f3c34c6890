//! Mod-ℓ analysis: reciprocal characteristic polynomials, spinor classes,
//! censuses, orthogonal group orders and factorization-pattern evidence for
//! large Galois groups.

pub mod census;
pub mod groups;
pub mod maximality;
pub mod poly;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::AlgebraError;

pub use census::{census_by_pairs, equidist_check, theta0_census, Census};
pub use groups::{
    brute_isometry_oracle, group_order, order_ratio_bounds, FormType, GroupFamily, IsometryGroup, RatioSweep,
};
pub use maximality::{maximality_evidence, MaximalityReport, MaximalityVerdict};
pub use poly::{is_reciprocal, reduce_f, spinor_class, split_separable, ModLPoly};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModlError {
    #[error("{0}")]
    Domain(String),
    #[error("f(-1) = 0: -1 is a root")]
    Boundary,
    #[error("exhaustive enumeration refused for N = {n}, l = {ell}")]
    RangeExceeded { n: usize, ell: u32 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An element of `F_ℓ / (F_ℓ^×)²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassModSquares {
    Zero,
    Square,
    Nonsquare,
}

impl ClassModSquares {
    pub fn of(ell: u32, x: i64) -> Self {
        let x = x.rem_euclid(ell as i64) as u64;
        if x == 0 {
            return Self::Zero;
        }
        if legendre(x, ell as u64) == 1 {
            Self::Square
        } else {
            Self::Nonsquare
        }
    }

    pub fn mul(self, o: Self) -> Self {
        match (self, o) {
            (Self::Zero, _) | (_, Self::Zero) => Self::Zero,
            (a, b) if a == b => Self::Square,
            _ => Self::Nonsquare,
        }
    }

    pub fn from_sign(s: i32) -> Self {
        match s {
            0 => Self::Zero,
            1 => Self::Square,
            _ => Self::Nonsquare,
        }
    }
}

/// Euler's criterion for an odd prime `p`.
pub fn legendre(x: u64, p: u64) -> i32 {
    let mut r = 1u64;
    let mut b = x % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    match r {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

pub fn is_odd_prime(ell: u32) -> bool {
    ell > 2 && (2..).take_while(|d| d * d <= ell).all(|d| ell % d != 0)
}
