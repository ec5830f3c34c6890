//! Polynomials over `F_ℓ` as characteristic polynomials of isometries.

use std::sync::Arc;

use crate::algebra::factor::factor;
use crate::algebra::{field, FiniteField, FqPoly, UniPoly};

use super::{is_odd_prime, ClassModSquares, ModlError};

/// A monic polynomial over `F_ℓ` with its reciprocity sign.
#[derive(Clone, Debug)]
pub struct ModLPoly {
    pub k: Arc<FiniteField>,
    pub f: FqPoly,
    pub eps: Option<i32>,
}

impl ModLPoly {
    pub fn new(k: Arc<FiniteField>, f: FqPoly) -> Result<Self, ModlError> {
        if k.degree() != 1 || !is_odd_prime(k.characteristic()) {
            return Err(ModlError::Domain("expected F_l with l an odd prime".into()));
        }
        if !f.is_monic(&*k) {
            return Err(ModlError::Domain("polynomial must be monic".into()));
        }
        let eps = is_reciprocal(&k, &f);
        Ok(Self { k, f, eps })
    }

    /// Coefficients from the constant term up.
    pub fn from_ints(ell: u32, coeffs: &[i64]) -> Result<Self, ModlError> {
        let k = field(ell, 1)?;
        let f = UniPoly::new(&*k, coeffs.iter().map(|&c| k.from_int(c)).collect());
        Self::new(k, f)
    }

    pub fn ell(&self) -> u32 {
        self.k.characteristic()
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap_or(0)
    }

    /// `f(x)` as an integer in `[0, ℓ)`.
    pub fn eval_int(&self, x: i64) -> i64 {
        self.k.to_index(self.f.eval(&*self.k, &self.k.from_int(x))) as i64
    }
}

/// `ε` with `T^N f(1/T) = ε f(T)`, if any.
pub fn is_reciprocal(k: &FiniteField, f: &FqPoly) -> Option<i32> {
    let n = f.degree()?;
    let rev = f.reversed(k);
    if rev.degree() != Some(n) {
        return None;
    }
    for eps in [1, -1] {
        if rev == f.scale(k, &k.from_int(eps as i64)) {
            return Some(eps);
        }
    }
    None
}

/// Strips the factors `1 + εT` (odd degree) or `1 - T²` (even degree,
/// `ε = -1`); the quotient is returned monic.
pub fn reduce_f(p: &ModLPoly) -> Result<ModLPoly, ModlError> {
    let k = &*p.k;
    let eps = p.eps.ok_or_else(|| ModlError::Domain("polynomial is not reciprocal".into()))?;
    let n = p.degree();
    let divisor = if n % 2 == 1 {
        UniPoly::new(k, vec![k.from_int(1), k.from_int(eps as i64)])
    } else if eps == -1 {
        UniPoly::new(k, vec![k.from_int(1), k.from_int(0), k.from_int(-1)])
    } else {
        return Ok(p.clone());
    };
    let (q, r) = p.f.divrem(k, &divisor)?;
    if !r.is_zero() {
        return Err(ModlError::Domain("forced factor does not divide".into()));
    }
    ModLPoly::new(p.k.clone(), q.monic(k))
}

/// `(separable, split)`.
pub fn split_separable(p: &ModLPoly) -> Result<(bool, bool), ModlError> {
    let k = &*p.k;
    if p.degree() == 0 {
        return Ok((true, true));
    }
    let separable = p.f.gcd(k, &p.f.derivative(k)).degree() == Some(0);
    let split = factor(k, &p.f)?.factors.iter().all(|(g, _)| g.degree() == Some(1));
    Ok((separable, split))
}

/// Class of `f(-1)` modulo squares.
pub fn spinor_class(p: &ModLPoly) -> Result<ClassModSquares, ModlError> {
    match ClassModSquares::of(p.ell(), p.eval_int(-1)) {
        ClassModSquares::Zero => Err(ModlError::Boundary),
        c => Ok(c),
    }
}
