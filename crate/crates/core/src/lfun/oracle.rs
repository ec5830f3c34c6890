//! Place-by-place Euler product. Residue fields are realized as
//! `F_q[t]/(π)` directly, independently of the extension-field tables used
//! by the point-count route.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::factor::{from_indices, irreducibles_up_to, to_indices};
use crate::algebra::{FiniteField, FqPoly, UniPoly};
use crate::algebra::poly::series;
use crate::surfaces::reduction::model_at_infinity;
use crate::surfaces::{reduction_type, EllSurface, InertiaClass, Place, ReductionType};

use super::build::check_twist_gate;
use super::local::{invariant_dim, sym_local_poly};
use super::LfunError;

/// `-Σ_u χ(u³ + Au + B)` over `F_q[t]/(π)`, with χ read from a table of
/// squares.
pub fn residue_trace(k: &FiniteField, a: &FqPoly, b: &FqPoly, pi: &FqPoly) -> i64 {
    let e = pi.degree().unwrap();
    let q = k.size() as u64;
    let size = q.pow(e as u32);
    let elem = |mut idx: u64| {
        let mut digits = Vec::with_capacity(e);
        for _ in 0..e {
            digits.push((idx % q) as u32);
            idx /= q;
        }
        from_indices(k, &digits)
    };
    let mut squares: HashSet<Vec<u32>> = HashSet::new();
    for i in 1..size {
        let u = elem(i);
        squares.insert(to_indices(k, &u.mul_mod(k, &u, pi)));
    }
    let a = a.rem(k, pi);
    let b = b.rem(k, pi);
    let mut sum = 0i64;
    for i in 0..size {
        let u = elem(i);
        let u2 = u.mul_mod(k, &u, pi);
        let v = u2.add(k, &a).mul_mod(k, &u, pi).add(k, &b);
        if v.is_zero() {
            continue;
        }
        sum += if squares.contains(&to_indices(k, &v)) { 1 } else { -1 };
    }
    -sum
}

/// Local factor `P_v(T)` of `Sym^m` (the Euler factor is `P_v(T^{deg v})^{-1}`).
pub fn local_factor(e: &EllSurface, place: &Place, m: u32) -> Result<Vec<BigInt>, LfunError> {
    let k = &**e.field();
    let deg = place.degree() as u32;
    let qv = (k.size() as i64).pow(deg);
    let one = vec![BigInt::from(1)];
    let (a, b, pi) = match place {
        Place::Finite(pi) => (e.a().clone(), e.b().clone(), pi.clone()),
        Place::Infinity => {
            let (a, b) = model_at_infinity(e);
            (a, b, UniPoly::x(k))
        }
    };
    let delta_at = |a: &FqPoly, b: &FqPoly| {
        let a3 = a.pow(k, 3).scale(k, &k.from_int(4));
        let b2 = b.pow(k, 2).scale(k, &k.from_int(27));
        a3.add(k, &b2).rem(k, &pi)
    };
    if !delta_at(&a, &b).is_zero() {
        return Ok(sym_local_poly(residue_trace(k, &a, &b, &pi), qv, m));
    }
    let pd = reduction_type(e, place)?;
    let unsupported = || LfunError::Domain(format!("no closed local factor at a place of type {:?}", pd.inertia));
    Ok(match pd.inertia {
        InertiaClass::Good => sym_local_poly(pd.local_trace.ok_or_else(unsupported)?, qv, m),
        InertiaClass::Multiplicative => {
            let av: i64 = if pd.reduction == ReductionType::SplitMultiplicative { 1 } else { -1 };
            vec![BigInt::from(1), BigInt::from(-av.pow(m))]
        }
        InertiaClass::PotentiallyMultiplicative => {
            if m % 2 == 0 {
                vec![BigInt::from(1), BigInt::from(-1)]
            } else {
                one
            }
        }
        InertiaClass::PotentiallyGood { e: ram } => {
            if invariant_dim(pd.inertia, m) == 0 {
                one
            } else if ram == 2 {
                sym_local_poly(pd.local_trace.ok_or_else(unsupported)?, qv, m)
            } else {
                return Err(unsupported());
            }
        }
    })
}

/// `Π_{deg v ≤ bound} P_v(T^{deg v})^{-1} mod T^{bound+1}`.
pub fn euler_series(e: &EllSurface, m: u32, bound: usize) -> Result<Vec<BigInt>, LfunError> {
    check_twist_gate(e, m)?;
    let k = &**e.field();
    let len = bound + 1;
    let mut acc = vec![BigInt::zero(); len];
    acc[0] = BigInt::from(1);
    if bound == 0 {
        return Ok(acc);
    }
    let mut places: Vec<Place> = irreducibles_up_to(k, bound).into_iter().map(Place::Finite).collect();
    places.push(Place::Infinity);
    for place in places {
        let p = local_factor(e, &place, m)?;
        let deg = place.degree();
        let mut spread = vec![BigInt::zero(); len];
        for (i, c) in p.iter().enumerate() {
            if i * deg < len {
                spread[i * deg] = c.clone();
            }
        }
        acc = series::mul(&acc, &series::inverse(&spread, len), len);
    }
    Ok(acc)
}
