//! Local data of symmetric powers: traces on inertia invariants and local
//! Euler factors.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::surfaces::{InertiaClass, PlaceData, ReductionType};

use super::LfunError;

/// `s_m = Σ_{j=0}^m α^{m-j} β^j` for `α + β = a`, `αβ = qn`.
pub fn sym_trace(a: i64, qn: i64, m: u32) -> Result<BigInt, LfunError> {
    if (a as i128) * (a as i128) > 4 * qn as i128 {
        return Err(LfunError::Hasse { a, qn });
    }
    let a = BigInt::from(a);
    let qn = BigInt::from(qn);
    let mut prev = BigInt::one();
    if m == 0 {
        return Ok(prev);
    }
    let mut cur = a.clone();
    for _ in 1..m {
        let next = &a * &cur - &qn * &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Same recursion in `i128`, for hot loops; the caller guarantees the
/// Hasse bound and that `(m+1)·qn^{m/2}` fits.
#[inline]
pub(crate) fn sym_trace_i128(a: i128, qn: i128, m: u32) -> i128 {
    let mut prev = 1i128;
    if m == 0 {
        return prev;
    }
    let mut cur = a;
    for _ in 1..m {
        let next = a * cur - qn * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `α^k + β^k` for `α + β = a`, `αβ = qv`.
pub fn power_trace(a: &BigInt, qv: &BigInt, k: u32) -> BigInt {
    let two = BigInt::from(2);
    if k == 0 {
        return two;
    }
    let mut prev = two;
    let mut cur = a.clone();
    for _ in 1..k {
        let next = a * &cur - qv * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Dimension of the inertia invariants of `Sym^m` of the Tate module.
pub fn invariant_dim(class: InertiaClass, m: u32) -> u32 {
    match class {
        InertiaClass::Good => m + 1,
        InertiaClass::Multiplicative => 1,
        InertiaClass::PotentiallyMultiplicative => u32::from(m % 2 == 0),
        // inertia acts on Sym^m through ζ^{m-2j}, ζ of order e
        InertiaClass::PotentiallyGood { e } => {
            (0..=m).filter(|&j| (m as i64 - 2 * j as i64).rem_euclid(e as i64) == 0).count() as u32
        }
    }
}

/// Conductor exponent of `Sym^m` at a tamely ramified place.
pub fn conductor_exponent(class: InertiaClass, m: u32) -> u32 {
    m + 1 - invariant_dim(class, m)
}

/// Trace of `Frob_v^k` on the inertia invariants of `Sym^m` at a bad place,
/// where `qv = q^{deg v}`. `None` when no closed rule applies (potentially
/// good reduction with `e ∈ {3,4,6}` and nonzero invariants).
pub fn bad_place_trace(pd: &PlaceData, m: u32, qv: &BigInt, k: u32) -> Option<BigInt> {
    match pd.inertia {
        InertiaClass::Good => {
            // non-minimal model, good place
            let a = BigInt::from(pd.local_trace?);
            let ak = power_trace(&a, qv, k);
            Some(sym_trace_big(&ak, &num_traits::pow(qv.clone(), k as usize), m))
        }
        InertiaClass::Multiplicative => {
            let s = match pd.reduction {
                ReductionType::SplitMultiplicative => 1,
                _ => -1,
            };
            Some(BigInt::from(if s == -1 && (k as u64 * m as u64) % 2 == 1 { -1 } else { 1 }))
        }
        InertiaClass::PotentiallyMultiplicative => Some(BigInt::from(u32::from(m % 2 == 0))),
        InertiaClass::PotentiallyGood { e } => {
            if invariant_dim(pd.inertia, m) == 0 {
                Some(BigInt::zero())
            } else if e == 2 {
                // even m: Sym^m of the twisted-back curve, sign-insensitive
                let a = BigInt::from(pd.local_trace?);
                let ak = power_trace(&a, qv, k);
                Some(sym_trace_big(&ak, &num_traits::pow(qv.clone(), k as usize), m))
            } else {
                None
            }
        }
    }
}

/// Whether `bad_place_trace` has a rule for this place and `m`.
pub fn has_closed_rule(pd: &PlaceData, m: u32) -> bool {
    match pd.inertia {
        InertiaClass::Good => pd.local_trace.is_some(),
        InertiaClass::Multiplicative | InertiaClass::PotentiallyMultiplicative => true,
        InertiaClass::PotentiallyGood { e } => {
            invariant_dim(pd.inertia, m) == 0 || (e == 2 && pd.local_trace.is_some())
        }
    }
}

fn sym_trace_big(a: &BigInt, qn: &BigInt, m: u32) -> BigInt {
    let mut prev = BigInt::one();
    if m == 0 {
        return prev;
    }
    let mut cur = a.clone();
    for _ in 1..m {
        let next = a * &cur - qn * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `Π_{j=0}^m (1 - α^{m-j} β^j T)` for a good place with trace `a` and
/// residue size `qv`, expanded in `Z[α]/(α² - aα + qv)`.
pub fn sym_local_poly(a: i64, qv: i64, m: u32) -> Vec<BigInt> {
    // elements c0 + c1·α
    type Z2 = (BigInt, BigInt);
    let a_b = BigInt::from(a);
    let q_b = BigInt::from(qv);
    let mul = |x: &Z2, y: &Z2| -> Z2 {
        // α² = aα - q
        let c0 = &x.0 * &y.0;
        let c1 = &x.0 * &y.1 + &x.1 * &y.0;
        let c2 = &x.1 * &y.1;
        (c0 - &c2 * &q_b, c1 + &c2 * &a_b)
    };
    let one: Z2 = (BigInt::one(), BigInt::zero());
    let alpha: Z2 = (BigInt::zero(), BigInt::one());
    let beta: Z2 = (a_b.clone(), -BigInt::one());
    let pow = |x: &Z2, e: u32| (0..e).fold(one.clone(), |acc, _| mul(&acc, x));
    let mut poly: Vec<Z2> = vec![one.clone()];
    for j in 0..=m {
        let g = mul(&pow(&alpha, m - j), &pow(&beta, j));
        let mut next = vec![(BigInt::zero(), BigInt::zero()); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i].0 += &c.0;
            next[i].1 += &c.1;
            let t = mul(c, &g);
            next[i + 1].0 -= t.0;
            next[i + 1].1 -= t.1;
        }
        poly = next;
    }
    poly.into_iter()
        .map(|(c0, c1)| {
            debug_assert!(c1.is_zero(), "symmetric function has no α part");
            c0
        })
        .collect()
}
