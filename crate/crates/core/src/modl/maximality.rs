//! Frobenius cycle types of a reciprocal integer polynomial, read off its
//! factorizations modulo primes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::factor::factor;
use crate::algebra::{field, Integers, UniPoly};

use super::{is_odd_prime, ModlError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaximalityVerdict {
    /// Irreducible, with a negative cycle and a long positive cycle observed.
    ConsistentWithWPlus,
    /// No such evidence (e.g. abelian splitting field, or reducible).
    NotMaximal,
}

#[derive(Clone, Debug, Serialize)]
pub struct MaximalityReport {
    pub degree: usize,
    pub primes_used: Vec<u32>,
    /// Irreducible modulo some prime, or no proper factor degree compatible
    /// with all observed patterns.
    pub irreducibility_evidence: bool,
    /// Signed cycle type (e.g. `"+1 +1 -2"`) to number of primes showing it.
    pub cycle_types: BTreeMap<String, usize>,
    pub has_negative_cycle: bool,
    pub has_long_positive_cycle: bool,
    pub verdict: MaximalityVerdict,
}

fn reciprocal_int(c: &[BigInt]) -> Option<i32> {
    let rev: Vec<BigInt> = c.iter().rev().cloned().collect();
    if rev == c {
        Some(1)
    } else if rev.iter().zip(c).all(|(a, b)| *a == -b) {
        Some(-1)
    } else {
        None
    }
}

/// Signed cycle lengths of Frobenius at `ell`, or `None` when a factor is
/// `T ∓ 1` or repeated.
fn cycle_type(c: &[BigInt], ell: u32) -> Result<Option<Vec<i64>>, ModlError> {
    let k = field(ell, 1)?;
    let coeffs = c
        .iter()
        .map(|x| k.from_int(x.mod_floor(&BigInt::from(ell)).to_i64().unwrap()))
        .collect();
    let f = UniPoly::new(&*k, coeffs);
    let fac = factor(&k, &f)?;
    let mut factors: Vec<_> = fac.factors.into_iter().collect();
    if factors.iter().any(|(_, m)| *m > 1) {
        return Ok(None);
    }
    let mut out = Vec::new();
    while let Some((h, _)) = factors.pop() {
        let d = h.degree().unwrap();
        let r = h.reversed(&*k).monic(&*k);
        if r == h {
            if d % 2 == 1 {
                return Ok(None);
            }
            out.push(-(d as i64 / 2));
        } else {
            let pos = factors
                .iter()
                .position(|(g, _)| *g == r)
                .ok_or_else(|| ModlError::Domain("reciprocal partner missing".into()))?;
            factors.swap_remove(pos);
            out.push(d as i64);
        }
    }
    out.sort_by_key(|&x| (x.abs(), -x.signum()));
    Ok(Some(out))
}

/// Factor-pattern evidence that the Galois group of `c` (low to high, even
/// degree `2g`, reciprocal) contains the even hyperoctahedral group.
pub fn maximality_evidence(c: &[BigInt], prime_budget: u32) -> Result<MaximalityReport, ModlError> {
    let n = c.len().saturating_sub(1);
    if n == 0 || n % 2 == 1 || reciprocal_int(c).is_none() {
        return Err(ModlError::Domain("expected a reciprocal polynomial of even degree".into()));
    }
    let g = n / 2;
    let p = UniPoly::new(&Integers, c.to_vec());
    let disc = p.discriminant_int()?;
    if disc.is_zero() {
        return Err(ModlError::Domain("polynomial is not squarefree".into()));
    }
    let bad = disc * &c[n];
    let mut primes_used = Vec::new();
    let mut cycle_types = BTreeMap::new();
    // subset sums of factor degrees compatible with every prime
    let mut feasible: u128 = if n < 127 { (1u128 << (n + 1)) - 1 } else { u128::MAX };
    let mut irreducible_somewhere = false;
    let mut has_negative_cycle = false;
    let mut has_long_positive_cycle = false;
    for ell in (3..=prime_budget).filter(|&l| is_odd_prime(l)) {
        if (&bad % BigInt::from(ell)).is_zero() {
            continue;
        }
        let Some(ty) = cycle_type(c, ell)? else { continue };
        primes_used.push(ell);
        let mut sums: u128 = 1;
        for &t in &ty {
            let deg = if t < 0 { 2 * t.unsigned_abs() } else { t as u64 };
            let factor_count = if t < 0 { 1 } else { 2 };
            for _ in 0..factor_count {
                sums |= sums << deg;
            }
        }
        feasible &= sums;
        if ty.len() == 1 && ty[0] < 0 {
            irreducible_somewhere = true;
        }
        for &t in &ty {
            if t < 0 {
                has_negative_cycle = true;
            } else {
                let long = 2 * t as usize > g && (g <= 2 || t % 2 == 1);
                has_long_positive_cycle |= long;
            }
        }
        let key = ty.iter().map(|t| format!("{t:+}")).collect::<Vec<_>>().join(" ");
        *cycle_types.entry(key).or_insert(0) += 1;
    }
    let proper = (1..n).any(|d| feasible >> d & 1 == 1);
    let irreducibility_evidence = !primes_used.is_empty() && (irreducible_somewhere || !proper);
    let verdict = if irreducibility_evidence && has_negative_cycle && has_long_positive_cycle {
        MaximalityVerdict::ConsistentWithWPlus
    } else {
        MaximalityVerdict::NotMaximal
    };
    Ok(MaximalityReport {
        degree: n,
        primes_used,
        irreducibility_evidence,
        cycle_types,
        has_negative_cycle,
        has_long_positive_cycle,
        verdict,
    })
}
