//! Counting split separable reciprocal polynomials by spinor class.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::{is_odd_prime, legendre, ClassModSquares, ModlError};

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub n: usize,
    pub ell: u32,
    pub target: ClassModSquares,
    /// Polynomials in the target class.
    pub count: u64,
    /// Over both classes.
    pub total: u64,
    /// `binom((ℓ-3)/2, N/2)`: choices of `N/2` root pairs `{β, 1/β}`.
    #[serde(serialize_with = "crate::numeric::serialize_bigint")]
    pub root_pair_choices: BigInt,
    /// `count / ℓ^{N/2}` (polynomial-census density).
    #[serde(serialize_with = "crate::numeric::serialize_rational")]
    pub ratio: BigRational,
}

/// Horner evaluation mod `ℓ`, coefficients from the constant term up.
fn eval(c: &[i64], x: i64, ell: i64) -> i64 {
    c.iter().rev().fold(0, |acc, &a| (acc * x + a) % ell)
}

/// Spinor classes of the split separable `ε = +1` reciprocal polynomials of
/// degree `n` with `f(±1) ≠ 0`, by enumerating the free coefficients.
/// Returns `(square, nonsquare)`.
fn enumerate_classes(n: usize, ell: u32) -> (u64, u64) {
    let h = n / 2;
    let l = ell as i64;
    let total = (ell as u64).pow(h as u32);
    (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut c = vec![0i64; n + 1];
            c[0] = 1;
            c[n] = 1;
            let mut r = idx;
            for i in 1..=h {
                let a = (r % ell as u64) as i64;
                r /= ell as u64;
                c[i] = a;
                c[n - i] = a;
            }
            let fm1 = eval(&c, l - 1, l);
            if fm1 == 0 || eval(&c, 1, l) == 0 {
                return (0, 0);
            }
            // split and separable iff n distinct roots in F_ℓ
            let roots = (2..l - 1).filter(|&x| eval(&c, x, l) == 0).count();
            if roots != n {
                return (0, 0);
            }
            if legendre(fm1 as u64, ell as u64) == 1 {
                (1, 0)
            } else {
                (0, 1)
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

pub fn theta0_census(n: usize, ell: u32, target: ClassModSquares) -> Result<Census, ModlError> {
    if n < 4 || n % 2 == 1 {
        return Err(ModlError::Domain(format!("N = {n} must be even and at least 4")));
    }
    if ell < 5 || !is_odd_prime(ell) {
        return Err(ModlError::Domain(format!("l = {ell} must be a prime at least 5")));
    }
    if target == ClassModSquares::Zero {
        return Err(ModlError::Domain("target class must be nonzero".into()));
    }
    let (sq, nsq) = enumerate_classes(n, ell);
    let count = if target == ClassModSquares::Square { sq } else { nsq };
    Ok(Census {
        n,
        ell,
        target,
        count,
        total: sq + nsq,
        root_pair_choices: binomial(BigInt::from((ell - 3) / 2), BigInt::from(n / 2)),
        ratio: BigRational::new(BigInt::from(count), BigInt::from(ell).pow(n as u32 / 2)),
    })
}

/// The same counts from the roots: choose `N/2` of the pairs `{β, 1/β}`,
/// `β ≠ ±1`; since `2 + β + 1/β = (β+1)²/β`, the class of `f(-1)` is the
/// product of the `χ(β)`.
pub fn census_by_pairs(n: usize, ell: u32) -> (BigInt, BigInt) {
    let l = ell as u64;
    let mut s = 0u64;
    let mut ns = 0u64;
    for b in 2..l - 1 {
        let inv = (1..l).find(|&y| b * y % l == 1).unwrap();
        if b < inv {
            if legendre(b, l) == 1 {
                s += 1;
            } else {
                ns += 1;
            }
        }
    }
    let h = n / 2;
    let mut sq = BigInt::from(0);
    let mut nsq = BigInt::from(0);
    for j in 0..=h {
        // j pairs with χ(β) = -1
        if j as u64 > ns || (h - j) as u64 > s {
            continue;
        }
        let c = binomial(BigInt::from(ns), BigInt::from(j)) * binomial(BigInt::from(s), BigInt::from(h - j));
        if j % 2 == 0 {
            sq += c;
        } else {
            nsq += c;
        }
    }
    (sq, nsq)
}

/// `#{β ∈ F_ℓ^× \ {±1} : 2 + β + 1/β is a nonzero square}`.
pub fn equidist_check(ell: u32) -> Result<u64, ModlError> {
    if ell < 5 || !is_odd_prime(ell) {
        return Err(ModlError::Domain(format!("l = {ell} must be a prime at least 5")));
    }
    let l = ell as u64;
    let mut count = 0;
    for b in 2..l - 1 {
        let inv = (1..l).find(|&y| b * y % l == 1).unwrap();
        if legendre((2 + b + inv) % l, l) == 1 {
            count += 1;
        }
    }
    Ok(count)
}
