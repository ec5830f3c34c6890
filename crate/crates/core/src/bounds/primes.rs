//! Prime enumeration and empirical density checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::numeric::serialize_rational;

use super::BoundsError;

pub fn primes_up_to(x: u64) -> Vec<u64> {
    if x < 2 {
        return Vec::new();
    }
    let n = x as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u64).collect()
}

pub fn prime_count(x: u64) -> usize {
    primes_up_to(x).len()
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut r = 1u128 % m128;
    let mut b128 = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m128;
        }
        b128 = b128 * b128 % m128;
        e >>= 1;
    }
    r as u64
}

/// Kronecker symbol `(a/p)` for a prime `p`.
pub fn kronecker(a: i64, p: u64) -> i32 {
    if p == 2 {
        return match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub x: u64,
    /// primes passing the condition
    pub hits: usize,
    /// primes considered
    pub total: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub density: BigRational,
    /// lower bound being tested
    #[serde(serialize_with = "serialize_rational")]
    pub expected: BigRational,
    pub slack: f64,
    pub within_slack: bool,
}

impl DensityReport {
    fn new(x: u64, hits: usize, total: usize, expected: BigRational, slack: f64) -> Self {
        let density = BigRational::new(BigInt::from(hits), BigInt::from(total.max(1)));
        let within_slack = density.to_f64().unwrap() >= expected.to_f64().unwrap() - slack;
        Self {
            x,
            hits,
            total,
            density,
            expected,
            slack,
            within_slack,
        }
    }
}

/// Fraction of odd primes `ℓ ≤ x` coprime to every entry of `discs` at which
/// all of them are squares, against `2^{-k}` with slack `4k/√π(x)`.
pub fn density_split_all(discs: &[i64], x: u64) -> Result<DensityReport, BoundsError> {
    if discs.is_empty() || discs.contains(&0) {
        return Err(BoundsError::Domain("discriminants must be nonzero".into()));
    }
    if x < 100 {
        return Err(BoundsError::Domain("x must be at least 100".into()));
    }
    let primes: Vec<u64> = primes_up_to(x)
        .into_iter()
        .filter(|&p| p > 2 && discs.iter().all(|&d| d.rem_euclid(p as i64) != 0))
        .collect();
    let hits = primes
        .par_iter()
        .filter(|&&p| discs.iter().all(|&d| kronecker(d, p) == 1))
        .count();
    let k = discs.len();
    let expected = BigRational::new(BigInt::one(), BigInt::from(2).pow(k as u32));
    let slack = 4.0 * k as f64 / (prime_count(x) as f64).sqrt();
    Ok(DensityReport::new(x, hits, primes.len(), expected, slack))
}

/// `δ₀ - (N₁(N₁+1) + N₂(N₂+1)) / (2(p-1))`.
pub fn density_lambda2(p: u64, n1: u64, n2: u64, delta0: &BigRational) -> Result<BigRational, BoundsError> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(BoundsError::Domain(format!("{p} is not prime")));
    }
    if n1 == 0 || n2 == 0 {
        return Err(BoundsError::Domain("N1, N2 must be at least 1".into()));
    }
    let num = BigInt::from(n1 * (n1 + 1) + n2 * (n2 + 1));
    Ok(delta0 - BigRational::new(num, BigInt::from(2 * (p - 1))))
}

/// Primes of `lambda0` (all `≤ x`) with `ℓ^j ≢ -1` (`j ≤ N₁`) and
/// `ℓ^i ≢ 1` (`i ≤ N₂`) mod `p`, as a fraction of `π(x)`.
pub fn lambda2_empirical(
    p: u64,
    n1: u64,
    n2: u64,
    delta0: &BigRational,
    lambda0: &[u64],
    x: u64,
) -> Result<DensityReport, BoundsError> {
    let bound = density_lambda2(p, n1, n2, delta0)?;
    let good = |l: u64| {
        let r = l % p;
        if r == 0 {
            return false;
        }
        let mut pw = 1u64;
        for j in 1..=n1.max(n2) {
            pw = pw * r % p;
            if j <= n1 && pw == p - 1 {
                return false;
            }
            if j <= n2 && pw == 1 {
                return false;
            }
        }
        true
    };
    let hits = lambda0.par_iter().filter(|&&l| l <= x && good(l)).count();
    let total = prime_count(x);
    // 4σ of a binomial proportion, σ ≤ 1/(2√n)
    let slack = 2.0 / (total as f64).sqrt();
    Ok(DensityReport::new(x, hits, total, bound, slack))
}

#[derive(Clone, Debug, Serialize)]
pub struct CharSumReport {
    pub a: i64,
    pub x: u64,
    pub sum: i64,
    pub prime_count: usize,
    /// `|sum| (log x)² / x`
    pub constant: f64,
}

/// `Σ_{p ≤ x} (a/p)`.
pub fn char_sum_probe(a: i64, x: u64) -> Result<CharSumReport, BoundsError> {
    if a == 0 || x < 100 {
        return Err(BoundsError::Domain("need a ≠ 0 and x ≥ 100".into()));
    }
    let primes = primes_up_to(x);
    let sum: i64 = primes.par_iter().map(|&p| kronecker(a, p) as i64).sum();
    let lx = (x as f64).ln();
    Ok(CharSumReport {
        a,
        x,
        sum,
        prime_count: primes.len(),
        constant: sum.unsigned_abs() as f64 * lx * lx / x as f64,
    })
}
