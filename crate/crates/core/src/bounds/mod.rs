//! Exact calculators for the large-sieve bound, its `H` sum and the
//! exponents `γ`, plus empirical prime-density checks.

mod primes;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{QuadElem, QuadField};
use crate::numeric::serialize_rational;

pub use primes::{
    char_sum_probe, density_lambda2, density_split_all, kronecker, lambda2_empirical, prime_count,
    primes_up_to, CharSumReport, DensityReport,
};

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("domain error: {0}")]
    Domain(String),
}

/// Inputs of the sieve inequality. `c` is not computable from the geometry
/// and defaults to 1.
#[derive(Clone, Debug, Serialize)]
pub struct SieveParams {
    pub q: u64,
    /// dimension of the ambient variety
    pub d: u32,
    /// `#𝒢_V`
    #[serde(serialize_with = "crate::numeric::serialize_bigint")]
    pub group_size: BigInt,
    /// `δ(Λ) ∈ (0, 1]`
    #[serde(serialize_with = "serialize_rational")]
    pub delta: BigRational,
    /// sieve cutoff `L`
    pub cutoff: u64,
    pub a: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub c: BigRational,
}

impl SieveParams {
    pub fn new(q: u64, d: u32, group_size: BigInt, delta: BigRational, cutoff: u64, a: u32) -> Self {
        Self {
            q,
            d,
            group_size,
            delta,
            cutoff,
            a,
            c: BigRational::one(),
        }
    }

    fn validate(&self) -> Result<(), BoundsError> {
        let zero = BigRational::zero();
        if self.q < 2 || self.d == 0 || !self.group_size.is_positive() {
            return Err(BoundsError::Domain("q ≥ 2, d ≥ 1 and #G > 0 required".into()));
        }
        if self.delta <= zero || self.delta > BigRational::one() {
            return Err(BoundsError::Domain("δ(Λ) must lie in (0, 1]".into()));
        }
        if self.c.is_negative() {
            return Err(BoundsError::Domain("C must be nonnegative".into()));
        }
        Ok(())
    }
}

/// `#𝒢_V (q^d + C q^{d-1/2} (L+1)^A) / (δ H)` as `main + sqrt_coeff·√q`.
#[derive(Clone, Debug, Serialize)]
pub struct SieveBound {
    pub q: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub main: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub sqrt_coeff: BigRational,
    /// Present when `√q` is rational (or `C = 0`).
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "serialize_opt_rational")]
    pub exact: Option<BigRational>,
    pub approx: f64,
}

fn serialize_opt_rational<S: serde::Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => serialize_rational(r, s),
        None => s.serialize_none(),
    }
}

pub fn sieve_bound(p: &SieveParams, h: &BigRational) -> Result<SieveBound, BoundsError> {
    if !h.is_positive() {
        return Err(BoundsError::Domain("H must be positive".into()));
    }
    p.validate()?;
    let int = |n: BigInt| BigRational::from_integer(n);
    let q = BigInt::from(p.q);
    let scale = int(p.group_size.clone()) / (&p.delta * h);
    let main = &scale * int(q.pow(p.d));
    let err = int(q.pow(p.d - 1)) * int(BigInt::from(p.cutoff + 1).pow(p.a));
    let sqrt_coeff = &scale * &p.c * err;
    let field = QuadField::new(q);
    let v: QuadElem = field.make(main.clone(), sqrt_coeff.clone());
    let exact = field.is_rational(&v).then(|| v.a.clone());
    Ok(SieveBound {
        q: p.q,
        main,
        sqrt_coeff,
        exact,
        approx: field.to_f64(&v),
    })
}

/// `Σ ρ_ℓ / (1 - ρ_ℓ)` with `ρ_ℓ = #Θ_ℓ / #G_ℓ`.
pub fn h_sum(densities: &[(u32, BigRational)]) -> Result<BigRational, BoundsError> {
    let one = BigRational::one();
    let mut acc = BigRational::zero();
    for (ell, rho) in densities {
        if rho.is_negative() || *rho >= one {
            return Err(BoundsError::Domain(format!("ρ_{ell} = {rho} must lie in [0, 1)")));
        }
        acc += rho / (&one - rho);
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Gamma {
    #[serde(serialize_with = "crate::numeric::serialize_bigint")]
    pub two_gamma: BigInt,
    #[serde(serialize_with = "serialize_rational")]
    pub gamma: BigRational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl Gamma {
    fn from_twice(two_gamma: BigInt, warning: Option<String>) -> Self {
        let gamma = BigRational::new(two_gamma.clone(), BigInt::from(2));
        Self { two_gamma, gamma, warning }
    }
}

/// `2γ = 7N² - 7N + 4`; flagged when `N < 5`.
pub fn gamma_prop11(n: u64) -> Gamma {
    let n = BigInt::from(n);
    let warning = (n < BigInt::from(5)).then(|| format!("N = {n} is below 5"));
    Gamma::from_twice(BigInt::from(7) * &n * &n - BigInt::from(7) * &n + 4, warning)
}

fn gamma_from_h(h: impl Iterator<Item = BigInt>) -> Result<Gamma, BoundsError> {
    let mut sum = BigInt::zero();
    let mut any = false;
    for x in h {
        sum += x;
        any = true;
    }
    if !any {
        return Err(BoundsError::Domain("empty degree list".into()));
    }
    Ok(Gamma::from_twice(BigInt::from(4) + BigInt::from(7) * sum, None))
}

/// `2γ = 4 + 7 Σ ν(ν-1)` over the odd symmetric powers `1, 3, …, 2k-1`.
pub fn gamma_main1(nu_odd: &[u64]) -> Result<Gamma, BoundsError> {
    gamma_from_h(nu_odd.iter().map(|&v| BigInt::from(v) * (BigInt::from(v) - 1)))
}

/// `2γ = 4 + 7 Σ h(j)`, `h(j) = ν_j(ν_j - 1)` for odd `j`, `ν_j(ν_j + 1)` for even `j`.
pub fn gamma_main2(nu: &[u64]) -> Result<Gamma, BoundsError> {
    gamma_from_h(nu.iter().enumerate().map(|(i, &v)| {
        let v = BigInt::from(v);
        let j = i + 1;
        if j % 2 == 1 {
            &v * (&v - 1)
        } else {
            &v * (&v + 1)
        }
    }))
}

/// `log₂` of `q^{ℓ(D) - 1/γ} log q`, the shape of the exceptional-set bound.
pub fn main2_bound_log2(q: u64, ell_d: u64, gamma: &Gamma) -> f64 {
    let lq = (q as f64).log2();
    let inv = 1.0 / gamma.gamma.to_f64().unwrap_or(f64::INFINITY);
    (ell_d as f64 - inv) * lq + (q as f64).ln().log2()
}

/// Degree of `L(E_f, T)` for the Legendre curve twisted by a generic `f` of
/// degree `d`.
pub fn legendre_degree(d: u64) -> Result<u64, BoundsError> {
    match d {
        0 => Err(BoundsError::Domain("d must be at least 1".into())),
        d if d % 2 == 0 => Ok(2 * d),
        d => Ok(2 * d - 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sieve_examples() {
        let mut p = SieveParams::new(4, 1, BigInt::from(1), r(1, 1), 1, 1);
        let b = sieve_bound(&p, &r(1, 1)).unwrap();
        assert_eq!(b.exact, Some(r(8, 1)));
        p.c = r(0, 1);
        p.q = 7;
        p.d = 2;
        p.group_size = BigInt::from(48);
        p.delta = r(1, 3);
        let b = sieve_bound(&p, &r(5, 2)).unwrap();
        // #G q^d / (δH)
        assert_eq!(b.exact, Some(r(48 * 49 * 3 * 2, 5)));
        assert!(sieve_bound(&p, &r(0, 1)).is_err());
        assert!(sieve_bound(&p, &r(-1, 1)).is_err());
    }

    #[test]
    fn sieve_irrational_root() {
        let p = SieveParams::new(5, 1, BigInt::from(2), r(1, 2), 2, 2);
        let b = sieve_bound(&p, &r(1, 1)).unwrap();
        assert!(b.exact.is_none());
        assert_eq!(b.main, r(20, 1));
        assert_eq!(b.sqrt_coeff, r(36, 1));
        assert!((b.approx - (20.0 + 36.0 * 5f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn sieve_nonincreasing_in_h() {
        let p = SieveParams::new(9, 2, BigInt::from(10), r(1, 4), 3, 2);
        let mut prev = f64::INFINITY;
        for h in 1..20 {
            let b = sieve_bound(&p, &r(h, 3)).unwrap();
            let v = b.exact.unwrap();
            assert!(v.to_f64().unwrap() <= prev);
            prev = v.to_f64().unwrap();
        }
    }

    #[test]
    fn h_sum_examples() {
        assert_eq!(h_sum(&[(3, r(1, 2))]).unwrap(), r(1, 1));
        assert_eq!(h_sum(&[(3, r(0, 1)), (5, r(0, 1))]).unwrap(), r(0, 1));
        assert!(h_sum(&[(3, r(1, 1))]).is_err());
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_prop11(5).two_gamma, BigInt::from(144));
        assert_eq!(gamma_prop11(5).gamma, r(72, 1));
        assert_eq!(gamma_prop11(6).two_gamma, BigInt::from(214));
        assert!(gamma_prop11(4).warning.is_some());
        assert!(gamma_prop11(5).warning.is_none());
        assert_eq!(gamma_main1(&[8]).unwrap().two_gamma, BigInt::from(396));
        assert_eq!(gamma_main1(&[1, 1, 1]).unwrap().two_gamma, BigInt::from(4));
        assert_eq!(gamma_main2(&[4, 4]).unwrap().two_gamma, BigInt::from(228));
        assert_eq!(gamma_main2(&[1]).unwrap().two_gamma, BigInt::from(4));
        assert!(gamma_main1(&[]).is_err());
    }

    #[test]
    fn main1_matches_prop11() {
        for n in 5..40 {
            assert_eq!(gamma_main1(&[n]).unwrap(), gamma_prop11(n));
        }
    }

    #[test]
    fn legendre_degree_examples() {
        assert_eq!(legendre_degree(2).unwrap(), 4);
        assert_eq!(legendre_degree(3).unwrap(), 5);
        assert!(legendre_degree(0).is_err());
    }

    #[test]
    fn bound_shape_grows_with_ell_d() {
        let g = gamma_main2(&[4, 4]).unwrap();
        assert!(main2_bound_log2(25, 3, &g) < main2_bound_log2(25, 4, &g));
    }
}
