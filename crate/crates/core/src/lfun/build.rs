//! Assembling `L((Sym^m E)/K, T)` from power sums, with certification.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Integers, UniPoly};
use crate::numeric::fixed::Fixed;
use crate::surfaces::EllSurface;

use super::roots::integer_poly_roots;
use super::series::{cost_estimate, newton, power_sums, SingularLocus};
use super::{CertCheck, LfunError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Every coefficient from point counts.
    Full,
    /// Half the coefficients from point counts, the rest from the functional
    /// equation.
    FunctionalEquation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyChoice {
    Auto,
    Force(Strategy),
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Refuse jobs whose estimated cost `Σ q^{2n}` exceeds this.
    pub max_cost: f64,
    /// Largest cost for which `Auto` picks the full route.
    pub full_cost_limit: f64,
    /// Extra coefficients past the degree that must vanish (full route).
    pub margin: usize,
    pub rh_bits: u32,
    pub rh_tolerance: f64,
    pub strategy: StrategyChoice,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            max_cost: 1e10,
            full_cost_limit: 1e9,
            margin: 1,
            rh_bits: 128,
            rh_tolerance: 1e-9,
            strategy: StrategyChoice::Auto,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certification {
    pub strategy: Strategy,
    /// Number of series coefficients obtained from point counts.
    pub coefficients_computed: usize,
    pub predicted_degree: usize,
    /// Functional-equation pairs `(i, ν-i)` with both sides counted.
    pub fe_pairs_checked: usize,
    pub functional_equation: bool,
    pub rh_max_deviation: f64,
    pub rh_tolerance: f64,
    /// Degree check for `m = 1` Legendre twists, when applicable.
    pub legendre_degree: Option<bool>,
    /// Places whose local factor was recovered by the root-modulus split.
    pub completed_places: usize,
}

/// A certified L-polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct LPolynomial {
    pub q: u64,
    pub m: u32,
    pub coeffs: Vec<BigInt>,
    pub sign: i32,
    pub certification: Certification,
}

impl LPolynomial {
    pub fn weight(&self) -> u32 {
        self.m + 1
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// `q^{wν/2}` when it is an integer.
fn half_power(q: u64, w: u32, nu: usize) -> Option<BigInt> {
    let full = num_traits::pow(BigInt::from(q), w as usize * nu);
    let r = full.sqrt();
    (&r * &r == full).then_some(r)
}

/// `ε = l_ν / q^{wν/2}`, which must be a unit.
pub fn sign_from_coeffs(coeffs: &[BigInt], q: u64, m: u32) -> Result<i32, LfunError> {
    let nu = coeffs.len() - 1;
    let lead = &coeffs[nu];
    let fail = || LfunError::Certification {
        check: CertCheck::Sign,
        detail: format!("leading coefficient {lead} is not ±q^(wν/2)"),
    };
    let h = half_power(q, m + 1, nu).ok_or_else(fail)?;
    if *lead == h {
        Ok(1)
    } else if *lead == -h {
        Ok(-1)
    } else {
        Err(fail())
    }
}

pub fn sign_of(l: &LPolynomial) -> Result<i32, LfunError> {
    sign_from_coeffs(&l.coeffs, l.q, l.m)
}

/// Checks `l_{ν-i} q^{wi} = l_ν l_i` for all `i`.
pub fn functional_equation_holds(coeffs: &[BigInt], q: u64, m: u32) -> bool {
    let nu = coeffs.len() - 1;
    let qw = num_traits::pow(BigInt::from(q), (m + 1) as usize);
    let mut qwi = BigInt::one();
    for i in 0..=nu {
        if &coeffs[nu - i] * &qwi != &coeffs[nu] * &coeffs[i] {
            return false;
        }
        qwi *= &qw;
    }
    true
}

/// Largest `| |γ| / q^{w/2} - 1 |` over the inverse roots.
pub fn rh_deviation(coeffs: &[BigInt], q: u64, m: u32, bits: u32) -> Result<f64, LfunError> {
    if coeffs.len() <= 1 {
        return Ok(0.0);
    }
    let rev: Vec<BigInt> = coeffs.iter().rev().cloned().collect();
    let roots = integer_poly_roots(&rev, bits)?;
    let scale = Fixed::sqrt_int(&num_traits::pow(BigInt::from(q), (m + 1) as usize), bits);
    let one = Fixed::one(bits);
    Ok(roots
        .iter()
        .map(|z| z.abs().div(&scale).sub(&one).abs().to_f64())
        .fold(0.0, f64::max))
}

struct Plan {
    strategy: Strategy,
    /// Series length needed (highest coefficient index).
    upto: usize,
    nu: usize,
    unknown_dim: usize,
}

fn plan(locus: &SingularLocus, m: u32, q: u64, opts: &BuildOptions) -> Result<Plan, LfunError> {
    let nu = locus.predicted_degree(m)?;
    let unknown_dim: usize = locus
        .unknown(m)
        .iter()
        .map(|(pd, dim)| pd.degree * *dim as usize)
        .sum();
    let full_upto = nu + unknown_dim + opts.margin;
    let fe_upto = (nu / 2 + 1).min(nu);
    let strategy = match opts.strategy {
        StrategyChoice::Force(s) => s,
        StrategyChoice::Auto => {
            if unknown_dim > 0 || cost_estimate(q, full_upto) <= opts.full_cost_limit {
                Strategy::Full
            } else {
                Strategy::FunctionalEquation
            }
        }
    };
    if strategy == Strategy::FunctionalEquation && unknown_dim > 0 {
        return Err(LfunError::Domain(
            "functional-equation completion needs every local factor".into(),
        ));
    }
    let upto = match strategy {
        Strategy::Full => full_upto,
        Strategy::FunctionalEquation => fe_upto,
    };
    let cost = cost_estimate(q, upto);
    if cost > opts.max_cost {
        return Err(LfunError::CostExceeded {
            cost,
            limit: opts.max_cost,
        });
    }
    Ok(Plan {
        strategy,
        upto,
        nu,
        unknown_dim,
    })
}

/// Power sums `c_1..c_upto` shared between several `m`.
struct SumCache<'a> {
    e: &'a EllSurface,
    locus: &'a SingularLocus,
    ms: Vec<u32>,
    /// `sums[n][i]` for `ms[i]`; index 0 unused.
    sums: Vec<Vec<BigInt>>,
}

impl<'a> SumCache<'a> {
    fn ensure(&mut self, upto: usize) -> Result<(), LfunError> {
        while self.sums.len() <= upto {
            let n = self.sums.len() as u32;
            self.sums.push(power_sums(self.e, self.locus, &self.ms, n)?);
        }
        Ok(())
    }

    fn column(&self, m: u32, upto: usize) -> Vec<BigInt> {
        let i = self.ms.iter().position(|&x| x == m).unwrap();
        (0..=upto)
            .map(|n| if n == 0 { BigInt::zero() } else { self.sums[n][i].clone() })
            .collect()
    }
}

pub fn check_twist_gate(e: &EllSurface, m: u32) -> Result<(), LfunError> {
    if m == 0 {
        return Err(LfunError::Domain("symmetric power index must be positive".into()));
    }
    if m % 2 == 0 && e.twist_data().is_some() {
        return Err(LfunError::EvenTwist { m });
    }
    Ok(())
}

pub fn build_lfunction(e: &EllSurface, m: u32, opts: &BuildOptions) -> Result<LPolynomial, LfunError> {
    Ok(build_lfunctions(e, &[m], opts)?.remove(0))
}

/// Point-count cost `Σ q^{2n}` and predicted degrees of `build_lfunctions`,
/// without enumerating any fiber.
pub fn estimate_cost(e: &EllSurface, ms: &[u32], opts: &BuildOptions) -> Result<(f64, Vec<usize>), LfunError> {
    for &m in ms {
        check_twist_gate(e, m)?;
    }
    let q = e.field().size() as u64;
    let locus = SingularLocus::of(e)?;
    let unbounded = BuildOptions {
        max_cost: f64::INFINITY,
        ..opts.clone()
    };
    let plans: Vec<Plan> = ms.iter().map(|&m| plan(&locus, m, q, &unbounded)).collect::<Result<_, _>>()?;
    let cost = cost_estimate(q, plans.iter().map(|p| p.upto).max().unwrap_or(0));
    Ok((cost, plans.iter().map(|p| p.nu).collect()))
}

/// Builds and certifies `L(Sym^m E)` for each `m`, sharing point counts.
pub fn build_lfunctions(e: &EllSurface, ms: &[u32], opts: &BuildOptions) -> Result<Vec<LPolynomial>, LfunError> {
    for &m in ms {
        check_twist_gate(e, m)?;
    }
    let q = e.field().size() as u64;
    let locus = SingularLocus::of(e)?;
    let plans: Vec<Plan> = ms.iter().map(|&m| plan(&locus, m, q, opts)).collect::<Result<_, _>>()?;
    let total = cost_estimate(q, plans.iter().map(|p| p.upto).max().unwrap_or(0));
    if total > opts.max_cost {
        return Err(LfunError::CostExceeded {
            cost: total,
            limit: opts.max_cost,
        });
    }
    let mut cache = SumCache {
        e,
        locus: &locus,
        ms: ms.to_vec(),
        sums: vec![Vec::new()],
    };
    let mut out = Vec::new();
    for (&m, p) in ms.iter().zip(&plans) {
        let l = match p.strategy {
            Strategy::Full => full_route(&mut cache, m, q, p, opts)?,
            Strategy::FunctionalEquation => fe_route(&mut cache, m, q, p, opts)?,
        };
        out.push(l);
    }
    Ok(out)
}

fn full_route(
    cache: &mut SumCache,
    m: u32,
    q: u64,
    p: &Plan,
    opts: &BuildOptions,
) -> Result<LPolynomial, LfunError> {
    cache.ensure(p.upto)?;
    let series = newton(&cache.column(m, p.upto))?;
    let deg_s = p.nu + p.unknown_dim;
    if let Some(i) = (deg_s + 1..=p.upto).find(|&i| !series[i].is_zero()) {
        return Err(LfunError::Certification {
            check: CertCheck::Degree,
            detail: format!("coefficient {i} past the predicted degree {deg_s} is nonzero"),
        });
    }
    let s: Vec<BigInt> = series[..=deg_s].to_vec();
    let (coeffs, completed) = if p.unknown_dim > 0 {
        (split_by_modulus(&s, q, m, p.nu, opts.rh_bits)?, cache.locus.unknown(m).len())
    } else {
        (s, 0)
    };
    let fe_pairs = (0..=p.nu).filter(|&i| i <= p.nu - i).count();
    certify(cache.e, coeffs, q, m, p, opts, Strategy::Full, p.upto, fe_pairs, completed)
}

/// Separates the inverse roots of modulus `q^{(m+1)/2}` from those of the
/// unknown local factors (modulus `q^{m/2}` or smaller) and returns the
/// former as an integer polynomial dividing `s` exactly.
fn split_by_modulus(s: &[BigInt], q: u64, m: u32, nu: usize, bits: u32) -> Result<Vec<BigInt>, LfunError> {
    let rev: Vec<BigInt> = s.iter().rev().cloned().collect();
    let roots = integer_poly_roots(&rev, bits)?;
    let target = Fixed::sqrt_int(&num_traits::pow(BigInt::from(q), (m + 1) as usize), bits);
    let half = Fixed::from_f64(0.5 * (q as f64).sqrt().recip(), bits);
    let mut keep = Vec::new();
    for z in &roots {
        // weights differ by a factor √q, so compare against the midpoint
        let ratio = z.abs().div(&target);
        if ratio.sub(&Fixed::one(bits)).abs() < half {
            keep.push(z.clone());
        }
    }
    if keep.len() != nu {
        return Err(LfunError::Certification {
            check: CertCheck::Completion,
            detail: format!("{} inverse roots of weight m+1, expected {nu}", keep.len()),
        });
    }
    // Π (1 - γT)
    let mut poly = vec![crate::numeric::fixed::Complex::one(bits)];
    for g in &keep {
        let mut next = vec![crate::numeric::fixed::Complex::zero(bits); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] = next[i].add(c);
            next[i + 1] = next[i + 1].sub(&c.mul(g));
        }
        poly = next;
    }
    let l: Vec<BigInt> = poly.iter().map(|c| c.re.round()).collect();
    let sp = UniPoly::new(&Integers, s.to_vec());
    let lp = UniPoly::new(&Integers, l.clone());
    match sp.divrem(&Integers, &lp) {
        Ok((_, r)) if r.is_zero() => Ok(l),
        _ => Err(LfunError::Certification {
            check: CertCheck::Completion,
            detail: "rounded factor does not divide the known series exactly".into(),
        }),
    }
}

fn fe_route(
    cache: &mut SumCache,
    m: u32,
    q: u64,
    p: &Plan,
    opts: &BuildOptions,
) -> Result<LPolynomial, LfunError> {
    let nu = p.nu;
    let w = m + 1;
    let lead_abs = half_power(q, w, nu).ok_or_else(|| LfunError::Certification {
        check: CertCheck::Sign,
        detail: "q^(wν/2) is not an integer".into(),
    })?;
    let mut upto = p.upto;
    loop {
        cache.ensure(upto)?;
        let known = newton(&cache.column(m, upto))?;
        // pairs (i, ν-i) with both coefficients counted
        let qw = num_traits::pow(BigInt::from(q), w as usize);
        let mut eps: Option<i32> = None;
        let mut pairs = 0;
        for i in nu.saturating_sub(upto)..=upto.min(nu) {
            let j = nu - i;
            if j > upto || i > j {
                continue;
            }
            pairs += 1;
            // l_j q^{wi} = ε q^{wν/2} l_i
            let lhs = &known[j] * num_traits::pow(qw.clone(), i);
            let rhs = &lead_abs * &known[i];
            if rhs.is_zero() {
                if !lhs.is_zero() {
                    return Err(fe_fail(i));
                }
                continue;
            }
            let this = if lhs == rhs {
                1
            } else if lhs == -&rhs {
                -1
            } else {
                return Err(fe_fail(i));
            };
            if eps.is_some_and(|x| x != this) {
                return Err(fe_fail(i));
            }
            eps = Some(this);
        }
        let Some(eps) = eps else {
            if upto >= nu {
                return Err(fe_fail(0));
            }
            upto += 1;
            let cost = cost_estimate(q, upto);
            if cost > opts.max_cost {
                return Err(LfunError::CostExceeded {
                    cost,
                    limit: opts.max_cost,
                });
            }
            continue;
        };
        let mut coeffs = vec![BigInt::zero(); nu + 1];
        coeffs[..=upto.min(nu)].clone_from_slice(&known[..=upto.min(nu)]);
        let lead = &lead_abs * eps;
        for i in 0..nu.saturating_sub(upto) {
            let num = &lead * &known[i];
            let den = num_traits::pow(qw.clone(), i);
            if !(&num % &den).is_zero() {
                return Err(fe_fail(i));
            }
            coeffs[nu - i] = num / den;
        }
        return certify(cache.e, coeffs, q, m, p, opts, Strategy::FunctionalEquation, upto, pairs, 0);
    }
}

fn fe_fail(i: usize) -> LfunError {
    LfunError::Certification {
        check: CertCheck::FunctionalEquation,
        detail: format!("coefficient pair at index {i} violates the functional equation"),
    }
}

#[allow(clippy::too_many_arguments)]
fn certify(
    e: &EllSurface,
    coeffs: Vec<BigInt>,
    q: u64,
    m: u32,
    p: &Plan,
    opts: &BuildOptions,
    strategy: Strategy,
    computed: usize,
    fe_pairs: usize,
    completed: usize,
) -> Result<LPolynomial, LfunError> {
    if !coeffs[0].is_one() {
        return Err(LfunError::Certification {
            check: CertCheck::ConstantTerm,
            detail: format!("constant term {}", coeffs[0]),
        });
    }
    if coeffs.len() - 1 != p.nu {
        return Err(LfunError::Certification {
            check: CertCheck::Degree,
            detail: format!("degree {} but predicted {}", coeffs.len() - 1, p.nu),
        });
    }
    let sign = sign_from_coeffs(&coeffs, q, m)?;
    if !functional_equation_holds(&coeffs, q, m) {
        return Err(fe_fail(0));
    }
    let dev = rh_deviation(&coeffs, q, m, opts.rh_bits)?;
    if !(dev < opts.rh_tolerance) {
        return Err(LfunError::Certification {
            check: CertCheck::RiemannHypothesis,
            detail: format!("root modulus deviation {dev:e}"),
        });
    }
    let legendre_degree = match e.twist_data() {
        Some((_, f)) if m == 1 && e.is_legendre_twist() => {
            let d = f.degree().unwrap_or(0);
            let expect = if d % 2 == 0 { 2 * d } else { 2 * d - 1 };
            let ok = p.nu == expect;
            if !ok {
                return Err(LfunError::Certification {
                    check: CertCheck::Degree,
                    detail: format!("ν₁ = {} for a degree-{d} Legendre twist, expected {expect}", p.nu),
                });
            }
            Some(ok)
        }
        _ => None,
    };
    Ok(LPolynomial {
        q,
        m,
        coeffs,
        sign,
        certification: Certification {
            strategy,
            coefficients_computed: computed,
            predicted_degree: p.nu,
            fe_pairs_checked: fe_pairs,
            functional_equation: true,
            rh_max_deviation: dev,
            rh_tolerance: opts.rh_tolerance,
            legendre_degree,
            completed_places: completed,
        },
    })
}
