//! Factorization over finite fields of odd characteristic: square-free
//! decomposition, distinct-degree splitting, then Cantor–Zassenhaus
//! equal-degree splitting. Output is sorted canonically so the multiset does
//! not depend on the random choices.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{prime_factors_u64, FiniteField, FqElem};
use super::poly::UniPoly;
use super::AlgebraError;

pub type FqPoly = UniPoly<FqElem>;

/// Default seed for the randomized splitting step.
pub const DEFAULT_SEED: u64 = 0x5eed_c0de_2b1f_0001;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    /// Monic irreducible factors with multiplicities, in canonical order.
    pub factors: Vec<(FqPoly, u32)>,
}

impl Factorization {
    /// Product of the factors times the unit.
    pub fn expand(&self, field: &FiniteField) -> FqPoly {
        self.factors.iter().fold(
            UniPoly::constant(field, self.unit),
            |acc, (g, m)| acc.mul(field, &g.pow(field, *m)),
        )
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (g, m) in &self.factors {
            for _ in 0..*m {
                out.push(g.degree().unwrap());
            }
        }
        out
    }
}

/// Sort key: degree first, then coefficients from the top down in index form.
pub fn canonical_key(field: &FiniteField, f: &FqPoly) -> (usize, Vec<u32>) {
    let deg = f.degree().map_or(0, |d| d + 1);
    (deg, f.coeffs().iter().rev().map(|&c| field.to_index(c)).collect())
}

pub fn from_indices(field: &FiniteField, idx: &[u32]) -> FqPoly {
    UniPoly::new(field, idx.iter().map(|&i| field.from_index(i)).collect())
}

pub fn to_indices(field: &FiniteField, f: &FqPoly) -> Vec<u32> {
    f.coeffs().iter().map(|&c| field.to_index(c)).collect()
}

/// Monic polynomials of degree `d` in canonical order.
pub fn monic_polys(field: &FiniteField, d: usize) -> impl Iterator<Item = FqPoly> + '_ {
    let q = field.size() as u64;
    let total = q.pow(d as u32);
    (0..total).map(move |mut n| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(field.from_index((n % q) as u32));
            n /= q;
        }
        c.push(FqElem::ONE);
        UniPoly::new(field, c)
    })
}

fn pth_root(field: &FiniteField, f: &FqPoly) -> FqPoly {
    let p = field.characteristic() as usize;
    let e = (field.characteristic() as u64).pow(field.degree() - 1);
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|&c| field.pow(c, e))
        .collect();
    UniPoly::new(field, coeffs)
}

/// Square-free decomposition of a monic polynomial: pairwise coprime monic
/// square-free parts with their multiplicities.
pub fn squarefree_decomposition(field: &FiniteField, f: &FqPoly) -> Vec<(FqPoly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = field.characteristic();
    let df = f.derivative(field);
    if df.is_zero() {
        for (g, m) in squarefree_decomposition(field, &pth_root(field, f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(field, &df);
    let mut w = f.div_exact(field, &c).unwrap();
    let mut i = 1;
    while w.degree().unwrap() > 0 {
        let y = w.gcd(field, &c);
        let z = w.div_exact(field, &y).unwrap();
        if z.degree().unwrap() > 0 {
            out.push((z, i));
        }
        i += 1;
        c = c.div_exact(field, &y).unwrap();
        w = y;
    }
    if c.degree().unwrap() > 0 {
        for (g, m) in squarefree_decomposition(field, &pth_root(field, &c)) {
            out.push((g, m * p));
        }
    }
    out
}

fn frobenius_power_of_x(field: &FiniteField, modulus: &FqPoly, times: usize) -> FqPoly {
    let q = BigUint::from(field.size());
    let mut h = UniPoly::x(field).rem(field, modulus);
    for _ in 0..times {
        h = h.pow_mod(field, &q, modulus);
    }
    h
}

/// Distinct-degree factorization of a monic square-free polynomial.
pub fn distinct_degree(field: &FiniteField, f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let q = BigUint::from(field.size());
    let x = UniPoly::x(field);
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = x.rem(field, &g);
    let mut d = 0;
    while g.degree().unwrap() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(field, &q, &g);
        let t = h.sub(field, &x).gcd(field, &g);
        if t.degree().unwrap() > 0 {
            g = g.div_exact(field, &t).unwrap();
            h = h.rem(field, &g);
            out.push((t, d));
        }
    }
    if g.degree().unwrap() > 0 {
        let dg = g.degree().unwrap();
        out.push((g, dg));
    }
    out
}

/// Splits a monic square-free product of irreducibles of degree `d`.
pub fn equal_degree(field: &FiniteField, f: &FqPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FqPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let exp = (BigUint::from(field.size()).pow(d as u32) - BigUint::one()) >> 1;
    let one = UniPoly::one(field);
    loop {
        let coeffs: Vec<FqElem> = (0..n)
            .map(|_| field.from_index(rng.gen_range(0..field.size())))
            .collect();
        let a = UniPoly::new(field, coeffs);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = a.pow_mod(field, &exp, f).sub(field, &one);
        let g = b.gcd(field, f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_exact(field, &g).unwrap();
            let mut out = equal_degree(field, &g, d, rng);
            out.extend(equal_degree(field, &h, d, rng));
            return out;
        }
    }
}

pub fn factor(field: &FiniteField, f: &FqPoly) -> Result<Factorization, AlgebraError> {
    factor_with_seed(field, f, DEFAULT_SEED)
}

pub fn factor_with_seed(
    field: &FiniteField,
    f: &FqPoly,
    seed: u64,
) -> Result<Factorization, AlgebraError> {
    let unit = *f
        .lead()
        .ok_or_else(|| AlgebraError::Domain("cannot factor the zero polynomial".into()))?;
    let monic = f.monic(field);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc: BTreeMap<(usize, Vec<u32>), (FqPoly, u32)> = BTreeMap::new();
    for (part, mult) in squarefree_decomposition(field, &monic) {
        for (block, d) in distinct_degree(field, &part) {
            for g in equal_degree(field, &block, d, &mut rng) {
                let g = g.monic(field);
                acc.entry(canonical_key(field, &g))
                    .and_modify(|e| e.1 += mult)
                    .or_insert((g, mult));
            }
        }
    }
    Ok(Factorization {
        unit,
        factors: acc.into_values().collect(),
    })
}

/// Factorization over a prime field `F_l`.
pub fn factor_over_prime_field(field: &FiniteField, f: &FqPoly) -> Result<Factorization, AlgebraError> {
    if field.degree() != 1 {
        return Err(AlgebraError::Domain("expected a prime field".into()));
    }
    factor(field, f)
}

/// Rabin's irreducibility test.
pub fn is_irreducible(field: &FiniteField, f: &FqPoly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = f.monic(field);
    let x = UniPoly::x(field);
    if frobenius_power_of_x(field, &f, n) != x.rem(field, &f) {
        return false;
    }
    prime_factors_u64(n as u64).into_iter().all(|r| {
        let h = frobenius_power_of_x(field, &f, n / r as usize);
        h.sub(field, &x).gcd(field, &f).degree() == Some(0)
    })
}

pub fn is_squarefree(field: &FiniteField, f: &FqPoly) -> bool {
    match f.degree() {
        None => false,
        Some(0) => true,
        Some(_) => f.gcd(field, &f.derivative(field)).degree() == Some(0),
    }
}

/// All monic irreducibles of degree `1..=bound`, in canonical order.
pub fn irreducibles_up_to(field: &FiniteField, bound: usize) -> Vec<FqPoly> {
    let mut out = Vec::new();
    for d in 1..=bound {
        out.extend(irreducibles_of_degree(field, d));
    }
    out
}

pub fn irreducibles_of_degree(field: &FiniteField, d: usize) -> Vec<FqPoly> {
    monic_polys(field, d)
        .filter(|f| d == 1 || (!f.coeff(field, 0).is_zero() && is_irreducible(field, f)))
        .collect()
}

/// Number of monic irreducibles of degree `n` over `F_q` by Möbius inversion.
pub fn necklace_count(q: u64, n: u64) -> u64 {
    let mut total: i128 = 0;
    for e in 1..=n {
        if n % e != 0 {
            continue;
        }
        total += mobius(e) as i128 * (q as i128).pow((n / e) as u32);
    }
    (total / n as i128) as u64
}

fn mobius(n: u64) -> i32 {
    let mut m = n;
    let mut result = 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

/// Roots of `f` in `field`, sorted by index.
pub fn roots(field: &FiniteField, f: &FqPoly) -> Vec<FqElem> {
    let mut r: Vec<FqElem> = field.elements().filter(|x| f.eval(field, x).is_zero()).collect();
    r.sort_by_key(|&x| field.to_index(x));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(field: &FiniteField, v: &[i64]) -> FqPoly {
        UniPoly::new(field, v.iter().map(|&c| field.from_int(c)).collect())
    }

    #[test]
    fn linear_irreducibles_over_f5() {
        let f5 = FiniteField::prime(5).unwrap();
        let lin = irreducibles_up_to(&f5, 1);
        assert_eq!(lin.len(), 5);
        for (c, g) in lin.iter().enumerate() {
            assert_eq!(*g, poly(&f5, &[c as i64, 1]));
        }
        assert_eq!(irreducibles_up_to(&FiniteField::prime(7).unwrap(), 1).len(), 7);
    }

    /// Irreducible iff no monic factor of degree <= n/2 divides it.
    fn irreducible_by_trial_division(field: &FiniteField, f: &FqPoly) -> bool {
        let n = f.degree().unwrap();
        (1..=n / 2).all(|d| monic_polys(field, d).all(|g| !f.rem(field, &g).is_zero()))
    }

    #[test]
    fn quadratic_count_matches_trial_division_and_necklace_formula() {
        let f5 = FiniteField::prime(5).unwrap();
        let by_trial = monic_polys(&f5, 2)
            .filter(|g| irreducible_by_trial_division(&f5, g))
            .count();
        assert_eq!(by_trial, 10);
        assert_eq!(necklace_count(5, 2), 10);
        assert_eq!(irreducibles_of_degree(&f5, 2).len(), 10);
    }

    #[test]
    fn counts_match_necklace_formula() {
        for (p, k, bound) in [(5, 1, 5), (7, 1, 3), (5, 2, 3), (11, 1, 3)] {
            let f = FiniteField::new(p, k).unwrap();
            let q = f.size() as u64;
            for d in 1..=bound {
                let found = irreducibles_of_degree(&f, d);
                assert_eq!(found.len() as u64, necklace_count(q, d as u64), "q={q} d={d}");
                if d <= 3 && q <= 7 {
                    assert!(found.iter().all(|g| irreducible_by_trial_division(&f, g)));
                }
            }
        }
    }

    #[test]
    fn factor_examples() {
        let f5 = FiniteField::prime(5).unwrap();
        let fac = factor_over_prime_field(&f5, &poly(&f5, &[-1, 0, 1])).unwrap();
        assert_eq!(
            fac.factors,
            vec![(poly(&f5, &[1, 1]), 1), (poly(&f5, &[-1, 1]), 1)]
        );

        let f7 = FiniteField::prime(7).unwrap();
        let fac = factor_over_prime_field(&f7, &poly(&f7, &[1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(poly(&f7, &[1, 0, 1]), 1)]);

        let f11 = FiniteField::prime(11).unwrap();
        let phi5 = poly(&f11, &[1, 1, 1, 1, 1]);
        let fac = factor_over_prime_field(&f11, &phi5).unwrap();
        let oracle = roots(&f11, &phi5);
        assert_eq!(oracle.len(), 4);
        assert_eq!(fac.factors.len(), 4);
        for (g, m) in &fac.factors {
            assert_eq!(*m, 1);
            assert_eq!(g.degree(), Some(1));
            let root = f11.fneg(g.coeff(&f11, 0));
            assert!(oracle.contains(&root));
        }
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        let f5 = FiniteField::prime(5).unwrap();
        assert!(factor(&f5, &UniPoly::zero()).is_err());
    }

    #[test]
    fn repeated_and_pth_power_factors() {
        let f5 = FiniteField::prime(5).unwrap();
        // (t-1)^2 (t^2+2)^5 t^6
        let f = poly(&f5, &[-1, 1])
            .pow(&f5, 2)
            .mul(&f5, &poly(&f5, &[2, 0, 1]).pow(&f5, 5))
            .mul(&f5, &poly(&f5, &[0, 1]).pow(&f5, 6))
            .scale(&f5, &f5.from_int(3));
        let fac = factor(&f5, &f).unwrap();
        assert_eq!(fac.unit, f5.from_int(3));
        assert_eq!(fac.expand(&f5), f);
        let mults: Vec<u32> = fac.factors.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![6, 2, 5]);
    }

    #[test]
    fn factorization_is_seed_independent() {
        let f25 = FiniteField::new(5, 2).unwrap();
        let f: FqPoly = monic_polys(&f25, 6).nth(12345).unwrap();
        let a = factor_with_seed(&f25, &f, 1).unwrap();
        let b = factor_with_seed(&f25, &f, 99).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.expand(&f25), f);
    }
}
