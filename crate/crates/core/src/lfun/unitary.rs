//! Unitarized and reduced L-polynomials over `Q(√q)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{QuadElem, QuadField, Ring, UniPoly};
use crate::numeric::fixed::{Complex, Fixed};

use super::build::LPolynomial;
use super::roots::quad_poly_roots;
use super::{CertCheck, LfunError};

#[derive(Clone, Debug, PartialEq)]
pub struct UnitarizedL {
    pub q: u64,
    pub m: u32,
    pub field: QuadField,
    pub coeffs: Vec<QuadElem>,
    pub sign: i32,
    /// Degree before reduction.
    pub nu: usize,
    pub reduced: bool,
}

impl UnitarizedL {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn poly(&self) -> UniPoly<QuadElem> {
        UniPoly::new(&self.field, self.coeffs.clone())
    }

    /// `u_{n-i} = ε u_i` exactly.
    pub fn satisfies_functional_equation(&self) -> bool {
        let n = self.degree();
        let f = &self.field;
        let eps = f.from_i64(self.sign as i64);
        (0..=n).all(|i| self.coeffs[n - i] == f.mul(&eps, &self.coeffs[i]))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| self.field.to_f64(c)).collect()
    }
}

/// `T ↦ T / q^{(m+1)/2}`.
pub fn unitarize(l: &LPolynomial) -> UnitarizedL {
    let field = QuadField::new(BigInt::from(l.q));
    let w = l.weight() as i64;
    let coeffs = l
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let s = field.sqrt_pow(-w * i as i64);
            field.mul(&field.rational(BigRational::from_integer(c.clone())), &s)
        })
        .collect();
    UnitarizedL {
        q: l.q,
        m: l.m,
        field,
        coeffs,
        sign: l.sign,
        nu: l.degree(),
        reduced: false,
    }
}

/// Removes the roots at `±1` forced by the functional equation.
pub fn reduce(lu: &UnitarizedL) -> Result<UnitarizedL, LfunError> {
    let f = &lu.field;
    let nu = lu.degree();
    let eps = lu.sign as i64;
    let divisor: Option<Vec<i64>> = if nu % 2 == 1 {
        Some(vec![1, eps])
    } else if eps == -1 {
        Some(vec![1, 0, -1])
    } else {
        None
    };
    let mut out = lu.clone();
    out.reduced = true;
    if let Some(d) = divisor {
        let dp = UniPoly::new(f, d.iter().map(|&c| f.from_i64(c)).collect());
        let (quo, rem) = lu.poly().divrem(f, &dp)?;
        if !rem.is_zero() {
            return Err(LfunError::Certification {
                check: CertCheck::Reduction,
                detail: "forced factor does not divide".into(),
            });
        }
        out.coeffs = quo.into_coeffs();
        out.sign = 1;
    }
    debug_assert!(out.degree() % 2 == 0);
    Ok(out)
}

/// Inverse roots of a reduced unitarized polynomial, ordered so that
/// entries `j` and `j + n/2` are complex conjugates: first the roots in the
/// upper half plane by increasing argument, then `-1`s and `+1`s, then the
/// conjugates in the same order.
pub fn paired_inverse_roots(lred: &UnitarizedL, bits: u32) -> Result<Vec<Complex>, LfunError> {
    let n = lred.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let rev = UniPoly::new(&lred.field, lred.coeffs.iter().rev().cloned().collect());
    let roots = quad_poly_roots(&lred.field, &rev, bits)?;
    let tol = Fixed::one(bits).ldexp(-((bits / 2) as i32));
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    let mut plus = 0usize;
    let mut minus = 0usize;
    for z in roots {
        if z.im.abs() > tol {
            if z.im.is_negative() {
                lower.push(z);
            } else {
                upper.push(z);
            }
        } else if z.re.is_negative() {
            minus += 1;
        } else {
            plus += 1;
        }
    }
    let bad = |d: &str| LfunError::Certification {
        check: CertCheck::Reduction,
        detail: d.to_string(),
    };
    if plus % 2 == 1 || minus % 2 == 1 || upper.len() != lower.len() {
        return Err(bad("real roots of odd multiplicity remain after reduction"));
    }
    upper.sort_by(|a, b| a.arg_positive().cmp(&b.arg_positive()));
    let mut first = Vec::new();
    let mut second = Vec::new();
    for u in upper {
        let target = u.conj();
        let (idx, _) = lower
            .iter()
            .enumerate()
            .min_by(|(_, x), (_, y)| x.sub(&target).norm_sqr().cmp(&y.sub(&target).norm_sqr()))
            .unwrap();
        second.push(lower.swap_remove(idx));
        first.push(u);
    }
    let minus_one = Complex::from_real(Fixed::one(bits).neg());
    let plus_one = Complex::one(bits);
    for _ in 0..minus / 2 {
        first.push(minus_one.clone());
        second.push(minus_one.clone());
    }
    for _ in 0..plus / 2 {
        first.push(plus_one.clone());
        second.push(plus_one.clone());
    }
    first.extend(second);
    Ok(first)
}

/// `θ_j ∈ [0, 2π)` with `γ_j = e^{iθ_j}`, in the order of
/// `paired_inverse_roots`.
pub fn angles(lred: &UnitarizedL, bits: u32) -> Result<Vec<Fixed>, LfunError> {
    Ok(paired_inverse_roots(lred, bits)?
        .iter()
        .map(Complex::arg_positive)
        .collect())
}

/// Whether every coefficient is rational (true when `q` is a square or the
/// weight is even).
pub fn is_rational(lu: &UnitarizedL) -> bool {
    lu.coeffs.iter().all(|c| c.b.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfun::build::{Certification, Strategy};

    fn lpoly(q: u64, m: u32, c: &[i64], sign: i32) -> LPolynomial {
        LPolynomial {
            q,
            m,
            coeffs: c.iter().map(|&x| BigInt::from(x)).collect(),
            sign,
            certification: Certification {
                strategy: Strategy::Full,
                coefficients_computed: 0,
                predicted_degree: c.len() - 1,
                fe_pairs_checked: 0,
                functional_equation: true,
                rh_max_deviation: 0.0,
                rh_tolerance: 1e-9,
                legendre_degree: None,
                completed_places: 0,
            },
        }
    }

    fn rat(f: &QuadField, n: i64, d: i64) -> QuadElem {
        f.rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn unitarize_examples() {
        let lu = unitarize(&lpoly(5, 1, &[1, -5], 1));
        assert_eq!(lu.coeffs, vec![rat(&lu.field, 1, 1), rat(&lu.field, -1, 1)]);
        let lu = unitarize(&lpoly(5, 1, &[1, 3, 25], 1));
        assert_eq!(lu.coeffs[1], rat(&lu.field, 3, 5));
        assert_eq!(lu.coeffs[2], rat(&lu.field, 1, 1));
        assert!(lu.satisfies_functional_equation());
    }

    #[test]
    fn reduce_examples() {
        // ν even, ε = +1: unchanged
        let lu = unitarize(&lpoly(5, 1, &[1, 3, 25], 1));
        assert_eq!(reduce(&lu).unwrap().coeffs, lu.coeffs);
        // (1 - T)(1 + 2T + T^2 ...) with ν = 5, ε = -1
        let f = QuadField::new(BigInt::from(5));
        let g = [1i64, 3, 5, 3, 1];
        let mut c = vec![0i64; 6];
        for (i, &x) in g.iter().enumerate() {
            c[i] += x;
            c[i + 1] -= x;
        }
        let lu = UnitarizedL {
            q: 5,
            m: 1,
            field: f.clone(),
            coeffs: c.iter().map(|&x| rat(&f, x, 1)).collect(),
            sign: -1,
            nu: 5,
            reduced: false,
        };
        let r = reduce(&lu).unwrap();
        assert_eq!(r.degree(), 4);
        assert_eq!(r.coeffs, g.iter().map(|&x| rat(&f, x, 1)).collect::<Vec<_>>());
        // wrong sign is detected
        let mut wrong = lu.clone();
        wrong.sign = 1;
        assert!(reduce(&wrong).is_err());
    }

    #[test]
    fn pairing_is_conjugate() {
        let f = QuadField::new(BigInt::from(5));
        // (1 + 3/5 T + T^2)(1 - 1/5 T + T^2)
        let a = [5i64, 3, 5];
        let b = [5i64, -1, 5];
        let mut c = vec![0i64; 5];
        for i in 0..3 {
            for j in 0..3 {
                c[i + j] += a[i] * b[j];
            }
        }
        let coeffs = c.iter().map(|&x| rat(&f, x, 25)).collect();
        let lu = UnitarizedL { q: 5, m: 1, field: f, coeffs, sign: 1, nu: 4, reduced: true };
        let r = paired_inverse_roots(&lu, 96).unwrap();
        assert_eq!(r.len(), 4);
        for j in 0..2 {
            let d = r[j].conj().sub(&r[j + 2]).abs().to_f64();
            assert!(d < 1e-20);
            assert!((r[j].abs().to_f64() - 1.0).abs() < 1e-20);
        }
    }
}
