//! Exact arithmetic in `Q(√d)` for a positive integer `d`.
//!
//! Unitarized L-polynomials have coefficients `a_i / q^{w i/2}`, which live in
//! `Q(√q)`; keeping them exact lets functional equations be checked as
//! identities instead of floating point comparisons.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::ring::{exact_sqrt, Field, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    /// rational part
    pub a: BigRational,
    /// coefficient of √d
    pub b: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadField {
    d: BigInt,
    /// `Some(s)` when `d = s²`; then `b` is always folded into `a`.
    root: Option<BigInt>,
}

impl QuadField {
    pub fn new(d: BigInt) -> Self {
        assert!(d.is_positive(), "radicand must be positive");
        let root = exact_sqrt(&d);
        Self { d, root }
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn rational(&self, a: BigRational) -> QuadElem {
        QuadElem {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn make(&self, a: BigRational, b: BigRational) -> QuadElem {
        match &self.root {
            Some(s) => QuadElem {
                a: a + b * BigRational::from_integer(s.clone()),
                b: BigRational::zero(),
            },
            None => QuadElem { a, b },
        }
    }

    /// `(√d)^e` for `e ∈ Z`.
    pub fn sqrt_pow(&self, e: i64) -> QuadElem {
        let half = e.div_euclid(2);
        let odd = e.rem_euclid(2) == 1;
        let base = BigRational::from_integer(self.d.clone());
        let p = if half >= 0 {
            num_traits::pow(base, half as usize)
        } else {
            num_traits::pow(base.recip(), (-half) as usize)
        };
        if odd {
            self.make(BigRational::zero(), p)
        } else {
            self.rational(p)
        }
    }

    pub fn conj(&self, x: &QuadElem) -> QuadElem {
        self.make(x.a.clone(), -x.b.clone())
    }

    pub fn to_f64(&self, x: &QuadElem) -> f64 {
        let s = self.d.to_f64().unwrap().sqrt();
        x.a.to_f64().unwrap() + x.b.to_f64().unwrap() * s
    }

    pub fn is_rational(&self, x: &QuadElem) -> bool {
        x.b.is_zero()
    }
}

impl Ring for QuadField {
    type Elem = QuadElem;

    fn zero(&self) -> QuadElem {
        self.rational(BigRational::zero())
    }
    fn one(&self) -> QuadElem {
        self.rational(num_traits::One::one())
    }
    fn add(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        QuadElem {
            a: &x.a + &y.a,
            b: &x.b + &y.b,
        }
    }
    fn neg(&self, x: &QuadElem) -> QuadElem {
        QuadElem {
            a: -x.a.clone(),
            b: -x.b.clone(),
        }
    }
    fn mul(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        let d = BigRational::from_integer(self.d.clone());
        QuadElem {
            a: &x.a * &y.a + &x.b * &y.b * d,
            b: &x.a * &y.b + &x.b * &y.a,
        }
    }
    fn from_i64(&self, n: i64) -> QuadElem {
        self.rational(BigRational::from_integer(BigInt::from(n)))
    }
    fn try_div(&self, x: &QuadElem, y: &QuadElem) -> Option<QuadElem> {
        self.div(x, y)
    }
    fn is_zero(&self, x: &QuadElem) -> bool {
        x.a.is_zero() && x.b.is_zero()
    }
}

impl Field for QuadField {
    fn inv(&self, x: &QuadElem) -> Option<QuadElem> {
        let d = BigRational::from_integer(self.d.clone());
        let norm = &x.a * &x.a - &x.b * &x.b * d;
        if norm.is_zero() {
            return None;
        }
        Some(QuadElem {
            a: &x.a / &norm,
            b: -&x.b / &norm,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn sqrt_powers() {
        let k = QuadField::new(BigInt::from(5));
        let s = k.sqrt_pow(1);
        assert_eq!(k.mul(&s, &s), k.from_i64(5));
        assert_eq!(k.mul(&k.sqrt_pow(3), &k.sqrt_pow(-3)), k.one());
        assert_eq!(k.sqrt_pow(-2), k.rational(r(1) / r(5)));
    }

    #[test]
    fn square_radicand_folds() {
        let k = QuadField::new(BigInt::from(25));
        assert_eq!(k.sqrt_pow(1), k.from_i64(5));
        assert!(k.is_rational(&k.sqrt_pow(3)));
    }

    #[test]
    fn inverse() {
        let k = QuadField::new(BigInt::from(7));
        let x = k.make(r(3), r(-2));
        let y = k.inv(&x).unwrap();
        assert_eq!(k.mul(&x, &y), k.one());
        assert!(k.inv(&k.zero()).is_none());
    }
}
