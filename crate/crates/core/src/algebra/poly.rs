use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::ring::{Field, Integers, Rationals, Ring};
use super::AlgebraError;

/// Dense univariate polynomial, coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> UniPoly<E> {
    pub fn new<R: Ring<Elem = E>>(r: &R, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| r.is_zero(c)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant<R: Ring<Elem = E>>(r: &R, c: E) -> Self {
        Self::new(r, vec![c])
    }

    pub fn one<R: Ring<Elem = E>>(r: &R) -> Self {
        Self::constant(r, r.one())
    }

    /// The monomial `c·T^n`.
    pub fn monomial<R: Ring<Elem = E>>(r: &R, c: E, n: usize) -> Self {
        let mut v = vec![r.zero(); n];
        v.push(c);
        Self::new(r, v)
    }

    /// `T`.
    pub fn x<R: Ring<Elem = E>>(r: &R) -> Self {
        Self::monomial(r, r.one(), 1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<R: Ring<Elem = E>>(&self, r: &R, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| r.zero())
    }

    pub fn is_monic<R: Ring<Elem = E>>(&self, r: &R) -> bool {
        self.lead().is_some_and(|c| r.is_one(c))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add<R: Ring<Elem = E>>(&self, r: &R, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| r.add(&self.coeff(r, i), &other.coeff(r, i)))
            .collect();
        Self::new(r, v)
    }

    pub fn sub<R: Ring<Elem = E>>(&self, r: &R, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| r.sub(&self.coeff(r, i), &other.coeff(r, i)))
            .collect();
        Self::new(r, v)
    }

    pub fn neg<R: Ring<Elem = E>>(&self, r: &R) -> Self {
        Self::new(r, self.coeffs.iter().map(|c| r.neg(c)).collect())
    }

    pub fn scale<R: Ring<Elem = E>>(&self, r: &R, c: &E) -> Self {
        Self::new(r, self.coeffs.iter().map(|a| r.mul(a, c)).collect())
    }

    pub fn mul<R: Ring<Elem = E>>(&self, r: &R, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = r.add(&v[i + j], &r.mul(a, b));
            }
        }
        Self::new(r, v)
    }

    pub fn pow<R: Ring<Elem = E>>(&self, r: &R, mut e: u32) -> Self {
        let mut result = Self::one(r);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(r, &base);
            }
            base = base.mul(r, &base);
            e >>= 1;
        }
        result
    }

    /// Horner evaluation.
    pub fn eval<R: Ring<Elem = E>>(&self, r: &R, x: &E) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
    }

    /// `self(g(T))`.
    pub fn compose<R: Ring<Elem = E>>(&self, r: &R, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(r, g).add(r, &Self::constant(r, c.clone())))
    }

    pub fn derivative<R: Ring<Elem = E>>(&self, r: &R) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| r.mul(c, &r.from_i64(i as i64)))
            .collect();
        Self::new(r, v)
    }

    /// `T^n·self(1/T)` for `n = deg self`.
    pub fn reversed<R: Ring<Elem = E>>(&self, r: &R) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(r, v)
    }

    /// Truncation mod `T^n`.
    pub fn truncate<R: Ring<Elem = E>>(&self, r: &R, n: usize) -> Self {
        Self::new(r, self.coeffs.iter().take(n).cloned().collect())
    }

    /// Division with remainder; requires the leading coefficient of `divisor`
    /// to divide every leading coefficient met along the way.
    pub fn divrem<R: Ring<Elem = E>>(
        &self,
        r: &R,
        divisor: &Self,
    ) -> Result<(Self, Self), AlgebraError> {
        let dd = divisor
            .degree()
            .ok_or_else(|| AlgebraError::Domain("division by the zero polynomial".into()))?;
        let lc = divisor.lead().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quo = vec![r.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if r.is_zero(&rem[i]) {
                continue;
            }
            let c = r.try_div(&rem[i], &lc).ok_or_else(|| {
                AlgebraError::Domain("leading coefficient does not divide".into())
            })?;
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = r.sub(&rem[idx], &r.mul(&c, dj));
            }
            quo[i - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(r, quo), Self::new(r, rem)))
    }

    /// Quotient of an exact division.
    pub fn div_exact<R: Ring<Elem = E>>(&self, r: &R, divisor: &Self) -> Result<Self, AlgebraError> {
        let (q, rem) = self.divrem(r, divisor)?;
        if !rem.is_zero() {
            return Err(AlgebraError::Domain("division leaves a nonzero remainder".into()));
        }
        Ok(q)
    }

    pub fn rem<R: Field<Elem = E>>(&self, r: &R, divisor: &Self) -> Self {
        self.divrem(r, divisor).expect("nonzero divisor over a field").1
    }

    pub fn monic<R: Field<Elem = E>>(&self, r: &R) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(lc) => {
                let inv = r.inv(lc).expect("nonzero leading coefficient");
                self.scale(r, &inv)
            }
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd<R: Field<Elem = E>>(&self, r: &R, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let rem = a.rem(r, &b);
            a = b;
            b = rem;
        }
        a.monic(r)
    }

    /// Yun's square-free decomposition in characteristic zero: monic
    /// pairwise coprime `(g_i, i)` with `f = lc · Π g_i^i`.
    pub fn squarefree_char0<R: Field<Elem = E>>(&self, r: &R) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic(r);
        let df = f.derivative(r);
        let a0 = f.gcd(r, &df);
        let mut b = f.div_exact(r, &a0).expect("gcd divides");
        let mut c = df.div_exact(r, &a0).expect("gcd divides");
        let mut d = c.sub(r, &b.derivative(r));
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(r, &d);
            b = b.div_exact(r, &a).expect("gcd divides");
            c = d.div_exact(r, &a).expect("gcd divides");
            d = c.sub(r, &b.derivative(r));
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    pub fn mul_mod<R: Field<Elem = E>>(&self, r: &R, other: &Self, modulus: &Self) -> Self {
        self.mul(r, other).rem(r, modulus)
    }

    pub fn pow_mod<R: Field<Elem = E>>(&self, r: &R, e: &BigUint, modulus: &Self) -> Self {
        let mut result = Self::one(r).rem(r, modulus);
        let base = self.rem(r, modulus);
        for i in (0..e.bits()).rev() {
            result = result.mul_mod(r, &result, modulus);
            if e.bit(i) {
                result = result.mul_mod(r, &base, modulus);
            }
        }
        result
    }

    pub fn map<F, R2>(&self, r2: &R2, f: F) -> UniPoly<R2::Elem>
    where
        R2: Ring,
        F: Fn(&E) -> R2::Elem,
    {
        UniPoly::new(r2, self.coeffs.iter().map(f).collect())
    }

    /// Resultant via the Euclidean algorithm.
    pub fn resultant<R: Field<Elem = E>>(&self, r: &R, other: &Self) -> Result<E, AlgebraError> {
        let (Some(_), Some(_)) = (self.degree(), other.degree()) else {
            return Err(AlgebraError::Domain("resultant of the zero polynomial".into()));
        };
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = r.one();
        loop {
            let da = a.degree().unwrap();
            let db = match b.degree() {
                None => return Ok(r.zero()),
                Some(d) => d,
            };
            if db == 0 {
                let lb = b.lead().unwrap();
                let mut pw = r.one();
                for _ in 0..da {
                    pw = r.mul(&pw, lb);
                }
                return Ok(r.mul(&acc, &pw));
            }
            // res(a, b) = (-1)^{da·db} res(b, a) and res(b, a) = lc(b)^{da - dr} res(b, a mod b)
            let rem = a.rem(r, &b);
            if da * db % 2 == 1 {
                acc = r.neg(&acc);
            }
            let dr = match rem.degree() {
                None => return Ok(r.zero()),
                Some(d) => d,
            };
            let lb = b.lead().unwrap().clone();
            for _ in 0..(da - dr) {
                acc = r.mul(&acc, &lb);
            }
            a = b;
            b = rem;
        }
    }

    /// `(-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
    pub fn discriminant<R: Field<Elem = E>>(&self, r: &R) -> Result<E, AlgebraError> {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(AlgebraError::Domain("discriminant of a constant".into())),
        };
        let res = self.resultant(r, &self.derivative(r))?;
        let mut d = r
            .div(&res, self.lead().unwrap())
            .expect("nonzero leading coefficient");
        if (n * (n - 1) / 2) % 2 == 1 {
            d = r.neg(&d);
        }
        Ok(d)
    }
}

impl UniPoly<BigInt> {
    pub fn from_i64s(v: &[i64]) -> Self {
        Self::new(&Integers, v.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rational(&self) -> UniPoly<BigRational> {
        self.map(&Rationals, |c| BigRational::from_integer(c.clone()))
    }

    /// Integer discriminant, computed over the rationals.
    pub fn discriminant_int(&self) -> Result<BigInt, AlgebraError> {
        let d = self.to_rational().discriminant(&Rationals)?;
        debug_assert!(d.is_integer());
        Ok(d.to_integer())
    }
}

impl UniPoly<BigRational> {
    /// The polynomial if all coefficients are integers.
    pub fn to_integer(&self) -> Option<UniPoly<BigInt>> {
        self.coeffs
            .iter()
            .all(|c| c.is_integer())
            .then(|| UniPoly::new(&Integers, self.coeffs.iter().map(|c| c.to_integer()).collect()))
    }
}

/// Power series helpers for integer series with constant term one.
pub mod series {
    use super::*;

    /// Inverse of `1 + a_1 T + ...` modulo `T^n`.
    pub fn inverse(a: &[BigInt], n: usize) -> Vec<BigInt> {
        assert!(a.first().is_some_and(|c| c.is_one()));
        let mut out = vec![BigInt::zero(); n];
        if n == 0 {
            return out;
        }
        out[0] = BigInt::one();
        for i in 1..n {
            let mut s = BigInt::zero();
            for j in 1..=i.min(a.len() - 1) {
                s += &a[j] * &out[i - j];
            }
            out[i] = -s;
        }
        out
    }

    /// Product modulo `T^n`.
    pub fn mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate().take(n) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                out[i + j] += x * y;
            }
        }
        out
    }
}
