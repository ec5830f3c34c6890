//! Binary fixed-point reals and complex numbers over `BigInt` mantissas.
//!
//! A [`Fixed`] with `bits = b` stores `mant / 2^b`. All binary operations
//! require equal `bits`; products and quotients round to nearest.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed {
    mant: BigInt,
    bits: u32,
}

fn round_shift(x: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x.clone();
    }
    let half = BigInt::one() << (s - 1);
    (x + half) >> s
}

fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    // nearest, ties away from zero is irrelevant at these scales
    let (q, r) = n.div_mod_floor(d);
    if (r * 2u32).abs() >= d.abs() {
        if d.is_positive() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

impl Fixed {
    pub fn zero(bits: u32) -> Self {
        Self {
            mant: BigInt::zero(),
            bits,
        }
    }

    pub fn one(bits: u32) -> Self {
        Self {
            mant: BigInt::one() << bits,
            bits,
        }
    }

    pub fn from_mantissa(mant: BigInt, bits: u32) -> Self {
        Self { mant, bits }
    }

    pub fn from_int(n: &BigInt, bits: u32) -> Self {
        Self {
            mant: n << bits,
            bits,
        }
    }

    pub fn from_i64(n: i64, bits: u32) -> Self {
        Self::from_int(&BigInt::from(n), bits)
    }

    pub fn from_rational(r: &BigRational, bits: u32) -> Self {
        Self {
            mant: round_div(&(r.numer() << bits), r.denom()),
            bits,
        }
    }

    pub fn from_f64(x: f64, bits: u32) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return Self::zero(bits);
        }
        let r = BigRational::from_float(x).expect("finite");
        Self::from_rational(&r, bits)
    }

    /// `√n` for a nonnegative integer.
    pub fn sqrt_int(n: &BigInt, bits: u32) -> Self {
        Self {
            mant: (n << (2 * bits)).sqrt(),
            bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn to_f64(&self) -> f64 {
        // keep 64 significant bits before converting
        let shift = self.mant.bits().saturating_sub(64) as u32;
        let m = (&self.mant >> shift).to_f64().unwrap_or(0.0);
        m * 2f64.powi(shift as i32 - self.bits as i32)
    }

    pub fn with_bits(&self, bits: u32) -> Self {
        let mant = match bits.cmp(&self.bits) {
            Ordering::Equal => self.mant.clone(),
            Ordering::Greater => &self.mant << (bits - self.bits),
            Ordering::Less => round_shift(&self.mant, self.bits - bits),
        };
        Self { mant, bits }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -&self.mant,
            bits: self.bits,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        Self {
            mant: &self.mant + &o.mant,
            bits: self.bits,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        Self {
            mant: &self.mant - &o.mant,
            bits: self.bits,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        Self {
            mant: round_shift(&(&self.mant * &o.mant), self.bits),
            bits: self.bits,
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        assert!(!o.is_zero(), "fixed-point division by zero");
        Self {
            mant: round_div(&(&self.mant << self.bits), &o.mant),
            bits: self.bits,
        }
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        Self {
            mant: &self.mant * n,
            bits: self.bits,
        }
    }

    pub fn div_int(&self, n: &BigInt) -> Self {
        Self {
            mant: round_div(&self.mant, n),
            bits: self.bits,
        }
    }

    /// Multiplication by `2^k` (k may be negative).
    pub fn ldexp(&self, k: i32) -> Self {
        let mant = if k >= 0 {
            &self.mant << k as u32
        } else {
            round_shift(&self.mant, (-k) as u32)
        };
        Self {
            mant,
            bits: self.bits,
        }
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative number");
        Self {
            mant: (&self.mant << self.bits).sqrt(),
            bits: self.bits,
        }
    }

    /// Nearest integer.
    pub fn round(&self) -> BigInt {
        round_shift(&self.mant, self.bits)
    }

    pub fn floor(&self) -> BigInt {
        self.mant.div_floor(&(BigInt::one() << self.bits))
    }

    /// `round(self · 2^k)`.
    pub fn scaled(&self, k: u32) -> BigInt {
        if k >= self.bits {
            &self.mant << (k - self.bits)
        } else {
            round_shift(&self.mant, self.bits - k)
        }
    }

    /// `log2 |self|` rounded down, `None` for zero.
    pub fn ilog2(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.mant.bits() as i64 - 1 - self.bits as i64)
    }

    /// True when `|self| < 2^{-k}`.
    pub fn below_pow2(&self, k: i64) -> bool {
        match self.ilog2() {
            None => true,
            Some(l) => l < -k,
        }
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Fixed {
    fn cmp(&self, o: &Self) -> Ordering {
        debug_assert_eq!(self.bits, o.bits);
        self.mant.cmp(&o.mant)
    }
}

/// `atan(t)` for `|t| ≤ 1`: argument halving, then the Taylor series.
fn atan_unit(t: &Fixed) -> Fixed {
    let bits = t.bits;
    let one = Fixed::one(bits);
    let mut x = t.clone();
    let halvings = 8;
    for _ in 0..halvings {
        // atan t = 2 atan(t / (1 + sqrt(1 + t²)))
        let s = one.add(&x.mul(&x)).sqrt();
        x = x.div(&one.add(&s));
    }
    let x2 = x.mul(&x);
    let mut term = x.clone();
    let mut sum = x.clone();
    let mut n = 1i64;
    loop {
        term = term.mul(&x2).neg();
        n += 2;
        let add = term.div_int(&BigInt::from(n));
        if add.is_zero() {
            break;
        }
        sum = sum.add(&add);
    }
    sum.ldexp(halvings)
}

/// `π` by Machin's formula.
pub fn pi(bits: u32) -> Fixed {
    let w = bits + 16;
    let atan_inv = |k: i64| {
        let x = Fixed::one(w).div_int(&BigInt::from(k));
        let x2 = x.mul(&x);
        let mut term = x.clone();
        let mut sum = x;
        let mut n = 1i64;
        loop {
            term = term.mul(&x2).neg();
            n += 2;
            let add = term.div_int(&BigInt::from(n));
            if add.is_zero() {
                break;
            }
            sum = sum.add(&add);
        }
        sum
    };
    atan_inv(5)
        .mul_int(&BigInt::from(16))
        .sub(&atan_inv(239).mul_int(&BigInt::from(4)))
        .with_bits(bits)
}

/// `atan2(y, x)` in `(-π, π]`.
pub fn atan2(y: &Fixed, x: &Fixed) -> Fixed {
    let bits = x.bits;
    let w = bits + 24;
    let (y, x) = (y.with_bits(w), x.with_bits(w));
    assert!(!(x.is_zero() && y.is_zero()), "atan2 of the origin");
    let p = pi(w);
    let half_pi = p.ldexp(-1);
    let r = if x.abs() >= y.abs() {
        let base = atan_unit(&y.div(&x));
        if !x.is_negative() {
            base
        } else if !y.is_negative() {
            base.add(&p)
        } else {
            base.sub(&p)
        }
    } else {
        let base = atan_unit(&x.div(&y));
        if !y.is_negative() {
            half_pi.sub(&base)
        } else {
            half_pi.neg().sub(&base)
        }
    };
    r.with_bits(bits)
}

/// `(cos θ, sin θ)`.
pub fn cos_sin(theta: &Fixed) -> (Fixed, Fixed) {
    let bits = theta.bits;
    let w = bits + 40;
    let t = theta.with_bits(w);
    let two_pi = pi(w).ldexp(1);
    let k = t.div(&two_pi).round();
    let t = t.sub(&two_pi.mul_int(&k));
    let halvings = 16;
    let x = t.ldexp(-halvings);
    let x2 = x.mul(&x);
    let mut c = Fixed::one(w);
    let mut s = x.clone();
    let mut tc = Fixed::one(w);
    let mut ts = x.clone();
    let mut n = 0i64;
    loop {
        n += 2;
        tc = tc.mul(&x2).neg().div_int(&BigInt::from((n - 1) * n));
        ts = ts.mul(&x2).neg().div_int(&BigInt::from(n * (n + 1)));
        if tc.is_zero() && ts.is_zero() {
            break;
        }
        c = c.add(&tc);
        s = s.add(&ts);
    }
    for _ in 0..halvings {
        let s2 = c.mul(&s).ldexp(1);
        let c2 = c.mul(&c).sub(&s.mul(&s));
        c = c2;
        s = s2;
    }
    (c.with_bits(bits), s.with_bits(bits))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub re: Fixed,
    pub im: Fixed,
}

impl Complex {
    pub fn new(re: Fixed, im: Fixed) -> Self {
        debug_assert_eq!(re.bits, im.bits);
        Self { re, im }
    }

    pub fn zero(bits: u32) -> Self {
        Self::new(Fixed::zero(bits), Fixed::zero(bits))
    }

    pub fn one(bits: u32) -> Self {
        Self::new(Fixed::one(bits), Fixed::zero(bits))
    }

    pub fn from_real(re: Fixed) -> Self {
        let bits = re.bits;
        Self::new(re, Fixed::zero(bits))
    }

    pub fn from_f64(re: f64, im: f64, bits: u32) -> Self {
        Self::new(Fixed::from_f64(re, bits), Fixed::from_f64(im, bits))
    }

    pub fn from_polar_unit(theta: &Fixed) -> Self {
        let (c, s) = cos_sin(theta);
        Self::new(c, s)
    }

    pub fn bits(&self) -> u32 {
        self.re.bits
    }

    pub fn with_bits(&self, bits: u32) -> Self {
        Self::new(self.re.with_bits(bits), self.im.with_bits(bits))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }

    pub fn scale(&self, r: &Fixed) -> Self {
        Self::new(self.re.mul(r), self.im.mul(r))
    }

    pub fn norm_sqr(&self) -> Fixed {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> Fixed {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        Self::new(self.re.div(&n), self.im.neg().div(&n))
    }

    pub fn div(&self, o: &Self) -> Self {
        // scale by a power of two first so tiny divisors keep full relative precision
        let shift = o
            .re
            .ilog2()
            .into_iter()
            .chain(o.im.ilog2())
            .max()
            .unwrap_or(0);
        if shift < -8 {
            let k = (-shift) as i32;
            let num = Self::new(self.re.ldexp(k), self.im.ldexp(k));
            let den = Self::new(o.re.ldexp(k), o.im.ldexp(k));
            return num.mul(&den.conj()).scale_div(&den.norm_sqr());
        }
        self.mul(&o.conj()).scale_div(&o.norm_sqr())
    }

    fn scale_div(&self, d: &Fixed) -> Self {
        Self::new(self.re.div(d), self.im.div(d))
    }

    /// Argument in `[0, 2π)`.
    pub fn arg_positive(&self) -> Fixed {
        let a = atan2(&self.im, &self.re);
        if a.is_negative() {
            a.add(&pi(a.bits).ldexp(1))
        } else {
            a
        }
    }

    pub fn powi(&self, e: i64) -> Self {
        let bits = self.bits();
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result = Complex::one(bits);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        result
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}
