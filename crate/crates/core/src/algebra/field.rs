//! Finite fields `F_{p^k}` for odd `p`, realized as `F_p[u]/(π)` with `π` the
//! least monic irreducible of degree `k` (coefficient vectors ordered as base-`p`
//! integers with the constant term least significant).
//!
//! Elements are stored in logarithmic form relative to a fixed primitive
//! element `g`: the zero element is encoded as `0` and `g^e` as `e + 1`.
//! Multiplication is an addition of exponents and addition goes through a
//! Zech logarithm table. The polynomial-basis "index" of an element (its
//! coefficient vector read as a base-`p` number) is the external, canonical
//! representation used for ordering and serialization.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::ring::{Field, Ring};
use super::AlgebraError;

/// Largest field size for which tables are built.
pub const MAX_FIELD_SIZE: u64 = 1 << 24;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FqElem(u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Raw encoding; stable only within one field.
    pub fn raw(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            write!(f, "0")
        } else {
            write!(f, "g^{}", self.0 - 1)
        }
    }
}

pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    /// Coefficients of the defining polynomial, low to high, monic of degree k.
    modulus: Vec<u32>,
    /// Polynomial-basis index of the primitive element.
    generator_index: u32,
    /// `exp_index[e]` = index of `g^e` for `e < q-1`.
    exp_index: Vec<u32>,
    /// `log_of_index[i]` = encoded element with index `i`.
    log_of_index: Vec<u32>,
    /// `zech[e]` = encoded `1 + g^e`.
    zech: Vec<u32>,
    minus_one: FqElem,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} (modulus {:?})", self.p, self.k, self.modulus)
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomial arithmetic over `F_p` on plain residues, used only while
/// constructing tables.
mod small {
    pub fn mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
        let k = modulus.len() - 1;
        let mut prod = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut prod: Vec<u32> = prod.into_iter().map(|v| v as u32).collect();
        for deg in (k..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for (j, &m) in modulus.iter().enumerate() {
                let idx = deg - k + j;
                prod[idx] = ((prod[idx] as u64 + (p - c) as u64 * m as u64) % p as u64) as u32;
            }
        }
        prod.truncate(k);
        prod.resize(k, 0);
        prod
    }

    pub fn powmod(base: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
        let k = modulus.len() - 1;
        let mut result = vec![0u32; k];
        result[0] = 1;
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &b, modulus, p);
            }
            b = mulmod(&b, &b, modulus, p);
            e >>= 1;
        }
        result
    }

    pub fn to_index(v: &[u32], p: u32) -> u32 {
        v.iter().rev().fold(0u32, |acc, &c| acc * p + c)
    }

    pub fn from_index(mut i: u32, p: u32, k: usize) -> Vec<u32> {
        let mut out = vec![0u32; k];
        for c in out.iter_mut() {
            *c = i % p;
            i /= p;
        }
        out
    }
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self, AlgebraError> {
        Self::new(p, 1)
    }

    pub fn new(p: u32, k: u32) -> Result<Self, AlgebraError> {
        if p == 2 {
            return Err(AlgebraError::UnsupportedField(
                "characteristic 2 is not supported".into(),
            ));
        }
        if !is_prime_u64(p as u64) {
            return Err(AlgebraError::UnsupportedField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(AlgebraError::UnsupportedField("extension degree 0".into()));
        }
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or_else(|| {
                AlgebraError::UnsupportedField(format!("F_{p}^{k} exceeds the table size limit"))
            })?;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            least_irreducible_over_prime(p, k as usize)
        };
        Ok(Self::with_modulus(p, k, q as u32, modulus))
    }

    fn with_modulus(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Self {
        let kk = k as usize;
        let order = (q - 1) as u64;
        let factors = prime_factors_u64(order);
        let mut generator_index = 0;
        for cand in 1..q {
            let v = small::from_index(cand, p, kk);
            let is_gen = factors.iter().all(|&r| {
                let w = small::powmod(&v, order / r, &modulus, p);
                small::to_index(&w, p) != 1
            });
            if is_gen {
                generator_index = cand;
                break;
            }
        }
        assert!(generator_index != 0 || q == 2);

        let gvec = small::from_index(generator_index, p, kk);
        let mut exp_index = Vec::with_capacity(order as usize);
        let mut log_of_index = vec![0u32; q as usize];
        let mut cur = small::from_index(1, p, kk);
        for e in 0..order as u32 {
            let idx = small::to_index(&cur, p);
            exp_index.push(idx);
            log_of_index[idx as usize] = e + 1;
            cur = small::mulmod(&cur, &gvec, &modulus, p);
        }
        // 1 + g^e: add one to the constant digit of the index.
        let zech = exp_index
            .iter()
            .map(|&idx| {
                let c0 = idx % p;
                let shifted = idx - c0 + (c0 + 1) % p;
                log_of_index[shifted as usize]
            })
            .collect();
        let minus_one_idx = p - 1;
        let minus_one = FqElem(log_of_index[minus_one_idx as usize]);
        Self {
            p,
            k,
            q,
            modulus,
            generator_index,
            exp_index,
            log_of_index,
            zech,
            minus_one,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FqElem {
        FqElem(self.log_of_index[self.generator_index as usize])
    }

    #[inline]
    pub fn from_index(&self, i: u32) -> FqElem {
        FqElem(self.log_of_index[i as usize])
    }

    #[inline]
    pub fn to_index(&self, a: FqElem) -> u32 {
        if a.0 == 0 {
            0
        } else {
            self.exp_index[(a.0 - 1) as usize]
        }
    }

    /// Coefficients of `a` in the polynomial basis `1, u, ..., u^{k-1}`.
    pub fn to_digits(&self, a: FqElem) -> Vec<u32> {
        small::from_index(self.to_index(a), self.p, self.k as usize)
    }

    pub fn from_digits(&self, digits: &[u32]) -> FqElem {
        let mut d = digits.to_vec();
        d.resize(self.k as usize, 0);
        self.from_index(small::to_index(&d, self.p))
    }

    /// The image of an integer under `Z → F_p ⊂ F_q`.
    pub fn from_int(&self, n: i64) -> FqElem {
        self.from_index(n.rem_euclid(self.p as i64) as u32)
    }

    /// Element for `e` in `0..q`, enumerating the field in index order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q).map(move |i| self.from_index(i))
    }

    /// `g^e`.
    #[inline]
    pub fn exp(&self, e: u64) -> FqElem {
        FqElem((e % (self.q as u64 - 1)) as u32 + 1)
    }

    /// Discrete log of a nonzero element.
    #[inline]
    pub fn log(&self, a: FqElem) -> Option<u32> {
        (a.0 != 0).then(|| a.0 - 1)
    }

    #[inline]
    pub fn fmul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem::ZERO;
        }
        let n = self.q - 1;
        let s = (a.0 - 1) + (b.0 - 1);
        FqElem(if s >= n { s - n } else { s } + 1)
    }

    #[inline]
    pub fn fadd(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let n = self.q - 1;
        let (la, lb) = (a.0 - 1, b.0 - 1);
        let d = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[d as usize];
        self.fmul(a, FqElem(z))
    }

    #[inline]
    pub fn fneg(&self, a: FqElem) -> FqElem {
        self.fmul(a, self.minus_one)
    }

    #[inline]
    pub fn fsub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.fadd(a, self.fneg(b))
    }

    #[inline]
    pub fn finv(&self, a: FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            return None;
        }
        let n = self.q - 1;
        let l = a.0 - 1;
        Some(FqElem(if l == 0 { 0 } else { n - l } + 1))
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem::ONE;
        }
        match self.log(a) {
            None => FqElem::ZERO,
            Some(l) => {
                let n = (self.q - 1) as u128;
                FqElem(((l as u128 * e as u128) % n) as u32 + 1)
            }
        }
    }

    /// Quadratic character: 0 on zero, 1 on nonzero squares, -1 otherwise.
    #[inline]
    pub fn quad_char(&self, a: FqElem) -> i32 {
        if a.0 == 0 {
            0
        } else if (a.0 - 1) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_square(&self, a: FqElem) -> bool {
        self.quad_char(a) >= 0
    }

    /// A square root of `a` when one exists.
    pub fn sqrt(&self, a: FqElem) -> Option<FqElem> {
        match self.log(a) {
            None => Some(FqElem::ZERO),
            Some(l) if l % 2 == 0 => Some(FqElem(l / 2 + 1)),
            Some(_) => None,
        }
    }

    /// The least (in index order) non-square.
    pub fn least_nonsquare(&self) -> FqElem {
        self.elements()
            .find(|&x| self.quad_char(x) == -1)
            .expect("odd field has non-squares")
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: FqElem) -> FqElem {
        self.pow(a, self.p as u64)
    }

    /// Embedding `sub → self` sending the generator `u` of `sub` to the least
    /// (index order) root of its modulus in `self`.
    pub fn embedding_from(&self, sub: &FiniteField) -> Result<FieldEmbedding, AlgebraError> {
        if sub.p != self.p || self.k % sub.k != 0 {
            return Err(AlgebraError::Domain(format!(
                "no embedding F_{}^{} -> F_{}^{}",
                sub.p, sub.k, self.p, self.k
            )));
        }
        let modulus: Vec<FqElem> = sub.modulus.iter().map(|&c| self.from_int(c as i64)).collect();
        let root = self
            .elements()
            .find(|&x| {
                let mut acc = FqElem::ZERO;
                for &c in modulus.iter().rev() {
                    acc = self.fadd(self.fmul(acc, x), c);
                }
                acc.is_zero()
            })
            .ok_or_else(|| AlgebraError::Domain("modulus has no root in extension".into()))?;
        let map = (0..sub.q)
            .map(|idx_enc| {
                let a = FqElem(idx_enc);
                let digits = sub.to_digits(a);
                let mut acc = FqElem::ZERO;
                for &c in digits.iter().rev() {
                    acc = self.fadd(self.fmul(acc, root), self.from_int(c as i64));
                }
                acc
            })
            .collect();
        Ok(FieldEmbedding { map })
    }
}

/// A field homomorphism `F_{p^k} → F_{p^{kn}}`, tabulated on encoded elements.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    map: Vec<FqElem>,
}

impl FieldEmbedding {
    #[inline]
    pub fn apply(&self, a: FqElem) -> FqElem {
        self.map[a.0 as usize]
    }
}

fn is_irreducible_small(f: &[u32], p: u32) -> bool {
    // Rabin: x^{p^n} = x mod f and gcd(x^{p^{n/r}} - x, f) = 1 for primes r | n.
    let n = f.len() - 1;
    let x = {
        let mut v = vec![0u32; n];
        if n > 1 {
            v[1] = 1;
        } else {
            // degree one is always irreducible
            return true;
        }
        v
    };
    let frob_iter = |times: usize| {
        let mut h = x.clone();
        for _ in 0..times {
            h = small::powmod(&h, p as u64, f, p);
        }
        h
    };
    if frob_iter(n) != x {
        return false;
    }
    for r in prime_factors_u64(n as u64) {
        let mut h = frob_iter(n / r as usize);
        h[1] = (h[1] + p - 1) % p;
        if !small_gcd_is_one(&h, f, p) {
            return false;
        }
    }
    true
}

fn small_gcd_is_one(a: &[u32], b: &[u32], p: u32) -> bool {
    let trim = |v: &mut Vec<u32>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    let inv = |x: u32| -> u32 {
        let mut r = 1u64;
        let mut b = x as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    };
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let lb = inv(*b.last().unwrap());
        while a.len() >= b.len() {
            let c = (*a.last().unwrap() as u64 * lb as u64 % p as u64) as u32;
            let shift = a.len() - b.len();
            for (j, &bj) in b.iter().enumerate() {
                a[shift + j] = ((a[shift + j] as u64 + (p - c) as u64 * bj as u64) % p as u64) as u32;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}

/// Least monic irreducible of degree `k` over `F_p`, with coefficient vectors
/// compared as base-`p` integers (constant term least significant).
fn least_irreducible_over_prime(p: u32, k: usize) -> Vec<u32> {
    let total = (p as u64).pow(k as u32);
    for idx in 0..total {
        let mut f = Vec::with_capacity(k + 1);
        let mut i = idx;
        for _ in 0..k {
            f.push((i % p as u64) as u32);
            i /= p as u64;
        }
        f.push(1);
        if f[0] == 0 {
            continue;
        }
        if is_irreducible_small(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Ring for FiniteField {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        FqElem::ZERO
    }
    fn one(&self) -> FqElem {
        FqElem::ONE
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.fadd(*a, *b)
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        self.fneg(*a)
    }
    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.fsub(*a, *b)
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.fmul(*a, *b)
    }
    fn from_i64(&self, n: i64) -> FqElem {
        self.from_int(n)
    }
    fn try_div(&self, a: &FqElem, b: &FqElem) -> Option<FqElem> {
        self.finv(*b).map(|bi| self.fmul(*a, bi))
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        a.is_zero()
    }
}

impl Field for FiniteField {
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        self.finv(*a)
    }
}

/// Shared field instances keyed by `(p, k)`.
pub fn field(p: u32, k: u32) -> Result<Arc<FiniteField>, AlgebraError> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<FiniteField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let built = Arc::new(FiniteField::new(p, k)?);
    let mut guard = cache.lock().unwrap();
    Ok(guard.entry((p, k)).or_insert(built).clone())
}

/// Splits `q` into `(p, k)` with `q = p^k`, `p` an odd prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 3 {
        return None;
    }
    let p = prime_factors_u64(q);
    if p.len() != 1 || p[0] == 2 {
        return None;
    }
    let p = p[0];
    let mut k = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        k += 1;
    }
    Some((p as u32, k))
}
