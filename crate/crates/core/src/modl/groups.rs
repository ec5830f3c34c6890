//! Orders of finite orthogonal and symplectic groups, and exhaustive
//! isometry enumeration in small dimension.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;

use super::{is_odd_prime, legendre, ClassModSquares, ModlError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormType {
    /// `(-1)^{N/2} det Ψ` is a square.
    Split,
    Nonsplit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GroupFamily {
    O(FormType),
    SO(FormType),
    Omega(FormType),
    Sp,
}

fn pow(l: &BigInt, e: usize) -> BigInt {
    Pow::pow(l, e)
}

/// Closed-form group orders (the form type only matters for even `N`).
pub fn group_order(n: usize, ell: u32, family: GroupFamily) -> Result<BigInt, ModlError> {
    if n == 0 || !is_odd_prime(ell) {
        return Err(ModlError::Domain(format!("need N >= 1 and l an odd prime (N = {n}, l = {ell})")));
    }
    let l = BigInt::from(ell);
    let prod = |m: usize| (1..=m).fold(BigInt::one(), |acc, i| acc * (pow(&l, 2 * i) - 1));
    let orth = |t: FormType| -> BigInt {
        if n % 2 == 1 {
            let h = (n - 1) / 2;
            2 * pow(&l, h * h) * prod(h)
        } else {
            let h = n / 2;
            let sign = match t {
                FormType::Split => -1,
                FormType::Nonsplit => 1,
            };
            2 * pow(&l, n * (n - 2) / 4) * (pow(&l, h) + sign) * prod(h - 1)
        }
    };
    Ok(match family {
        GroupFamily::O(t) => orth(t),
        GroupFamily::SO(t) => orth(t) / 2,
        GroupFamily::Omega(t) => {
            if n < 2 {
                return Err(ModlError::Domain("Ω needs N >= 2".into()));
            }
            orth(t) / 4
        }
        GroupFamily::Sp => {
            if n % 2 == 1 {
                return Err(ModlError::Domain(format!("symplectic groups need even N, got {n}")));
            }
            let h = n / 2;
            pow(&l, h * h) * prod(h)
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioEntry {
    pub ell: u32,
    pub form: FormType,
    #[serde(serialize_with = "crate::numeric::serialize_rational")]
    pub ratio: BigRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioSweep {
    pub n: usize,
    pub entries: Vec<RatioEntry>,
    #[serde(serialize_with = "crate::numeric::serialize_rational")]
    pub min: BigRational,
    #[serde(serialize_with = "crate::numeric::serialize_rational")]
    pub max: BigRational,
}

/// `#O(N, F_ℓ) / ℓ^{N(N-1)/2}` over the given primes and, for even `N`, both
/// form types.
pub fn order_ratio_bounds(n: usize, ells: &[u32]) -> Result<RatioSweep, ModlError> {
    if ells.is_empty() {
        return Err(ModlError::Domain("empty prime range".into()));
    }
    let forms: &[FormType] = if n % 2 == 0 {
        &[FormType::Split, FormType::Nonsplit]
    } else {
        &[FormType::Split]
    };
    let mut entries = Vec::new();
    for &ell in ells {
        for &t in forms {
            let o = group_order(n, ell, GroupFamily::O(t))?;
            let den = pow(&BigInt::from(ell), n * (n - 1) / 2);
            entries.push(RatioEntry {
                ell,
                form: t,
                ratio: BigRational::new(o, den),
            });
        }
    }
    let min = entries.iter().map(|e| e.ratio.clone()).min().unwrap();
    let max = entries.iter().map(|e| e.ratio.clone()).max().unwrap();
    Ok(RatioSweep { n, entries, min, max })
}

type Mat = Vec<i64>;

/// Diagonal form `diag(1, …, 1, δ)` of the requested type.
pub fn standard_form(n: usize, ell: u32, t: FormType) -> Vec<i64> {
    let mut form = vec![1i64; n];
    if n % 2 == 0 {
        let l = ell as i64;
        let want = if t == FormType::Split { 1 } else { -1 };
        let sign = if (n / 2) % 2 == 0 { 1 } else { l - 1 };
        let delta = (1..l)
            .find(|&d| legendre((sign * d).rem_euclid(l) as u64, ell as u64) == want)
            .unwrap();
        form[n - 1] = delta;
    }
    form
}

fn mat_mul(a: &Mat, b: &Mat, n: usize, l: i64) -> Mat {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            c[i * n + j] = (0..n).map(|k| a[i * n + k] * b[k * n + j]).sum::<i64>().rem_euclid(l);
        }
    }
    c
}

fn preserves(m: &Mat, form: &[i64], n: usize, l: i64) -> bool {
    for i in 0..n {
        for j in 0..n {
            let s: i64 = (0..n).map(|k| m[k * n + i] * form[k] * m[k * n + j]).sum();
            let want = if i == j { form[i] } else { 0 };
            if (s - want).rem_euclid(l) != 0 {
                return false;
            }
        }
    }
    true
}

/// `det(T - M)`, constant term first.
pub fn char_poly(m: &Mat, n: usize, l: i64) -> Vec<i64> {
    let a = |i: usize, j: usize| m[i * n + j];
    let r = |x: i64| x.rem_euclid(l);
    match n {
        1 => vec![r(-a(0, 0)), 1],
        2 => {
            let tr = a(0, 0) + a(1, 1);
            let det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
            vec![r(det), r(-tr), 1]
        }
        3 => {
            let tr = a(0, 0) + a(1, 1) + a(2, 2);
            let e2 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0) + a(1, 1) * a(2, 2)
                - a(1, 2) * a(2, 1);
            let det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
            vec![r(-det), r(e2), r(-tr), 1]
        }
        _ => unreachable!("char_poly is only used for N <= 3"),
    }
}

fn eval(c: &[i64], x: i64, l: i64) -> i64 {
    c.iter().rev().fold(0, |acc, &a| (acc * x + a).rem_euclid(l))
}

#[derive(Clone, Debug, Serialize)]
pub struct Isometry {
    pub matrix: Vec<i64>,
    pub det: i64,
    /// Product of the classes of `B(v, v)` over a reflection word.
    pub spinor_norm: ClassModSquares,
    /// `det(T - M)`, constant term first.
    pub char_poly: Vec<i64>,
}

impl Isometry {
    /// Class of `f(-1)` for the characteristic polynomial `f`.
    pub fn f_minus_one_class(&self, ell: u32) -> ClassModSquares {
        ClassModSquares::of(ell, eval(&self.char_poly, -1, ell as i64))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IsometryGroup {
    pub n: usize,
    pub ell: u32,
    pub form: Vec<i64>,
    pub elements: Vec<Isometry>,
    /// Realized characteristic polynomials.
    pub char_polys: BTreeSet<Vec<i64>>,
    /// Whether the reflections generate every enumerated isometry.
    pub generated_by_reflections: bool,
}

impl IsometryGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn omega_order(&self) -> usize {
        self.elements
            .iter()
            .filter(|e| e.det == 1 && e.spinor_norm == ClassModSquares::Square)
            .count()
    }
}

/// All `M` with `Mᵀ Ψ M = Ψ` for the diagonal form `Ψ`, by exhaustion over
/// `ℓ^{N²}` matrices; spinor norms from reflection words found breadth first.
pub fn brute_isometry_oracle(n: usize, ell: u32, form: &[i64]) -> Result<IsometryGroup, ModlError> {
    if n == 0 || n > 3 || ell > 5 {
        return Err(ModlError::RangeExceeded { n, ell });
    }
    if !is_odd_prime(ell) || form.len() != n || form.iter().any(|&d| d.rem_euclid(ell as i64) == 0) {
        return Err(ModlError::Domain("need an odd prime and a nondegenerate diagonal form".into()));
    }
    let l = ell as i64;
    let size = (l as u64).pow((n * n) as u32);
    let mut brute: Vec<Mat> = Vec::new();
    for idx in 0..size {
        let mut r = idx;
        let m: Mat = (0..n * n)
            .map(|_| {
                let x = (r % l as u64) as i64;
                r /= l as u64;
                x
            })
            .collect();
        if preserves(&m, form, n, l) {
            brute.push(m);
        }
    }
    // reflections in anisotropic vectors
    let bvv = |v: &[i64]| (0..n).map(|i| form[i] * v[i] * v[i]).sum::<i64>().rem_euclid(l);
    let inv = |x: i64| (1..l).find(|&y| x * y % l == 1).unwrap();
    let mut reflections: Vec<(Mat, ClassModSquares)> = Vec::new();
    for idx in 1..(l as u64).pow(n as u32) {
        let mut r = idx;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let x = (r % l as u64) as i64;
                r /= l as u64;
                x
            })
            .collect();
        let q = bvv(&v);
        if q == 0 {
            continue;
        }
        let qi = inv(q);
        let m: Mat = (0..n * n)
            .map(|p| {
                let (i, j) = (p / n, p % n);
                let id = if i == j { 1 } else { 0 };
                (id - 2 * v[i] * form[j] * v[j] * qi).rem_euclid(l)
            })
            .collect();
        reflections.push((m, ClassModSquares::of(ell, q)));
    }
    let identity: Mat = (0..n * n).map(|p| if p / n == p % n { 1 } else { 0 }).collect();
    let mut norm: HashMap<Mat, ClassModSquares> = HashMap::from([(identity.clone(), ClassModSquares::Square)]);
    let mut queue = VecDeque::from([identity]);
    while let Some(a) = queue.pop_front() {
        let na = norm[&a];
        for (r, c) in &reflections {
            let b = mat_mul(r, &a, n, l);
            if !norm.contains_key(&b) {
                norm.insert(b.clone(), na.mul(*c));
                queue.push_back(b);
            }
        }
    }
    let generated = norm.len() == brute.len() && brute.iter().all(|m| norm.contains_key(m));
    let mut elements = Vec::with_capacity(brute.len());
    let mut char_polys = BTreeSet::new();
    for m in brute {
        let cp = char_poly(&m, n, l);
        let det = if n % 2 == 0 { cp[0] } else { (-cp[0]).rem_euclid(l) };
        let det = if det == 1 { 1 } else { -1 };
        char_polys.insert(cp.clone());
        let spinor_norm = norm.get(&m).copied().unwrap_or(ClassModSquares::Zero);
        elements.push(Isometry {
            matrix: m,
            det,
            spinor_norm,
            char_poly: cp,
        });
    }
    Ok(IsometryGroup {
        n,
        ell,
        form: form.to_vec(),
        elements,
        char_polys,
        generated_by_reflections: generated,
    })
}

/// `#Sp(2, F_ℓ)` by enumerating 2×2 matrices of determinant 1.
pub fn brute_sp2_order(ell: u32) -> u64 {
    let l = ell as i64;
    let mut count = 0;
    for a in 0..l {
        for b in 0..l {
            for c in 0..l {
                for d in 0..l {
                    if (a * d - b * c).rem_euclid(l) == 1 {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_match_enumeration() {
        let g = brute_isometry_oracle(3, 3, &[1, 1, 1]).unwrap();
        assert_eq!(g.order(), 48);
        assert_eq!(group_order(3, 3, GroupFamily::O(FormType::Split)).unwrap(), BigInt::from(48));
        assert_eq!(brute_sp2_order(3), 24);
        assert_eq!(group_order(2, 3, GroupFamily::Sp).unwrap(), BigInt::from(24));
        for (n, ell) in [(2, 3), (2, 5), (3, 3), (3, 5)] {
            let forms = if n % 2 == 0 { vec![FormType::Split, FormType::Nonsplit] } else { vec![FormType::Split] };
            for t in forms {
                let g = brute_isometry_oracle(n, ell, &standard_form(n, ell, t)).unwrap();
                assert!(g.generated_by_reflections);
                assert_eq!(BigInt::from(g.order()), group_order(n, ell, GroupFamily::O(t)).unwrap());
                let so = g.elements.iter().filter(|e| e.det == 1).count();
                assert_eq!(BigInt::from(so), group_order(n, ell, GroupFamily::SO(t)).unwrap());
                assert_eq!(BigInt::from(g.omega_order()), group_order(n, ell, GroupFamily::Omega(t)).unwrap());
            }
        }
    }

    #[test]
    fn split_and_nonsplit_differ() {
        let s = group_order(4, 5, GroupFamily::O(FormType::Split)).unwrap();
        let ns = group_order(4, 5, GroupFamily::O(FormType::Nonsplit)).unwrap();
        // 2·5²·(5² ∓ 1)·(5² - 1)
        assert_eq!(s, BigInt::from(2 * 25 * 24 * 24));
        assert_eq!(ns, BigInt::from(2 * 25 * 26 * 24));
        assert!(group_order(3, 5, GroupFamily::Sp).is_err());
    }

    #[test]
    fn ratio_sweep() {
        let primes: Vec<u32> = (3..=97).filter(|&p| is_odd_prime(p)).collect();
        let s = order_ratio_bounds(3, &primes).unwrap();
        assert_eq!(s.entries[0].ratio, BigRational::new(16.into(), 9.into()));
        assert!(s.min > BigRational::one() && s.max <= BigRational::from_integer(2.into()));
    }

    #[test]
    fn plane_isometries_are_reciprocal() {
        let g = brute_isometry_oracle(2, 3, &[1, 1]).unwrap();
        for cp in &g.char_polys {
            // T^2 + bT + c is reciprocal iff c = ±1 and (c = 1 or b = 0)
            let c = cp[0];
            assert!(c == 1 || (c == 2 && cp[1] == 0));
        }
        assert!(brute_isometry_oracle(4, 3, &[1, 1, 1, 1]).is_err());
    }
}
