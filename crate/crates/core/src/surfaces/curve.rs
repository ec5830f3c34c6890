use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::factor::{canonical_key, is_squarefree, monic_polys, to_indices};
use crate::algebra::{FiniteField, FqElem, FqPoly, UniPoly};

use super::SurfaceError;

/// Where a curve came from; twists remember their base and twisting polynomial.
#[derive(Clone, Debug)]
pub enum Provenance {
    Legendre,
    Custom,
    Twist { base: Arc<EllSurface>, f: FqPoly },
}

/// `y² = x³ + a(t)x + b(t)` over `F_q(t)`.
#[derive(Clone, Debug)]
pub struct EllSurface {
    field: Arc<FiniteField>,
    a: FqPoly,
    b: FqPoly,
    provenance: Provenance,
}

/// Serializable description of a curve, used for cache keys.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveKey {
    pub q: u32,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl EllSurface {
    pub fn new(field: Arc<FiniteField>, a: FqPoly, b: FqPoly) -> Result<Self, SurfaceError> {
        Self::with_provenance(field, a, b, Provenance::Custom)
    }

    fn with_provenance(
        field: Arc<FiniteField>,
        a: FqPoly,
        b: FqPoly,
        provenance: Provenance,
    ) -> Result<Self, SurfaceError> {
        if field.characteristic() < 5 {
            return Err(SurfaceError::UnsupportedCharacteristic(field.characteristic()));
        }
        let e = Self {
            field,
            a,
            b,
            provenance,
        };
        if e.discriminant().is_zero() {
            return Err(SurfaceError::Singular);
        }
        if e.j_is_constant() {
            return Err(SurfaceError::ConstantJ);
        }
        Ok(e)
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn a(&self) -> &FqPoly {
        &self.a
    }

    pub fn b(&self) -> &FqPoly {
        &self.b
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Short identifier: `legendre`, `legendre^f` style for twists, `custom`.
    pub fn id(&self) -> String {
        match &self.provenance {
            Provenance::Legendre => "legendre".to_string(),
            Provenance::Custom => "custom".to_string(),
            Provenance::Twist { base, .. } => format!("{}-twist", base.id()),
        }
    }

    pub fn key(&self) -> CurveKey {
        CurveKey {
            q: self.field.size(),
            a: to_indices(&self.field, &self.a),
            b: to_indices(&self.field, &self.b),
        }
    }

    /// The untwisted curve and twisting polynomial, if this is a twist.
    pub fn twist_data(&self) -> Option<(&Arc<EllSurface>, &FqPoly)> {
        match &self.provenance {
            Provenance::Twist { base, f } => Some((base, f)),
            _ => None,
        }
    }

    pub fn is_legendre_twist(&self) -> bool {
        matches!(&self.provenance, Provenance::Twist { base, .. } if matches!(base.provenance, Provenance::Legendre))
    }

    /// `Δ = -16(4a³ + 27b²)`.
    pub fn discriminant(&self) -> FqPoly {
        let f = &*self.field;
        let a3 = self.a.pow(f, 3).scale(f, &f.from_int(4));
        let b2 = self.b.pow(f, 2).scale(f, &f.from_int(27));
        a3.add(f, &b2).scale(f, &f.from_int(-16))
    }

    /// `c4 = -48a`.
    pub fn c4(&self) -> FqPoly {
        self.a.scale(&*self.field, &self.field.from_int(-48))
    }

    /// `j = 1728·4a³/(4a³ + 27b²)` at a point, `None` where the fiber is singular.
    pub fn j_at(&self, x: FqElem) -> Option<FqElem> {
        let f = &*self.field;
        let a = self.a.eval(f, &x);
        let b = self.b.eval(f, &x);
        let a3 = f.fmul(f.from_int(4), f.pow(a, 3));
        let den = f.fadd(a3, f.fmul(f.from_int(27), f.pow(b, 2)));
        f.finv(den).map(|d| f.fmul(f.fmul(f.from_int(1728), a3), d))
    }

    /// j is constant iff `a = 0`, `b = 0`, or `a³` and `b²` are proportional.
    pub fn j_is_constant(&self) -> bool {
        let f = &*self.field;
        if self.a.is_zero() || self.b.is_zero() {
            return true;
        }
        let a3 = self.a.pow(f, 3);
        let b2 = self.b.pow(f, 2);
        a3.scale(f, b2.lead().unwrap()) == b2.scale(f, a3.lead().unwrap())
    }
}

/// The Legendre curve `y² = x(x-1)(x-t)` moved to short Weierstrass form by
/// `x ↦ x + (1+t)/3`.
pub fn legendre_curve(field: Arc<FiniteField>) -> Result<EllSurface, SurfaceError> {
    if field.characteristic() < 5 {
        return Err(SurfaceError::UnsupportedCharacteristic(field.characteristic()));
    }
    let f = &*field;
    let inv3 = f.finv(f.from_int(3)).unwrap();
    let inv27 = f.finv(f.from_int(27)).unwrap();
    let t = UniPoly::x(f);
    // x³ + a2 x² + a4 x with a2 = -(1+t), a4 = t
    let a2 = t.add(f, &UniPoly::one(f)).neg(f);
    let a4 = t.clone();
    let a = a4.sub(f, &a2.mul(f, &a2).scale(f, &inv3));
    let b = a2
        .pow(f, 3)
        .scale(f, &f.fmul(f.from_int(2), inv27))
        .sub(f, &a2.mul(f, &a4).scale(f, &inv3));
    EllSurface::with_provenance(field.clone(), a, b, Provenance::Legendre)
}

/// `E_f : y² = x³ + f²a x + f³b`.
pub fn quadratic_twist(e: &Arc<EllSurface>, f: &FqPoly) -> Result<EllSurface, SurfaceError> {
    if f.is_zero() {
        return Err(SurfaceError::ZeroTwist);
    }
    let k = &*e.field;
    let f2 = f.mul(k, f);
    let f3 = f2.mul(k, f);
    EllSurface::with_provenance(
        e.field.clone(),
        e.a.mul(k, &f2),
        e.b.mul(k, &f3),
        Provenance::Twist {
            base: e.clone(),
            f: f.clone(),
        },
    )
}

/// Monic square-free `f` of degree `d` with `gcd(f, avoid) = 1`, in canonical order.
pub fn twisting_space(field: &FiniteField, d: usize, avoid: &FqPoly) -> Result<Vec<FqPoly>, SurfaceError> {
    if d == 0 {
        return Err(SurfaceError::Domain("twisting degree must be positive".into()));
    }
    if avoid.is_zero() {
        return Err(SurfaceError::Domain("avoid polynomial must be nonzero".into()));
    }
    let mut out: Vec<FqPoly> = monic_polys(field, d)
        .filter(|f| is_squarefree(field, f) && f.gcd(field, avoid).degree() == Some(0))
        .collect();
    out.sort_by_key(|f| canonical_key(field, f));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::field;
    use crate::algebra::factor::roots;

    fn poly(k: &FiniteField, v: &[i64]) -> FqPoly {
        UniPoly::new(k, v.iter().map(|&c| k.from_int(c)).collect())
    }

    #[test]
    fn legendre_bad_locus() {
        for p in [5, 7] {
            let k = field(p, 1).unwrap();
            let e = legendre_curve(k.clone()).unwrap();
            let disc = e.discriminant();
            let zeros = roots(&k, &disc);
            assert_eq!(zeros, vec![k.from_int(0), k.from_int(1)]);
            // 16 t^2 (t-1)^2
            let expect = poly(&k, &[0, 0, 1]).mul(&*k, &poly(&k, &[-1, 1]).pow(&*k, 2)).scale(&*k, &k.from_int(16));
            assert_eq!(disc, expect);
        }
    }

    #[test]
    fn legendre_j_is_nonconstant() {
        let k = field(5, 1).unwrap();
        let e = legendre_curve(k.clone()).unwrap();
        let j2 = e.j_at(k.from_int(2)).unwrap();
        let j3 = e.j_at(k.from_int(3)).unwrap();
        // j(λ) = 256(λ²-λ+1)³/(λ²(λ-1)²)
        let direct = |l: i64| {
            let num = 256 * (l * l - l + 1).pow(3);
            let den = l * l * (l - 1) * (l - 1);
            k.fmul(k.from_int(num), k.finv(k.from_int(den)).unwrap())
        };
        assert_eq!(j2, direct(2));
        assert_eq!(j3, direct(3));
        // 2, 3, 4 form one orbit of λ ↦ 1/λ, 1-λ over F_5, so all three share
        // j = 3; non-constancy shows up over F_25 or at larger p
        assert_eq!(j2, j3);
        assert!(!e.j_is_constant());
        let k7 = field(7, 1).unwrap();
        let e7 = legendre_curve(k7.clone()).unwrap();
        assert_ne!(e7.j_at(k7.from_int(2)), e7.j_at(k7.from_int(3)));
    }

    #[test]
    fn twisting_space_counts() {
        let k = field(5, 1).unwrap();
        let avoid = poly(&k, &[0, -1, 1]); // t(t-1)
        let lin = twisting_space(&k, 1, &avoid).unwrap();
        // every monic linear except t and t - 1 = t + 4
        assert_eq!(lin, vec![poly(&k, &[1, 1]), poly(&k, &[2, 1]), poly(&k, &[3, 1])]);

        // exhaustive oracle over the 25 monic quadratics
        let mut oracle = 0;
        for c0 in 0..5 {
            for c1 in 0..5 {
                let disc = (c1 * c1 - 4 * c0 as i64).rem_euclid(5);
                let has_zero_root = c0 == 0;
                let has_one_root = (1 + c1 + c0) % 5 == 0;
                if disc != 0 && !has_zero_root && !has_one_root {
                    oracle += 1;
                }
            }
        }
        assert_eq!(twisting_space(&k, 2, &avoid).unwrap().len(), oracle);

        let one = UniPoly::one(&*k);
        for d in [2usize, 3] {
            let n = twisting_space(&k, d, &one).unwrap().len();
            assert_eq!(n, 5usize.pow(d as u32) - 5usize.pow(d as u32 - 1));
        }
        assert!(twisting_space(&k, 0, &one).is_err());
        assert!(twisting_space(&k, 2, &UniPoly::zero()).is_err());
    }

    #[test]
    fn twist_coefficients_and_discriminant() {
        let k = field(5, 1).unwrap();
        let e = Arc::new(legendre_curve(k.clone()).unwrap());
        let f = poly(&k, &[2, 0, 1]);
        let ef = quadratic_twist(&e, &f).unwrap();
        assert_eq!(ef.discriminant(), e.discriminant().mul(&*k, &f.pow(&*k, 6)));
        assert!(quadratic_twist(&e, &UniPoly::zero()).is_err());
        let same = quadratic_twist(&e, &UniPoly::one(&*k)).unwrap();
        assert_eq!(same.a(), e.a());
        assert_eq!(same.b(), e.b());
    }
}
