//! Reduction types at the places of `P¹` over `F_q`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::algebra::factor::{canonical_key, factor, to_indices};
use crate::algebra::field::MAX_FIELD_SIZE;
use crate::algebra::{FiniteField, FqElem, FqPoly, UniPoly};

use super::curve::EllSurface;
use super::traces::{cubic_char_sum, fiber_context};
use super::SurfaceError;

/// A finite place (monic irreducible in `F_q[t]`) or the place at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Finite(FqPoly),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    /// Coefficient indices of the generator, or `None` for infinity.
    pub fn indices(&self, field: &FiniteField) -> Option<Vec<u32>> {
        match self {
            Place::Finite(p) => Some(to_indices(field, p)),
            Place::Infinity => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionType {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

impl ReductionType {
    pub fn is_multiplicative(self) -> bool {
        matches!(self, Self::SplitMultiplicative | Self::NonsplitMultiplicative)
    }

    /// Exponent of the place in the conductor (tame, char ≥ 5).
    pub fn conductor_exponent(self) -> u32 {
        match self {
            Self::Good => 0,
            Self::SplitMultiplicative | Self::NonsplitMultiplicative => 1,
            Self::Additive => 2,
        }
    }
}

/// Action of inertia on the Tate module, which is all the local factor of a
/// symmetric power depends on besides Frobenius.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InertiaClass {
    Good,
    Multiplicative,
    /// Additive, becoming multiplicative over a quadratic extension.
    PotentiallyMultiplicative,
    /// Additive with potentially good reduction; inertia acts through a
    /// cyclic group of order `e ∈ {2, 3, 4, 6}`.
    PotentiallyGood { e: u32 },
}

#[derive(Clone, Debug)]
pub struct PlaceData {
    pub place: Place,
    pub degree: usize,
    pub reduction: ReductionType,
    pub inertia: InertiaClass,
    /// Valuations on the minimal model.
    pub ord_delta: u32,
    pub ord_c4: u32,
    /// `±1` at multiplicative places; the fiber trace at good places when
    /// the residue field is small enough to enumerate; at additive places
    /// with `e = 2`, the trace of the good curve obtained by twisting back,
    /// defined up to sign.
    pub local_trace: Option<i64>,
}

/// Valuation of a nonzero polynomial at `pi`.
fn valuation(k: &FiniteField, g: &FqPoly, pi: &FqPoly) -> u32 {
    let mut v = 0;
    let mut g = g.clone();
    loop {
        let (q, r) = g.divrem(k, pi).expect("nonzero place");
        if !r.is_zero() {
            return v;
        }
        g = q;
        v += 1;
    }
}

fn divide_out(k: &FiniteField, g: &FqPoly, pi: &FqPoly, times: u32) -> FqPoly {
    let mut g = g.clone();
    for _ in 0..times {
        g = g.div_exact(k, pi).expect("valuation checked");
    }
    g
}

fn discriminant_of(k: &FiniteField, a: &FqPoly, b: &FqPoly) -> FqPoly {
    let a3 = a.pow(k, 3).scale(k, &k.from_int(4));
    let b2 = b.pow(k, 2).scale(k, &k.from_int(27));
    a3.add(k, &b2).scale(k, &k.from_int(-16))
}

/// Local analysis of `y² = x³ + ax + b` at the place `pi` of `F_q[t]`.
fn local_data(k: &FiniteField, a: &FqPoly, b: &FqPoly, pi: &FqPoly) -> Result<LocalModel, SurfaceError> {
    let delta = discriminant_of(k, a, b);
    let va = valuation(k, a, pi);
    let vb = valuation(k, b, pi);
    let vd = valuation(k, &delta, pi);
    let s = (va / 4).min(vb / 6);
    let a_min = divide_out(k, a, pi, 4 * s);
    let b_min = divide_out(k, b, pi, 6 * s);
    let (va, vd) = (va - 4 * s, vd - 12 * s);
    let deg = pi.degree().unwrap();
    let residue_size = BigUint::from(k.size()).pow(deg as u32);

    let (reduction, inertia) = if vd == 0 {
        (ReductionType::Good, InertiaClass::Good)
    } else if va == 0 {
        // node at x0 = -3b/(2a); tangent slopes are ±sqrt(3 x0), and
        // 3 x0 differs from -2ab by the square (3/(2a))²
        let g = a_min
            .mul(k, &b_min)
            .scale(k, &k.from_int(-2))
            .rem(k, pi);
        let e = (&residue_size - 1u32) >> 1;
        let chi = g.pow_mod(k, &e, pi);
        let split = chi == UniPoly::one(k);
        if split {
            (ReductionType::SplitMultiplicative, InertiaClass::Multiplicative)
        } else {
            (ReductionType::NonsplitMultiplicative, InertiaClass::Multiplicative)
        }
    } else if 3 * va < vd {
        (ReductionType::Additive, InertiaClass::PotentiallyMultiplicative)
    } else {
        let e = 12 / num_integer::gcd(12, vd);
        (ReductionType::Additive, InertiaClass::PotentiallyGood { e })
    };
    Ok(LocalModel {
        a: a_min,
        b: b_min,
        reduction,
        inertia,
        ord_delta: vd,
        ord_c4: va,
        residue_size,
    })
}

struct LocalModel {
    a: FqPoly,
    b: FqPoly,
    reduction: ReductionType,
    inertia: InertiaClass,
    ord_delta: u32,
    ord_c4: u32,
    residue_size: BigUint,
}

/// Least root of `pi` in `F_{q^deg}` (index order).
fn residue_root(field: &std::sync::Arc<FiniteField>, pi: &FqPoly) -> Result<(std::sync::Arc<super::FiberContext>, FqElem), SurfaceError> {
    let n = pi.degree().unwrap() as u32;
    let ctx = fiber_context(field, n)?;
    let ext = &*ctx.ext;
    let lifted = UniPoly::new(ext, pi.coeffs().iter().map(|&c| ctx.embed(c)).collect());
    let fac = factor(ext, &lifted)?;
    let root = fac
        .factors
        .iter()
        .map(|(g, _)| ext.fneg(g.coeff(ext, 0)))
        .min_by_key(|&r| ext.to_index(r))
        .expect("irreducible of degree n splits over F_{q^n}");
    Ok((ctx, root))
}

fn trace_at_residue(
    field: &std::sync::Arc<FiniteField>,
    pi: &FqPoly,
    residue_size: &BigUint,
    a: &FqPoly,
    b: &FqPoly,
) -> Result<Option<i64>, SurfaceError> {
    if *residue_size > BigUint::from(MAX_FIELD_SIZE) {
        return Ok(None);
    }
    let (ctx, root) = residue_root(field, pi)?;
    let av = ctx.eval(a, root);
    let bv = ctx.eval(b, root);
    Ok(Some(-cubic_char_sum(&ctx.ext, av, bv)))
}

/// The model at infinity, `(s^{4k} a(1/s), s^{6k} b(1/s))` with `k` minimal.
pub fn model_at_infinity(e: &EllSurface) -> (FqPoly, FqPoly) {
    let k = &**e.field();
    let da = e.a().degree().unwrap_or(0);
    let db = e.b().degree().unwrap_or(0);
    let w = da.div_ceil(4).max(db.div_ceil(6));
    let flip = |p: &FqPoly, n: usize| {
        let mut c = vec![FqElem::ZERO; n + 1];
        for (i, &x) in p.coeffs().iter().enumerate() {
            c[n - i] = x;
        }
        UniPoly::new(k, c)
    };
    (flip(e.a(), 4 * w), flip(e.b(), 6 * w))
}

pub fn reduction_type(e: &EllSurface, place: &Place) -> Result<PlaceData, SurfaceError> {
    let field = e.field();
    let k = &**field;
    let (a, b, pi) = match place {
        Place::Finite(pi) => {
            if pi.degree().unwrap_or(0) == 0 || !pi.is_monic(k) {
                return Err(SurfaceError::Domain("a finite place is a monic nonconstant irreducible".into()));
            }
            (e.a().clone(), e.b().clone(), pi.clone())
        }
        Place::Infinity => {
            let (a, b) = model_at_infinity(e);
            (a, b, UniPoly::x(k))
        }
    };
    let m = local_data(k, &a, &b, &pi)?;
    let local_trace = match m.reduction {
        ReductionType::SplitMultiplicative => Some(1),
        ReductionType::NonsplitMultiplicative => Some(-1),
        ReductionType::Additive if m.inertia == InertiaClass::PotentiallyGood { e: 2 } => {
            // twisting back by the uniformizer gives good reduction; the
            // sign of the resulting trace depends on the uniformizer chosen
            let a2 = divide_out(k, &m.a, &pi, 2);
            let b3 = divide_out(k, &m.b, &pi, 3);
            trace_at_residue(field, &pi, &m.residue_size, &a2, &b3)?
        }
        ReductionType::Additive => None,
        ReductionType::Good => trace_at_residue(field, &pi, &m.residue_size, &m.a, &m.b)?,
    };
    Ok(PlaceData {
        degree: place.degree(),
        place: place.clone(),
        reduction: m.reduction,
        inertia: m.inertia,
        ord_delta: m.ord_delta,
        ord_c4: m.ord_c4,
        local_trace,
    })
}

/// All places of bad reduction: finite ones in canonical order, then infinity.
pub fn bad_places(e: &EllSurface) -> Result<Vec<PlaceData>, SurfaceError> {
    let k = &**e.field();
    let mut finite: Vec<FqPoly> = factor(k, &e.discriminant())?
        .factors
        .into_iter()
        .map(|(g, _)| g)
        .collect();
    finite.sort_by_key(|g| canonical_key(k, g));
    let mut out = Vec::new();
    for pi in finite {
        let d = reduction_type(e, &Place::Finite(pi))?;
        if d.reduction != ReductionType::Good {
            out.push(d);
        }
    }
    let inf = reduction_type(e, &Place::Infinity)?;
    if inf.reduction != ReductionType::Good {
        out.push(inf);
    }
    Ok(out)
}

/// `deg 𝔫 = M + 2A`, each place counted with its degree.
pub fn conductor_degree(bad: &[PlaceData]) -> u32 {
    bad.iter()
        .map(|d| d.degree as u32 * d.reduction.conductor_exponent())
        .sum()
}
