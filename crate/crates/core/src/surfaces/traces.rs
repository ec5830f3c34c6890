//! Fiber point counts over extensions `F_{q^n}` of the base field.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::algebra::field::{field, FieldEmbedding};
use crate::algebra::{FiniteField, FqElem, FqPoly};

use super::curve::{CurveKey, EllSurface};
use super::SurfaceError;

static FIBER_ENUMERATIONS: AtomicU64 = AtomicU64::new(0);

/// Number of fiber character sums evaluated so far in this process.
pub fn fiber_enumerations() -> u64 {
    FIBER_ENUMERATIONS.load(Ordering::Relaxed)
}

/// `F_{q^n}` together with the embedding of `F_q`.
pub struct FiberContext {
    pub base: Arc<FiniteField>,
    pub ext: Arc<FiniteField>,
    pub n: u32,
    embedding: FieldEmbedding,
}

impl FiberContext {
    pub fn new(base: &Arc<FiniteField>, n: u32) -> Result<Self, SurfaceError> {
        let ext = if n == 1 {
            base.clone()
        } else {
            field(base.characteristic(), base.degree() * n)?
        };
        let embedding = ext.embedding_from(base)?;
        Ok(Self {
            base: base.clone(),
            ext,
            n,
            embedding,
        })
    }

    #[inline]
    pub fn embed(&self, c: FqElem) -> FqElem {
        self.embedding.apply(c)
    }

    /// Evaluates a polynomial over `F_q` at a point of `F_{q^n}`.
    pub fn eval(&self, p: &FqPoly, x: FqElem) -> FqElem {
        let k = &*self.ext;
        p.coeffs()
            .iter()
            .rev()
            .fold(FqElem::ZERO, |acc, &c| k.fadd(k.fmul(acc, x), self.embed(c)))
    }

    /// `q^n`.
    pub fn size(&self) -> u64 {
        self.ext.size() as u64
    }
}

/// Shared contexts keyed by `(p, k, n)`.
pub fn fiber_context(base: &Arc<FiniteField>, n: u32) -> Result<Arc<FiberContext>, SurfaceError> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32, u32), Arc<FiberContext>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (base.characteristic(), base.degree(), n);
    if let Some(c) = cache.lock().unwrap().get(&key) {
        return Ok(c.clone());
    }
    let ctx = Arc::new(FiberContext::new(base, n)?);
    Ok(cache.lock().unwrap().entry(key).or_insert(ctx).clone())
}

/// `Σ_u χ(u³ + A u + B)` over the field.
pub fn cubic_char_sum(k: &FiniteField, a: FqElem, b: FqElem) -> i64 {
    FIBER_ENUMERATIONS.fetch_add(1, Ordering::Relaxed);
    let n = k.size() - 1;
    let mut sum = k.quad_char(b) as i64;
    for e in 0..n {
        let u = k.exp(e as u64);
        let u3 = k.exp(3 * e as u64);
        let v = k.fadd(k.fadd(u3, k.fmul(a, u)), b);
        sum += k.quad_char(v) as i64;
    }
    sum
}

/// Singular fiber check: `4A³ + 27B² = 0`.
pub fn is_singular_fiber(k: &FiniteField, a: FqElem, b: FqElem) -> bool {
    let a3 = k.fmul(k.from_int(4), k.pow(a, 3));
    let b2 = k.fmul(k.from_int(27), k.fmul(b, b));
    k.fadd(a3, b2).is_zero()
}

/// `a_x = q^n + 1 - #E_x(F_{q^n})` at a point of good reduction.
pub fn fiber_trace(e: &EllSurface, ctx: &FiberContext, x: FqElem) -> Result<i64, SurfaceError> {
    let a = ctx.eval(e.a(), x);
    let b = ctx.eval(e.b(), x);
    let k = &*ctx.ext;
    if is_singular_fiber(k, a, b) {
        return Err(SurfaceError::BadFiber);
    }
    let t = -cubic_char_sum(k, a, b);
    let qn = ctx.size() as i64;
    if t * t > 4 * qn {
        return Err(SurfaceError::HasseViolation { trace: t, qn });
    }
    Ok(t)
}

/// Traces at every point of `F_{q^n}`, indexed by the raw encoding of `x`;
/// singular fibers hold `None`.
#[derive(Clone, Debug)]
pub struct TraceTable {
    pub n: u32,
    pub traces: Vec<Option<i32>>,
}

impl TraceTable {
    pub fn compute(e: &EllSurface, ctx: &FiberContext) -> Result<Self, SurfaceError> {
        let k = &*ctx.ext;
        let traces: Result<Vec<Option<i32>>, SurfaceError> = (0..k.size())
            .into_par_iter()
            .map(|raw| {
                let x = encoded(k, raw);
                let a = ctx.eval(e.a(), x);
                let b = ctx.eval(e.b(), x);
                if is_singular_fiber(k, a, b) {
                    Ok(None)
                } else {
                    let t = -cubic_char_sum(k, a, b);
                    let qn = k.size() as i64;
                    if t * t > 4 * qn {
                        return Err(SurfaceError::HasseViolation { trace: t, qn });
                    }
                    Ok(Some(t as i32))
                }
            })
            .collect();
        Ok(Self {
            n: ctx.n,
            traces: traces?,
        })
    }

    #[inline]
    pub fn get(&self, x: FqElem) -> Option<i32> {
        self.traces[x.raw() as usize]
    }
}

/// Element with raw encoding `raw` (zero, then `g^{raw-1}`).
#[inline]
pub fn encoded(k: &FiniteField, raw: u32) -> FqElem {
    if raw == 0 {
        FqElem::ZERO
    } else {
        k.exp(raw as u64 - 1)
    }
}

/// Process-wide memo of trace tables keyed by curve and extension degree.
pub fn trace_table(e: &EllSurface, n: u32) -> Result<Arc<TraceTable>, SurfaceError> {
    type Memo = Mutex<HashMap<(CurveKey, u32), Arc<TraceTable>>>;
    static CACHE: OnceLock<Memo> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (e.key(), n);
    if let Some(t) = cache.lock().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let ctx = fiber_context(e.field(), n)?;
    let table = Arc::new(TraceTable::compute(e, &ctx)?);
    Ok(cache.lock().unwrap().entry(key).or_insert(table).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::UniPoly;
    use crate::surfaces::curve::{legendre_curve, quadratic_twist};

    /// Affine points of y² = x(x-1)(x-t) over F_5 by listing pairs.
    fn legendre_points_f5(t: i64) -> i64 {
        let mut n = 0;
        for x in 0..5i64 {
            for y in 0..5i64 {
                if (y * y - x * (x - 1) * (x - t)).rem_euclid(5) == 0 {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn legendre_trace_at_two() {
        let k = field(5, 1).unwrap();
        let e = legendre_curve(k.clone()).unwrap();
        let ctx = fiber_context(&k, 1).unwrap();
        let a = fiber_trace(&e, &ctx, k.from_int(2)).unwrap();
        assert_eq!(a, -2);
        // #E = affine + 1, a = q + 1 - #E
        assert_eq!(a, 5 + 1 - (legendre_points_f5(2) + 1));
        assert!(matches!(
            fiber_trace(&e, &ctx, k.from_int(1)),
            Err(SurfaceError::BadFiber)
        ));
    }

    #[test]
    fn traces_match_point_listing_for_all_good_t() {
        let k = field(5, 1).unwrap();
        let e = legendre_curve(k.clone()).unwrap();
        let ctx = fiber_context(&k, 1).unwrap();
        for t in 2..5 {
            let a = fiber_trace(&e, &ctx, k.from_int(t)).unwrap();
            assert_eq!(a, 5 - legendre_points_f5(t));
        }
    }

    #[test]
    fn twist_trace_identity() {
        let k = field(5, 1).unwrap();
        let e = Arc::new(legendre_curve(k.clone()).unwrap());
        let f = UniPoly::new(&*k, vec![k.from_int(2), FqElem::ZERO, FqElem::ONE]);
        let ef = quadratic_twist(&e, &f).unwrap();
        for n in 1..=2 {
            let ctx = fiber_context(&k, n).unwrap();
            for x in ctx.ext.elements() {
                let fx = ctx.eval(&f, x);
                if let (Ok(base), Ok(tw)) = (fiber_trace(&e, &ctx, x), fiber_trace(&ef, &ctx, x)) {
                    assert_eq!(tw, ctx.ext.quad_char(fx) as i64 * base);
                }
            }
        }
    }

    #[test]
    fn square_twist_preserves_traces() {
        let k = field(5, 1).unwrap();
        let e = Arc::new(legendre_curve(k.clone()).unwrap());
        let ctx = fiber_context(&k, 2).unwrap();
        let f = UniPoly::new(&*k, vec![k.from_int(3), FqElem::ONE]);
        for c in 1..5 {
            let c2 = k.fmul(k.from_int(c), k.from_int(c));
            let e1 = quadratic_twist(&e, &f).unwrap();
            let e2 = quadratic_twist(&e, &f.scale(&*k, &c2)).unwrap();
            for x in ctx.ext.elements() {
                if let Ok(t1) = fiber_trace(&e1, &ctx, x) {
                    assert_eq!(fiber_trace(&e2, &ctx, x).unwrap(), t1);
                }
            }
        }
        let square = UniPoly::constant(&*k, k.from_int(4));
        let es = quadratic_twist(&e, &square).unwrap();
        for x in ctx.ext.elements() {
            if let Ok(t) = fiber_trace(&e, &ctx, x) {
                assert_eq!(fiber_trace(&es, &ctx, x).unwrap(), t);
            }
        }
    }

    #[test]
    fn hasse_bound_holds_on_tables() {
        let k = field(5, 1).unwrap();
        let e = legendre_curve(k.clone()).unwrap();
        for n in 1..=3 {
            let t = trace_table(&e, n).unwrap();
            let qn = 5i64.pow(n);
            let mut bad = 0;
            for v in &t.traces {
                match v {
                    Some(a) => assert!((*a as i64).pow(2) <= 4 * qn),
                    None => bad += 1,
                }
            }
            assert_eq!(bad, 2);
        }
    }
}
