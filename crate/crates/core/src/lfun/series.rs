//! Power sums `c_n = Σ_{x ∈ P¹(F_{q^n})} tr(Frob_x | V^I)` for symmetric
//! powers, and the Newton step turning them into L-series coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::factor::factor;
use crate::surfaces::traces::{fiber_context, trace_table};
use crate::surfaces::{reduction_type, EllSurface, Place, PlaceData};

use super::local::{bad_place_trace, has_closed_rule, invariant_dim, sym_trace_i128};
use super::LfunError;

/// Every place where the given Weierstrass model has a singular fiber,
/// classified on its minimal model (some may turn out good).
#[derive(Clone, Debug)]
pub struct SingularLocus {
    pub places: Vec<PlaceData>,
}

impl SingularLocus {
    pub fn of(e: &EllSurface) -> Result<Self, LfunError> {
        let k = &**e.field();
        let mut places = Vec::new();
        for (pi, _) in factor(k, &e.discriminant())?.factors {
            places.push(reduction_type(e, &Place::Finite(pi))?);
        }
        places.push(reduction_type(e, &Place::Infinity)?);
        Ok(Self { places })
    }

    /// Places whose `Sym^m` factor has no closed rule, with the dimension of
    /// their inertia invariants.
    pub fn unknown(&self, m: u32) -> Vec<(&PlaceData, u32)> {
        self.places
            .iter()
            .filter(|pd| !has_closed_rule(pd, m))
            .map(|pd| (pd, invariant_dim(pd.inertia, m)))
            .collect()
    }

    /// `ν_m = Σ deg v · (m + 1 - dim V^I) - 2(m + 1)` on `P¹`.
    pub fn predicted_degree(&self, m: u32) -> Result<usize, LfunError> {
        let cond: u64 = self
            .places
            .iter()
            .map(|pd| pd.degree as u64 * (m + 1 - invariant_dim(pd.inertia, m)) as u64)
            .sum();
        let nu = cond as i64 - 2 * (m as i64 + 1);
        if nu < 0 {
            return Err(LfunError::Domain(format!(
                "conductor degree {cond} too small for Sym^{m}"
            )));
        }
        Ok(nu as usize)
    }
}

/// `c_n` for each `m` in `ms`, excluding the points of places without a
/// closed local rule.
pub fn power_sums(
    e: &EllSurface,
    locus: &SingularLocus,
    ms: &[u32],
    n: u32,
) -> Result<Vec<BigInt>, LfunError> {
    let q = e.field().size() as i128;
    let qn = q.pow(n);
    let mut good = vec![0i128; ms.len()];

    // affine points of good reduction on the given model
    match e.twist_data() {
        Some((base, f)) => {
            let table = trace_table(base, n)?;
            let ctx = fiber_context(e.field(), n)?;
            let k = &*ctx.ext;
            let partial: Vec<Vec<i128>> = (0..k.size())
                .into_par_iter()
                .fold(
                    || vec![0i128; ms.len()],
                    |mut acc, raw| {
                        let x = crate::surfaces::traces::encoded(k, raw);
                        if let Some(a) = table.traces[raw as usize] {
                            let chi = k.quad_char(ctx.eval(f, x)) as i128;
                            if chi != 0 {
                                for (s, &m) in acc.iter_mut().zip(ms) {
                                    let t = sym_trace_i128(a as i128, qn, m);
                                    *s += if m % 2 == 1 { chi * t } else { t };
                                }
                            }
                        }
                        acc
                    },
                )
                .collect();
            for p in partial {
                for (g, v) in good.iter_mut().zip(p) {
                    *g += v;
                }
            }
        }
        None => {
            let table = trace_table(e, n)?;
            for a in table.traces.iter().flatten() {
                for (g, &m) in good.iter_mut().zip(ms) {
                    *g += sym_trace_i128(*a as i128, qn, m);
                }
            }
        }
    }

    let mut out: Vec<BigInt> = good.into_iter().map(BigInt::from).collect();
    for pd in &locus.places {
        let deg = pd.degree as u32;
        if n % deg != 0 {
            continue;
        }
        let qv = BigInt::from(q).pow(deg);
        for (c, &m) in out.iter_mut().zip(ms) {
            if let Some(t) = bad_place_trace(pd, m, &qv, n / deg) {
                *c += t * deg;
            }
        }
    }
    Ok(out)
}

/// `L = exp(Σ c_n T^n / n)` to the length of `c` (`c[0]` ignored), through
/// `n l_n = Σ_{k=1}^n c_k l_{n-k}`. Fails when a division is inexact.
pub fn newton(c: &[BigInt]) -> Result<Vec<BigInt>, LfunError> {
    let mut l = vec![BigInt::from(1)];
    for n in 1..c.len() {
        let mut s = BigInt::zero();
        for k in 1..=n {
            s += &c[k] * &l[n - k];
        }
        let (quo, rem) = s.div_rem(&BigInt::from(n));
        if !rem.is_zero() {
            return Err(LfunError::Certification {
                check: super::CertCheck::Integrality,
                detail: format!("coefficient {n} is not integral"),
            });
        }
        l.push(quo);
    }
    Ok(l)
}

/// Rough operation count of computing `c_1..c_n`.
pub fn cost_estimate(q: u64, n: usize) -> f64 {
    (1..=n).map(|i| (q as f64).powi(2 * i as i32)).sum()
}
