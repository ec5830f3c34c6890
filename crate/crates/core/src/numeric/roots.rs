//! Complex roots of real polynomials: double-precision seeds from companion
//! matrix eigenvalues, then simultaneous Aberth refinement in fixed point.

use nalgebra::DMatrix;

use super::fixed::{Complex, Fixed};
use super::NumericError;

const GUARD_BITS: u32 = 32;
const MAX_ITERATIONS: usize = 200;

/// Roots of a square-free polynomial with the given coefficients (low to
/// high) together with the size of the final Aberth correction, which bounds
/// the distance to the true roots for well separated clusters.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<Complex>,
    /// `log2` of the largest correction in the last sweep (`None` if zero).
    pub last_step_log2: Option<i64>,
}

fn seeds(coeffs_f64: &[f64]) -> Vec<(f64, f64)> {
    let n = coeffs_f64.len() - 1;
    let lead = coeffs_f64[n];
    if n == 1 {
        return vec![(-coeffs_f64[0] / lead, 0.0)];
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs_f64[i] / lead;
    }
    // the unshifted QR iteration can stall on companion matrices with symmetric
    // spectra; fall back to a circle of the right radius
    let mut out: Vec<(f64, f64)> = match m.try_schur(f64::EPSILON, 10_000) {
        Some(schur) => schur.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect(),
        None => {
            let r = (coeffs_f64[0] / lead).abs().powf(1.0 / n as f64).max(f64::MIN_POSITIVE);
            (0..n)
                .map(|k| {
                    let t = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
                    (r * t.cos(), r * t.sin())
                })
                .collect()
        }
    };
    // split exact coincidences so the Aberth sums stay finite
    for i in 0..out.len() {
        for j in 0..i {
            if out[i] == out[j] {
                out[i].0 += 1e-9 * (i as f64 + 1.0);
                out[i].1 += 1e-9;
            }
        }
    }
    out
}

fn horner(coeffs: &[Fixed], z: &Complex) -> (Complex, Complex) {
    let bits = z.bits();
    let mut p = Complex::zero(bits);
    let mut dp = Complex::zero(bits);
    for c in coeffs.iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z).add(&Complex::from_real(c.clone()));
    }
    (p, dp)
}

/// Roots of `Σ coeffs[i] T^i` refined to `bits` bits.
///
/// The polynomial must be square-free with nonzero leading coefficient.
pub fn polynomial_roots(coeffs: &[Fixed], bits: u32) -> Result<RootSet, NumericError> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(RootSet {
            roots: Vec::new(),
            last_step_log2: None,
        });
    }
    if coeffs[n].is_zero() {
        return Err(NumericError::Degenerate("leading coefficient is zero".into()));
    }
    let w = bits + GUARD_BITS;
    let work: Vec<Fixed> = coeffs.iter().map(|c| c.with_bits(w)).collect();
    let cf: Vec<f64> = coeffs.iter().map(Fixed::to_f64).collect();
    let mut z: Vec<Complex> = seeds(&cf)
        .into_iter()
        .map(|(re, im)| Complex::from_f64(re, im, w))
        .collect();
    let target = bits as i64 + 4;
    let mut last = None;
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: Option<i64> = None;
        for k in 0..n {
            let (p, dp) = horner(&work, &z[k]);
            if p.is_zero() {
                continue;
            }
            if dp.is_zero() {
                return Err(NumericError::Degenerate("derivative vanishes at an iterate".into()));
            }
            let ratio = p.div(&dp);
            let mut s = Complex::zero(w);
            for j in 0..n {
                if j != k {
                    let d = z[k].sub(&z[j]);
                    if d.is_zero() {
                        return Err(NumericError::Degenerate("iterates collided".into()));
                    }
                    s = s.add(&d.inv());
                }
            }
            let denom = Complex::one(w).sub(&ratio.mul(&s));
            let step = ratio.div(&denom);
            z[k] = z[k].sub(&step);
            let size = step.re.ilog2().into_iter().chain(step.im.ilog2()).max();
            max_step = max_step.max(size);
        }
        last = max_step;
        if max_step.map_or(true, |l| l < -target) {
            return Ok(RootSet {
                roots: z.into_iter().map(|c| c.with_bits(bits)).collect(),
                last_step_log2: last,
            });
        }
    }
    Err(NumericError::NoConvergence {
        last_step_log2: last.unwrap_or(0),
    })
}

/// Convenience wrapper for `f64` coefficients.
pub fn polynomial_roots_f64(coeffs: &[f64], bits: u32) -> Result<RootSet, NumericError> {
    let fx: Vec<Fixed> = coeffs.iter().map(|&c| Fixed::from_f64(c, bits)).collect();
    polynomial_roots(&fx, bits)
}

/// Largest `| |z| - 1 |` over the roots.
pub fn max_unit_deviation(roots: &[Complex]) -> f64 {
    roots
        .iter()
        .map(|z| {
            let bits = z.bits();
            z.abs().sub(&Fixed::one(bits)).abs().to_f64()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::fixed::pi;
    use num_bigint::BigInt;

    #[test]
    fn roots_of_unity() {
        // T^2 + 1
        let r = polynomial_roots_f64(&[1.0, 0.0, 1.0], 256).unwrap();
        assert_eq!(r.roots.len(), 2);
        let mut args: Vec<f64> = r.roots.iter().map(|z| z.arg_positive().to_f64()).collect();
        args.sort_by(f64::total_cmp);
        assert!((args[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!((args[1] - 3.0 * std::f64::consts::FRAC_PI_2).abs() < 1e-15);

        // T^2 - T + 1 at high precision: arguments pi/3 and 5pi/3
        let r = polynomial_roots_f64(&[1.0, -1.0, 1.0], 300).unwrap();
        let p3 = pi(300).div_int(&BigInt::from(3));
        let mut found = r
            .roots
            .iter()
            .map(|z| z.arg_positive())
            .collect::<Vec<_>>();
        found.sort();
        assert!(found[0].sub(&p3).below_pow2(290));
        assert!(found[1].sub(&p3.mul_int(&BigInt::from(5))).below_pow2(290));
    }

    #[test]
    fn residuals_are_small() {
        let coeffs = [6.0, -11.0, 6.0, -1.0]; // -(T-1)(T-2)(T-3)
        let fx: Vec<Fixed> = coeffs.iter().map(|&c| Fixed::from_f64(c, 200)).collect();
        let r = polynomial_roots(&fx, 200).unwrap();
        for z in &r.roots {
            let (p, _) = horner(&fx, z);
            assert!(p.re.below_pow2(190) && p.im.below_pow2(190));
        }
        assert!(r.last_step_log2.map_or(true, |l| l < -190));
    }

    #[test]
    fn unit_circle_deviation() {
        let r = polynomial_roots_f64(&[1.0, 0.5, 0.25, 0.5, 1.0], 128).unwrap();
        // reciprocal with |a| small: roots on the circle
        assert!(max_unit_deviation(&r.roots) < 1e-30);
    }

    #[test]
    fn symmetric_spectrum_terminates() {
        // roots ±5e^{±iθ}; plain QR does not converge on this companion matrix
        let r = polynomial_roots_f64(&[625.0, 0.0, -30.0, 0.0, 1.0], 128).unwrap();
        for z in &r.roots {
            assert!((z.abs().to_f64() - 5.0).abs() < 1e-30);
        }
    }
}
