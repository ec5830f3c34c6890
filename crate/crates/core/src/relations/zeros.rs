//! Angles `θ_{m,j}` of the inverse roots, in the paired order.

use num_bigint::BigInt;

use crate::lfun::{paired_inverse_roots, UnitarizedL};
use crate::numeric::fixed::{pi, Complex, Fixed};

use super::RelationsError;

#[derive(Clone, Debug)]
pub struct ZeroBlock {
    pub m: u32,
    /// `θ_j ∈ [0, 2π)`, positions `j` and `j + ν/2` conjugate.
    pub angles: Vec<Fixed>,
    /// `e^{iθ_j}`.
    pub roots: Vec<Complex>,
}

/// Angles of several reduced L-functions. Angles are held at twice the
/// working precision so that relations can be rechecked.
#[derive(Clone, Debug)]
pub struct ZeroSystem {
    pub blocks: Vec<ZeroBlock>,
    /// Working precision.
    pub bits: u32,
    /// `log2` of the largest polynomial residual at a computed root.
    pub max_residual_log2: Option<i64>,
}

impl ZeroSystem {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.angles.len()).sum()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.angles.len()).collect()
    }

    pub fn angles(&self) -> impl Iterator<Item = &Fixed> {
        self.blocks.iter().flat_map(|b| b.angles.iter())
    }

    pub fn roots(&self) -> impl Iterator<Item = &Complex> {
        self.blocks.iter().flat_map(|b| b.roots.iter())
    }

    /// A system from explicit angles, each given to at least `2 * bits` bits.
    pub fn from_angles(blocks: Vec<(u32, Vec<Fixed>)>, bits: u32) -> Self {
        let hi = 2 * bits;
        let tau = pi(hi).mul_int(&BigInt::from(2));
        let blocks = blocks
            .into_iter()
            .map(|(m, angles)| {
                let angles: Vec<Fixed> = angles
                    .into_iter()
                    .map(|a| {
                        let mut a = a.with_bits(hi);
                        while a.is_negative() {
                            a = a.add(&tau);
                        }
                        while a >= tau {
                            a = a.sub(&tau);
                        }
                        a
                    })
                    .collect();
                let roots = angles.iter().map(Complex::from_polar_unit).collect();
                ZeroBlock { m, angles, roots }
            })
            .collect();
        Self {
            blocks,
            bits,
            max_residual_log2: None,
        }
    }
}

fn residual_log2(coeffs: &[Fixed], z: &Complex) -> Option<i64> {
    // reversed polynomial: inverse roots are its roots
    let bits = z.bits();
    let mut p = Complex::zero(bits);
    for c in coeffs.iter() {
        p = p.mul(z).add(&Complex::from_real(c.clone()));
    }
    p.re.ilog2().into_iter().chain(p.im.ilog2()).max()
}

/// Paired angles of each reduced L-function at `bits` bits of working
/// precision (computed at `2 * bits`).
pub fn zero_system(lreds: &[UnitarizedL], bits: u32) -> Result<ZeroSystem, RelationsError> {
    let hi = 2 * bits;
    let mut blocks = Vec::new();
    let mut worst: Option<i64> = None;
    for l in lreds {
        if !l.reduced {
            return Err(RelationsError::Domain(format!("Sym^{} L-function is not reduced", l.m)));
        }
        let roots = paired_inverse_roots(l, hi)?;
        // coefficients from the top down evaluate the reversed polynomial
        let coeffs: Vec<Fixed> = l
            .coeffs
            .iter()
            .map(|c| crate::lfun::roots::quad_to_fixed(&l.field, c, hi))
            .collect();
        for z in &roots {
            worst = worst.max(residual_log2(&coeffs, z));
        }
        let angles = roots.iter().map(Complex::arg_positive).collect();
        blocks.push(ZeroBlock { m: l.m, angles, roots });
    }
    let tolerance_bits = bits.saturating_sub(10);
    if let Some(w) = worst {
        if w >= -(tolerance_bits as i64) {
            return Err(RelationsError::Residual {
                log2_residual: w,
                tolerance_bits,
            });
        }
    }
    Ok(ZeroSystem {
        blocks,
        bits,
        max_residual_log2: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QuadField;
    use num_rational::BigRational;

    fn lred(c: &[i64]) -> UnitarizedL {
        let f = QuadField::new(BigInt::from(5));
        UnitarizedL {
            q: 5,
            m: 1,
            coeffs: c.iter().map(|&x| f.rational(BigRational::from_integer(BigInt::from(x)))).collect(),
            field: f,
            sign: 1,
            nu: c.len() - 1,
            reduced: true,
        }
    }

    #[test]
    fn small_examples() {
        let z = zero_system(&[lred(&[1, 0, 1])], 128).unwrap();
        let a: Vec<f64> = z.angles().map(Fixed::to_f64).collect();
        let h = std::f64::consts::FRAC_PI_2;
        assert!((a[0] - h).abs() < 1e-15 && (a[1] - 3.0 * h).abs() < 1e-15);
        let z = zero_system(&[lred(&[1, -1, 1])], 128).unwrap();
        let a: Vec<f64> = z.angles().map(Fixed::to_f64).collect();
        let t = std::f64::consts::FRAC_PI_3;
        assert!((a[0] - t).abs() < 1e-15 && (a[1] - 5.0 * t).abs() < 1e-15);
        assert!(z.max_residual_log2.map_or(true, |r| r < -118));
    }
}
