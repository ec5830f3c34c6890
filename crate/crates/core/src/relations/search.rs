//! Integer relations among angles by LLL, with independent verification.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::lattice::{hnf, lll, to_big, to_small, RelationLattice};
use crate::numeric::fixed::{pi, Complex, Fixed};
use crate::weyl::trivial_lattice;

use super::{required_precision, RelationsError, Triviality, ZeroSystem};

#[derive(Clone, Debug, Serialize)]
pub struct RelationSearch {
    pub height: u64,
    pub bits: u32,
    /// Span of the verified relations.
    pub relations: RelationLattice,
    /// Its saturation, i.e. the relations up to torsion.
    pub saturated: RelationLattice,
    /// Short candidates that are small at working precision but fail the
    /// doubled-precision check. Never counted.
    pub suspects: Vec<Vec<i64>>,
}

/// `Σ n_j θ_j` reduced into `(-π, π]`, at the stored (doubled) precision.
fn residual(z: &ZeroSystem, n: &[i64]) -> Fixed {
    let hi = 2 * z.bits;
    let p = pi(hi);
    let tau = p.mul_int(&BigInt::from(2));
    let mut s = Fixed::zero(hi);
    for (a, &k) in z.angles().zip(n) {
        s = s.add(&a.mul_int(&BigInt::from(k)));
    }
    let turns = s.div(&tau).round();
    let mut r = s.sub(&tau.mul_int(&turns));
    if r > p {
        r = r.sub(&tau);
    }
    r
}

/// Accepts `n` iff `Σ n_j θ_j ∈ 2πZ` to `2^{-bits/2}` and `Π e^{i n_j θ_j}`
/// is within the same distance of 1.
pub fn verify_relation(z: &ZeroSystem, n: &[i64]) -> bool {
    if n.len() != z.dim() || n.iter().all(|&k| k == 0) {
        return false;
    }
    let hi = 2 * z.bits;
    let tol = (z.bits / 2) as i64;
    if !residual(z, n).below_pow2(tol) {
        return false;
    }
    let mut prod = Complex::one(hi);
    for (g, &k) in z.roots().zip(n) {
        if k != 0 {
            prod = prod.mul(&g.powi(k));
        }
    }
    prod.re.sub(&Fixed::one(hi)).below_pow2(tol) && prod.im.below_pow2(tol)
}

pub fn find_relations(z: &ZeroSystem, height: u64) -> Result<RelationSearch, RelationsError> {
    find_relations_with(z, height, z.bits)
}

/// LLL on the rows `(e_j, ⌊2^P θ_j/2π⌉)` and `(0, 2^P)`; short rows are
/// relation candidates.
pub fn find_relations_with(z: &ZeroSystem, height: u64, bits: u32) -> Result<RelationSearch, RelationsError> {
    let d = z.dim();
    let needed = required_precision(d, height);
    if bits < needed || bits > z.bits {
        return Err(RelationsError::Precision {
            bits,
            needed,
            height,
            dim: d,
        });
    }
    if d == 0 {
        return Ok(RelationSearch {
            height,
            bits,
            relations: RelationLattice::zero(0),
            saturated: RelationLattice::zero(0),
            suspects: Vec::new(),
        });
    }
    let hi = 2 * z.bits;
    let tau = pi(hi).mul_int(&BigInt::from(2));
    let mut basis: Vec<Vec<BigInt>> = Vec::with_capacity(d + 1);
    for (j, a) in z.angles().enumerate() {
        let mut row = vec![BigInt::zero(); d + 1];
        row[j] = BigInt::one();
        row[d] = a.div(&tau).scaled(bits);
        basis.push(row);
    }
    let mut last = vec![BigInt::zero(); d + 1];
    last[d] = BigInt::one() << bits;
    basis.push(last);
    let reduced = lll(basis)?;
    let h = BigInt::from(height);
    let mut accepted = Vec::new();
    let mut suspects = Vec::new();
    for row in reduced {
        if row[..d].iter().all(Zero::is_zero) || row[..d].iter().any(|x| x.abs() > h) {
            continue;
        }
        let n: Vec<i64> = row[..d].iter().map(|x| i64::try_from(x).unwrap()).collect();
        if verify_relation(z, &n) {
            accepted.push(n);
        } else if residual(z, &n).below_pow2((bits / 4) as i64) {
            suspects.push(n);
        }
    }
    let span = if accepted.is_empty() {
        RelationLattice::zero(d)
    } else {
        let echelon = hnf(&to_big(&accepted));
        RelationLattice {
            dim: d,
            basis: to_small(&lll(echelon)?)?,
        }
    };
    let saturated = RelationLattice::saturated_from(&accepted, d)?;
    Ok(RelationSearch {
        height,
        bits,
        relations: span,
        saturated,
        suspects,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub triviality: Triviality,
    /// Rank beyond the trivial relations.
    pub extra_rank: usize,
}

/// Compares a saturated relation lattice with the trivial one.
pub fn classify(found: &RelationLattice, nu_red: &[usize]) -> Result<Verdict, RelationsError> {
    let triv = trivial_lattice(nu_red).map_err(|e| RelationsError::Domain(e.to_string()))?;
    if found.dim != triv.dim || !found.contains_lattice(&triv) {
        return Err(RelationsError::Containment);
    }
    let triviality = if found.same_lattice(&triv) {
        Triviality::Trivial
    } else {
        Triviality::Nontrivial
    };
    Ok(Verdict {
        triviality,
        extra_rank: found.rank() - triv.rank(),
    })
}
