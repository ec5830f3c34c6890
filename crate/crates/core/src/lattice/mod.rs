//! Integer lattices given by row bases: echelon and Hermite forms, integer
//! kernels, saturation, Smith invariants and LLL.

pub mod lll;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lll::lll;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("basis vectors are linearly dependent")]
    Dependent,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("entry does not fit in 64 bits")]
    Overflow,
}

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn to_small(rows: &IntMatrix) -> Result<Vec<Vec<i64>>, LatticeError> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().ok_or(LatticeError::Overflow))
                .collect()
        })
        .collect()
}

fn sub_multiple(target: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(src) {
        *t -= q * s;
    }
}

/// Row echelon form by integer row operations. The transform rows (if
/// given) receive the same operations. Returns the pivot columns.
fn echelon(a: &mut IntMatrix, mut transform: Option<&mut IntMatrix>) -> Vec<usize> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        loop {
            let best = (row..nrows)
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
            let Some(p) = best else { break };
            a.swap(row, p);
            if let Some(t) = transform.as_deref_mut() {
                t.swap(row, p);
            }
            let mut done = true;
            for i in row + 1..nrows {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[row][col]);
                let src = a[row].clone();
                sub_multiple(&mut a[i], &src, &q);
                if let Some(t) = transform.as_deref_mut() {
                    let tsrc = t[row].clone();
                    sub_multiple(&mut t[i], &tsrc, &q);
                }
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if row < nrows && !a[row][col].is_zero() {
            if a[row][col].is_negative() {
                for x in a[row].iter_mut() {
                    *x = -&*x;
                }
                if let Some(t) = transform.as_deref_mut() {
                    for x in t[row].iter_mut() {
                        *x = -&*x;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
    }
    pivots
}

/// Hermite normal form of the lattice spanned by the rows (zero rows dropped).
pub fn hnf(rows: &IntMatrix) -> IntMatrix {
    let mut a = rows.clone();
    let pivots = echelon(&mut a, None);
    a.truncate(pivots.len());
    for (r, &pc) in pivots.iter().enumerate() {
        for i in 0..r {
            let q = a[i][pc].div_floor(&a[r][pc]);
            let src = a[r].clone();
            sub_multiple(&mut a[i], &src, &q);
        }
    }
    a
}

pub fn rank(rows: &IntMatrix) -> usize {
    let mut a = rows.clone();
    echelon(&mut a, None).len()
}

/// Basis of `{x ∈ Z^n : M x = 0}` where `M` has `n` columns.
pub fn right_kernel(m: &IntMatrix, n: usize) -> IntMatrix {
    // left kernel of M^T via a unimodular transform
    let mut mt: IntMatrix = (0..n)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect();
    let mut t: IntMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    if m.is_empty() {
        return t;
    }
    let pivots = echelon(&mut mt, Some(&mut t));
    t.split_off(pivots.len())
}

/// `(span_Q rows) ∩ Z^n`.
pub fn saturate(rows: &IntMatrix, n: usize) -> IntMatrix {
    if rows.iter().all(|r| r.iter().all(Zero::is_zero)) {
        return Vec::new();
    }
    let k = right_kernel(rows, n);
    if k.is_empty() {
        return identity(n);
    }
    right_kernel(&k, n)
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Nonzero Smith invariants of the row lattice.
pub fn elementary_divisors(rows: &IntMatrix) -> Vec<BigInt> {
    let mut a = hnf(rows);
    let r = a.len();
    if r == 0 {
        return Vec::new();
    }
    let c = a[0].len();
    let mut out = Vec::new();
    for t in 0..r {
        loop {
            // smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if !a[i][j].is_zero()
                        && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return out;
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let piv = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..r {
                let q = a[i][t].div_floor(&piv);
                let src = a[t].clone();
                sub_multiple(&mut a[i], &src, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                let q = a[t][j].div_floor(&piv);
                for row in a.iter_mut() {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility of the rest by the pivot
                let mut bad = None;
                'scan: for i in t + 1..r {
                    for j in t + 1..c {
                        if !(&a[i][j] % &piv).is_zero() {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    None => {
                        out.push(piv.abs());
                        break;
                    }
                    Some(i) => {
                        let src = a[i].clone();
                        for (x, y) in a[t].iter_mut().zip(&src) {
                            *x += y;
                        }
                    }
                }
            }
        }
    }
    out
}

/// An integer lattice stored saturated with an LLL-reduced basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationLattice {
    /// Ambient dimension.
    pub dim: usize,
    pub basis: Vec<Vec<i64>>,
}

impl RelationLattice {
    /// Saturation of the span of `generators`.
    pub fn saturated_from(generators: &[Vec<i64>], dim: usize) -> Result<Self, LatticeError> {
        for g in generators {
            if g.len() != dim {
                return Err(LatticeError::Dimension {
                    expected: dim,
                    found: g.len(),
                });
            }
        }
        let sat = saturate(&to_big(generators), dim);
        let reduced = if sat.is_empty() { sat } else { lll(sat)? };
        Ok(Self {
            dim,
            basis: to_small(&reduced)?,
        })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn hnf(&self) -> IntMatrix {
        hnf(&to_big(&self.basis))
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        let with = hnf(&to_big(&rows));
        with == self.hnf()
    }

    pub fn contains_lattice(&self, other: &RelationLattice) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_lattice(&self, other: &RelationLattice) -> bool {
        self.dim == other.dim && self.hnf() == other.hnf()
    }

    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        elementary_divisors(&to_big(&self.basis))
    }

    pub fn is_saturated(&self) -> bool {
        self.elementary_divisors().iter().all(One::is_one)
    }

    /// Direct sum with another lattice, coordinates concatenated.
    pub fn direct_sum(&self, other: &RelationLattice) -> RelationLattice {
        let dim = self.dim + other.dim;
        let mut basis = Vec::new();
        for v in &self.basis {
            let mut w = v.clone();
            w.resize(dim, 0);
            basis.push(w);
        }
        for v in &other.basis {
            let mut w = vec![0; self.dim];
            w.extend_from_slice(v);
            basis.push(w);
        }
        RelationLattice { dim, basis }
    }
}
