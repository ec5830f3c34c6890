//! Relations `γ_j γ_{j+ν/2} = q^{m+1}` forced by the functional equation.

use crate::lattice::RelationLattice;

use super::WeylError;

/// One block per symmetric power; within a block of size `ν`, coordinate `j`
/// is tied to `j + ν/2`.
pub fn trivial_lattice(nu_red: &[usize]) -> Result<RelationLattice, WeylError> {
    if let Some(nu) = nu_red.iter().find(|&&nu| nu % 2 == 1) {
        return Err(WeylError::Domain(format!("reduced degree {nu} is odd")));
    }
    let dim: usize = nu_red.iter().sum();
    let mut basis = Vec::new();
    let mut offset = 0;
    for &nu in nu_red {
        let h = nu / 2;
        for j in 0..h {
            let mut v = vec![0i64; dim];
            v[offset + j] = 1;
            v[offset + j + h] = 1;
            basis.push(v);
        }
        offset += nu;
    }
    Ok(RelationLattice { dim, basis })
}
