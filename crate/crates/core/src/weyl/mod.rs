//! Hyperoctahedral groups `W_2g ⊃ W⁺_2g` acting on `M = {±1, …, ±g}`.

pub mod modules;
pub mod perm;
pub mod trivial;

use thiserror::Error;

pub use crate::lattice::RelationLattice;
pub use modules::{
    decompose_permutation_module, fixed_point_moments, orbits_on_pairs, product_module_decomposition,
    FixedPointMoments, ModuleDecomposition, PairOrbits, ProductDecomposition, Summand,
};
pub use perm::{closure, generators_full, generators_plus, group_order, SignedPerm};
pub use trivial::trivial_lattice;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeylError {
    #[error("g = {g} is unsupported (needs g >= {min})")]
    Unsupported { g: usize, min: usize },
    #[error("{0}")]
    Domain(String),
}
