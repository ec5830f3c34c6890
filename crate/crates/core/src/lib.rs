//! L-functions of quadratic twist families of elliptic curves over `F_q(t)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: prime and extension fields, univariate polynomials, factorization.
//! * [`surfaces`]: Weierstrass models over `F_q[t]`, twists, reduction types, fiber traces.
//! * [`lfun`]: Euler products of odd symmetric powers, certification, unitarization.
//! * [`relations`]: zero angles and integer relation detection among them.
//! * [`weyl`]: signed permutation groups, their orbits and permutation modules.
//! * [`modl`]: reciprocal polynomials mod `l`, spinor classes, group orders, Galois evidence.
//! * [`bounds`]: exact calculators for sieve bounds, exponents and prime densities.

pub mod algebra;
pub mod bounds;
pub mod lattice;
pub mod lfun;
pub mod modl;
pub mod numeric;
pub mod relations;
pub mod surfaces;
pub mod weyl;
