//! Regularized integrals of automorphic functions on the modular surface
//! (level one, spherical), together with the supporting machinery:
//! special functions, truncated Laurent arithmetic, Eisenstein series,
//! the regularization engine, closed-form pairings, p-adic Schwartz
//! calculus, congruence-coset decomposition, lattice sums, and Mellin
//! transform pairs.

pub mod quad;
pub mod special_fn;
pub mod laurent;
pub mod eisenstein;
pub mod regularize;
pub mod pairings;
pub mod padic;
pub mod lattice_coset;
pub mod mellin_ergodic;

pub use num_complex::Complex64;
