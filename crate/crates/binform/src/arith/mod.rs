//! Exact and floating arithmetic foundations: Gaussian integers, 2x2
//! unimodular matrices over Z and `Z[i]`, dense complex polynomials and an
//! Aberth-Ehrlich simultaneous root finder.

pub mod gaussian;
pub mod mat2;
pub mod poly;

pub use gaussian::GaussInt;
pub use mat2::{Mat2, UniMatZ, UniMatZi};
pub use poly::{cluster_roots, Poly};
