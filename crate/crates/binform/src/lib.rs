//! Reduction theory of binary forms.
//!
//! Three layers, each built on the previous one:
//!
//! * [`quadforms`] — positive definite binary quadratic forms over R and Z:
//!   the SL2(Z) action, the zero map into the upper half-plane H2, Gauss
//!   reduction, class heights, and enumeration of primitive reduced classes
//!   of fixed discriminant.
//! * [`hermforms`] — binary Hermitian forms over the Gaussian integers `Z[i]`:
//!   the SL2(`Z[i]`) action, the zero map into hyperbolic 3-space H3, reduction
//!   into the Bianchi fundamental domain, and class enumeration.
//! * [`julia`] — degree-n binary forms with real or complex coefficients:
//!   stability, the Q0 covariant, the Julia invariant theta0 and Julia
//!   quadratic J_f, and the Stoll-Cremona reduction algorithm driven by the
//!   zero of J_f.
//!
//! [`arith`] holds the shared foundations (Gaussian integers, 2x2 unimodular
//! matrices over Z and `Z[i]`, complex polynomials with an Aberth-Ehrlich root
//! finder) and [`halfplane`] the geometry of H2 and H3 (Mobius actions,
//! fundamental-domain membership, point reduction with transcript).
//!
//! Exact paths (reduction and enumeration of integral forms) use arbitrary
//! size integers; only zero maps and the Julia solver work in floating point.
//! All operations are pure functions on value types.

pub mod arith;
pub mod error;
pub mod halfplane;
pub mod hermforms;
pub mod julia;
pub mod quadforms;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
