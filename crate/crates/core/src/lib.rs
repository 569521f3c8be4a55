//! Computational toolkit for principal algebraic actions of `Z^d`.
//!
//! The phase space studied here is the group of torus-valued configurations
//! `X_f = { x in T^{Z^d} : x * f^t == 0 mod 1 }` attached to a Laurent
//! polynomial `f` with integer coefficients. This crate provides the pieces
//! needed to compute with these systems at desk scale:
//!
//! * [`group_ring`] — exact sparse arithmetic in `Z[Z^d]` and `Q[Z^d]`:
//!   convolution, involution, norms, content, lopsidedness, well-balancedness,
//!   and single-divisor divisibility over `Q`.
//! * [`window`] — finite box windows approximating `C_0(Z^d)` and `l^p`
//!   elements, torus configurations, characters, and the pairing functionals.
//! * [`spectral`] — evaluation of `f` on the torus, zero-set scanning and
//!   classification, and the zero-free certificate behind expansivity.
//! * [`inverse`] — convolution inverses `omega` with `f * omega = 1`:
//!   Neumann series for lopsided `f`, Fourier quadrature for zero-free `f`,
//!   and the random-walk Green's series for well-balanced `f` in `d >= 3`.
//! * [`torus`] — windowed points of `X_f`: membership defect, the fundamental
//!   homoclinic point, homoclinic orbits, constant fixed points, decay
//!   diagnostics, and maximum-principle checks.
//! * [`goe`] — the Garden-of-Eden harness: exact surjectivity and
//!   pre-injectivity decisions for affine endomorphisms `x -> r x + t`,
//!   witnesses for negative verdicts, the univariate companion-matrix oracle,
//!   and two regression fixtures marking the boundary of the theory.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats, and the
//! command-line front end live in the companion `eden-cli` crate.
//!
//! Exact decisions (divisibility, content, the Garden-of-Eden verdict) are
//! carried out in arbitrary-precision integer/rational arithmetic and are
//! never influenced by floating point. Window math is 64-bit floating point
//! with certified tail bounds carried alongside the data.

#![no_std]
// Test builds link std, whose inherent f64 methods shadow the libm-backed
// `Float` trait imports the no_std build needs.
#![cfg_attr(test, allow(unused_imports))]

extern crate alloc;

pub mod error;
pub mod goe;
pub mod group_ring;
pub mod inverse;
pub mod spectral;
pub mod torus;
pub mod univariate;
pub mod window;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
