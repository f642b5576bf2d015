//! Canonical Fourier–Bessel transform F_ν^m for m ∈ SL(2, ℝ), its generalized
//! translation and convolution, and the heat semigroup of the chirped Bessel
//! operator, with a verification suite for the identities that tie them together.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod function;
pub mod heat;
pub mod quadrature;
pub mod sl2;
pub mod specfun;
pub mod transform;
pub mod translation;
pub mod verify;

pub use error::{Error, Result};
pub use function::{Decay, RadialFunction, SampledRadialFunction};
pub use quadrature::{NormParams, QuadratureSpec};
pub use sl2::SLMatrix;
pub use specfun::Order;
