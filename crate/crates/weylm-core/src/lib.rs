//! Weyl-Titchmarsh m-functions for regular Sturm-Liouville problems with a
//! sign-indefinite weight, and the HELP/Volkmer inequality machinery built on
//! top of them: validity criteria, best constants, indefinite-spectrum
//! diagnostics and the linear-resolvent-growth bridge.
//!
//! The crate is organised around one numerical kernel, the measure-driven
//! fundamental-system integrator in [`volterra`]. Everything else is algebra
//! on its output:
//!
//! - [`weight`] — admissible weights `r` with one turning point at 0, their
//!   antiderivatives, ratio tests and the scaling construction;
//! - [`volterra`] — the 2x2 fundamental matrix `U(x, lambda)` of the
//!   first-order system, for either quasi-derivative convention;
//! - [`mfun`] — the four m-functions, Weyl solutions, Weyl disks and
//!   Herglotz-structure audits;
//! - [`criteria`] — sector/ray positivity criteria, imaginary-axis sup
//!   ratios, best-constant search and the LRG quantity;
//! - [`quadform`] — trial functions and direct quadrature evaluation of the
//!   inequality and of the certifying quadratic form;
//! - [`spectrum`] — the indefinite Dirichlet eigenproblem, glued
//!   eigenfunctions and Riesz-basis Gram diagnostics.
//!
//! The library is `no_std`-compatible (with `alloc`); all operations are pure
//! and reentrant, so grid scans can be evaluated concurrently by the caller.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod criteria;
pub mod error;
pub mod mat2;
pub mod mfun;
pub mod quad;
pub mod quadform;
pub mod roots;
pub mod spectrum;
pub mod volterra;
pub mod weight;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Default absolute tolerance for fundamental-matrix entries (moderate
/// `|lambda|`); accumulated local error of the integrator is kept below it.
pub const DEFAULT_TOL: f64 = 1e-10;
