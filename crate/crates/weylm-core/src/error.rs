//! Error types shared across the crate.

use alloc::string::String;
use core::fmt;
use num_complex::Complex64;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the operation's domain.
    Domain(String),
    /// The weight carries no mass where mass is required.
    DegenerateWeight,
    /// A quadrature or the integrator stopped before reaching the requested
    /// tolerance; carries the error estimate actually achieved.
    ToleranceMiss { requested: f64, achieved: f64 },
    /// The integrator ran out of steps before reaching the requested
    /// tolerance; carries the partial trace computed so far.
    IntegratorStall {
        requested: f64,
        achieved: f64,
        partial: alloc::vec::Vec<(f64, crate::mat2::Mat2)>,
    },
    /// Non-finite values appeared during integration, at position `x`.
    Overflow { x: f64 },
    /// The defining ratio of an m-function is numerically singular: `lambda`
    /// sits on (or too close to) an eigenvalue of the one-sided problem.
    NearPole {
        lambda: Complex64,
        numerator: f64,
        denominator: f64,
    },
    /// Requested value lies outside the attainable range of a monotone map.
    Range(String),
    /// Root scan exhausted its search range before finding what was asked.
    ScanRange(String),
    /// A trial function degenerated (zero norm where a ratio needs one).
    DegenerateTrial,
    /// Two routes that must agree (per an equivalence theorem) disagreed.
    ConsistencyFailure(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::DegenerateWeight => write!(f, "degenerate weight: no mass on the interval"),
            Error::ToleranceMiss {
                requested,
                achieved,
            } => write!(
                f,
                "tolerance miss: requested {requested:.3e}, achieved {achieved:.3e}"
            ),
            Error::IntegratorStall {
                requested,
                achieved,
                partial,
            } => write!(
                f,
                "integrator stalled at x = {} (requested {requested:.3e}, achieved {achieved:.3e})",
                partial.last().map(|p| p.0).unwrap_or(0.0)
            ),
            Error::Overflow { x } => write!(f, "non-finite values during integration at x = {x}"),
            Error::NearPole {
                lambda,
                numerator,
                denominator,
            } => write!(
                f,
                "near-pole: lambda = {lambda} is numerically an eigenvalue \
                 (|num| = {numerator:.3e}, |den| = {denominator:.3e})"
            ),
            Error::Range(msg) => write!(f, "range error: {msg}"),
            Error::ScanRange(msg) => write!(f, "scan-range error: {msg}"),
            Error::DegenerateTrial => write!(f, "degenerate trial function"),
            Error::ConsistencyFailure(msg) => write!(f, "consistency failure: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
