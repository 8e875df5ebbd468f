//! Scalar root bracketing and bisection.

use crate::error::{Error, Result};
use alloc::format;
use num_traits::Float;

/// Bisect `f` on `[lo, hi]`; the endpoint values must have opposite signs.
///
/// Runs until the bracket shrinks below `rel_tol` relatively (or an exact
/// zero is hit) and returns the midpoint of the final bracket.
pub fn bisect<F: Fn(f64) -> f64>(mut lo: f64, mut hi: f64, f: F, rel_tol: f64) -> Result<f64> {
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::ScanRange(format!(
            "no sign change on bracket [{lo}, {hi}]"
        )));
    }
    let sgn_lo = flo.signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= rel_tol * mid.abs().max(f64::MIN_POSITIVE) {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == sgn_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Bisect a monotone map `g` for `g(x) = target` on `[lo, hi]`.
pub fn bisect_monotone<F: Fn(f64) -> f64>(
    lo: f64,
    hi: f64,
    g: F,
    target: f64,
    rel_tol: f64,
) -> Result<f64> {
    bisect(lo, hi, |x| g(x) - target, rel_tol)
}
