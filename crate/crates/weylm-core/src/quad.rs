//! Quadrature helpers: composite Simpson on uniform sample grids, low-order
//! Gauss-Legendre for panel moments, and an adaptive Simpson fallback with
//! explicit error control.

use crate::error::{Error, Result};
use alloc::vec::Vec;
use num_traits::Float;

/// Composite Simpson rule over uniformly spaced samples (odd count).
pub fn simpson(values: &[f64], h: f64) -> f64 {
    debug_assert!(values.len() >= 3 && values.len() % 2 == 1);
    let n = values.len() - 1;
    let mut acc = values[0] + values[n];
    for (i, v) in values.iter().enumerate().take(n).skip(1) {
        acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    acc * h / 3.0
}

/// Nodes of a uniform grid with an odd number of points on `[a, b]`.
pub fn uniform_grid(a: f64, b: f64, n_panels: usize) -> Vec<f64> {
    let n = if n_panels % 2 == 0 {
        n_panels
    } else {
        n_panels + 1
    };
    let h = (b - a) / n as f64;
    let mut grid: Vec<f64> = (0..=n).map(|i| a + h * i as f64).collect();
    // close the endpoint exactly
    grid[n] = b;
    grid
}

const GAUSS3_NODES: [f64; 3] = [
    -0.774_596_669_241_483_4,
    0.0,
    0.774_596_669_241_483_4,
];
const GAUSS3_WEIGHTS: [f64; 3] = [
    0.555_555_555_555_555_6,
    0.888_888_888_888_888_9,
    0.555_555_555_555_555_6,
];

/// 3-point Gauss-Legendre rule on `[a, b]`, exact for quintics.
pub fn gauss3<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GAUSS3_NODES.iter().zip(GAUSS3_WEIGHTS.iter()) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Adaptive Simpson on `[a, b]` to absolute tolerance `tol`.
///
/// Returns the value and the accumulated error estimate; errors out with the
/// achieved estimate when the recursion budget runs dry before reaching tol.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut est = 0.0;
    let value = simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48, &mut est)?;
    Ok((value, est))
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    est: &mut f64,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol || (b - a) < f64::EPSILON * (a.abs() + b.abs()) {
        *est += delta.abs() / 15.0;
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::ToleranceMiss {
            requested: tol,
            achieved: delta.abs() / 15.0,
        });
    }
    let lv = simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, est)?;
    let rv = simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, est)?;
    Ok(lv + rv)
}
