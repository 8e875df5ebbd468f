//! Measure-driven fundamental-system integrator.
//!
//! Integrates the first-order system with generalized coefficient `dR`
//! (density plus an optional atom at 0) in either of two quasi-derivative
//! conventions:
//!
//! - `ell`: `u1' = u2 dR`, `u2' = -lambda u1 dx`  (the equation
//!   `-(|r|^{-1} y')' = lambda y`, `u2` the quasi-derivative);
//! - `r`:   `u1' = u2 dx`, `u2' = -lambda u1 dR`  (the equation
//!   `-y'' = lambda |r| y`, `u2` the ordinary derivative).
//!
//! The scheme is product integration on accumulated `dR`-increments: over
//! each panel the one-sided moments `(dR-mass, dx-length, mixed first
//! moment)` are taken exactly (closed-form antiderivatives) and the transfer
//! matrix is the exponential of the two-term Magnus expansion, a traceless
//! 2x2 exponential. Consequences worth knowing:
//!
//! - atoms are exact jump factors, and constant densities are integrated
//!   exactly at any step size (the step cap below is what limits them);
//! - every panel transfer has determinant 1 up to rounding, so the
//!   Wronskian `det U = 1` is preserved structurally;
//! - densities are touched only through their antiderivative, so integrable
//!   singularities at 0 (power, log-flat) need no special casing beyond the
//!   step control.
//!
//! Local error is controlled by step-doubling Richardson estimates; steps
//! are also capped at `0.1/sqrt(1+|lambda|)` which keeps the per-panel
//! Magnus argument small on high-energy scans.

use crate::error::{Error, Result};
use crate::mat2::{exp_traceless, Mat2};
use crate::quad;
use crate::weight::SideMeasure;
use alloc::format;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;

/// Which quasi-derivative convention the system uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemForm {
    /// `-(|r|^{-1} y')' = lambda y`; second row is the quasi-derivative.
    Ell,
    /// `-y'' = lambda |r| y`; second row is the ordinary derivative.
    R,
}

/// One recorded point of the fundamental matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub x: f64,
    /// Columns are `(c, c^[1])` and `(s, s^[1])`.
    pub u: Mat2,
}

/// Sampled fundamental solution `U(x, lambda)` with `U(0) = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalMatrix {
    pub lambda: Complex64,
    pub form: SystemForm,
    pub entries: Vec<GridPoint>,
    /// Accumulated bound on local (relative) truncation error.
    pub error_estimate: f64,
}

impl FundamentalMatrix {
    /// Entry at a requested grid position (exact match).
    pub fn at(&self, x: f64) -> Option<&Mat2> {
        self.entries
            .binary_search_by(|g| g.x.partial_cmp(&x).unwrap())
            .ok()
            .map(|i| &self.entries[i].u)
    }
}

/// Endpoint value of `U` with a binary exponent, for evaluations whose
/// entries exceed the f64 range (only ratios of same-point entries are
/// meaningful then).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointSolution {
    pub x: f64,
    pub u: Mat2,
    /// `U(x) = u * 2^exponent`.
    pub exponent: i64,
    pub error_estimate: f64,
}

const STEP_CAP_BASE: f64 = 0.1;
const MAX_STEPS: usize = 400_000;
const RESCALE_LIMIT: f64 = 1e280;
const RESCALE_FACTOR_LOG2: i64 = 930; // 2^930 ~ 9e279

/// Integrate the chosen form over `(0, side.length())` and sample `U` at
/// `grid_request` plus all internally accepted points. Atoms in `dR` are
/// applied as exact jump factors.
pub fn integrate(
    form: SystemForm,
    side: &SideMeasure,
    lambda: Complex64,
    grid_request: &[f64],
    tol: f64,
) -> Result<FundamentalMatrix> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let length = side.length();
    for w in grid_request.windows(2) {
        if w[1] < w[0] {
            return Err(Error::Domain("grid request must be sorted".into()));
        }
    }
    if grid_request
        .iter()
        .any(|&x| !(0.0..=length * (1.0 + 1e-12)).contains(&x))
    {
        return Err(Error::Domain(format!(
            "grid request outside [0, {length}]"
        )));
    }
    let run = run(form, side, lambda, grid_request, tol, false, true)?;
    let entries = run
        .points
        .into_iter()
        .map(|(x, u, _)| GridPoint { x, u })
        .collect();
    Ok(FundamentalMatrix {
        lambda,
        form,
        entries,
        error_estimate: run.error_estimate,
    })
}

/// Integrate to the outer endpoint only, with overflow-safe rescaling.
pub fn integrate_endpoint(
    form: SystemForm,
    side: &SideMeasure,
    lambda: Complex64,
    tol: f64,
) -> Result<EndpointSolution> {
    let run = run(form, side, lambda, &[], tol, true, false)?;
    let &(x, u, exponent) = run.points.last().expect("endpoint always recorded");
    Ok(EndpointSolution {
        x,
        u,
        exponent,
        error_estimate: run.error_estimate,
    })
}

/// Max deviation of `det U` from 1 over the sampled grid. Pure diagnostic:
/// the panel factors have unit determinant by construction, so this measures
/// accumulated rounding, not truncation.
pub fn wronskian_audit(u: &FundamentalMatrix) -> f64 {
    u.entries
        .iter()
        .map(|g| (g.u.det() - Complex64::new(1.0, 0.0)).norm())
        .fold(0.0, f64::max)
}

struct Run {
    points: Vec<(f64, Mat2, i64)>,
    error_estimate: f64,
}

fn run(
    form: SystemForm,
    side: &SideMeasure,
    lambda: Complex64,
    grid_request: &[f64],
    tol: f64,
    rescale: bool,
    record_all: bool,
) -> Result<Run> {
    let length = side.length();
    let cap = STEP_CAP_BASE / (1.0 + lambda.norm()).sqrt();

    // Mandatory panel boundaries: requested points, density break points,
    // and the outer endpoint.
    let mut mandatory: Vec<f64> = Vec::with_capacity(grid_request.len() + 8);
    mandatory.extend(grid_request.iter().copied().filter(|&x| x > 0.0));
    mandatory.extend(side.break_points());
    mandatory.push(length);
    mandatory.sort_by(|a, b| a.partial_cmp(b).unwrap());
    mandatory.dedup();

    let mut points: Vec<(f64, Mat2, i64)> = Vec::new();
    let mut u = Mat2::identity();
    let mut exponent: i64 = 0;
    points.push((0.0, u, 0));

    // The atom at 0 enters every integral over [0, x) with x > 0.
    if side.atom_at_zero() > 0.0 {
        u = atom_jump(form, side.atom_at_zero(), lambda).mul(&u);
    }

    let mut x = 0.0_f64;
    let mut r0 = 0.0_f64; // density primitive at x
    let mut h = cap.min(length / 16.0);
    let min_h = length * 1e-13;
    let mut est = 0.0_f64;
    let mut next_idx = 0usize;
    let mut steps = 0usize;

    while x < length {
        while next_idx < mandatory.len() && mandatory[next_idx] <= x {
            next_idx += 1;
        }
        let next = if next_idx < mandatory.len() {
            mandatory[next_idx]
        } else {
            length
        };

        let mut hit_boundary = false;
        let mut h_try = h.min(cap);
        if x + h_try >= next - min_h {
            h_try = next - x;
            hit_boundary = true;
        }

        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::IntegratorStall {
                requested: tol,
                achieved: est,
                partial: points.iter().map(|&(p, m, _)| (p, m)).collect(),
            });
        }

        let coarse = transfer(form, side, lambda, x, r0, h_try);
        let mid = x + 0.5 * h_try;
        let fine_a = transfer(form, side, lambda, x, r0, 0.5 * h_try);
        let r_mid = side.density_primitive(mid);
        let fine_b = transfer_from(form, side, lambda, mid, r_mid, x + h_try - mid);
        let fine = fine_b.mul(&fine_a);

        let scale = fine.max_abs().max(1.0);
        let err = fine.sub(&coarse).max_abs() / (15.0 * scale);
        let allowed = tol * (h_try / length);

        if err <= allowed || h_try <= min_h {
            u = fine.mul(&u);
            if !u.is_finite() {
                return Err(Error::Overflow { x: x + h_try });
            }
            x = if hit_boundary { next } else { x + h_try };
            r0 = side.density_primitive(x);
            est += err;
            if rescale && u.max_abs() > RESCALE_LIMIT {
                u = u.scale(2.0_f64.powi(-(RESCALE_FACTOR_LOG2 as i32)));
                exponent += RESCALE_FACTOR_LOG2;
            }
            if record_all || hit_boundary || x >= length {
                points.push((x, u, exponent));
            }
            let grow = if err > 0.0 {
                0.9 * (allowed / err).powf(0.2)
            } else {
                4.0
            };
            h = (h_try * grow.clamp(0.5, 4.0)).min(cap);
        } else {
            let shrink = 0.9 * (allowed / err).powf(0.2);
            h = (h_try * shrink.clamp(0.1, 0.7)).max(min_h);
        }
    }

    if est > tol {
        return Err(Error::IntegratorStall {
            requested: tol,
            achieved: est,
            reached_x: x,
        });
    }

    // Deduplicate boundary points recorded twice (accepted step + mandatory).
    points.dedup_by(|a, b| a.0 == b.0);

    Ok(Run {
        points,
        error_estimate: est,
    })
}

fn atom_jump(form: SystemForm, mass: f64, lambda: Complex64) -> Mat2 {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match form {
        SystemForm::Ell => Mat2::new(one, Complex64::new(mass, 0.0), zero, one),
        SystemForm::R => Mat2::new(one, zero, -lambda * mass, one),
    }
}

fn transfer(
    form: SystemForm,
    side: &SideMeasure,
    lambda: Complex64,
    x: f64,
    r_at_x: f64,
    h: f64,
) -> Mat2 {
    transfer_from(form, side, lambda, x, r_at_x, h)
}

/// Transfer matrix over `[x, x+h]`: exponential of the two-term Magnus
/// expansion with exact panel moments.
fn transfer_from(
    form: SystemForm,
    side: &SideMeasure,
    lambda: Complex64,
    x: f64,
    r_at_x: f64,
    h: f64,
) -> Mat2 {
    let r_end = side.density_primitive(x + h);
    let dr = r_end - r_at_x;
    // first mixed moment: W = h*dR - 2*int (R - R(x))
    let i_r = quad::gauss3(|t| side.density_primitive(t) - r_at_x, x, x + h);
    let w = h * dr - 2.0 * i_r;
    let half_lw = lambda * (0.5 * w);
    match form {
        SystemForm::Ell => exp_traceless(
            -half_lw,
            Complex64::new(dr, 0.0),
            -lambda * h,
        ),
        SystemForm::R => exp_traceless(
            half_lw,
            Complex64::new(h, 0.0),
            -lambda * dr,
        ),
    }
}
