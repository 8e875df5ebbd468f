//! Admissible weights: a signed weight `r` on `[x_left, 1]` with one turning
//! point at 0, exposed as two one-sided generalized measures (absolutely
//! continuous density plus an optional atom at 0).
//!
//! A [`SideMeasure`] lives in its own coordinate t in `(0, length)`; the
//! minus side of a [`Weight`] is stored reflected, so `t = -x` and
//! `length = -x_left`. All shipped density families carry a closed-form
//! antiderivative; a quadrature fallback exists for cross-checking and for
//! the (reachable) tolerance-miss error path.

use crate::error::{Error, Result};
use crate::quad;
use crate::roots;
use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
use num_traits::Float;

/// Which side of the turning point a quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// Density families on `(0, length)`; all evaluable pointwise and equipped
/// with an exact antiderivative.
#[derive(Debug, Clone, PartialEq)]
pub struct Density {
    kind: Kind,
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    /// Constant level `c > 0`.
    Constant(f64),
    /// `x^alpha` with `alpha > -1` (integrable at 0).
    Power { alpha: f64 },
    /// `1/(x ln^2(e/x))`: integrable, but its antiderivative `1/ln(e/x)`
    /// vanishes slower than any power at 0.
    LogFlat,
    /// Piecewise-linear interpolation of `(x, density)` samples with
    /// precomputed cumulative mass at the knots.
    Table { knots: Vec<(f64, f64)>, cum: Vec<f64> },
    /// Identically zero (pure-atom measures).
    Zero,
    /// `a^2 * base(a x)`, the reflected side of the scaling construction.
    Scaled { base: Box<Density>, a: f64 },
}

impl Density {
    pub fn constant(level: f64) -> Result<Density> {
        if !(level > 0.0) || !level.is_finite() {
            return Err(Error::Domain(format!("constant density level {level} must be positive")));
        }
        Ok(Density { kind: Kind::Constant(level) })
    }

    pub fn power(alpha: f64) -> Result<Density> {
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!("power exponent {alpha} must exceed -1")));
        }
        Ok(Density { kind: Kind::Power { alpha } })
    }

    pub fn log_flat() -> Density {
        Density { kind: Kind::LogFlat }
    }

    pub fn zero() -> Density {
        Density { kind: Kind::Zero }
    }

    /// Piecewise-linear density from `(x, value)` samples; the x's must be
    /// strictly increasing, start at 0 and the values must be nonnegative.
    pub fn table(samples: &[(f64, f64)]) -> Result<Density> {
        if samples.len() < 2 {
            return Err(Error::Domain("table needs at least two samples".into()));
        }
        if samples[0].0 != 0.0 {
            return Err(Error::Domain("table must start at x = 0".into()));
        }
        for w in samples.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::Domain("table abscissae must be strictly increasing".into()));
            }
        }
        if samples.iter().any(|&(_, d)| !(d >= 0.0) || !d.is_finite()) {
            return Err(Error::Domain("table densities must be finite and nonnegative".into()));
        }
        let mut cum = Vec::with_capacity(samples.len());
        let mut acc = 0.0;
        cum.push(0.0);
        for w in samples.windows(2) {
            acc += 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0);
            cum.push(acc);
        }
        Ok(Density { kind: Kind::Table { knots: samples.to_vec(), cum } })
    }

    fn scaled(&self, a: f64) -> Density {
        Density {
            kind: Kind::Scaled { base: Box::new(self.clone()), a },
        }
    }

    /// Pointwise value at `x > 0`.
    pub fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Constant(c) => *c,
            Kind::Power { alpha } => x.powf(*alpha),
            Kind::LogFlat => {
                let l = 1.0 - x.ln();
                1.0 / (x * l * l)
            }
            Kind::Table { knots, .. } => {
                let n = knots.len();
                if x <= knots[0].0 {
                    return knots[0].1;
                }
                if x >= knots[n - 1].0 {
                    return knots[n - 1].1;
                }
                let i = knots.partition_point(|&(xi, _)| xi <= x) - 1;
                let (x0, d0) = knots[i];
                let (x1, d1) = knots[i + 1];
                d0 + (d1 - d0) * (x - x0) / (x1 - x0)
            }
            Kind::Zero => 0.0,
            Kind::Scaled { base, a } => a * a * base.eval(a * x),
        }
    }

    /// Exact antiderivative of the density alone (no atom).
    fn primitive(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Constant(c) => c * x,
            Kind::Power { alpha } => x.powf(alpha + 1.0) / (alpha + 1.0),
            Kind::LogFlat => {
                if x <= 0.0 {
                    0.0
                } else {
                    1.0 / (1.0 - x.ln())
                }
            }
            Kind::Table { knots, cum } => {
                let n = knots.len();
                if x <= 0.0 {
                    return 0.0;
                }
                if x >= knots[n - 1].0 {
                    // constant extension beyond the last knot
                    return cum[n - 1] + knots[n - 1].1 * (x - knots[n - 1].0);
                }
                let i = knots.partition_point(|&(xi, _)| xi <= x) - 1;
                let (x0, d0) = knots[i];
                let (x1, d1) = knots[i + 1];
                let dx = x - x0;
                cum[i] + d0 * dx + 0.5 * (d1 - d0) / (x1 - x0) * dx * dx
            }
            Kind::Zero => 0.0,
            Kind::Scaled { base, a } => a * base.primitive(a * x),
        }
    }

    /// Interior break points that integration panels must not straddle.
    fn break_points(&self, length: f64, out: &mut Vec<f64>) {
        match &self.kind {
            Kind::Table { knots, .. } => {
                for &(x, _) in knots {
                    if x > 0.0 && x < length {
                        out.push(x);
                    }
                }
            }
            Kind::Scaled { base, a } => {
                let mut inner = Vec::new();
                base.break_points(length * a, &mut inner);
                out.extend(inner.into_iter().map(|x| x / a));
            }
            _ => {}
        }
    }
}

/// One-sided generalized measure `dR = density dx + atom_at_zero * delta_0`
/// on `(0, length)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SideMeasure {
    density: Density,
    atom_at_zero: f64,
    length: f64,
}

impl SideMeasure {
    pub fn new(density: Density, atom_at_zero: f64, length: f64) -> Result<SideMeasure> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::Domain(format!("side length {length} must be positive")));
        }
        if !(atom_at_zero >= 0.0) || !atom_at_zero.is_finite() {
            return Err(Error::Domain(format!("atom mass {atom_at_zero} must be nonnegative")));
        }
        let mass = atom_at_zero + density.primitive(length);
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::DegenerateWeight);
        }
        Ok(SideMeasure { density, atom_at_zero, length })
    }

    /// Unit-length side with the given density and no atom.
    pub fn from_density(density: Density) -> Result<SideMeasure> {
        SideMeasure::new(density, 0.0, 1.0)
    }

    /// Pure atom of the given mass (zero density), for the degenerate-case
    /// audits.
    pub fn pure_atom(mass: f64) -> Result<SideMeasure> {
        SideMeasure::new(Density::zero(), mass, 1.0)
    }

    pub fn density(&self) -> &Density {
        &self.density
    }

    pub fn density_at(&self, x: f64) -> f64 {
        self.density.eval(x)
    }

    pub fn atom_at_zero(&self) -> f64 {
        self.atom_at_zero
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// `R(x) = atom * [x > 0] + \int_0^x density`, by the exact antiderivative.
    pub fn antiderivative(&self, x: f64) -> Result<f64> {
        if !(0.0..=self.length * (1.0 + 1e-12)).contains(&x) {
            return Err(Error::Domain(format!(
                "position {x} outside [0, {}]",
                self.length
            )));
        }
        let atom = if x > 0.0 { self.atom_at_zero } else { 0.0 };
        Ok(atom + self.density.primitive(x))
    }

    /// Quadrature route for `R(x)`, independent of the closed form: adaptive
    /// Simpson on geometrically refined panels toward 0. Densities whose mass
    /// near 0 decays slower than any power (log-flat) legitimately fail with
    /// a tolerance miss here.
    pub fn antiderivative_quadrature(&self, x: f64, tol: f64) -> Result<f64> {
        if !(0.0..=self.length * (1.0 + 1e-12)).contains(&x) {
            return Err(Error::Domain(format!(
                "position {x} outside [0, {}]",
                self.length
            )));
        }
        if x == 0.0 {
            return Ok(0.0);
        }
        let mut total = self.atom_at_zero;
        let mut hi = x;
        let mut last_panel = f64::INFINITY;
        for _ in 0..240 {
            let lo = 0.5 * hi;
            let (panel, _) = quad::adaptive_simpson(&|t| self.density.eval(t), lo, hi, tol * 0.25)?;
            total += panel;
            // Tail estimate by geometric extrapolation of the panel masses.
            let ratio = if last_panel.is_finite() && last_panel > 0.0 {
                (panel / last_panel).min(0.999)
            } else {
                0.5
            };
            let tail = panel * ratio / (1.0 - ratio);
            if tail < 0.5 * tol || panel == 0.0 {
                return Ok(total + tail);
            }
            last_panel = panel;
            hi = lo;
        }
        let tail = self.density.eval(hi * 0.5) * hi;
        Err(Error::ToleranceMiss { requested: tol, achieved: tail.abs() })
    }

    pub fn total_mass(&self) -> f64 {
        self.atom_at_zero + self.density.primitive(self.length)
    }

    /// Inverse of the absolutely continuous part of `R` (atom ignored):
    /// smallest `x` with `\int_0^x density = v`, by monotone bisection.
    pub fn density_mass_inverse(&self, v: f64) -> Result<f64> {
        let total = self.density.primitive(self.length);
        if !(0.0..=total * (1.0 + 1e-12)).contains(&v) {
            return Err(Error::Range(format!("mass {v} outside [0, {total}]")));
        }
        if v <= 0.0 {
            return Ok(0.0);
        }
        if v >= total {
            return Ok(self.length);
        }
        roots::bisect_monotone(0.0, self.length, |x| self.density.primitive(x), v, 1e-14)
    }

    /// Bennewitz ratio `S(t, x) = R(tx) / R(x)` (atom included on both ends).
    pub fn bennewitz_ratio(&self, t: f64, x: f64) -> Result<f64> {
        if !(0.0 < t && t < 1.0) {
            return Err(Error::Domain(format!("ratio parameter t = {t} outside (0,1)")));
        }
        if !(0.0 < x && x <= self.length) {
            return Err(Error::Domain(format!("position x = {x} outside (0, {}]", self.length)));
        }
        let denom = self.antiderivative(x)?;
        if denom <= 0.0 {
            return Err(Error::DegenerateWeight);
        }
        Ok(self.antiderivative(t * x)? / denom)
    }

    /// The reflected side of the scaling construction: density
    /// `a^2 * r(a t)` on `(0, length/a)`; total mass is preserved.
    pub fn scaled(&self, a: f64) -> Result<SideMeasure> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::Domain(format!("scaling parameter a = {a} must be positive")));
        }
        SideMeasure::new(
            self.density.scaled(a),
            self.atom_at_zero * a,
            self.length / a,
        )
    }

    /// Asymptotic scale `f(t)` of the m-function at large `|lambda| = t`:
    /// `f(t) = R(x_t)` where `x_t` solves `x R(x) = 1/t`, found by monotone
    /// bisection. Decreasing in `t`, with `t f(t) = 1/x_t` increasing without
    /// bound.
    pub fn asymptotic_scale(&self, t: f64) -> Result<f64> {
        let g_max = self.length * self.total_mass();
        if !(t > 0.0) || 1.0 / t > g_max * (1.0 + 1e-12) {
            return Err(Error::Range(format!(
                "scale argument t = {t} below attainable range (t >= {})",
                1.0 / g_max
            )));
        }
        if 1.0 / t >= g_max {
            return Ok(self.total_mass());
        }
        let target = 1.0 / t;
        let x_t = roots::bisect(
            0.0,
            self.length,
            |x| {
                let r = if x > 0.0 { self.atom_at_zero } else { 0.0 } + self.density.primitive(x);
                x * r - target
            },
            1e-14,
        )?;
        self.antiderivative(x_t)
    }

    /// Interior positions the integrator must place panel boundaries on.
    pub(crate) fn break_points(&self) -> Vec<f64> {
        let mut out = Vec::new();
        self.density.break_points(self.length, &mut out);
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out
    }
}

/// How the two sides of a weight are related; declared by the constructor
/// and verified, never inferred.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParityHint {
    Odd,
    Scaled(f64),
    General,
}

/// A signed weight on `[x_left, 1]` with `x r(x) > 0` a.e., stored as its
/// two one-sided traces (the minus side reflected onto `(0, -x_left)`).
#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    plus: SideMeasure,
    minus: SideMeasure,
    x_left: f64,
    parity_hint: ParityHint,
}

impl Weight {
    /// Odd weight: both sides are the same unit-length measure.
    pub fn odd(side: SideMeasure) -> Result<Weight> {
        if (side.length() - 1.0).abs() > 1e-12 {
            return Err(Error::Domain("odd weights require unit side length".into()));
        }
        Ok(Weight {
            minus: side.clone(),
            plus: side,
            x_left: -1.0,
            parity_hint: ParityHint::Odd,
        })
    }

    /// Scaling construction: plus side is `base`, minus side is its
    /// `a`-scaled reflection on `(0, 1/a)`; `a = 1` degenerates to odd.
    pub fn scaled(base: SideMeasure, a: f64) -> Result<Weight> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::Domain(format!("scaling parameter a = {a} must be positive")));
        }
        if (base.length() - 1.0).abs() > 1e-12 {
            return Err(Error::Domain("scaling base must have unit length".into()));
        }
        let minus = base.scaled(a)?;
        let parity_hint = if a == 1.0 { ParityHint::Odd } else { ParityHint::Scaled(a) };
        Ok(Weight { x_left: -minus.length(), plus: base, minus, parity_hint })
    }

    /// General two-sided weight; `x_left = -minus.length()`.
    pub fn general(plus: SideMeasure, minus: SideMeasure) -> Result<Weight> {
        Ok(Weight {
            x_left: -minus.length(),
            plus,
            minus,
            parity_hint: ParityHint::General,
        })
    }

    /// Declare a parity hint and verify it on a 64-point grid.
    pub fn with_parity_hint(plus: SideMeasure, minus: SideMeasure, hint: ParityHint) -> Result<Weight> {
        if let ParityHint::Odd = hint {
            if (plus.length() - 1.0).abs() > 1e-12 || (minus.length() - 1.0).abs() > 1e-12 {
                return Err(Error::Domain("odd parity requires x_left = -1".into()));
            }
            if (plus.atom_at_zero() - minus.atom_at_zero()).abs() > 1e-12 {
                return Err(Error::Domain("odd parity requires equal atoms".into()));
            }
            let scale = 1.0 + plus.total_mass();
            for i in 1..=64 {
                let x = i as f64 / 64.5;
                let dev = (plus.density_at(x) - minus.density_at(x)).abs();
                if dev > 1e-9 * scale {
                    return Err(Error::Domain(format!(
                        "odd parity violated at x = {x}: density mismatch {dev:.3e}"
                    )));
                }
            }
        }
        Ok(Weight {
            x_left: -minus.length(),
            plus,
            minus,
            parity_hint: hint,
        })
    }

    pub fn side(&self, side: Side) -> &SideMeasure {
        match side {
            Side::Plus => &self.plus,
            Side::Minus => &self.minus,
        }
    }

    pub fn plus(&self) -> &SideMeasure {
        &self.plus
    }

    pub fn minus(&self) -> &SideMeasure {
        &self.minus
    }

    pub fn x_left(&self) -> f64 {
        self.x_left
    }

    pub fn parity_hint(&self) -> ParityHint {
        self.parity_hint
    }

    pub fn is_odd(&self) -> bool {
        matches!(self.parity_hint, ParityHint::Odd)
    }
}

/// Outcome of the Bennewitz tail test on one side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BennewitzStatus {
    Satisfied,
    Failed,
    Inconclusive,
}

/// Verdict plus the witness data that makes it auditable.
#[derive(Debug, Clone)]
pub struct BennewitzVerdict {
    pub side: Side,
    /// Ratio parameter certifying `S_0(t) != 1`, when satisfied.
    pub t_witness: Option<f64>,
    /// Extrapolated limsup for the decisive `t` (max of `S(t, x)` over the
    /// tail quarter of the decay grid).
    pub s0_estimate: f64,
    pub status: BennewitzStatus,
    /// All `(t, x, S(t, x))` samples used.
    pub samples: Vec<(f64, f64, f64)>,
}

/// Default decision margin around `S_0 = 1`.
pub const BENNEWITZ_MARGIN: f64 = 0.05;

pub fn default_t_grid() -> Vec<f64> {
    (1..=9).map(|i| i as f64 / 10.0).collect()
}

/// Geometric decay grid 1 -> 1e-40, two points per decade. The antiderivative
/// ratios are exact closed forms, so probing this deep is cheap and it is
/// what separates slowly-varying mass functions from power-like ones.
pub fn default_x_decay() -> Vec<f64> {
    (0..=80).map(|i| 10f64.powf(-(i as f64) * 0.5)).collect()
}

/// Tail test for Bennewitz's condition: satisfied when some `t` keeps
/// `S(t, x)` bounded away from 1 by `margin` over the tail of the decay
/// grid, failed when every `t` has settled into `(1 - margin, 1]`,
/// inconclusive otherwise (no binary answer is forced).
pub fn bennewitz_test(
    side_sel: Side,
    measure: &SideMeasure,
    t_grid: &[f64],
    x_decay: &[f64],
    margin: f64,
) -> Result<BennewitzVerdict> {
    if t_grid.is_empty() {
        return Err(Error::Domain("empty t grid".into()));
    }
    if x_decay.len() < 8 {
        return Err(Error::Domain("x decay grid needs at least 8 points".into()));
    }
    let span = x_decay[0] / x_decay[x_decay.len() - 1];
    if !x_decay.windows(2).all(|w| w[1] < w[0]) || span < 1e4 {
        return Err(Error::Domain(
            "x decay grid must be strictly decreasing over at least 4 decades".into(),
        ));
    }

    let tail_start = x_decay.len() - x_decay.len() / 4;
    let mut samples = Vec::with_capacity(t_grid.len() * x_decay.len());
    let mut best: Option<(f64, f64)> = None; // (t, settled s0 estimate)
    let mut all_near_one = true;
    let mut all_settled = true;
    let mut max_s0 = 0.0_f64;

    for &t in t_grid {
        let mut tail_min = f64::INFINITY;
        let mut tail_max = f64::NEG_INFINITY;
        for (i, &x) in x_decay.iter().enumerate() {
            let s = measure.bennewitz_ratio(t, x)?;
            samples.push((t, x, s));
            if i >= tail_start {
                tail_min = tail_min.min(s);
                tail_max = tail_max.max(s);
            }
        }
        let settled = tail_max - tail_min <= 0.5 * margin;
        let s0 = tail_max;
        max_s0 = max_s0.max(s0);
        if !settled {
            all_settled = false;
        }
        if s0 <= 1.0 - margin {
            all_near_one = false;
            if settled && best.map(|(_, b)| s0 < b).unwrap_or(true) {
                best = Some((t, s0));
            }
        }
    }

    let (status, t_witness, s0_estimate) = if let Some((t, s0)) = best {
        (BennewitzStatus::Satisfied, Some(t), s0)
    } else if all_near_one && all_settled {
        (BennewitzStatus::Failed, None, max_s0)
    } else {
        (BennewitzStatus::Inconclusive, None, max_s0)
    };

    Ok(BennewitzVerdict { side: side_sel, t_witness, s0_estimate, status, samples })
}

/// [`bennewitz_test`] with the default grids and margin.
pub fn bennewitz_test_default(side_sel: Side, measure: &SideMeasure) -> Result<BennewitzVerdict> {
    bennewitz_test(
        side_sel,
        measure,
        &default_t_grid(),
        &default_x_decay(),
        BENNEWITZ_MARGIN,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_const() -> SideMeasure {
        SideMeasure::from_density(Density::constant(1.0).unwrap()).unwrap()
    }

    #[test]
    fn antiderivative_linear() {
        let side = unit_const();
        assert_eq!(side.antiderivative(0.5).unwrap(), 0.5);
        assert_eq!(side.antiderivative(0.0).unwrap(), 0.0);
    }

    #[test]
    fn antiderivative_log_flat_closed_form() {
        // d/dx [1/ln(e/x)] = 1/(x ln^2(e/x)), so R(x) = 1/ln(e/x).
        let side = SideMeasure::from_density(Density::log_flat()).unwrap();
        for &x in &[1e-6, 1e-3, 0.1, 0.5, 1.0] {
            let expect = 1.0 / (1.0 - f64::ln(x));
            assert!((side.antiderivative(x).unwrap() - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn antiderivative_pure_atom() {
        let side = SideMeasure::pure_atom(0.7).unwrap();
        assert_eq!(side.antiderivative(0.3).unwrap(), 0.7);
        assert_eq!(side.antiderivative(0.0).unwrap(), 0.0);
    }

    #[test]
    fn antiderivative_quadrature_matches_closed_form() {
        // Integrable singularity x^(-1/2): the geometric-panel fallback
        // converges and must agree with the closed form.
        let side = SideMeasure::from_density(Density::power(-0.5).unwrap()).unwrap();
        for &x in &[0.1, 0.5, 1.0] {
            let q = side.antiderivative_quadrature(x, 1e-11).unwrap();
            assert!((q - side.antiderivative(x).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn antiderivative_quadrature_tolerance_miss_on_log_flat() {
        // Mass near 0 decays like 1/ln(1/x): no geometric refinement reaches
        // 1e-10 absolute; the error must carry the achieved estimate.
        let side = SideMeasure::from_density(Density::log_flat()).unwrap();
        match side.antiderivative_quadrature(0.5, 1e-10) {
            Err(Error::ToleranceMiss { achieved, .. }) => assert!(achieved > 1e-10),
            other => panic!("expected tolerance miss, got {other:?}"),
        }
    }

    #[test]
    fn table_antiderivative_is_exact() {
        let d = Density::table(&[(0.0, 1.0), (0.5, 2.0), (1.0, 0.5)]).unwrap();
        let side = SideMeasure::from_density(d).unwrap();
        // segment [0, 0.5]: 1 + 2x  => R(x) = x + x^2
        assert!((side.antiderivative(0.25).unwrap() - (0.25 + 0.0625)).abs() < 1e-15);
        // full mass: 0.75 + 0.625
        assert!((side.total_mass() - 1.375).abs() < 1e-15);
    }

    #[test]
    fn bennewitz_ratio_constant_is_t() {
        let side = unit_const();
        for &x in &[1.0, 0.3, 1e-8] {
            assert!((side.bennewitz_ratio(0.5, x).unwrap() - 0.5).abs() < 1e-14);
        }
    }

    #[test]
    fn bennewitz_ratio_power_alpha_one() {
        // R(x) = x^2/2, so S(1/2, x) = 1/4.
        let side = SideMeasure::from_density(Density::power(1.0).unwrap()).unwrap();
        assert!((side.bennewitz_ratio(0.5, 0.37).unwrap() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn bennewitz_ratio_log_flat_tends_to_one() {
        let side = SideMeasure::from_density(Density::log_flat()).unwrap();
        let s1 = side.bennewitz_ratio(0.5, 1e-3).unwrap();
        let s2 = side.bennewitz_ratio(0.5, 1e-8).unwrap();
        let s3 = side.bennewitz_ratio(0.5, 1e-13).unwrap();
        assert!(s1 < s2 && s2 < s3 && s3 < 1.0);
        assert!(s3 > 0.97);
        // analytic value ln(e/x)/ln(e/(tx))
        let expect = (1.0 - f64::ln(1e-8)) / (1.0 - f64::ln(0.5e-8));
        assert!((s2 - expect).abs() < 1e-12);
    }

    #[test]
    fn bennewitz_test_constant_satisfied() {
        let v = bennewitz_test_default(Side::Plus, &unit_const()).unwrap();
        assert_eq!(v.status, BennewitzStatus::Satisfied);
        let t = v.t_witness.unwrap();
        assert!((v.s0_estimate - t).abs() < 1e-12);
    }

    #[test]
    fn bennewitz_test_log_flat_failed() {
        let side = SideMeasure::from_density(Density::log_flat()).unwrap();
        let v = bennewitz_test_default(Side::Plus, &side).unwrap();
        assert_eq!(v.status, BennewitzStatus::Failed);
        assert!(v.s0_estimate > 1.0 - BENNEWITZ_MARGIN);
    }

    #[test]
    fn bennewitz_test_power_two_satisfied_with_t_cubed() {
        let side = SideMeasure::from_density(Density::power(2.0).unwrap()).unwrap();
        let v = bennewitz_test_default(Side::Plus, &side).unwrap();
        assert_eq!(v.status, BennewitzStatus::Satisfied);
        let t = v.t_witness.unwrap();
        assert!((v.s0_estimate - t.powi(3)).abs() < 1e-12);
    }

    #[test]
    fn bennewitz_test_pure_atom_failed() {
        let side = SideMeasure::pure_atom(1.0).unwrap();
        let v = bennewitz_test_default(Side::Plus, &side).unwrap();
        assert_eq!(v.status, BennewitzStatus::Failed);
        assert_eq!(v.s0_estimate, 1.0);
    }

    #[test]
    fn scale_weight_constant_base() {
        let w = Weight::scaled(unit_const(), 2.0).unwrap();
        assert_eq!(w.x_left(), -0.5);
        assert_eq!(w.parity_hint(), ParityHint::Scaled(2.0));
        assert!((w.minus().density_at(0.2) - 4.0).abs() < 1e-14);
        assert!((w.minus().length() - 0.5).abs() < 1e-15);
        // substitution preserves total mass
        assert!((w.minus().total_mass() - w.plus().total_mass()).abs() < 1e-14);
    }

    #[test]
    fn scale_weight_identity_is_odd() {
        let w = Weight::scaled(unit_const(), 1.0).unwrap();
        assert_eq!(w.parity_hint(), ParityHint::Odd);
        for i in 0..16 {
            let x = (i as f64 + 0.5) / 16.0;
            assert!((w.plus().density_at(x) - w.minus().density_at(x)).abs() < 1e-14);
        }
    }

    #[test]
    fn scale_weight_rejects_nonpositive_a() {
        assert!(Weight::scaled(unit_const(), 0.0).is_err());
        assert!(Weight::scaled(unit_const(), -2.0).is_err());
    }

    #[test]
    fn asymptotic_scale_constant_density() {
        // R(x) = x gives x R(x) = x^2, so f(t) = 1/sqrt(t).
        let side = unit_const();
        assert!((side.asymptotic_scale(4.0).unwrap() - 0.5).abs() < 1e-12);
        assert!(side.asymptotic_scale(0.5).is_err());
    }

    #[test]
    fn asymptotic_scale_monotone_and_t_f_unbounded() {
        let sides = [
            unit_const(),
            SideMeasure::from_density(Density::power(2.0).unwrap()).unwrap(),
            SideMeasure::from_density(Density::log_flat()).unwrap(),
        ];
        for side in &sides {
            let mut prev_f = f64::INFINITY;
            let mut prev_tf = 0.0;
            for k in 1..=24 {
                let t = 10f64.powf(0.5 * k as f64);
                let f = side.asymptotic_scale(t).unwrap();
                assert!(f <= prev_f * (1.0 + 1e-12), "f not decreasing");
                let tf = t * f;
                assert!(tf > prev_tf, "t*f(t) not increasing");
                prev_f = f;
                prev_tf = tf;
            }
            // increasing without bound over the sampled range: last >> first
            let first = 10f64.powf(0.5) * side.asymptotic_scale(10f64.powf(0.5)).unwrap();
            let last = 10f64.powf(12.0) * side.asymptotic_scale(10f64.powf(12.0)).unwrap();
            assert!(last > 50.0 * first);
        }
    }

    #[test]
    fn asymptotic_scale_pure_atom_is_constant() {
        let side = SideMeasure::pure_atom(0.7).unwrap();
        for &t in &[10.0, 1e3, 1e6] {
            assert!((side.asymptotic_scale(t).unwrap() - 0.7).abs() < 1e-12);
        }
    }

    #[test]
    fn parity_hint_is_verified() {
        let plus = unit_const();
        let minus = SideMeasure::from_density(Density::power(1.0).unwrap()).unwrap();
        assert!(Weight::with_parity_hint(plus.clone(), minus, ParityHint::Odd).is_err());
        assert!(Weight::with_parity_hint(plus.clone(), plus, ParityHint::Odd).is_ok());
    }

    #[test]
    fn antiderivative_monotone_on_grids() {
        let sides = [
            unit_const(),
            SideMeasure::from_density(Density::power(-0.5).unwrap()).unwrap(),
            SideMeasure::from_density(Density::log_flat()).unwrap(),
            SideMeasure::new(Density::constant(2.0).unwrap(), 0.3, 1.0).unwrap(),
        ];
        for side in &sides {
            let mut prev = -1.0;
            for i in 0..=64 {
                let x = i as f64 / 64.0;
                let r = side.antiderivative(x).unwrap();
                assert!(r >= prev);
                prev = r;
            }
        }
    }
}
