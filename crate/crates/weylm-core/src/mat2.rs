//! Minimal 2x2 matrix arithmetic: complex transfer matrices for the
//! fundamental system and real symmetric matrices for the criteria.

use num_complex::Complex64;

/// Complex 2x2 matrix, row-major: `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Mat2 {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        )
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn conj(&self) -> Mat2 {
        Mat2::new(self.a.conj(), self.b.conj(), self.c.conj(), self.d.conj())
    }

    /// Largest entry magnitude (max norm).
    pub fn max_abs(&self) -> f64 {
        let m = self.a.norm().max(self.b.norm());
        let m = m.max(self.c.norm());
        m.max(self.d.norm())
    }

    pub fn sub(&self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            self.a - rhs.a,
            self.b - rhs.b,
            self.c - rhs.c,
            self.d - rhs.d,
        )
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        Mat2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: (Complex64, Complex64)) -> (Complex64, Complex64) {
        (self.a * v.0 + self.b * v.1, self.c * v.0 + self.d * v.1)
    }
}

/// Exponential of the traceless matrix `[[alpha, beta], [gamma, -alpha]]`.
///
/// With `z = alpha^2 + beta*gamma` the square of the matrix is `z*I`, so
/// `exp = cosh(mu) I + sinhc(mu) M` where `mu = sqrt(z)` and
/// `sinhc(mu) = sinh(mu)/mu`. The determinant of the result is exactly
/// `cosh^2 - z*sinhc^2 = 1` up to rounding, which is what keeps the Wronskian
/// of the fundamental system pinned to 1.
pub fn exp_traceless(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Mat2 {
    let z = alpha * alpha + beta * gamma;
    let (cosh, sinhc) = cosh_sinhc(z);
    Mat2::new(
        cosh + sinhc * alpha,
        sinhc * beta,
        sinhc * gamma,
        cosh - sinhc * alpha,
    )
}

/// `(cosh(sqrt(z)), sinh(sqrt(z))/sqrt(z))` as functions of `z`, stable near
/// `z = 0` via their Taylor series in `z`.
fn cosh_sinhc(z: Complex64) -> (Complex64, Complex64) {
    if z.norm() < 1e-6 {
        // cosh sqrt(z) = 1 + z/2 + z^2/24 + z^3/720
        // sinhc sqrt(z) = 1 + z/6 + z^2/120 + z^3/5040
        let one = Complex64::new(1.0, 0.0);
        let cosh = one + z * (one / 2.0 + z * (one / 24.0 + z / 720.0));
        let sinhc = one + z * (one / 6.0 + z * (one / 120.0 + z / 5040.0));
        (cosh, sinhc)
    } else {
        let mu = z.sqrt();
        let e = mu.exp();
        let einv = Complex64::new(1.0, 0.0) / e;
        ((e + einv) * 0.5, (e - einv) * 0.5 / mu)
    }
}

/// Real symmetric 2x2 matrix `[[a11, a12], [a12, a22]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sym2 {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
}

impl Sym2 {
    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a12
    }

    pub fn add(&self, rhs: &Sym2) -> Sym2 {
        Sym2 {
            a11: self.a11 + rhs.a11,
            a12: self.a12 + rhs.a12,
            a22: self.a22 + rhs.a22,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_traceless_det_is_one() {
        let m = exp_traceless(
            Complex64::new(0.3, -0.2),
            Complex64::new(1.5, 0.4),
            Complex64::new(-0.7, 2.0),
        );
        let det = m.det();
        assert!((det - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn exp_traceless_small_argument_matches_series() {
        // For tiny entries exp(M) ~ I + M + M^2/2.
        let a = Complex64::new(1e-9, 2e-9);
        let b = Complex64::new(-3e-9, 1e-9);
        let g = Complex64::new(2e-9, -1e-9);
        let m = exp_traceless(a, b, g);
        assert!((m.a - (Complex64::new(1.0, 0.0) + a)).norm() < 1e-16);
        assert!((m.b - b).norm() < 1e-16);
        assert!((m.c - g).norm() < 1e-16);
    }

    #[test]
    fn exp_traceless_reproduces_rotation() {
        // [[0, 1], [-w^2, 0]] integrates -y'' = w^2 y over unit step:
        // entries cos(w), sin(w)/w, -w sin(w), cos(w).
        let w = 2.0_f64;
        let m = exp_traceless(
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(-w * w, 0.0),
        );
        assert!((m.a.re - w.cos()).abs() < 1e-14);
        assert!((m.b.re - w.sin() / w).abs() < 1e-14);
        assert!((m.c.re + w * w.sin()).abs() < 1e-14);
    }
}
