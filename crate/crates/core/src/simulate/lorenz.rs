//! Lorenz nodes in shifted coordinates.

use crate::dynamics::NodeDynamics;
use crate::msf::Rk4;

/// `f = [s(x₂-x₁), s x₁ - x₂ - x₁x₃, x₁x₂ - b(x₃ + p + s)]`.
///
/// A translate of the textbook Lorenz flow along the third axis, so it shares
/// that flow's Lyapunov exponents; see [`Lorenz::equivalent_rho`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lorenz {
    pub s: f64,
    pub b: f64,
    pub p: f64,
}

impl Default for Lorenz {
    fn default() -> Self {
        Self { s: 10.0, b: 8.0 / 3.0, p: 28.0 }
    }
}

impl Lorenz {
    /// `ρ` of the textbook system `ż = xy - bz`, `ẏ = x(ρ - z) - y` that this
    /// field is conjugate to under `x₃ = z - (p + s)`.
    pub fn equivalent_rho(&self) -> f64 {
        self.p + 2.0 * self.s
    }

    /// Equilibria: `(0, 0, -(p + s))` and `(±r, ±r, s - 1)` with `r² = b(p + 2s - 1)`.
    pub fn equilibria(&self) -> Vec<[f64; 3]> {
        let x3 = self.s - 1.0;
        let r = (self.b * (x3 + self.p + self.s)).sqrt();
        vec![[0.0, 0.0, -(self.p + self.s)], [r, r, x3], [-r, -r, x3]]
    }

    /// State after integrating from `(1, 1, 1)` for `t` time units with step `h`.
    pub fn attractor_point(&self, t: f64, h: f64) -> [f64; 3] {
        let mut y = [1.0, 1.0, 1.0];
        let mut rk = Rk4::new(3);
        let steps = (t / h).round() as usize;
        for _ in 0..steps {
            rk.step(&mut y, h, |x, out| self.field(x, out));
        }
        y
    }
}

/// Field of [`Lorenz::default`].
pub fn lorenz_field(x: &[f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    Lorenz::default().field(x, &mut out);
    out
}

/// Row-major Jacobian of [`Lorenz::default`].
pub fn lorenz_jacobian(x: &[f64; 3]) -> [f64; 9] {
    let mut out = [0.0; 9];
    Lorenz::default().jacobian(x, &mut out);
    out
}

impl NodeDynamics for Lorenz {
    fn dim(&self) -> usize {
        3
    }

    fn field(&self, x: &[f64], out: &mut [f64]) {
        out[0] = self.s * (x[1] - x[0]);
        out[1] = self.s * x[0] - x[1] - x[0] * x[2];
        out[2] = x[0] * x[1] - self.b * (x[2] + self.p + self.s);
    }

    fn jacobian(&self, x: &[f64], out: &mut [f64]) {
        out.copy_from_slice(&[
            -self.s,
            self.s,
            0.0,
            self.s - x[2],
            -1.0,
            -x[0],
            x[1],
            x[0],
            -self.b,
        ]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::jacobian_fd_error;

    #[test]
    fn origin_value() {
        let f = lorenz_field(&[0.0; 3]);
        assert_eq!(&f[..2], &[0.0, 0.0]);
        assert!((f[2] + 8.0 / 3.0 * 38.0).abs() < 1e-12);
    }

    #[test]
    fn equilibria_are_fixed_points() {
        let l = Lorenz::default();
        for e in l.equilibria() {
            let f = lorenz_field(&e);
            assert!(f.iter().all(|v| v.abs() < 1e-12), "{e:?} -> {f:?}");
        }
        assert!((l.equilibria()[1][0].powi(2) - 8.0 / 3.0 * 47.0).abs() < 1e-12);
    }

    #[test]
    fn jacobian_matches_fd() {
        for x in [[1.0, -2.0, 3.0], [12.5, 7.0, -30.0], [-0.3, 0.2, 40.0]] {
            assert!(jacobian_fd_error(&Lorenz::default(), &x) < 1e-5);
        }
    }

    #[test]
    fn attractor_bounded() {
        let y = Lorenz::default().attractor_point(20.0, 1e-3);
        assert!(y.iter().all(|v| v.is_finite() && v.abs() < 200.0));
    }
}
