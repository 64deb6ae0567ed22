//! Node vector fields and coupling protocols.

use std::fmt::Debug;

/// Autonomous node dynamics `ẋ = f(x)` on `ℝⁿ` with its Jacobian.
pub trait NodeDynamics: Send + Sync + Debug {
    fn dim(&self) -> usize;

    fn field(&self, x: &[f64], out: &mut [f64]);

    /// Row-major `n x n` Jacobian of `field` at `x`.
    fn jacobian(&self, x: &[f64], out: &mut [f64]);
}

/// `f = 0` on the real line.
#[derive(Debug, Clone, Copy, Default)]
pub struct Consensus;

impl NodeDynamics for Consensus {
    fn dim(&self) -> usize {
        1
    }

    fn field(&self, _x: &[f64], out: &mut [f64]) {
        out[0] = 0.0;
    }

    fn jacobian(&self, _x: &[f64], out: &mut [f64]) {
        out[0] = 0.0;
    }
}

/// Scalar linear node `f(x) = a x`.
#[derive(Debug, Clone, Copy)]
pub struct Linear {
    pub a: f64,
}

impl NodeDynamics for Linear {
    fn dim(&self) -> usize {
        1
    }

    fn field(&self, x: &[f64], out: &mut [f64]) {
        out[0] = self.a * x[0];
    }

    fn jacobian(&self, _x: &[f64], out: &mut [f64]) {
        out[0] = self.a;
    }
}

/// Coupling protocol `g`, applied componentwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Coupling {
    #[default]
    Identity,
    Arctan,
}

impl Coupling {
    #[inline]
    pub fn apply(self, z: f64) -> f64 {
        match self {
            Coupling::Identity => z,
            Coupling::Arctan => z.atan(),
        }
    }

    /// `g'(0)`; both protocols have unit slope at the origin.
    pub fn slope_at_zero(self) -> f64 {
        1.0
    }
}

/// Max relative mismatch between `jacobian` and central finite differences at `x`.
pub fn jacobian_fd_error(f: &dyn NodeDynamics, x: &[f64]) -> f64 {
    let n = f.dim();
    let mut jac = vec![0.0; n * n];
    f.jacobian(x, &mut jac);
    let (mut fp, mut fm) = (vec![0.0; n], vec![0.0; n]);
    let mut worst: f64 = 0.0;
    let scale = jac.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    for c in 0..n {
        let h = 1e-6 * x[c].abs().max(1.0);
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[c] += h;
        xm[c] -= h;
        f.field(&xp, &mut fp);
        f.field(&xm, &mut fm);
        for r in 0..n {
            let fd = (fp[r] - fm[r]) / (2.0 * h);
            worst = worst.max((fd - jac[r * n + c]).abs() / scale);
        }
    }
    worst
}
