//! Master stability function of the pinned network and the controllability
//! verdict built on it.
//!
//! `Λ(μ)` is the largest Lyapunov exponent of `ξ̇ = (JF(x_p) - μ JG(0)) ξ` along
//! the pinner's trajectory `ẋ_p = f(x_p)`. A pinning selection is accepted when
//! `Λ` is negative on every eigenvalue of the reduced block.

use std::collections::HashMap;
use std::io;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::dynamics::{Consensus, NodeDynamics};
use crate::simulate::Lorenz;
use crate::spectral::{fmt_f64, Spectrum};

/// `Λ` must be below `-STABILITY_MARGIN` to count as negative.
pub const STABILITY_MARGIN: f64 = 1e-3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MsfError {
    #[error("integration failed: {0}")]
    Integration(String),
    #[error("network is not type II")]
    NotType2,
    #[error("invalid settings: {0}")]
    Settings(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Node dynamics, coupling Jacobian at the origin and the pinner's initial state.
#[derive(Debug, Clone)]
pub struct MsfModel {
    pub dynamics: Arc<dyn NodeDynamics>,
    /// Row-major `n x n`.
    pub coupling_jacobian: Vec<f64>,
    pub reference_init: Vec<f64>,
}

impl MsfModel {
    pub fn new(
        dynamics: Arc<dyn NodeDynamics>,
        coupling_jacobian: Vec<f64>,
        reference_init: Vec<f64>,
    ) -> Result<Self, MsfError> {
        let n = dynamics.dim();
        if coupling_jacobian.len() != n * n || reference_init.len() != n {
            return Err(MsfError::Dimension(format!("state dimension is {n}")));
        }
        Ok(Self { dynamics, coupling_jacobian, reference_init })
    }

    /// `n = 1`, `f = 0`, `g` the identity.
    pub fn consensus() -> Self {
        Self { dynamics: Arc::new(Consensus), coupling_jacobian: vec![1.0], reference_init: vec![0.0] }
    }

    /// Lorenz nodes with componentwise `arctan` coupling (`JG(0) = I`).
    pub fn lorenz_arctan() -> Self {
        let mut jg = vec![0.0; 9];
        for i in 0..3 {
            jg[i * 4] = 1.0;
        }
        Self { dynamics: Arc::new(Lorenz::default()), coupling_jacobian: jg, reference_init: vec![1.0, 1.0, 1.0] }
    }

    pub fn dim(&self) -> usize {
        self.dynamics.dim()
    }

    /// `Some(c)` when `JG(0) = c I`.
    pub fn scalar_coupling(&self) -> Option<f64> {
        let n = self.dim();
        let c = self.coupling_jacobian[0];
        let ok = (0..n).all(|r| {
            (0..n).all(|k| {
                let v = self.coupling_jacobian[r * n + k];
                if r == k { v == c } else { v == 0.0 }
            })
        });
        ok.then_some(c)
    }
}

/// Benettin integration parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovSettings {
    pub transient: f64,
    pub horizon: f64,
    pub renorm_interval: f64,
    pub step: f64,
}

impl LyapunovSettings {
    /// Step `1e-2`, transient 100, horizon 1100.
    pub fn linear() -> Self {
        Self { transient: 100.0, horizon: 1100.0, renorm_interval: 1.0, step: 1e-2 }
    }

    /// Step `1e-3`, transient 100, horizon 1100.
    pub fn lorenz() -> Self {
        Self { step: 1e-3, ..Self::linear() }
    }

    pub fn validate(&self) -> Result<(), MsfError> {
        let all_pos = [self.transient, self.horizon, self.renorm_interval, self.step]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0);
        if !all_pos {
            return Err(MsfError::Settings("all settings must be positive".into()));
        }
        if self.horizon <= self.transient {
            return Err(MsfError::Settings("horizon must exceed the transient".into()));
        }
        if self.step > self.renorm_interval {
            return Err(MsfError::Settings("step larger than the renormalisation interval".into()));
        }
        Ok(())
    }
}

struct Variational<'a> {
    model: &'a MsfModel,
    mu: Complex64,
    jac: Vec<f64>,
}

impl Variational<'_> {
    /// State layout `[x, Re ξ, Im ξ]`.
    fn rhs(&mut self, s: &[f64], ds: &mut [f64]) {
        let n = self.model.dim();
        let (x, rest) = s.split_at(n);
        let (a, b) = rest.split_at(n);
        let (dx, drest) = ds.split_at_mut(n);
        let (da, db) = drest.split_at_mut(n);
        self.model.dynamics.field(x, dx);
        self.model.dynamics.jacobian(x, &mut self.jac);
        let jg = &self.model.coupling_jacobian;
        let (mr, mi) = (self.mu.re, self.mu.im);
        for r in 0..n {
            let (mut ja, mut jb, mut ga, mut gb) = (0.0, 0.0, 0.0, 0.0);
            for c in 0..n {
                ja += self.jac[r * n + c] * a[c];
                jb += self.jac[r * n + c] * b[c];
                ga += jg[r * n + c] * a[c];
                gb += jg[r * n + c] * b[c];
            }
            da[r] = ja - mr * ga + mi * gb;
            db[r] = jb - mr * gb - mi * ga;
        }
    }
}

/// Classic fixed-step RK4 over a flat state vector.
pub(crate) struct Rk4 {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    tmp: Vec<f64>,
}

impl Rk4 {
    pub(crate) fn new(dim: usize) -> Self {
        Self {
            k1: vec![0.0; dim],
            k2: vec![0.0; dim],
            k3: vec![0.0; dim],
            k4: vec![0.0; dim],
            tmp: vec![0.0; dim],
        }
    }

    pub(crate) fn step<F: FnMut(&[f64], &mut [f64])>(&mut self, y: &mut [f64], h: f64, mut f: F) {
        f(y, &mut self.k1);
        for i in 0..y.len() {
            self.tmp[i] = y[i] + 0.5 * h * self.k1[i];
        }
        f(&self.tmp, &mut self.k2);
        for i in 0..y.len() {
            self.tmp[i] = y[i] + 0.5 * h * self.k2[i];
        }
        f(&self.tmp, &mut self.k3);
        for i in 0..y.len() {
            self.tmp[i] = y[i] + h * self.k3[i];
        }
        f(&self.tmp, &mut self.k4);
        for i in 0..y.len() {
            y[i] += h / 6.0 * (self.k1[i] + 2.0 * self.k2[i] + 2.0 * self.k3[i] + self.k4[i]);
        }
    }
}

/// Largest Lyapunov exponent of the master equation at `mu`.
pub fn lyapunov_exponent(
    model: &MsfModel,
    mu: Complex64,
    settings: &LyapunovSettings,
) -> Result<f64, MsfError> {
    settings.validate()?;
    let n = model.dim();
    let mut state = vec![0.0; 3 * n];
    state[..n].copy_from_slice(&model.reference_init);
    // generic unit start vector
    let norm0 = (0..n).map(|k| (1.0 + 0.1 * k as f64).powi(2)).sum::<f64>().sqrt();
    for k in 0..n {
        state[n + k] = (1.0 + 0.1 * k as f64) / norm0;
    }
    let mut var = Variational { model, mu, jac: vec![0.0; n * n] };
    let mut rk = Rk4::new(3 * n);
    let steps_per_renorm = (settings.renorm_interval / settings.step).round().max(1.0) as usize;
    let dt = settings.renorm_interval / steps_per_renorm as f64;
    let periods = (settings.horizon / settings.renorm_interval).round() as usize;
    let skip = (settings.transient / settings.renorm_interval).round() as usize;
    let mut log_sum = 0.0;
    for period in 0..periods {
        for _ in 0..steps_per_renorm {
            rk.step(&mut state, dt, |s, ds| var.rhs(s, ds));
        }
        let norm = state[n..].iter().map(|v| v * v).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 || state[..n].iter().any(|v| !v.is_finite()) {
            return Err(MsfError::Integration(format!(
                "non-finite state at t = {}",
                (period + 1) as f64 * settings.renorm_interval
            )));
        }
        for v in &mut state[n..] {
            *v /= norm;
        }
        if period >= skip {
            log_sum += norm.ln();
        }
    }
    let averaged = periods.saturating_sub(skip);
    if averaged == 0 {
        return Err(MsfError::Settings("no averaging window".into()));
    }
    Ok(log_sum / (averaged as f64 * settings.renorm_interval))
}

/// Closed-form MSF of leader-follower consensus: `-Re μ`.
pub fn msf_closed_form_consensus(mu: Complex64) -> f64 {
    -mu.re
}

/// Result of the type-II scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Type2 {
    /// `Λ(μ) < 0` for every real `μ` above the threshold.
    Threshold(f64),
    NotType2,
}

/// Anything that can evaluate `Λ(μ)`.
pub trait MasterStability: Send + Sync {
    fn lambda(&self, mu: Complex64) -> Result<f64, MsfError>;

    fn type2(&self) -> Result<Type2, MsfError>;

    /// Evaluates a batch in parallel; output order follows input order.
    fn lambda_batch(&self, mus: &[Complex64]) -> Result<Vec<f64>, MsfError> {
        mus.par_iter().map(|&mu| self.lambda(mu)).collect()
    }
}

/// Consensus MSF, evaluated in closed form.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConsensusMsf;

impl MasterStability for ConsensusMsf {
    fn lambda(&self, mu: Complex64) -> Result<f64, MsfError> {
        Ok(msf_closed_form_consensus(mu))
    }

    fn type2(&self) -> Result<Type2, MsfError> {
        Ok(Type2::Threshold(0.0))
    }

    fn lambda_batch(&self, mus: &[Complex64]) -> Result<Vec<f64>, MsfError> {
        Ok(mus.iter().map(|&m| msf_closed_form_consensus(m)).collect())
    }
}

/// MSF evaluated by direct Benettin integration at every `μ`.
#[derive(Debug, Clone)]
pub struct NumericalMsf {
    pub model: MsfModel,
    pub settings: LyapunovSettings,
    /// Upper end of the type-II scan.
    pub mu_max: f64,
    pub scan_points: usize,
}

impl MasterStability for NumericalMsf {
    fn lambda(&self, mu: Complex64) -> Result<f64, MsfError> {
        lyapunov_exponent(&self.model, mu, &self.settings)
    }

    fn type2(&self) -> Result<Type2, MsfError> {
        type2_threshold(self, self.mu_max, self.scan_points)
    }
}

/// MSF of a model whose coupling Jacobian is `c I`. Then `JF - μ c I` shifts
/// every exponent by `-c Re μ`, so `Λ(μ) = Λ(0) - c Re μ` and one integration
/// suffices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedMsf {
    pub base: f64,
    pub gain: f64,
}

impl ShiftedMsf {
    pub fn from_model(model: &MsfModel, settings: &LyapunovSettings) -> Result<Self, MsfError> {
        let gain = model
            .scalar_coupling()
            .ok_or_else(|| MsfError::Dimension("coupling Jacobian is not a multiple of I".into()))?;
        let base = lyapunov_exponent(model, Complex64::new(0.0, 0.0), settings)?;
        Ok(Self { base, gain })
    }
}

impl MasterStability for ShiftedMsf {
    fn lambda(&self, mu: Complex64) -> Result<f64, MsfError> {
        Ok(self.base - self.gain * mu.re)
    }

    fn type2(&self) -> Result<Type2, MsfError> {
        Ok(if self.gain > 0.0 { Type2::Threshold(self.base / self.gain) } else { Type2::NotType2 })
    }

    fn lambda_batch(&self, mus: &[Complex64]) -> Result<Vec<f64>, MsfError> {
        Ok(mus.iter().map(|m| self.base - self.gain * m.re).collect())
    }
}

/// Scans `μ` on `samples + 1` evenly spaced real points in `[0, mu_max]` and
/// returns the smallest sampled `μ̄` beyond which every sample is negative.
pub fn type2_threshold<M: MasterStability + ?Sized>(
    msf: &M,
    mu_max: f64,
    samples: usize,
) -> Result<Type2, MsfError> {
    if !(mu_max > 0.0) || samples == 0 {
        return Err(MsfError::Settings("mu_max and samples must be positive".into()));
    }
    let mus: Vec<Complex64> =
        (0..=samples).map(|k| Complex64::new(mu_max * k as f64 / samples as f64, 0.0)).collect();
    let vals = msf.lambda_batch(&mus)?;
    if vals[samples] >= 0.0 {
        return Ok(Type2::NotType2);
    }
    let last_bad = vals.iter().rposition(|&v| v >= 0.0);
    Ok(Type2::Threshold(last_bad.map_or(0.0, |k| mus[k].re)))
}

/// One sample of the MSF.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridCell {
    pub re: f64,
    pub im: f64,
    pub lambda: f64,
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// Samples `Λ` on a rectangular grid, row-major in `im` then `re`. Points
/// `a ± bi` share one evaluation. Failed cells are NaN.
pub fn msf_grid<M: MasterStability + ?Sized>(
    msf: &M,
    re_range: (f64, f64),
    im_range: (f64, f64),
    resolution: (usize, usize),
) -> Vec<GridCell> {
    let res = linspace(re_range.0, re_range.1, resolution.0);
    let ims = linspace(im_range.0, im_range.1, resolution.1);
    let mut unique: Vec<(f64, f64)> = Vec::new();
    let mut index: HashMap<(u64, u64), usize> = HashMap::new();
    let mut cell_src = Vec::with_capacity(res.len() * ims.len());
    for &im in &ims {
        for &re in &res {
            let key = (re.to_bits(), im.abs().to_bits());
            let k = *index.entry(key).or_insert_with(|| {
                unique.push((re, im.abs()));
                unique.len() - 1
            });
            cell_src.push((re, im, k));
        }
    }
    let vals: Vec<f64> = unique
        .par_iter()
        .map(|&(re, im)| msf.lambda(Complex64::new(re, im)).unwrap_or(f64::NAN))
        .collect();
    cell_src.into_iter().map(|(re, im, k)| GridCell { re, im, lambda: vals[k] }).collect()
}

/// CSV with columns `re,im,lambda`.
pub fn write_grid_csv<W: io::Write>(cells: &[GridCell], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["re", "im", "lambda"])?;
    for c in cells {
        w.write_record([fmt_f64(c.re), fmt_f64(c.im), fmt_f64(c.lambda)])?;
    }
    w.flush()?;
    Ok(())
}

/// Outcome of the limit-gain controllability test.
#[derive(Debug, Clone, PartialEq)]
pub struct ControllabilityVerdict {
    pub feasible: bool,
    pub lambda_values: Vec<(Complex64, f64)>,
    /// Eigenvalue attaining the largest `Λ`, `None` when the block is empty.
    pub worst: Option<(Complex64, f64)>,
}

impl ControllabilityVerdict {
    /// Largest `Λ` over the spectrum, `-inf` when empty.
    pub fn lambda_max(&self) -> f64 {
        self.worst.map_or(f64::NEG_INFINITY, |w| w.1)
    }
}

/// Builds the verdict from precomputed `Λ` values without the type-II check.
pub fn verdict_from_values(eigs: &[Complex64], vals: &[f64]) -> ControllabilityVerdict {
    let lambda_values: Vec<_> = eigs.iter().copied().zip(vals.iter().copied()).collect();
    let worst = lambda_values
        .iter()
        .copied()
        .fold(None, |acc: Option<(Complex64, f64)>, p| match acc {
            Some(b) if b.1 >= p.1 => Some(b),
            _ => Some(p),
        });
    let feasible = lambda_values.iter().all(|&(_, v)| v < -STABILITY_MARGIN);
    ControllabilityVerdict { feasible, lambda_values, worst }
}

/// Feasible iff the network is type II and `Λ(λ) < -δ` on the whole spectrum
/// of the reduced block.
pub fn controllability_verdict<M: MasterStability + ?Sized>(
    msf: &M,
    l22_spectrum: &Spectrum,
) -> Result<ControllabilityVerdict, MsfError> {
    if let Type2::NotType2 = msf.type2()? {
        return Err(MsfError::NotType2);
    }
    let vals = msf.lambda_batch(&l22_spectrum.eigenvalues)?;
    Ok(verdict_from_values(&l22_spectrum.eigenvalues, &vals))
}

/// CSV with columns `eig_re,eig_im,msf,feasible`; `feasible` is per eigenvalue.
pub fn write_verdict_csv<W: io::Write>(v: &ControllabilityVerdict, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["eig_re", "eig_im", "msf", "feasible"])?;
    for &(z, l) in &v.lambda_values {
        let ok = l < -STABILITY_MARGIN;
        w.write_record([fmt_f64(z.re), fmt_f64(z.im), fmt_f64(l), ok.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// `Λ` for the linearised error dynamics of the whole closed loop, i.e. over
/// `σ(M(κ))` at finite gain.
pub fn lambda_max_over<M: MasterStability + ?Sized>(msf: &M, m: &DMatrix<f64>) -> Result<f64, MsfError> {
    let s = crate::spectral::spectrum(m).map_err(|e| MsfError::Dimension(e.to_string()))?;
    let vals = msf.lambda_batch(&s.eigenvalues)?;
    Ok(vals.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Linear;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn short() -> LyapunovSettings {
        LyapunovSettings { transient: 10.0, horizon: 110.0, renorm_interval: 1.0, step: 1e-2 }
    }

    #[test]
    fn consensus_exponent() {
        let l = lyapunov_exponent(&MsfModel::consensus(), cx(2.0, 0.0), &LyapunovSettings::linear()).unwrap();
        assert!((l + 2.0).abs() < 1e-3, "{l}");
    }

    #[test]
    fn linear_node_marginal() {
        let m = MsfModel::new(Arc::new(Linear { a: 0.5 }), vec![1.0], vec![1.0]).unwrap();
        let l = lyapunov_exponent(&m, cx(0.5, 0.0), &LyapunovSettings::linear()).unwrap();
        assert!(l.abs() < 1e-3, "{l}");
    }

    #[test]
    fn imaginary_part_only_rotates() {
        let l = lyapunov_exponent(&MsfModel::consensus(), cx(0.7, 3.0), &short()).unwrap();
        assert!((l + 0.7).abs() < 1e-3, "{l}");
    }

    #[test]
    fn closed_form() {
        assert_eq!(msf_closed_form_consensus(cx(1.0, 0.0)), -1.0);
        assert_eq!(msf_closed_form_consensus(cx(0.0, 0.0)), 0.0);
        assert_eq!(msf_closed_form_consensus(cx(-0.28, 0.0)), 0.28);
    }

    #[test]
    fn settings_validated() {
        let bad = LyapunovSettings { horizon: 5.0, ..short() };
        assert!(lyapunov_exponent(&MsfModel::consensus(), cx(1.0, 0.0), &bad).is_err());
        let bad = LyapunovSettings { step: -1.0, ..short() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn blowup_reported() {
        let m = MsfModel::new(Arc::new(Linear { a: 800.0 }), vec![1.0], vec![1.0]).unwrap();
        let err = lyapunov_exponent(&m, cx(0.0, 0.0), &short()).unwrap_err();
        assert!(matches!(err, MsfError::Integration(_)));
    }

    #[test]
    fn consensus_grid_matches_closed_form() {
        let num = NumericalMsf { model: MsfModel::consensus(), settings: short(), mu_max: 5.0, scan_points: 10 };
        let cells = msf_grid(&num, (-1.0, 1.0), (-1.0, 1.0), (5, 3));
        assert_eq!(cells.len(), 15);
        for c in &cells {
            assert!((c.lambda + c.re).abs() < 1e-3, "{c:?}");
        }
    }

    #[test]
    fn grid_is_conjugate_symmetric() {
        let cells = msf_grid(&ConsensusMsf, (0.0, 1.0), (-2.0, 2.0), (3, 5));
        for c in &cells {
            let mirror = cells.iter().find(|d| d.re == c.re && d.im == -c.im).unwrap();
            assert_eq!(mirror.lambda, c.lambda);
        }
    }

    #[test]
    fn failed_cells_are_nan() {
        let m = MsfModel::new(Arc::new(Linear { a: 800.0 }), vec![1.0], vec![1.0]).unwrap();
        let num = NumericalMsf { model: m, settings: short(), mu_max: 1.0, scan_points: 2 };
        let cells = msf_grid(&num, (0.0, 0.0), (0.0, 0.0), (1, 1));
        assert!(cells[0].lambda.is_nan());
    }

    #[test]
    fn type2_scans() {
        assert_eq!(type2_threshold(&ConsensusMsf, 10.0, 100).unwrap(), Type2::Threshold(0.0));
        // JG = 0: Λ does not depend on μ
        let m = MsfModel::new(Arc::new(Linear { a: 0.3 }), vec![0.0], vec![1.0]).unwrap();
        let num = NumericalMsf { model: m, settings: short(), mu_max: 10.0, scan_points: 4 };
        assert_eq!(num.type2().unwrap(), Type2::NotType2);
        let m = MsfModel::new(Arc::new(Linear { a: 0.3 }), vec![1.0], vec![1.0]).unwrap();
        let num = NumericalMsf { model: m, settings: short(), mu_max: 1.0, scan_points: 10 };
        match num.type2().unwrap() {
            Type2::Threshold(t) => assert!((t - 0.3).abs() < 1e-9, "{t}"),
            Type2::NotType2 => panic!("linear node is type II"),
        }
    }

    #[test]
    fn shifted_matches_direct() {
        let m = MsfModel::new(Arc::new(Linear { a: 0.3 }), vec![2.0], vec![1.0]).unwrap();
        let sh = ShiftedMsf::from_model(&m, &short()).unwrap();
        for mu in [cx(0.0, 0.0), cx(1.0, 2.0), cx(-0.5, -1.0)] {
            let direct = lyapunov_exponent(&m, mu, &short()).unwrap();
            assert!((sh.lambda(mu).unwrap() - direct).abs() < 1e-6);
        }
        assert_eq!(sh.type2().unwrap(), Type2::Threshold(sh.base / 2.0));
    }

    #[test]
    fn verdicts() {
        let s = Spectrum::from_unsorted(vec![cx(1.0, 0.0), cx(0.5, 0.0)]);
        assert!(controllability_verdict(&ConsensusMsf, &s).unwrap().feasible);
        let s = Spectrum::from_unsorted(vec![cx(0.0, 0.0), cx(1.0, 0.0)]);
        let v = controllability_verdict(&ConsensusMsf, &s).unwrap();
        assert!(!v.feasible);
        assert_eq!(v.worst, Some((cx(0.0, 0.0), -0.0)));
        // marginal values inside the margin are rejected
        let s = Spectrum::from_unsorted(vec![cx(5e-4, 0.0)]);
        assert!(!controllability_verdict(&ConsensusMsf, &s).unwrap().feasible);
        assert!(controllability_verdict(&ConsensusMsf, &Spectrum::default()).unwrap().feasible);
    }

    #[test]
    fn not_type2_is_an_error() {
        let sh = ShiftedMsf { base: 1.0, gain: 0.0 };
        let s = Spectrum::from_unsorted(vec![cx(1.0, 0.0)]);
        assert!(matches!(controllability_verdict(&sh, &s), Err(MsfError::NotType2)));
    }

    #[test]
    fn verdict_csv() {
        let s = Spectrum::from_unsorted(vec![cx(1.0, 0.0)]);
        let v = controllability_verdict(&ConsensusMsf, &s).unwrap();
        let mut buf = Vec::new();
        write_verdict_csv(&v, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("eig_re,eig_im,msf,feasible\n"));
        assert!(text.trim_end().ends_with("true"));
    }
}
