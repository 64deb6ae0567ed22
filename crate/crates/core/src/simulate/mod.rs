//! Time integration of the coupled and pinned network.

mod lorenz;

pub use lorenz::{lorenz_field, lorenz_jacobian, Lorenz};

use std::io;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::dynamics::{Coupling, NodeDynamics};
use crate::hypergraph::{er_hypergraph, giant_scc, DirectedHypergraph, ErParams, NodeId};
use crate::msf::{
    controllability_verdict, lambda_max_over, LyapunovSettings, MasterStability, MsfModel, ShiftedMsf, Rk4,
};
use crate::select::{count_unstable, greedy_select, PinningProblem, SelectError};
use crate::spectral::{fmt_f64, laplacian, m_kappa, spectrum, PinningConfig};

/// Any component above this magnitude counts as a blow-up.
pub const BLOWUP_NORM: f64 = 1e12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("state diverged at t = {time}")]
    Blowup { time: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Select(#[from] SelectError),
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub hypergraph: DirectedHypergraph,
    pub pinning: Option<PinningConfig>,
    pub dynamics: Arc<dyn NodeDynamics>,
    pub coupling: Coupling,
    /// Node-major, `N * n` values.
    pub initial_states: Vec<f64>,
    pub pinner_init: Vec<f64>,
    pub t_end: f64,
    pub step: f64,
    pub record_stride: usize,
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        let n = self.dynamics.dim();
        let nn = self.hypergraph.n_nodes();
        if !(self.step > 0.0) || !(self.t_end > 0.0) {
            return Err(SimError::Config("step and t_end must be positive".into()));
        }
        if self.record_stride == 0 {
            return Err(SimError::Config("record_stride must be at least 1".into()));
        }
        if self.initial_states.len() != nn * n || self.pinner_init.len() != n {
            return Err(SimError::Config(format!("expected {nn} x {n} initial states and {n} pinner values")));
        }
        if let Some(cfg) = &self.pinning {
            if let Some(v) = cfg.pinned_nodes().find(|&v| v >= nn) {
                return Err(SimError::Config(format!("pinned node {v} out of range")));
            }
            if !(cfg.kappa >= 0.0) {
                return Err(SimError::Config("kappa must be non-negative".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// Node-major `N * n` snapshot per recorded time.
    pub states: Vec<Vec<f64>>,
    pub pinner: Vec<Vec<f64>>,
    pub error_norm: Vec<f64>,
}

impl Trajectory {
    /// `error_norm[last] / error_norm[0]`.
    pub fn error_ratio(&self) -> f64 {
        self.error_norm[self.error_norm.len() - 1] / self.error_norm[0]
    }
}

/// `‖x_i - x_p‖` stacked over all nodes.
pub fn error_norm(states: &[f64], pinner: &[f64]) -> f64 {
    let n = pinner.len();
    states.chunks(n).flat_map(|x| x.iter().zip(pinner).map(|(a, b)| (a - b).powi(2))).sum::<f64>().sqrt()
}

struct Network<'a> {
    cfg: &'a SimConfig,
    n: usize,
    nn: usize,
    z: Vec<f64>,
}

impl Network<'_> {
    /// State layout `[x_0, .., x_{N-1}, x_p]`.
    fn rhs(&mut self, y: &[f64], dy: &mut [f64]) {
        let (n, nn) = (self.n, self.nn);
        let f = &self.cfg.dynamics;
        let g = self.cfg.coupling;
        for i in 0..=nn {
            f.field(&y[i * n..(i + 1) * n], &mut dy[i * n..(i + 1) * n]);
        }
        for e in self.cfg.hypergraph.edges() {
            self.z.iter_mut().for_each(|v| *v = 0.0);
            for (&t, &a) in e.tails().iter().zip(e.alpha()) {
                for c in 0..n {
                    self.z[c] += a * y[t * n + c];
                }
            }
            for (&h, &b) in e.heads().iter().zip(e.beta()) {
                for c in 0..n {
                    self.z[c] -= b * y[h * n + c];
                }
            }
            for &h in e.heads() {
                for c in 0..n {
                    dy[h * n + c] += e.sigma() * g.apply(self.z[c]);
                }
            }
        }
        if let Some(pin) = &self.cfg.pinning {
            let xp = &y[nn * n..];
            for block in pin.blocks() {
                self.z.copy_from_slice(xp);
                for (&h, &b) in block.heads().iter().zip(block.beta()) {
                    for c in 0..n {
                        self.z[c] -= b * y[h * n + c];
                    }
                }
                for &h in block.heads() {
                    for c in 0..n {
                        dy[h * n + c] += pin.kappa * g.apply(self.z[c]);
                    }
                }
            }
        }
    }
}

/// Fixed-step RK4 over nodes and pinner. Records `t = 0`, every
/// `record_stride` steps, and the final step.
pub fn integrate(cfg: &SimConfig) -> Result<Trajectory, SimError> {
    cfg.validate()?;
    let n = cfg.dynamics.dim();
    let nn = cfg.hypergraph.n_nodes();
    let steps = (cfg.t_end / cfg.step).round().max(1.0) as usize;
    let h = cfg.t_end / steps as f64;
    let mut y = cfg.initial_states.clone();
    y.extend_from_slice(&cfg.pinner_init);
    let mut net = Network { cfg, n, nn, z: vec![0.0; n] };
    let mut rk = Rk4::new(y.len());
    let mut traj = Trajectory { times: Vec::new(), states: Vec::new(), pinner: Vec::new(), error_norm: Vec::new() };
    let record = |k: usize, y: &[f64], traj: &mut Trajectory| {
        let (x, p) = y.split_at(nn * n);
        traj.times.push(k as f64 * h);
        traj.error_norm.push(error_norm(x, p));
        traj.states.push(x.to_vec());
        traj.pinner.push(p.to_vec());
    };
    record(0, &y, &mut traj);
    for k in 1..=steps {
        rk.step(&mut y, h, |s, ds| net.rhs(s, ds));
        if y.iter().any(|v| !v.is_finite() || v.abs() > BLOWUP_NORM) {
            return Err(SimError::Blowup { time: k as f64 * h });
        }
        if k % cfg.record_stride == 0 || k == steps {
            record(k, &y, &mut traj);
        }
    }
    Ok(traj)
}

/// CSV with columns `t,node,component,value`.
pub fn write_trajectory_csv<W: io::Write>(traj: &Trajectory, dim: usize, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "node", "component", "value"])?;
    for (t, x) in traj.times.iter().zip(&traj.states) {
        for (k, v) in x.iter().enumerate() {
            w.write_record([fmt_f64(*t), (k / dim).to_string(), (k % dim).to_string(), fmt_f64(*v)])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// CSV with columns `t,error_norm`.
pub fn write_error_csv<W: io::Write>(traj: &Trajectory, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "error_norm"])?;
    for (t, e) in traj.times.iter().zip(&traj.error_norm) {
        w.write_record([fmt_f64(*t), fmt_f64(*e)])?;
    }
    w.flush()?;
    Ok(())
}

/// Parameters of the Lorenz end-to-end run.
#[derive(Debug, Clone, PartialEq)]
pub struct LorenzExperiment {
    pub n: usize,
    pub p: f64,
    pub max_order: usize,
    pub sigma: f64,
    pub kappa: f64,
    pub ic_std: f64,
    pub t_end: f64,
    pub step: f64,
    pub record_stride: usize,
    /// Also simulate with `κ = 0`.
    pub uncontrolled: bool,
}

impl Default for LorenzExperiment {
    fn default() -> Self {
        Self {
            n: 100,
            p: 0.01,
            max_order: 4,
            sigma: 30.0,
            kappa: 60.0,
            ic_std: 10.0,
            t_end: 100.0,
            step: 1e-3,
            record_stride: 100,
            uncontrolled: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LorenzReport {
    pub seed: u64,
    pub scc_size: usize,
    /// Pinned nodes, labelled in the original hypergraph.
    pub pinned: Vec<NodeId>,
    /// Largest `Λ` over the reduced block's spectrum.
    pub lambda_max: f64,
    /// Largest `Λ` over the spectrum of `M(κ)`.
    pub lambda_max_kappa: f64,
    /// Eigenvalues of `L` with `Λ > 0`.
    pub unstable_uncontrolled: usize,
    pub initial_error: f64,
    pub final_error: f64,
    pub uncontrolled_ratio: Option<f64>,
    pub trajectory: Trajectory,
    pub wall_time_ms: u128,
}

impl LorenzReport {
    pub fn pinned_fraction(&self) -> f64 {
        self.pinned.len() as f64 / self.scc_size as f64
    }

    pub fn error_ratio(&self) -> f64 {
        self.final_error / self.initial_error
    }
}

/// MSF of Lorenz nodes with `arctan` coupling.
pub fn lorenz_msf(settings: &LyapunovSettings) -> Result<ShiftedMsf, SelectError> {
    Ok(ShiftedMsf::from_model(&MsfModel::lorenz_arctan(), settings)?)
}

/// ER hypergraph, giant SCC, greedy singleton pinning, then simulation from
/// Gaussian initial states with the pinner started on the attractor.
pub fn run_lorenz_experiment(
    exp: &LorenzExperiment,
    msf: &ShiftedMsf,
    seed: u64,
) -> Result<LorenzReport, SimError> {
    let start = Instant::now();
    let params = ErParams::new(exp.n, exp.p, exp.max_order, exp.sigma);
    let h = er_hypergraph(&params, seed).map_err(|e| SimError::Config(e.to_string()))?;
    let scc = giant_scc(&h);
    let sub = scc.hypergraph;
    let shared: Arc<dyn MasterStability> = Arc::new(*msf);
    let problem = PinningProblem::singletons(&sub, shared)?;
    let result = greedy_select(&problem)?;
    let local: Vec<NodeId> = result.chosen.iter().map(|&i| problem.candidates()[i].heads()[0]).collect();
    let cfg = PinningConfig::singletons(&local, exp.kappa).map_err(SelectError::from)?;
    let lap = laplacian(&sub);
    let mk = m_kappa(&lap, &cfg, exp.kappa).map_err(SelectError::from)?;
    let lambda_max_kappa = lambda_max_over(msf, &mk).map_err(SelectError::from)?;
    let l_spec = spectrum(&lap.matrix).map_err(SelectError::from)?;
    let unstable_uncontrolled = count_unstable(msf, &l_spec.eigenvalues)?;
    let lambda_max = controllability_verdict(msf, &spectrum(&problem.reduced(&result.chosen)).map_err(SelectError::from)?)
        .map_err(SelectError::from)?
        .lambda_max();

    let lorenz = Lorenz::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_1c5);
    let normal = Normal::new(0.0, exp.ic_std).map_err(|e| SimError::Config(e.to_string()))?;
    let initial_states: Vec<f64> = (0..sub.n_nodes() * 3).map(|_| normal.sample(&mut rng)).collect();
    let pinner_init = lorenz.attractor_point(100.0, exp.step).to_vec();
    let mut sim = SimConfig {
        hypergraph: sub,
        pinning: Some(cfg),
        dynamics: Arc::new(lorenz),
        coupling: Coupling::Arctan,
        initial_states,
        pinner_init,
        t_end: exp.t_end,
        step: exp.step,
        record_stride: exp.record_stride,
    };
    let trajectory = integrate(&sim)?;
    let uncontrolled_ratio = if exp.uncontrolled {
        sim.pinning = None;
        Some(integrate(&sim)?.error_ratio())
    } else {
        None
    };
    Ok(LorenzReport {
        seed,
        scc_size: scc.nodes.len(),
        pinned: local.iter().map(|&v| scc.nodes[v]).collect(),
        lambda_max,
        lambda_max_kappa,
        unstable_uncontrolled,
        initial_error: trajectory.error_norm[0],
        final_error: *trajectory.error_norm.last().unwrap(),
        uncontrolled_ratio,
        trajectory,
        wall_time_ms: start.elapsed().as_millis(),
    })
}
