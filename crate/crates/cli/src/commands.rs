//! Subcommand bodies. Each writes its CSVs and the resolved config into the
//! output directory and returns the summary lines to print.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use hyperpin::dynamics::{Consensus, Coupling, NodeDynamics};
use hyperpin::hypergraph::{
    er_hypergraph, giant_scc, nearest_neighbor_3body, parse_hypergraph, write_hypergraph, DirectedHypergraph,
    ErParams, RingOrientation,
};
use hyperpin::msf::{
    controllability_verdict, msf_grid, type2_threshold, write_grid_csv, write_verdict_csv, ConsensusMsf,
    LyapunovSettings, MasterStability, Type2,
};
use hyperpin::select::{
    degree_select, exhaustive_min, format_iterations, greedy_select, partition_sweep, random_select,
    write_selection_csv, write_sweep_csv, ExhaustiveOutcome, PinningProblem, SelectionRecord, SelectionResult,
};
use hyperpin::simulate::{
    integrate, lorenz_msf, run_lorenz_experiment, write_error_csv, write_trajectory_csv, LorenzExperiment,
    Lorenz, SimConfig, Trajectory,
};
use hyperpin::spectral::{
    fmt_f64, laplacian, m_kappa, reduced_block, spectrum, write_matrix_csv, write_spectrum_csv, PinBlock,
    PinningConfig, Spectrum,
};

use crate::bench::{self, Table2Params};
use crate::config::ExperimentConfig;

pub const EXAMPLES: [&str; 6] = ["fig2a", "fig2b", "fig3", "fig4", "fig6", "lorenz"];

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    let path = dir.join(name);
    Ok(BufWriter::new(File::create(&path).with_context(|| format!("creating {}", path.display()))?))
}

fn prepare(cfg: &ExperimentConfig, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    fs::write(dir.join("config.toml"), cfg.to_toml())?;
    Ok(())
}

fn orientation(cfg: &ExperimentConfig) -> Result<RingOrientation> {
    Ok(cfg.topology.orientation.parse()?)
}

/// Builds the configured network. ER draws are reduced to their giant SCC
/// when requested.
pub fn build_topology(cfg: &ExperimentConfig) -> Result<DirectedHypergraph> {
    let t = &cfg.topology;
    Ok(match t.kind.as_str() {
        "ring" => nearest_neighbor_3body(t.n, orientation(cfg)?)?,
        "er" => {
            let h = er_hypergraph(&ErParams::new(t.n, t.p, t.o, cfg.dynamics.sigma), t.seed)?;
            if t.giant_scc { giant_scc(&h).hypergraph } else { h }
        }
        "file" => {
            let path = t.path.as_ref().expect("validated");
            parse_hypergraph(&fs::read_to_string(path)?, true)?
        }
        other => bail!("unknown topology kind `{other}`"),
    })
}

/// Ring hyperedges carry unit gains; scale them by `sigma`.
fn with_sigma(h: DirectedHypergraph, sigma: f64) -> Result<DirectedHypergraph> {
    if sigma == 1.0 {
        return Ok(h);
    }
    let edges = h
        .edges()
        .iter()
        .map(|e| {
            hyperpin::hypergraph::DirectedHyperedge::new(
                e.tails().to_vec(),
                e.heads().to_vec(),
                e.alpha().to_vec(),
                e.beta().to_vec(),
                e.sigma() * sigma,
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DirectedHypergraph::with_multi_edges(h.n_nodes(), edges)?)
}

fn network(cfg: &ExperimentConfig) -> Result<DirectedHypergraph> {
    let h = build_topology(cfg)?;
    // ER gains are set at generation time
    if cfg.topology.kind == "ring" { with_sigma(h, cfg.dynamics.sigma) } else { Ok(h) }
}

fn lyapunov_settings(cfg: &ExperimentConfig) -> LyapunovSettings {
    let base = match cfg.dynamics.model.as_str() {
        "lorenz_arctan" => LyapunovSettings::lorenz(),
        _ => LyapunovSettings::linear(),
    };
    let m = &cfg.msf;
    LyapunovSettings {
        transient: m.transient,
        horizon: m.horizon,
        renorm_interval: m.renorm_interval,
        step: m.step.unwrap_or(base.step),
    }
}

pub fn build_msf(cfg: &ExperimentConfig) -> Result<Arc<dyn MasterStability>> {
    Ok(match cfg.dynamics.model.as_str() {
        "lorenz_arctan" => Arc::new(lorenz_msf(&lyapunov_settings(cfg))?),
        _ => Arc::new(ConsensusMsf),
    })
}

fn pin_config(cfg: &ExperimentConfig, kappa: f64) -> Result<Option<PinningConfig>> {
    if cfg.dynamics.pins.is_empty() {
        return Ok(None);
    }
    let blocks = cfg.dynamics.pins.iter().map(|p| PinBlock::homogeneous(p.clone())).collect::<Result<Vec<_>, _>>()?;
    Ok(Some(PinningConfig::new(blocks, kappa)?))
}

pub fn cmd_generate(cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<String>> {
    prepare(cfg, dir)?;
    let h = network(cfg)?;
    fs::write(dir.join("hypergraph.txt"), write_hypergraph(&h))?;
    Ok(vec![format!("nodes={} edges={}", h.n_nodes(), h.edges().len())])
}

fn spectrum_line(label: &str, s: &Spectrum) -> String {
    let parts: Vec<String> = s
        .iter()
        .map(|z| if z.im == 0.0 { format!("{:.6}", z.re) } else { format!("{:.6}{:+.6}i", z.re, z.im) })
        .collect();
    format!("{label}: {}", parts.join(" "))
}

pub fn cmd_spectrum(cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<String>> {
    prepare(cfg, dir)?;
    let h = network(cfg)?;
    let l = laplacian(&h);
    write_matrix_csv(&l.matrix, create(dir, "laplacian.csv")?)?;
    let sl = spectrum(&l.matrix)?;
    write_spectrum_csv(&sl, create(dir, "spectrum_l.csv")?)?;
    let mut lines = vec![spectrum_line("sigma(L)", &sl)];
    if let Some(pins) = pin_config(cfg, cfg.dynamics.kappa)? {
        let red = reduced_block(&l, &pins)?;
        write_matrix_csv(&red.l22, create(dir, "l22.csv")?)?;
        write_spectrum_csv(&red.spectrum, create(dir, "spectrum_l22.csv")?)?;
        let sm = spectrum(&m_kappa(&l, &pins, pins.kappa)?)?;
        write_spectrum_csv(&sm, create(dir, "spectrum_m.csv")?)?;
        let msf = build_msf(cfg)?;
        let verdict = controllability_verdict(msf.as_ref(), &red.spectrum)?;
        write_verdict_csv(&verdict, create(dir, "verdict.csv")?)?;
        lines.push(spectrum_line("sigma(L22)", &red.spectrum));
        lines.push(format!("feasible={} lambda_max={}", verdict.feasible, fmt_f64(verdict.lambda_max())));
    }
    Ok(lines)
}

pub fn cmd_msf(cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<String>> {
    prepare(cfg, dir)?;
    let msf = build_msf(cfg)?;
    let m = &cfg.msf;
    let cells = msf_grid(msf.as_ref(), (m.re_min, m.re_max), (m.im_min, m.im_max), (m.n_re, m.n_im));
    write_grid_csv(&cells, create(dir, "msf_grid.csv")?)?;
    let lambda0 = msf.lambda(Complex64::new(0.0, 0.0))?;
    let t2 = match type2_threshold(msf.as_ref(), m.mu_max, m.scan_points)? {
        Type2::Threshold(t) => format!("type2 threshold={}", fmt_f64(t)),
        Type2::NotType2 => "type2 none".into(),
    };
    Ok(vec![format!("lambda(0)={}", fmt_f64(lambda0)), t2])
}

fn candidates(cfg: &ExperimentConfig, h: &DirectedHypergraph) -> Result<Vec<PinBlock>> {
    Ok(match pin_config(cfg, 1.0)? {
        Some(p) => p.blocks().to_vec(),
        None => (0..h.n_nodes()).map(PinBlock::singleton).collect(),
    })
}

fn record(problem: &PinningProblem, method: &str, r: &SelectionResult, ms: u128) -> SelectionRecord {
    SelectionRecord {
        method: method.into(),
        cost: r.cost.to_string(),
        feasible: r.verdict.feasible,
        chosen_sets: problem.describe(&r.chosen),
        wall_time_ms: ms,
    }
}

pub fn cmd_select(cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<String>> {
    prepare(cfg, dir)?;
    let h = network(cfg)?;
    let msf = build_msf(cfg)?;
    if cfg.selection.method == "sweep" {
        let rep = partition_sweep(&h, msf)?;
        write_sweep_csv(&rep, create(dir, "sweep.csv")?)?;
        return Ok(sweep_lines(&rep));
    }
    let problem = PinningProblem::new(&h, candidates(cfg, &h)?, msf)?;
    let start = Instant::now();
    let (rec, mut lines) = match cfg.selection.method.as_str() {
        "greedy" => {
            let r = greedy_select(&problem)?;
            let trail = format_iterations(&problem, &r);
            (record(&problem, "greedy", &r, start.elapsed().as_millis()), trail.lines().map(String::from).collect())
        }
        "exhaustive" => match exhaustive_min(&problem, cfg.selection.cap)? {
            ExhaustiveOutcome::Found(r) => (record(&problem, "exhaustive", &r, start.elapsed().as_millis()), vec![]),
            ExhaustiveOutcome::LowerBound(b) => (
                SelectionRecord {
                    method: "exhaustive".into(),
                    cost: format!(">={b}"),
                    feasible: false,
                    chosen_sets: String::new(),
                    wall_time_ms: start.elapsed().as_millis(),
                },
                vec![],
            ),
        },
        "random" => (record(&problem, "random", &random_select(&problem, cfg.topology.seed)?, start.elapsed().as_millis()), vec![]),
        "degree" => (record(&problem, "degree", &degree_select(&problem)?, start.elapsed().as_millis()), vec![]),
        other => bail!("unknown selection method `{other}`"),
    };
    write_selection_csv(std::slice::from_ref(&rec), create(dir, "selection.csv")?)?;
    lines.push(format!("method={} cost={} chosen={}", rec.method, rec.cost, rec.chosen_sets));
    Ok(lines)
}

fn initial_states(cfg: &ExperimentConfig, nodes: usize, dim: usize) -> Result<Vec<f64>> {
    Ok(match cfg.dynamics.initial.as_str() {
        "gaussian" => {
            let normal = Normal::new(0.0, cfg.dynamics.ic_std)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.topology.seed);
            (0..nodes * dim).map(|_| normal.sample(&mut rng)).collect()
        }
        _ => (0..nodes).flat_map(|i| std::iter::repeat_n((i + 1) as f64, dim)).collect(),
    })
}

pub fn sim_config(cfg: &ExperimentConfig) -> Result<SimConfig> {
    let h = network(cfg)?;
    let lorenz = cfg.dynamics.model == "lorenz_arctan";
    let (dynamics, coupling, step, t_end): (Arc<dyn NodeDynamics>, _, _, _) = if lorenz {
        (Arc::new(Lorenz::default()), Coupling::Arctan, 1e-3, 100.0)
    } else {
        (Arc::new(Consensus), Coupling::Identity, 1e-2, 50.0)
    };
    let dim = dynamics.dim();
    let step = cfg.dynamics.step.unwrap_or(step);
    let pinner_init = match &cfg.dynamics.pinner_init {
        Some(p) => p.clone(),
        None if lorenz => Lorenz::default().attractor_point(100.0, step).to_vec(),
        None => vec![(h.n_nodes() + 1) as f64],
    };
    Ok(SimConfig {
        initial_states: initial_states(cfg, h.n_nodes(), dim)?,
        pinning: pin_config(cfg, cfg.dynamics.kappa)?,
        hypergraph: h,
        dynamics,
        coupling,
        pinner_init,
        t_end: cfg.dynamics.t_end.unwrap_or(t_end),
        step,
        record_stride: cfg.dynamics.record_stride,
    })
}

fn write_trajectory(dir: &Path, traj: &Trajectory, dim: usize) -> Result<()> {
    write_trajectory_csv(traj, dim, create(dir, "trajectory.csv")?)?;
    write_error_csv(traj, create(dir, "error_norm.csv")?)?;
    Ok(())
}

fn trajectory_line(traj: &Trajectory) -> String {
    format!(
        "error_norm start={} end={} ratio={}",
        fmt_f64(traj.error_norm[0]),
        fmt_f64(*traj.error_norm.last().unwrap()),
        fmt_f64(traj.error_ratio())
    )
}

pub fn cmd_simulate(cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<String>> {
    prepare(cfg, dir)?;
    let sim = sim_config(cfg)?;
    let traj = integrate(&sim)?;
    write_trajectory(dir, &traj, sim.dynamics.dim())?;
    Ok(vec![trajectory_line(&traj)])
}

pub fn cmd_table1(cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<String>> {
    prepare(cfg, dir)?;
    let t = &cfg.topology;
    ensure!(t.n_min >= 3 && t.n_max <= 20, "table1 covers ring sizes 3..=20");
    let rows = bench::table1(t.n_min..=t.n_max, orientation(cfg)?, cfg.selection.replicates, t.seed)?;
    bench::write_table1_csv(&rows, create(dir, "table1.csv")?)?;
    Ok(rows
        .iter()
        .map(|r| {
            let probs: Vec<String> =
                r.random_lowest().iter().map(|&c| format!("P({c})={:.2}", r.random_prob(c))).collect();
            format!("N={} min={} greedy={} random={:.2} {}", r.n, r.min, r.greedy, r.random_mean(), probs.join(" "))
        })
        .collect())
}

pub fn cmd_table2(cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<String>> {
    prepare(cfg, dir)?;
    let mut rows = Vec::new();
    for &o in &cfg.topology.o_list {
        for &p in &cfg.topology.p_list {
            let params = Table2Params {
                p,
                o,
                topologies: cfg.selection.topologies,
                cap: cfg.selection.cap,
                random_replicates: cfg.selection.replicates,
                seed: cfg.topology.seed,
            };
            rows.push(bench::table2_row(&params)?);
        }
    }
    bench::write_table2_csv(&rows, create(dir, "table2.csv")?)?;
    Ok(rows
        .iter()
        .map(|r| {
            let min = if r.samples.iter().any(|s| s.min.is_some()) {
                let ge = if r.min_is_lower_bound() { ">=" } else { "" };
                format!(" min={ge}{:.1} ({})", r.min_pct(), r.min_exact())
            } else {
                String::new()
            };
            let random = r.random_pct();
            let random = if random.is_nan() { String::new() } else { format!(" random={random:.1}") };
            format!(
                "p={} o={} scc={:.1}{min} greedy={:.1} degree={:.1}{random}",
                r.p,
                r.o,
                r.mean_scc(),
                r.greedy_pct(),
                r.degree_pct(),
            )
        })
        .collect())
}

fn sweep_lines(rep: &hyperpin::select::SweepReport) -> Vec<String> {
    vec![
        format!("partitions={} feasible={}", rep.total, rep.feasible),
        format!("greedy_optimal={} max_excess={}", fmt_f64(rep.greedy_optimal_fraction), rep.max_excess),
    ]
}

pub fn cmd_sweep10(cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<String>> {
    prepare(cfg, dir)?;
    let h = nearest_neighbor_3body(10, orientation(cfg)?)?;
    let rep = partition_sweep(&h, Arc::new(ConsensusMsf))?;
    write_sweep_csv(&rep, create(dir, "sweep.csv")?)?;
    Ok(sweep_lines(&rep))
}

fn ring_consensus(n: usize, pins: &[&[usize]], cfg: &ExperimentConfig) -> Result<SimConfig> {
    let mut c = cfg.clone();
    c.topology.kind = "ring".into();
    c.topology.n = n;
    c.dynamics.model = "consensus".into();
    c.dynamics.sigma = 1.0;
    c.dynamics.kappa = 5.0;
    c.dynamics.initial = "index".into();
    c.dynamics.pinner_init = None;
    c.dynamics.pins = pins.iter().map(|p| p.to_vec()).collect();
    sim_config(&c)
}

fn example_trajectory(dir: &Path, sim: &SimConfig) -> Result<Vec<String>> {
    let traj = integrate(sim)?;
    write_trajectory(dir, &traj, sim.dynamics.dim())?;
    Ok(vec![trajectory_line(&traj)])
}

pub fn cmd_example(name: &str, cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<String>> {
    if !EXAMPLES.contains(&name) {
        bail!("unknown example `{name}` (expected one of {})", EXAMPLES.join(", "));
    }
    let dir = dir.join(name);
    prepare(cfg, &dir)?;
    match name {
        // pin sets are 0-based
        "fig2a" => example_trajectory(&dir, &ring_consensus(7, &[&[0], &[2], &[4]], cfg)?),
        "fig2b" => example_trajectory(&dir, &ring_consensus(7, &[&[0, 1], &[2, 3], &[4, 6]], cfg)?),
        "fig4" => example_trajectory(&dir, &ring_consensus(6, &[], cfg)?),
        "fig3" => {
            let h = hyperpin::hypergraph::parse_hypergraph(FIG3, false)?;
            let l = laplacian(&h);
            write_matrix_csv(&l.matrix, create(&dir, "laplacian.csv")?)?;
            let red = reduced_block(&l, &PinningConfig::singletons(&[2], 1.0)?)?;
            write_spectrum_csv(&red.spectrum, create(&dir, "spectrum_l22.csv")?)?;
            let rows: Vec<String> = l
                .matrix
                .row_iter()
                .map(|r| r.iter().map(|v| format!("{v:>5}")).collect::<Vec<_>>().join(" "))
                .collect();
            let mut lines = vec!["L =".to_string()];
            lines.extend(rows);
            lines.push(spectrum_line("sigma(L22), pin node 3", &red.spectrum));
            Ok(lines)
        }
        "fig6" => example_fig6(cfg, &dir),
        "lorenz" => example_lorenz(cfg, &dir),
        _ => unreachable!(),
    }
}

/// Three-node network with one pairwise and one three-body hyperedge.
pub const FIG3: &str = "N 3\nE sigma=1 T 2 H 0 hom\nE sigma=1 T 0 H 1,2 hom\n";

fn lorenz_experiment(cfg: &ExperimentConfig) -> LorenzExperiment {
    let mut exp = LorenzExperiment { uncontrolled: true, ..Default::default() };
    if let Some(t) = cfg.dynamics.t_end {
        exp.t_end = t;
    }
    if let Some(s) = cfg.dynamics.step {
        exp.step = s;
    }
    exp.record_stride = cfg.dynamics.record_stride.max(1);
    exp
}

fn example_lorenz(cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<String>> {
    let msf = lorenz_msf(&LyapunovSettings::lorenz())?;
    let exp = lorenz_experiment(cfg);
    let rep = run_lorenz_experiment(&exp, &msf, cfg.topology.seed)?;
    write_trajectory(dir, &rep.trajectory, 3)?;
    let mut w = csv::Writer::from_writer(create(dir, "report.csv")?);
    w.write_record([
        "seed",
        "scc_size",
        "pinned",
        "pinned_nodes",
        "lambda_max",
        "lambda_max_kappa",
        "unstable_uncontrolled",
        "error_ratio",
        "uncontrolled_ratio",
    ])?;
    let nodes: Vec<String> = rep.pinned.iter().map(|v| v.to_string()).collect();
    w.write_record([
        rep.seed.to_string(),
        rep.scc_size.to_string(),
        rep.pinned.len().to_string(),
        nodes.join(";"),
        fmt_f64(rep.lambda_max),
        fmt_f64(rep.lambda_max_kappa),
        rep.unstable_uncontrolled.to_string(),
        fmt_f64(rep.error_ratio()),
        rep.uncontrolled_ratio.map(fmt_f64).unwrap_or_default(),
    ])?;
    w.flush()?;
    ensure!(rep.lambda_max < 0.0, "greedy selection left lambda_max = {}", rep.lambda_max);
    Ok(vec![
        format!("scc={} pinned={} unstable_in_L={}", rep.scc_size, rep.pinned.len(), rep.unstable_uncontrolled),
        format!("lambda_max={} lambda_max(kappa={})={}", fmt_f64(rep.lambda_max), exp.kappa, fmt_f64(rep.lambda_max_kappa)),
        format!("error_ratio={}", fmt_f64(rep.error_ratio())),
    ])
}

fn example_fig6(cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<String>> {
    let msf = lorenz_msf(&LyapunovSettings::lorenz())?;
    let exp = lorenz_experiment(cfg);
    let h = er_hypergraph(&ErParams::new(exp.n, exp.p, exp.max_order, exp.sigma), cfg.topology.seed)?;
    let sub = giant_scc(&h).hypergraph;
    let l = laplacian(&sub);
    let problem = PinningProblem::singletons(&sub, Arc::new(msf) as Arc<dyn MasterStability>)?;
    let r = greedy_select(&problem)?;
    let pins = problem.config(&r.chosen, exp.kappa)?;
    write_spectrum_csv(&spectrum(&l.matrix)?, create(dir, "spectrum_l.csv")?)?;
    write_spectrum_csv(&spectrum(&m_kappa(&l, &pins, exp.kappa)?)?, create(dir, "spectrum_m.csv")?)?;
    let m = &cfg.msf;
    let cells = msf_grid(&msf, (m.re_min, m.re_max), (m.im_min, m.im_max), (m.n_re, m.n_im));
    write_grid_csv(&cells, create(dir, "msf_grid.csv")?)?;
    let mut lines = example_lorenz(cfg, dir)?;
    lines.insert(0, format!("lambda(0)={}", fmt_f64(msf.base)));
    Ok(lines)
}
