//! TOML experiment configuration.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub topology: Topology,
    pub dynamics: Dynamics,
    pub selection: Selection,
    pub msf: MsfSection,
    pub output: Output,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Topology {
    /// `ring`, `er` or `file`.
    pub kind: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub p: f64,
    pub o: usize,
    pub orientation: String,
    pub seed: u64,
    /// Restrict an ER draw to its giant strongly connected component.
    pub giant_scc: bool,
    /// Hypergraph file for `kind = "file"`.
    pub path: Option<PathBuf>,
    /// `table1` range.
    pub n_min: usize,
    pub n_max: usize,
    /// `table2` grid.
    pub p_list: Vec<f64>,
    pub o_list: Vec<usize>,
}

impl Default for Topology {
    fn default() -> Self {
        Self {
            kind: "ring".into(),
            n: 7,
            p: 0.01,
            o: 4,
            orientation: "middle_tail".into(),
            seed: 1,
            giant_scc: true,
            path: None,
            n_min: 5,
            n_max: 20,
            p_list: vec![0.01, 0.02],
            o_list: vec![3, 4, 5, 6],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Dynamics {
    /// `consensus` or `lorenz_arctan`.
    pub model: String,
    pub sigma: f64,
    pub kappa: f64,
    /// Head sets of the pinning hyperedges, homogeneous weights.
    pub pins: Vec<Vec<usize>>,
    pub t_end: Option<f64>,
    pub step: Option<f64>,
    pub record_stride: usize,
    /// `index` (node `i` starts at `i + 1`) or `gaussian`.
    pub initial: String,
    pub ic_std: f64,
    pub pinner_init: Option<Vec<f64>>,
}

impl Default for Dynamics {
    fn default() -> Self {
        Self {
            model: "consensus".into(),
            sigma: 1.0,
            kappa: 5.0,
            pins: Vec::new(),
            t_end: None,
            step: None,
            record_stride: 10,
            initial: "index".into(),
            ic_std: 10.0,
            pinner_init: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Selection {
    /// `greedy`, `exhaustive`, `random`, `degree` or `sweep`.
    pub method: String,
    /// Largest cardinality tried by the exhaustive search.
    pub cap: Option<usize>,
    pub replicates: usize,
    /// Topologies per `table2` cell.
    pub topologies: usize,
}

impl Default for Selection {
    fn default() -> Self {
        Self { method: "greedy".into(), cap: None, replicates: 10_000, topologies: 100 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MsfSection {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub n_re: usize,
    pub n_im: usize,
    pub transient: f64,
    pub horizon: f64,
    pub renorm_interval: f64,
    /// Integration step; defaults per model.
    pub step: Option<f64>,
    pub mu_max: f64,
    pub scan_points: usize,
}

impl Default for MsfSection {
    fn default() -> Self {
        Self {
            re_min: 0.0,
            re_max: 40.0,
            im_min: -40.0,
            im_max: 40.0,
            n_re: 41,
            n_im: 41,
            transient: 100.0,
            horizon: 1100.0,
            renorm_interval: 1.0,
            step: None,
            mu_max: 40.0,
            scan_points: 40,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Output {
    pub directory: PathBuf,
    /// Only `csv` is written.
    pub formats: Vec<String>,
}

impl Default for Output {
    fn default() -> Self {
        Self { directory: PathBuf::from("out"), formats: vec!["csv".into()] }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_toml(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if !["ring", "er", "file"].contains(&self.topology.kind.as_str()) {
            bail!("unknown topology kind `{}`", self.topology.kind);
        }
        if self.topology.kind == "file" && self.topology.path.is_none() {
            bail!("topology kind `file` needs a path");
        }
        if !["consensus", "lorenz_arctan"].contains(&self.dynamics.model.as_str()) {
            bail!("unknown dynamics model `{}`", self.dynamics.model);
        }
        if !["greedy", "exhaustive", "random", "degree", "sweep"].contains(&self.selection.method.as_str()) {
            bail!("unknown selection method `{}`", self.selection.method);
        }
        if !["index", "gaussian"].contains(&self.dynamics.initial.as_str()) {
            bail!("unknown initial condition `{}`", self.dynamics.initial);
        }
        if let Some(f) = self.output.formats.iter().find(|f| f.as_str() != "csv") {
            bail!("unsupported output format `{f}`");
        }
        if self.topology.n_min > self.topology.n_max {
            bail!("n_min exceeds n_max");
        }
        Ok(())
    }
}
