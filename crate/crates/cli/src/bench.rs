//! Ring and ER benchmarks behind the `table1` and `table2` commands.

use std::collections::BTreeMap;
use std::io;
use std::sync::Arc;

use anyhow::Result;
use rayon::prelude::*;

use hyperpin::hypergraph::{er_hypergraph, giant_scc, nearest_neighbor_3body, ErParams, RingOrientation};
use hyperpin::msf::{ConsensusMsf, MasterStability};
use hyperpin::select::{
    degree_select, exhaustive_min, greedy_select, random_costs, ExhaustiveOutcome, PinningProblem,
};
use hyperpin::spectral::fmt_f64;

/// Nodes of every `table2` topology before extracting the giant SCC.
pub const TABLE2_NODES: usize = 100;

fn consensus() -> Arc<dyn MasterStability> {
    Arc::new(ConsensusMsf)
}

/// Singleton candidates on the three-body ring with consensus dynamics.
pub fn ring_problem(n: usize, orientation: RingOrientation) -> Result<PinningProblem> {
    let h = nearest_neighbor_3body(n, orientation)?;
    Ok(PinningProblem::singletons(&h, consensus())?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub n: usize,
    pub min: usize,
    pub greedy: usize,
    /// Random cost histogram over the replicates.
    pub random: BTreeMap<usize, usize>,
    pub replicates: usize,
}

impl Table1Row {
    pub fn random_mean(&self) -> f64 {
        self.random.iter().map(|(&c, &k)| (c * k) as f64).sum::<f64>() / self.replicates as f64
    }

    /// Share of random runs that ended with exactly `cost` pins.
    pub fn random_prob(&self, cost: usize) -> f64 {
        *self.random.get(&cost).unwrap_or(&0) as f64 / self.replicates as f64
    }

    /// The two smallest costs the random runs reached.
    pub fn random_lowest(&self) -> Vec<usize> {
        self.random.keys().copied().take(2).collect()
    }
}

/// Random-order seed for ring size `n`.
pub fn table1_seed(seed: u64, n: usize) -> u64 {
    seed.wrapping_add((n as u64) << 32)
}

pub fn table1_row(n: usize, orientation: RingOrientation, replicates: usize, seed: u64) -> Result<Table1Row> {
    let problem = ring_problem(n, orientation)?;
    let min = exhaustive_min(&problem, None)?.cost();
    let greedy = greedy_select(&problem)?.cost;
    let mut random = BTreeMap::new();
    for c in random_costs(&problem, table1_seed(seed, n), replicates)? {
        *random.entry(c).or_insert(0) += 1;
    }
    Ok(Table1Row { n, min, greedy, random, replicates })
}

pub fn table1(
    n_range: std::ops::RangeInclusive<usize>,
    orientation: RingOrientation,
    replicates: usize,
    seed: u64,
) -> Result<Vec<Table1Row>> {
    n_range.map(|n| table1_row(n, orientation, replicates, seed)).collect()
}

/// Columns `n,min,greedy,random_mean,random_c1,random_p1,random_c2,random_p2`.
pub fn write_table1_csv<W: io::Write>(rows: &[Table1Row], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "min", "greedy", "random_mean", "random_c1", "random_p1", "random_c2", "random_p2"])?;
    for r in rows {
        let low = r.random_lowest();
        let cell = |k: usize| low.get(k).map(|c| (c.to_string(), fmt_f64(r.random_prob(*c))));
        let (c1, p1) = cell(0).unwrap_or_default();
        let (c2, p2) = cell(1).unwrap_or_default();
        w.write_record([
            r.n.to_string(),
            r.min.to_string(),
            r.greedy.to_string(),
            fmt_f64(r.random_mean()),
            c1,
            p1,
            c2,
            p2,
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table2Params {
    pub p: f64,
    pub o: usize,
    pub topologies: usize,
    /// Exhaustive search cap; `None` skips the exhaustive column.
    pub cap: Option<usize>,
    /// Random orderings per topology; zero skips the random column.
    pub random_replicates: usize,
    pub seed: u64,
}

/// Per-topology costs, as pin counts.
#[derive(Debug, Clone, PartialEq)]
pub struct Table2Sample {
    pub seed: u64,
    pub scc_size: usize,
    pub min: Option<ExhaustiveOutcome>,
    pub greedy: usize,
    pub degree: usize,
    pub random_mean: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table2Row {
    pub p: f64,
    pub o: usize,
    pub samples: Vec<Table2Sample>,
}

fn mean(v: impl Iterator<Item = f64>) -> f64 {
    let (s, k) = v.fold((0.0, 0usize), |(s, k), x| (s + x, k + 1));
    if k == 0 { f64::NAN } else { s / k as f64 }
}

impl Table2Row {
    pub fn mean_scc(&self) -> f64 {
        mean(self.samples.iter().map(|s| s.scc_size as f64))
    }

    fn pct(&self, f: impl Fn(&Table2Sample) -> Option<f64>) -> f64 {
        mean(self.samples.iter().filter_map(|s| f(s).map(|c| 100.0 * c / s.scc_size as f64)))
    }

    pub fn greedy_pct(&self) -> f64 {
        self.pct(|s| Some(s.greedy as f64))
    }

    pub fn degree_pct(&self) -> f64 {
        self.pct(|s| Some(s.degree as f64))
    }

    pub fn random_pct(&self) -> f64 {
        self.pct(|s| s.random_mean)
    }

    /// Mean exhaustive percentage; a lower bound when the cap binds anywhere.
    pub fn min_pct(&self) -> f64 {
        self.pct(|s| s.min.as_ref().map(|m| m.cost() as f64))
    }

    /// Topologies the capped search solved exactly.
    pub fn min_exact(&self) -> usize {
        self.samples.iter().filter(|s| matches!(s.min, Some(ExhaustiveOutcome::Found(_)))).count()
    }

    pub fn min_is_lower_bound(&self) -> bool {
        self.samples.iter().any(|s| s.min.as_ref().is_some_and(|m| m.is_lower_bound()))
    }
}

pub fn table2_sample(params: &Table2Params, t: usize) -> Result<Table2Sample> {
    let seed = params.seed.wrapping_add(t as u64);
    let h = er_hypergraph(&ErParams::new(TABLE2_NODES, params.p, params.o, 1.0), seed)?;
    let sub = giant_scc(&h).hypergraph;
    let problem = PinningProblem::singletons(&sub, consensus())?;
    let min = params.cap.map(|c| exhaustive_min(&problem, Some(c))).transpose()?;
    let random_mean = if params.random_replicates > 0 {
        let costs = random_costs(&problem, seed, params.random_replicates)?;
        Some(mean(costs.iter().map(|&c| c as f64)))
    } else {
        None
    };
    Ok(Table2Sample {
        seed,
        scc_size: sub.n_nodes(),
        min,
        greedy: greedy_select(&problem)?.cost,
        degree: degree_select(&problem)?.cost,
        random_mean,
    })
}

pub fn table2_row(params: &Table2Params) -> Result<Table2Row> {
    let samples = (0..params.topologies)
        .into_par_iter()
        .map(|t| table2_sample(params, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(Table2Row { p: params.p, o: params.o, samples })
}

/// Columns `p,o,mean_scc,min_pct,min_lower_bound,min_exact,greedy_pct,degree_pct,random_pct`;
/// skipped columns are empty.
pub fn write_table2_csv<W: io::Write>(rows: &[Table2Row], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "p",
        "o",
        "mean_scc",
        "min_pct",
        "min_lower_bound",
        "min_exact",
        "greedy_pct",
        "degree_pct",
        "random_pct",
    ])?;
    let opt = |v: f64| if v.is_nan() { String::new() } else { fmt_f64(v) };
    for r in rows {
        let has_min = r.samples.iter().any(|s| s.min.is_some());
        w.write_record([
            fmt_f64(r.p),
            r.o.to_string(),
            fmt_f64(r.mean_scc()),
            opt(r.min_pct()),
            if has_min { r.min_is_lower_bound().to_string() } else { String::new() },
            if has_min { r.min_exact().to_string() } else { String::new() },
            fmt_f64(r.greedy_pct()),
            fmt_f64(r.degree_pct()),
            opt(r.random_pct()),
        ])?;
    }
    w.flush()?;
    Ok(())
}
