use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use super::{DirectedHyperedge, DirectedHypergraph, HypergraphError, NodeId};

/// How the three nodes `i, i+1, i+2` of each ring hyperedge are split into
/// tails and heads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RingOrientation {
    /// Tail `{i}`, heads `{i+1, i+2}`.
    HeadsAhead,
    /// Tails `{i+1, i+2}`, head `{i}`.
    TailsAhead,
    /// Tail `{i+1}`, heads `{i, i+2}`. The only split for which the
    /// uncontrolled consensus network loses stability from `N = 5` on.
    #[default]
    MiddleTail,
}

impl RingOrientation {
    fn split(self, i: usize, n: usize) -> (Vec<NodeId>, Vec<NodeId>) {
        let (a, b, c) = (i, (i + 1) % n, (i + 2) % n);
        match self {
            RingOrientation::HeadsAhead => (vec![a], vec![b, c]),
            RingOrientation::TailsAhead => (vec![b, c], vec![a]),
            RingOrientation::MiddleTail => (vec![b], vec![a, c]),
        }
    }
}

impl FromStr for RingOrientation {
    type Err = HypergraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "heads_ahead" => Ok(Self::HeadsAhead),
            "tails_ahead" => Ok(Self::TailsAhead),
            "middle_tail" => Ok(Self::MiddleTail),
            other => Err(HypergraphError::Size(format!("unknown ring orientation `{other}`"))),
        }
    }
}

impl fmt::Display for RingOrientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::HeadsAhead => "heads_ahead",
            Self::TailsAhead => "tails_ahead",
            Self::MiddleTail => "middle_tail",
        })
    }
}

/// Directed three-body nearest-neighbour ring on `n` nodes, homogeneous
/// weights and unit gains.
pub fn nearest_neighbor_3body(
    n: usize,
    orientation: RingOrientation,
) -> Result<DirectedHypergraph, HypergraphError> {
    if n < 3 {
        return Err(HypergraphError::Size(format!("ring needs at least 3 nodes, got {n}")));
    }
    let edges = (0..n)
        .map(|i| {
            let (t, h) = orientation.split(i, n);
            DirectedHyperedge::homogeneous(t, h, 1.0)
        })
        .collect::<Result<Vec<_>, _>>()?;
    DirectedHypergraph::new(n, edges)
}

/// Parameters of the random directed hypergraph generator.
///
/// For each order `k` in `2..=max_order` and each head node, `tail_set_cap`
/// distinct `(k-1)`-subsets of the other nodes are candidates, each included
/// independently with probability `p * order_scale(k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErParams {
    pub n: usize,
    pub p: f64,
    pub max_order: usize,
    pub sigma: f64,
    /// Per-order factors `c_k`, indexed from `k = 2`. Missing entries are 1.
    pub order_scale: Vec<f64>,
    /// Candidate tail sets per (order, head). `None` means `n - 1`.
    pub tail_set_cap: Option<usize>,
}

impl ErParams {
    pub fn new(n: usize, p: f64, max_order: usize, sigma: f64) -> Self {
        Self { n, p, max_order, sigma, order_scale: Vec::new(), tail_set_cap: None }
    }

    fn scale(&self, k: usize) -> f64 {
        self.order_scale.get(k - 2).copied().unwrap_or(1.0)
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Samples a random directed hypergraph with single-head hyperedges and
/// homogeneous weights.
pub fn er_hypergraph(params: &ErParams, seed: u64) -> Result<DirectedHypergraph, HypergraphError> {
    let n = params.n;
    if !(params.p > 0.0 && params.p < 1.0) {
        return Err(HypergraphError::Size(format!("p must lie in (0,1), got {}", params.p)));
    }
    if params.max_order < 2 {
        return Err(HypergraphError::Size("max order must be at least 2".into()));
    }
    if n < 2 {
        return Ok(DirectedHypergraph::new(n, Vec::new())?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = params.tail_set_cap.unwrap_or(n - 1);
    let mut edges = Vec::new();
    for k in 2..=params.max_order.min(n) {
        let prob = (params.p * params.scale(k)).clamp(0.0, 1.0);
        let candidates = (cap as f64).min(binomial(n - 1, k - 1)) as u64;
        let dist = Binomial::new(candidates, prob)
            .map_err(|e| HypergraphError::Size(e.to_string()))?;
        for head in 0..n {
            let count = dist.sample(&mut rng) as usize;
            let mut chosen = HashSet::with_capacity(count);
            while chosen.len() < count {
                let mut tails: Vec<NodeId> = index::sample(&mut rng, n - 1, k - 1)
                    .into_iter()
                    .map(|j| if j >= head { j + 1 } else { j })
                    .collect();
                tails.sort_unstable();
                chosen.insert(tails);
            }
            let mut sets: Vec<_> = chosen.into_iter().collect();
            sets.sort_unstable();
            for tails in sets {
                edges.push(DirectedHyperedge::homogeneous(tails, vec![head], params.sigma)?);
            }
        }
    }
    DirectedHypergraph::new(n, edges)
}
