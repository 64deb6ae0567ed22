//! Directed hypergraphs with weighted tails and heads.
//!
//! A hyperedge couples the weighted average of its tail states to the weighted
//! average of its head states. Every hyperedge carries its own coupling gain.

mod format;
mod generators;
mod scc;

pub use format::{parse_hypergraph, write_hypergraph};
pub use generators::{er_hypergraph, nearest_neighbor_3body, ErParams, RingOrientation};
pub use scc::{giant_scc, strongly_connected_components, GiantScc};

use std::collections::HashSet;

use thiserror::Error;

/// Index of a node, dense in `0..n_nodes`.
pub type NodeId = usize;

/// Tolerance for weight normalisation checks.
pub const WEIGHT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HypergraphError {
    #[error("tails and heads overlap at node {0}")]
    Overlap(NodeId),
    #[error("invalid weights: {0}")]
    Weight(String),
    #[error("node {node} out of range for {n_nodes} nodes")]
    Index { node: NodeId, n_nodes: usize },
    #[error("size error: {0}")]
    Size(String),
    #[error("duplicate hyperedge {0}")]
    Duplicate(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A directed hyperedge `(tails, heads)` with per-node weights and a gain.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedHyperedge {
    tails: Vec<NodeId>,
    heads: Vec<NodeId>,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    sigma: f64,
}

impl DirectedHyperedge {
    /// Builds a hyperedge with explicit weights.
    pub fn new(
        tails: Vec<NodeId>,
        heads: Vec<NodeId>,
        alpha: Vec<f64>,
        beta: Vec<f64>,
        sigma: f64,
    ) -> Result<Self, HypergraphError> {
        if tails.is_empty() && heads.is_empty() {
            return Err(HypergraphError::Size("hyperedge has no nodes".into()));
        }
        let tail_set: HashSet<_> = tails.iter().copied().collect();
        if tail_set.len() != tails.len() {
            return Err(HypergraphError::Size("repeated tail node".into()));
        }
        let mut head_set = HashSet::new();
        for &h in &heads {
            if tail_set.contains(&h) {
                return Err(HypergraphError::Overlap(h));
            }
            if !head_set.insert(h) {
                return Err(HypergraphError::Size("repeated head node".into()));
            }
        }
        check_weights("alpha", &alpha, tails.len())?;
        check_weights("beta", &beta, heads.len())?;
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(HypergraphError::Weight(format!("sigma must be positive, got {sigma}")));
        }
        Ok(Self { tails, heads, alpha, beta, sigma })
    }

    /// Builds a hyperedge with homogeneous weights `1/|tails|` and `1/|heads|`.
    pub fn homogeneous(
        tails: Vec<NodeId>,
        heads: Vec<NodeId>,
        sigma: f64,
    ) -> Result<Self, HypergraphError> {
        let alpha = uniform(tails.len());
        let beta = uniform(heads.len());
        Self::new(tails, heads, alpha, beta, sigma)
    }

    /// Returns a copy of this hyperedge with homogeneous weights.
    pub fn with_homogeneous_weights(&self) -> Self {
        Self {
            tails: self.tails.clone(),
            heads: self.heads.clone(),
            alpha: uniform(self.tails.len()),
            beta: uniform(self.heads.len()),
            sigma: self.sigma,
        }
    }

    pub fn tails(&self) -> &[NodeId] {
        &self.tails
    }

    pub fn heads(&self) -> &[NodeId] {
        &self.heads
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Number of nodes in the hyperedge, `|tails| + |heads|`.
    pub fn cardinality(&self) -> usize {
        self.tails.len() + self.heads.len()
    }

    fn key(&self) -> (Vec<NodeId>, Vec<NodeId>) {
        let mut t = self.tails.clone();
        let mut h = self.heads.clone();
        t.sort_unstable();
        h.sort_unstable();
        (t, h)
    }

    fn relabel(&self, map: &[Option<NodeId>]) -> Option<Self> {
        let tails = self.tails.iter().map(|&v| map[v]).collect::<Option<Vec<_>>>()?;
        let heads = self.heads.iter().map(|&v| map[v]).collect::<Option<Vec<_>>>()?;
        Some(Self { tails, heads, alpha: self.alpha.clone(), beta: self.beta.clone(), sigma: self.sigma })
    }
}

/// Homogeneous weight vector of length `len`.
pub fn uniform(len: usize) -> Vec<f64> {
    vec![1.0 / len as f64; len]
}

fn check_weights(name: &str, w: &[f64], len: usize) -> Result<(), HypergraphError> {
    if w.len() != len {
        return Err(HypergraphError::Weight(format!(
            "{name} has {} entries for {len} nodes",
            w.len()
        )));
    }
    if w.iter().any(|&x| !(x.is_finite() && x >= 0.0)) {
        return Err(HypergraphError::Weight(format!("{name} has a negative or non-finite entry")));
    }
    if len > 0 {
        let s: f64 = w.iter().sum();
        if (s - 1.0).abs() > WEIGHT_TOL {
            return Err(HypergraphError::Weight(format!("{name} sums to {s}, expected 1")));
        }
    }
    Ok(())
}

/// An immutable, validated directed hypergraph.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedHypergraph {
    n_nodes: usize,
    edges: Vec<DirectedHyperedge>,
}

impl DirectedHypergraph {
    /// Validates and builds a hypergraph. Repeated `(tails, heads)` pairs are rejected.
    pub fn new(n_nodes: usize, edges: Vec<DirectedHyperedge>) -> Result<Self, HypergraphError> {
        Self::build(n_nodes, edges, false)
    }

    /// Like [`DirectedHypergraph::new`] but permits parallel hyperedges.
    pub fn with_multi_edges(
        n_nodes: usize,
        edges: Vec<DirectedHyperedge>,
    ) -> Result<Self, HypergraphError> {
        Self::build(n_nodes, edges, true)
    }

    fn build(
        n_nodes: usize,
        edges: Vec<DirectedHyperedge>,
        allow_multi: bool,
    ) -> Result<Self, HypergraphError> {
        let mut seen = HashSet::new();
        for (idx, e) in edges.iter().enumerate() {
            for &v in e.tails.iter().chain(&e.heads) {
                if v >= n_nodes {
                    return Err(HypergraphError::Index { node: v, n_nodes });
                }
            }
            if !allow_multi && !seen.insert(e.key()) {
                return Err(HypergraphError::Duplicate(idx));
            }
        }
        Ok(Self { n_nodes, edges })
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn edges(&self) -> &[DirectedHyperedge] {
        &self.edges
    }

    /// Sub-hypergraph induced by `nodes`, relabelled to `0..nodes.len()` in the
    /// given order. Hyperedges with any endpoint outside `nodes` are dropped.
    pub fn induced(&self, nodes: &[NodeId]) -> DirectedHypergraph {
        let mut map = vec![None; self.n_nodes];
        for (new, &old) in nodes.iter().enumerate() {
            map[old] = Some(new);
        }
        let edges = self.edges.iter().filter_map(|e| e.relabel(&map)).collect();
        DirectedHypergraph { n_nodes: nodes.len(), edges }
    }

    /// Per-node tail and head membership counts.
    pub fn degrees(&self) -> DegreeReport {
        let mut d_out = vec![0usize; self.n_nodes];
        let mut d_in = vec![0usize; self.n_nodes];
        for e in &self.edges {
            for &t in &e.tails {
                d_out[t] += 1;
            }
            for &h in &e.heads {
                d_in[h] += 1;
            }
        }
        DegreeReport { d_in, d_out }
    }
}

/// Node degrees: `d_out` counts tail memberships, `d_in` head memberships.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub d_in: Vec<usize>,
    pub d_out: Vec<usize>,
}

impl DegreeReport {
    /// `d_out(v) - d_in(v)`.
    pub fn delta(&self, v: NodeId) -> i64 {
        self.d_out[v] as i64 - self.d_in[v] as i64
    }

    pub fn deltas(&self) -> Vec<i64> {
        (0..self.d_in.len()).map(|v| self.delta(v)).collect()
    }
}

#[cfg(test)]
pub(crate) fn example2() -> DirectedHypergraph {
    DirectedHypergraph::new(
        3,
        vec![
            DirectedHyperedge::homogeneous(vec![2], vec![0], 1.0).unwrap(),
            DirectedHyperedge::homogeneous(vec![0], vec![1, 2], 1.0).unwrap(),
        ],
    )
    .unwrap()
}
