use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::{DirectedHypergraph, NodeId};

/// The largest strongly connected component and its induced sub-hypergraph.
#[derive(Debug, Clone)]
pub struct GiantScc {
    /// Original labels of the component's nodes, ascending. Node `k` of
    /// `hypergraph` is `nodes[k]`.
    pub nodes: Vec<NodeId>,
    pub hypergraph: DirectedHypergraph,
}

/// Strongly connected components under head-to-tail chaining: `u -> v`
/// whenever some hyperedge has `u` among its tails and `v` among its heads.
/// Each component is sorted; components are ordered by their smallest node.
pub fn strongly_connected_components(h: &DirectedHypergraph) -> Vec<Vec<NodeId>> {
    let mut g = DiGraph::<(), ()>::with_capacity(h.n_nodes(), 0);
    let ids: Vec<_> = (0..h.n_nodes()).map(|_| g.add_node(())).collect();
    for e in h.edges() {
        for &t in e.tails() {
            for &hd in e.heads() {
                g.update_edge(ids[t], ids[hd], ());
            }
        }
    }
    let mut comps: Vec<Vec<NodeId>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut c: Vec<_> = c.into_iter().map(|ix| ix.index()).collect();
            c.sort_unstable();
            c
        })
        .collect();
    comps.sort_unstable_by_key(|c| c[0]);
    comps
}

/// Largest SCC; ties go to the component holding the smallest node label.
pub fn giant_scc(h: &DirectedHypergraph) -> GiantScc {
    let nodes = strongly_connected_components(h)
        .into_iter()
        .fold(Vec::new(), |best: Vec<NodeId>, c| if c.len() > best.len() { c } else { best });
    let hypergraph = h.induced(&nodes);
    GiantScc { nodes, hypergraph }
}
