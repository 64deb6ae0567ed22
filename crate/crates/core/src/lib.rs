//! Pinning controllability of dynamical networks coupled over directed
//! hypergraphs, and selection of a small set of pinning hyperedges.

pub mod dynamics;
pub mod hypergraph;
pub mod msf;
pub mod select;
pub mod simulate;
pub mod spectral;
