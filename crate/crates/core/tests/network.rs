use std::sync::Arc;

use proptest::prelude::*;

use hyperpin::hypergraph::{
    er_hypergraph, giant_scc, nearest_neighbor_3body, parse_hypergraph, write_hypergraph, ErParams, RingOrientation,
};
use hyperpin::msf::ConsensusMsf;
use hyperpin::select::{greedy_select, PinningProblem};
use hyperpin::spectral::{laplacian, reduced_block, spectrum, PinningConfig};

#[test]
fn er_draw_survives_file_round_trip() {
    let h = er_hypergraph(&ErParams::new(60, 0.03, 4, 1.0), 11).unwrap();
    let back = parse_hypergraph(&write_hypergraph(&h), true).unwrap();
    assert_eq!(back, h);
    assert_eq!(laplacian(&back).matrix, laplacian(&h).matrix);
}

#[test]
fn giant_scc_can_be_pinned_by_greedy() {
    let h = er_hypergraph(&ErParams::new(100, 0.02, 4, 1.0), 3).unwrap();
    let sub = giant_scc(&h).hypergraph;
    let problem = PinningProblem::singletons(&sub, Arc::new(ConsensusMsf)).unwrap();
    let r = greedy_select(&problem).unwrap();
    assert!(r.cost >= 1);
    assert!(problem.evaluate(&r.chosen).unwrap().verdict.feasible);
}

proptest! {
    #[test]
    fn ring_laplacian_rows_sum_to_zero(n in 4usize..30) {
        let l = laplacian(&nearest_neighbor_3body(n, RingOrientation::default()).unwrap());
        for i in 0..n {
            prop_assert!(l.matrix.row(i).sum().abs() < 1e-12);
        }
    }

    #[test]
    fn pinning_everything_leaves_nothing(n in 4usize..12) {
        let l = laplacian(&nearest_neighbor_3body(n, RingOrientation::default()).unwrap());
        let all: Vec<usize> = (0..n).collect();
        let red = reduced_block(&l, &PinningConfig::singletons(&all, 1.0).unwrap()).unwrap();
        prop_assert!(red.spectrum.is_empty());
        prop_assert_eq!(spectrum(&l.matrix).unwrap().len(), n);
    }
}
