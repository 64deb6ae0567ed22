//! Choosing a small set of pinning hyperedges.
//!
//! Every method works on `L̄ = T⁻¹ L T` computed once for the full candidate
//! set: pinning a subset of candidates removes their unit-eigenvalue rows and
//! columns, and what is left is that subset's reduced block (up to a
//! block-local change of basis, which preserves its spectrum).

use std::fmt::Write as _;
use std::io;
use std::sync::Arc;

use itertools::Itertools;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::hypergraph::{DegreeReport, DirectedHypergraph, NodeId};
use crate::msf::{
    verdict_from_values, ControllabilityVerdict, MasterStability, MsfError, Type2, STABILITY_MARGIN,
};
use crate::spectral::{
    delete_rows_cols, laplacian, reduced_block, spectrum, PinBlock, PinningConfig, SignedLaplacian,
    SpectralError,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SelectError {
    #[error("selecting every candidate does not make the network controllable")]
    Infeasible,
    #[error("all candidates added but the score is still positive")]
    Exhausted,
    #[error("degree ordering needs singleton candidates")]
    NotSingleton,
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Msf(#[from] MsfError),
}

/// Candidate pinning hyperedges on a fixed network, with the MSF that judges them.
#[derive(Clone)]
pub struct PinningProblem {
    laplacian: SignedLaplacian,
    degrees: DegreeReport,
    candidates: Vec<PinBlock>,
    msf: Arc<dyn MasterStability>,
    lbar: DMatrix<f64>,
}

impl std::fmt::Debug for PinningProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PinningProblem")
            .field("n_nodes", &self.laplacian.dim())
            .field("candidates", &self.candidates)
            .finish_non_exhaustive()
    }
}

/// Score of one candidate subset.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    /// `Σ_{λ∈U} Λ(λ) + |U|` over eigenvalues with `Λ(λ) ≥ -δ`.
    pub score: f64,
    pub verdict: ControllabilityVerdict,
}

/// One greedy step: score of every remaining candidate and the pick.
#[derive(Debug, Clone, PartialEq)]
pub struct Iteration {
    pub scores: Vec<(usize, f64)>,
    pub chosen: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    /// Candidate indices in the order they were added.
    pub chosen: Vec<usize>,
    pub iterations: Vec<Iteration>,
    pub verdict: ControllabilityVerdict,
    pub cost: usize,
}

/// Outcome of the capped exhaustive search.
#[derive(Debug, Clone, PartialEq)]
pub enum ExhaustiveOutcome {
    Found(SelectionResult),
    /// No subset up to the cap works; the optimum is at least this large.
    LowerBound(usize),
}

impl ExhaustiveOutcome {
    pub fn cost(&self) -> usize {
        match self {
            Self::Found(r) => r.cost,
            Self::LowerBound(b) => *b,
        }
    }

    pub fn is_lower_bound(&self) -> bool {
        matches!(self, Self::LowerBound(_))
    }
}

impl PinningProblem {
    pub fn new(
        h: &DirectedHypergraph,
        candidates: Vec<PinBlock>,
        msf: Arc<dyn MasterStability>,
    ) -> Result<Self, SelectError> {
        Self::from_laplacian(laplacian(h), h.degrees(), candidates, msf)
    }

    /// One singleton candidate per node.
    pub fn singletons(h: &DirectedHypergraph, msf: Arc<dyn MasterStability>) -> Result<Self, SelectError> {
        Self::new(h, (0..h.n_nodes()).map(PinBlock::singleton).collect(), msf)
    }

    pub fn from_laplacian(
        laplacian: SignedLaplacian,
        degrees: DegreeReport,
        candidates: Vec<PinBlock>,
        msf: Arc<dyn MasterStability>,
    ) -> Result<Self, SelectError> {
        let cfg = PinningConfig::new(candidates, 1.0)?;
        let lbar = reduced_block(&laplacian, &cfg)?.lbar;
        let candidates = cfg.blocks().to_vec();
        Ok(Self { laplacian, degrees, candidates, msf, lbar })
    }

    pub fn candidates(&self) -> &[PinBlock] {
        &self.candidates
    }

    pub fn laplacian(&self) -> &SignedLaplacian {
        &self.laplacian
    }

    pub fn msf(&self) -> &dyn MasterStability {
        self.msf.as_ref()
    }

    /// `L̄₂₂` for the candidate subset `chosen`.
    pub fn reduced(&self, chosen: &[usize]) -> DMatrix<f64> {
        delete_rows_cols(&self.lbar, chosen)
    }

    pub fn evaluate(&self, chosen: &[usize]) -> Result<Evaluation, SelectError> {
        let s = spectrum(&self.reduced(chosen))?;
        let vals = self.msf.lambda_batch(&s.eigenvalues)?;
        let score = unstable_score(&vals);
        Ok(Evaluation { score, verdict: verdict_from_values(&s.eigenvalues, &vals) })
    }

    /// Pinning configuration for a candidate subset.
    pub fn config(&self, chosen: &[usize], kappa: f64) -> Result<PinningConfig, SelectError> {
        Ok(PinningConfig::new(chosen.iter().map(|&i| self.candidates[i].clone()).collect(), kappa)?)
    }

    /// Heads of the chosen candidates, e.g. `0;3|5`.
    pub fn describe(&self, chosen: &[usize]) -> String {
        chosen.iter().map(|&i| self.candidates[i].heads().iter().join(";")).join("|")
    }

    /// Checks type II and that the full candidate set is feasible.
    pub fn precheck(&self) -> Result<(), SelectError> {
        if let Type2::NotType2 = self.msf.type2()? {
            return Err(MsfError::NotType2.into());
        }
        let all: Vec<usize> = (0..self.candidates.len()).collect();
        if self.evaluate(&all)?.verdict.feasible {
            Ok(())
        } else {
            Err(SelectError::Infeasible)
        }
    }

    fn finish(&self, chosen: Vec<usize>, iterations: Vec<Iteration>) -> Result<SelectionResult, SelectError> {
        let verdict = self.evaluate(&chosen)?.verdict;
        let cost = chosen.len();
        Ok(SelectionResult { chosen, iterations, verdict, cost })
    }

    /// Adds candidates in the given order until the selection is feasible.
    fn sequential(&self, order: &[usize]) -> Result<SelectionResult, SelectError> {
        let mut chosen = Vec::new();
        for &i in order {
            chosen.push(i);
            if self.evaluate(&chosen)?.verdict.feasible {
                return self.finish(chosen, Vec::new());
            }
        }
        Err(SelectError::Exhausted)
    }
}

/// `Σ Λ + |U|` over `U = {Λ ≥ -δ}`; zero iff every value is below `-δ`.
pub fn unstable_score(vals: &[f64]) -> f64 {
    let unstable: Vec<f64> = vals.iter().copied().filter(|&v| v >= -STABILITY_MARGIN || v.is_nan()).collect();
    unstable.iter().sum::<f64>() + unstable.len() as f64
}

/// Relative gap below which two greedy scores count as tied. Symmetric
/// networks produce many exact ties that rounding would otherwise break.
pub const TIE_TOL: f64 = 1e-9;

/// Greedy heuristic: at each step add the candidate whose addition leaves the
/// smallest unstable score; stop when the score reaches zero. Ties go to the
/// lowest candidate index.
pub fn greedy_select(problem: &PinningProblem) -> Result<SelectionResult, SelectError> {
    problem.precheck()?;
    greedy_unchecked(problem)
}

fn greedy_unchecked(problem: &PinningProblem) -> Result<SelectionResult, SelectError> {
    let m = problem.candidates.len();
    let mut chosen: Vec<usize> = Vec::new();
    let mut iterations = Vec::new();
    loop {
        let remaining: Vec<usize> = (0..m).filter(|i| !chosen.contains(i)).collect();
        if remaining.is_empty() {
            return Err(SelectError::Exhausted);
        }
        let scores: Vec<(usize, f64)> = remaining
            .par_iter()
            .map(|&i| {
                let mut trial = chosen.clone();
                trial.push(i);
                problem.evaluate(&trial).map(|e| (i, e.score))
            })
            .collect::<Result<_, _>>()?;
        let min = scores.iter().map(|&(_, s)| s).fold(f64::INFINITY, f64::min);
        let (best, best_score) = scores
            .iter()
            .copied()
            .find(|&(_, s)| s <= min + TIE_TOL * min.abs().max(1.0))
            .expect("at least one remaining candidate");
        chosen.push(best);
        iterations.push(Iteration { scores, chosen: best });
        if best_score == 0.0 {
            return problem.finish(chosen, iterations);
        }
    }
}

const BATCH: usize = 4096;

/// Smallest feasible subset, searched by increasing cardinality with
/// combinations in lexicographic order. Stops after `max_cardinality`.
pub fn exhaustive_min(
    problem: &PinningProblem,
    max_cardinality: Option<usize>,
) -> Result<ExhaustiveOutcome, SelectError> {
    let m = problem.candidates.len();
    if max_cardinality.is_none() && m > 25 {
        return Err(SelectError::TooLarge(format!("{m} candidates without a cardinality cap")));
    }
    problem.precheck()?;
    exhaustive_unchecked(problem, max_cardinality)
}

fn exhaustive_unchecked(
    problem: &PinningProblem,
    max_cardinality: Option<usize>,
) -> Result<ExhaustiveOutcome, SelectError> {
    let m = problem.candidates.len();
    let cap = max_cardinality.unwrap_or(m).min(m);
    for k in 0..=cap {
        for batch in &(0..m).combinations(k).chunks(BATCH) {
            let batch: Vec<Vec<usize>> = batch.collect();
            let flags: Vec<bool> = batch
                .par_iter()
                .map(|c| problem.evaluate(c).map(|e| e.verdict.feasible))
                .collect::<Result<_, _>>()?;
            if let Some(pos) = flags.iter().position(|&f| f) {
                return problem.finish(batch[pos].clone(), Vec::new()).map(ExhaustiveOutcome::Found);
            }
        }
    }
    Ok(ExhaustiveOutcome::LowerBound(cap + 1))
}

/// Adds candidates in a uniformly random order until feasible.
pub fn random_select(problem: &PinningProblem, seed: u64) -> Result<SelectionResult, SelectError> {
    problem.precheck()?;
    random_unchecked(problem, seed)
}

fn random_unchecked(problem: &PinningProblem, seed: u64) -> Result<SelectionResult, SelectError> {
    let mut order: Vec<usize> = (0..problem.candidates.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    problem.sequential(&order)
}

/// Costs of `replicates` random selections with seeds `seed..seed + replicates`.
pub fn random_costs(problem: &PinningProblem, seed: u64, replicates: usize) -> Result<Vec<usize>, SelectError> {
    problem.precheck()?;
    (0..replicates as u64)
        .into_par_iter()
        .map(|r| random_unchecked(problem, seed.wrapping_add(r)).map(|s| s.cost))
        .collect()
}

/// Adds singleton candidates by decreasing `d_out - d_in`, ties by node index.
pub fn degree_select(problem: &PinningProblem) -> Result<SelectionResult, SelectError> {
    let nodes: Vec<NodeId> = problem
        .candidates
        .iter()
        .map(|b| if b.len() == 1 { Ok(b.heads()[0]) } else { Err(SelectError::NotSingleton) })
        .collect::<Result<_, _>>()?;
    problem.precheck()?;
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by_key(|&i| (-problem.degrees.delta(nodes[i]), nodes[i]));
    problem.sequential(&order)
}

/// Restricted-growth strings of length `n` in lexicographic order; each is a
/// set partition where `rgs[v]` is the block of element `v`.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    rgs: Vec<usize>,
    max: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        Self { rgs: vec![0; n], max: vec![0; n], done: false }
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.rgs.clone();
        // advance: rightmost position that can grow
        let n = self.rgs.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let prefix_max = self.max[i - 1];
            if self.rgs[i] <= prefix_max {
                self.rgs[i] += 1;
                self.max[i] = prefix_max.max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.max[j] = self.max[i];
                }
                break;
            }
        }
        Some(out)
    }
}

/// Number of set partitions of `n` elements.
pub fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        row = next;
    }
    row[0]
}

/// Blocks of a restricted-growth string, in label order.
pub fn blocks_of(rgs: &[usize]) -> Vec<Vec<NodeId>> {
    let k = rgs.iter().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); k];
    for (v, &b) in rgs.iter().enumerate() {
        blocks[b].push(v);
    }
    blocks
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub partition_id: usize,
    pub feasible: bool,
    pub min_cost: Option<usize>,
    pub greedy_cost: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub total: usize,
    pub feasible: usize,
    /// Share of feasible partitions where greedy hits the minimum.
    pub greedy_optimal_fraction: f64,
    pub max_excess: usize,
}

/// Treats every set partition of the nodes as a candidate set of homogeneous
/// pinning hyperedges; for those whose full set is feasible, compares the
/// greedy cost with the exhaustive minimum.
pub fn partition_sweep(
    h: &DirectedHypergraph,
    msf: Arc<dyn MasterStability>,
) -> Result<SweepReport, SelectError> {
    let n = h.n_nodes();
    if n > 12 {
        return Err(SelectError::TooLarge(format!("{n} nodes, at most 12 supported")));
    }
    if let Type2::NotType2 = msf.type2()? {
        return Err(MsfError::NotType2.into());
    }
    let lap = laplacian(h);
    let degrees = h.degrees();
    let partitions: Vec<Vec<usize>> = SetPartitions::new(n).collect();
    let rows: Vec<SweepRow> = partitions
        .par_iter()
        .enumerate()
        .map(|(id, rgs)| {
            let candidates = blocks_of(rgs)
                .into_iter()
                .map(PinBlock::homogeneous)
                .collect::<Result<Vec<_>, _>>()?;
            let problem = PinningProblem::from_laplacian(lap.clone(), degrees.clone(), candidates, msf.clone())?;
            let all: Vec<usize> = (0..problem.candidates.len()).collect();
            if !problem.evaluate(&all)?.verdict.feasible {
                return Ok(SweepRow { partition_id: id, feasible: false, min_cost: None, greedy_cost: None });
            }
            let min = exhaustive_unchecked(&problem, None)?.cost();
            let greedy = greedy_unchecked(&problem)?.cost;
            Ok(SweepRow { partition_id: id, feasible: true, min_cost: Some(min), greedy_cost: Some(greedy) })
        })
        .collect::<Result<_, SelectError>>()?;
    let feasible: Vec<&SweepRow> = rows.iter().filter(|r| r.feasible).collect();
    let hits = feasible.iter().filter(|r| r.min_cost == r.greedy_cost).count();
    let max_excess = feasible
        .iter()
        .map(|r| r.greedy_cost.unwrap().saturating_sub(r.min_cost.unwrap()))
        .max()
        .unwrap_or(0);
    Ok(SweepReport {
        total: rows.len(),
        feasible: feasible.len(),
        greedy_optimal_fraction: if feasible.is_empty() { 0.0 } else { hits as f64 / feasible.len() as f64 },
        max_excess,
        rows,
    })
}

/// One row of the selection report.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionRecord {
    pub method: String,
    pub cost: String,
    pub feasible: bool,
    pub chosen_sets: String,
    pub wall_time_ms: u128,
}

/// CSV with columns `method,cost,feasible,chosen_sets,wall_time_ms`.
pub fn write_selection_csv<W: io::Write>(rows: &[SelectionRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["method", "cost", "feasible", "chosen_sets", "wall_time_ms"])?;
    for r in rows {
        w.write_record([
            r.method.clone(),
            r.cost.clone(),
            r.feasible.to_string(),
            r.chosen_sets.clone(),
            r.wall_time_ms.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// CSV with columns `partition_id,feasible,min_cost,greedy_cost`; costs are
/// empty for infeasible partitions.
pub fn write_sweep_csv<W: io::Write>(report: &SweepReport, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["partition_id", "feasible", "min_cost", "greedy_cost"])?;
    let opt = |c: Option<usize>| c.map(|v| v.to_string()).unwrap_or_default();
    for r in &report.rows {
        w.write_record([r.partition_id.to_string(), r.feasible.to_string(), opt(r.min_cost), opt(r.greedy_cost)])?;
    }
    w.flush()?;
    Ok(())
}

/// Human-readable audit trail of a greedy run.
pub fn format_iterations(problem: &PinningProblem, result: &SelectionResult) -> String {
    let mut out = String::new();
    for (k, it) in result.iterations.iter().enumerate() {
        let _ = write!(out, "step {k}:");
        for &(i, s) in &it.scores {
            let _ = write!(out, " [{}]={s:.6}", problem.describe(&[i]));
        }
        let _ = writeln!(out, " -> {}", problem.describe(&[it.chosen]));
    }
    out
}

/// Eigenvalues `λ` of a spectrum with `Λ(λ) > 0`.
pub fn count_unstable(msf: &dyn MasterStability, eigs: &[Complex64]) -> Result<usize, SelectError> {
    Ok(msf.lambda_batch(eigs)?.into_iter().filter(|&v| v > 0.0).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{example2, nearest_neighbor_3body, DirectedHyperedge, RingOrientation};
    use crate::msf::ConsensusMsf;

    fn consensus() -> Arc<dyn MasterStability> {
        Arc::new(ConsensusMsf)
    }

    fn ring(n: usize) -> PinningProblem {
        let h = nearest_neighbor_3body(n, RingOrientation::default()).unwrap();
        PinningProblem::singletons(&h, consensus()).unwrap()
    }

    #[test]
    fn greedy_example2_scores() {
        let p = PinningProblem::singletons(&example2(), consensus()).unwrap();
        let r = greedy_select(&p).unwrap();
        let s = &r.iterations[0].scores;
        assert!((s[0].1 - 1.0).abs() < 1e-9);
        // eigenvalues (3 ± sqrt(17)) / 4 after pinning node 1
        let neg = (3.0 - 17f64.sqrt()) / 4.0;
        assert!((s[1].1 - (1.0 - neg)).abs() < 1e-9, "{s:?}");
        assert_eq!(s[2].1, 0.0);
        assert_eq!(r.chosen, vec![2]);
        assert_eq!(r.cost, 1);
        assert!(r.verdict.feasible);
    }

    #[test]
    fn greedy_rings() {
        assert_eq!(greedy_select(&ring(7)).unwrap().cost, 4);
        assert_eq!(greedy_select(&ring(10)).unwrap().cost, 6);
    }

    #[test]
    fn exhaustive_example2_and_rings() {
        let p = PinningProblem::singletons(&example2(), consensus()).unwrap();
        match exhaustive_min(&p, None).unwrap() {
            ExhaustiveOutcome::Found(r) => assert_eq!(r.chosen, vec![2]),
            other => panic!("{other:?}"),
        }
        assert_eq!(exhaustive_min(&ring(5), None).unwrap().cost(), 3);
        assert_eq!(exhaustive_min(&ring(6), None).unwrap().cost(), 3);
    }

    #[test]
    fn exhaustive_lower_bound() {
        let out = exhaustive_min(&ring(10), Some(3)).unwrap();
        assert_eq!(out, ExhaustiveOutcome::LowerBound(4));
    }

    #[test]
    fn exhaustive_needs_cap_for_many_candidates() {
        let h = DirectedHypergraph::new(30, vec![]).unwrap();
        let p = PinningProblem::singletons(&h, consensus()).unwrap();
        assert!(matches!(exhaustive_min(&p, None), Err(SelectError::TooLarge(_))));
    }

    #[test]
    fn infeasible_precheck() {
        // the only candidate pins node 0 of a graph whose node 1 is uncoupled
        let h = DirectedHypergraph::new(
            2,
            vec![DirectedHyperedge::homogeneous(vec![1], vec![0], 1.0).unwrap()],
        )
        .unwrap();
        let p = PinningProblem::new(&h, vec![PinBlock::singleton(0)], consensus()).unwrap();
        assert_eq!(greedy_select(&p).unwrap_err(), SelectError::Infeasible);
        assert_eq!(random_select(&p, 1).unwrap_err(), SelectError::Infeasible);
        assert_eq!(degree_select(&p).unwrap_err(), SelectError::Infeasible);
    }

    #[test]
    fn single_candidate_random() {
        let h = DirectedHypergraph::new(1, vec![]).unwrap();
        let p = PinningProblem::singletons(&h, consensus()).unwrap();
        assert_eq!(random_select(&p, 42).unwrap().cost, 1);
    }

    #[test]
    fn random_is_seeded() {
        let p = ring(8);
        assert_eq!(random_select(&p, 5).unwrap(), random_select(&p, 5).unwrap());
    }

    #[test]
    fn degree_example2() {
        let p = PinningProblem::singletons(&example2(), consensus()).unwrap();
        let r = degree_select(&p).unwrap();
        assert_eq!(r.chosen, vec![0, 2]);
        assert_eq!(r.cost, 2);
    }

    #[test]
    fn degree_needs_singletons() {
        let p = PinningProblem::new(&example2(), vec![PinBlock::homogeneous(vec![0, 1]).unwrap()], consensus())
            .unwrap();
        assert_eq!(degree_select(&p).unwrap_err(), SelectError::NotSingleton);
    }

    #[test]
    fn degree_ring_not_better_than_greedy() {
        let p = ring(7);
        assert!(degree_select(&p).unwrap().cost >= greedy_select(&p).unwrap().cost);
    }

    #[test]
    fn removal_matches_direct_reduced_block() {
        let h = nearest_neighbor_3body(7, RingOrientation::default()).unwrap();
        let blocks = vec![
            PinBlock::homogeneous(vec![0, 1]).unwrap(),
            PinBlock::homogeneous(vec![2, 3]).unwrap(),
            PinBlock::new(vec![4, 6], vec![0.3, 0.7]).unwrap(),
        ];
        let p = PinningProblem::new(&h, blocks.clone(), consensus()).unwrap();
        let l = laplacian(&h);
        for chosen in [vec![0], vec![2], vec![0, 2], vec![1, 2]] {
            let via_removal = spectrum(&p.reduced(&chosen)).unwrap();
            let cfg = PinningConfig::new(chosen.iter().map(|&i| blocks[i].clone()).collect(), 1.0).unwrap();
            let direct = reduced_block(&l, &cfg).unwrap().spectrum;
            let d = crate::spectral::match_distance(&via_removal.eigenvalues, &direct.eigenvalues).unwrap();
            assert!(d < 1e-9, "{chosen:?}: {d}");
        }
    }

    #[test]
    fn set_partitions_enumerate() {
        let all: Vec<_> = SetPartitions::new(3).collect();
        assert_eq!(all, vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1], vec![0, 1, 2]]);
        for n in 0..9 {
            assert_eq!(SetPartitions::new(n).count() as u64, bell(n).max(1), "n = {n}");
        }
        assert_eq!(bell(10), 115_975);
        assert_eq!(blocks_of(&[0, 1, 0, 2]), vec![vec![0, 2], vec![1], vec![3]]);
    }

    #[test]
    fn small_sweep() {
        let h = nearest_neighbor_3body(3, RingOrientation::default()).unwrap();
        let rep = partition_sweep(&h, consensus()).unwrap();
        assert_eq!(rep.total, 5);
        assert!(rep.rows.iter().filter(|r| r.feasible).all(|r| r.greedy_cost >= r.min_cost));
    }

    #[test]
    fn csv_reports() {
        let mut buf = Vec::new();
        write_selection_csv(
            &[SelectionRecord {
                method: "greedy".into(),
                cost: "1".into(),
                feasible: true,
                chosen_sets: "2".into(),
                wall_time_ms: 3,
            }],
            &mut buf,
        )
        .unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "method,cost,feasible,chosen_sets,wall_time_ms\ngreedy,1,true,2,3\n"
        );
    }
}
