//! Signed Laplacian, pinning matrix, the pinned-first change of basis and the
//! reduced block whose spectrum the non-diverging eigenvalues of `L + κP`
//! approach as the gain grows.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::io;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::hypergraph::{DirectedHypergraph, NodeId, WEIGHT_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("pinning head-sets overlap at node {0}")]
    Overlap(NodeId),
    #[error("invalid pinning weights: {0}")]
    Weight(String),
    #[error("node {node} out of range for {n_nodes} nodes")]
    Index { node: NodeId, n_nodes: usize },
    #[error("transform is singular")]
    SingularTransform,
    #[error("eigensolver did not converge on a {0}x{0} matrix")]
    Convergence(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Laplacian of the signed graph associated with a directed hypergraph.
///
/// Node `i`'s linearised coupling is `-Σ_j L_ij x_j`; rows sum to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedLaplacian {
    pub matrix: DMatrix<f64>,
}

impl SignedLaplacian {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// Builds the signed Laplacian. For a head `i` of hyperedge `ε`, every tail `j`
/// contributes `-σ α_j` and every other head `j` contributes `+σ β_j` to
/// `L_ij`; the diagonal closes each row to zero.
pub fn laplacian(h: &DirectedHypergraph) -> SignedLaplacian {
    let n = h.n_nodes();
    let mut m = DMatrix::zeros(n, n);
    for e in h.edges() {
        let s = e.sigma();
        for &i in e.heads() {
            for (&j, &a) in e.tails().iter().zip(e.alpha()) {
                m[(i, j)] -= s * a;
            }
            for (&j, &b) in e.heads().iter().zip(e.beta()) {
                if j != i {
                    m[(i, j)] += s * b;
                }
            }
        }
    }
    for i in 0..n {
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| m[(i, j)]).sum();
        m[(i, i)] = -off;
    }
    SignedLaplacian { matrix: m }
}

/// Head-set of one pinning hyperedge with its head weights.
#[derive(Debug, Clone, PartialEq)]
pub struct PinBlock {
    heads: Vec<NodeId>,
    beta: Vec<f64>,
}

impl PinBlock {
    /// Weights must be strictly positive and sum to one.
    pub fn new(heads: Vec<NodeId>, beta: Vec<f64>) -> Result<Self, SpectralError> {
        if heads.is_empty() {
            return Err(SpectralError::Weight("empty head-set".into()));
        }
        if heads.len() != beta.len() {
            return Err(SpectralError::Weight("one weight per head required".into()));
        }
        if beta.iter().any(|&b| !(b.is_finite() && b > 0.0)) {
            return Err(SpectralError::Weight("head weights must be positive".into()));
        }
        let s: f64 = beta.iter().sum();
        if (s - 1.0).abs() > WEIGHT_TOL {
            return Err(SpectralError::Weight(format!("head weights sum to {s}")));
        }
        let mut seen = HashSet::new();
        if let Some(&v) = heads.iter().find(|&&v| !seen.insert(v)) {
            return Err(SpectralError::Overlap(v));
        }
        Ok(Self { heads, beta })
    }

    pub fn homogeneous(heads: Vec<NodeId>) -> Result<Self, SpectralError> {
        let beta = crate::hypergraph::uniform(heads.len());
        Self::new(heads, beta)
    }

    pub fn singleton(node: NodeId) -> Self {
        Self { heads: vec![node], beta: vec![1.0] }
    }

    pub fn heads(&self) -> &[NodeId] {
        &self.heads
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn len(&self) -> usize {
        self.heads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heads.is_empty()
    }
}

/// A set of pinning hyperedges with pairwise disjoint head-sets, and the gain κ.
#[derive(Debug, Clone, PartialEq)]
pub struct PinningConfig {
    blocks: Vec<PinBlock>,
    pub kappa: f64,
}

impl PinningConfig {
    pub fn new(blocks: Vec<PinBlock>, kappa: f64) -> Result<Self, SpectralError> {
        let mut seen = HashSet::new();
        for b in &blocks {
            for &v in &b.heads {
                if !seen.insert(v) {
                    return Err(SpectralError::Overlap(v));
                }
            }
        }
        Ok(Self { blocks, kappa })
    }

    /// One pinning edge per listed node.
    pub fn singletons(nodes: &[NodeId], kappa: f64) -> Result<Self, SpectralError> {
        Self::new(nodes.iter().map(|&v| PinBlock::singleton(v)).collect(), kappa)
    }

    pub fn blocks(&self) -> &[PinBlock] {
        &self.blocks
    }

    /// Number of pinning hyperedges `m`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn pinned_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.blocks.iter().flat_map(|b| b.heads.iter().copied())
    }

    /// Node ordering with pinned nodes first, block by block, then the rest
    /// ascending. `perm[k]` is the original node at position `k`.
    pub fn permutation(&self, n: usize) -> Result<Vec<NodeId>, SpectralError> {
        let mut used = vec![false; n];
        let mut perm = Vec::with_capacity(n);
        for v in self.pinned_nodes() {
            if v >= n {
                return Err(SpectralError::Index { node: v, n_nodes: n });
            }
            used[v] = true;
            perm.push(v);
        }
        perm.extend((0..n).filter(|&v| !used[v]));
        Ok(perm)
    }
}

/// Applies `perm` symmetrically: `out[(a, b)] = m[(perm[a], perm[b])]`.
pub fn permute(m: &DMatrix<f64>, perm: &[NodeId]) -> DMatrix<f64> {
    let n = perm.len();
    DMatrix::from_fn(n, n, |a, b| m[(perm[a], perm[b])])
}

/// Pinning matrix in the pinned-first ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct PinningMatrix {
    pub matrix: DMatrix<f64>,
    pub permutation: Vec<NodeId>,
}

pub fn pinning_matrix(cfg: &PinningConfig, n: usize) -> Result<PinningMatrix, SpectralError> {
    let permutation = cfg.permutation(n)?;
    let mut matrix = DMatrix::zeros(n, n);
    let mut start = 0;
    for b in cfg.blocks() {
        for r in 0..b.len() {
            for (c, &w) in b.beta.iter().enumerate() {
                matrix[(start + r, start + c)] = w;
            }
        }
        start += b.len();
    }
    Ok(PinningMatrix { matrix, permutation })
}

/// Change of basis that diagonalises the pinning matrix: columns `0..m` are the
/// unit-eigenvalue vectors (one per block), followed by each block's null
/// vectors and identity columns for unpinned nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Transform {
    pub matrix: DMatrix<f64>,
    pub permutation: Vec<NodeId>,
    pub m: usize,
}

/// Null-vector rule inside a block: `v_k = e_k / β_k - e_{k+1} / β_{k+1}`.
pub fn build_transform(cfg: &PinningConfig, n: usize) -> Result<Transform, SpectralError> {
    let permutation = cfg.permutation(n)?;
    let m = cfg.len();
    let mut t = DMatrix::zeros(n, n);
    let mut row = 0;
    let mut null_col = m;
    for (bi, b) in cfg.blocks().iter().enumerate() {
        let s = b.len();
        for r in 0..s {
            t[(row + r, bi)] = 1.0;
        }
        for k in 0..s - 1 {
            t[(row + k, null_col)] = 1.0 / b.beta[k];
            t[(row + k + 1, null_col)] = -1.0 / b.beta[k + 1];
            null_col += 1;
        }
        row += s;
    }
    for k in row..n {
        t[(k, k)] = 1.0;
    }
    Ok(Transform { matrix: t, permutation, m })
}

impl Transform {
    /// `T⁻¹ A T` for a matrix `a` already in pinned-first order.
    pub fn conjugate(&self, a: &DMatrix<f64>) -> Result<DMatrix<f64>, SpectralError> {
        let lu = self.matrix.clone().lu();
        lu.solve(&(a * &self.matrix)).ok_or(SpectralError::SingularTransform)
    }
}

/// Blocks of `L̄ = T⁻¹ L T` in pinned-first coordinates.
#[derive(Debug, Clone)]
pub struct ReducedBlock {
    /// Full transformed Laplacian.
    pub lbar: DMatrix<f64>,
    pub l11: DMatrix<f64>,
    pub l22: DMatrix<f64>,
    pub transform: Transform,
    pub spectrum: Spectrum,
}

pub fn reduced_block(l: &SignedLaplacian, cfg: &PinningConfig) -> Result<ReducedBlock, SpectralError> {
    let n = l.dim();
    let transform = build_transform(cfg, n)?;
    let lp = permute(&l.matrix, &transform.permutation);
    let lbar = transform.conjugate(&lp)?;
    let m = transform.m;
    let l11 = lbar.view((0, 0), (m, m)).into_owned();
    let l22 = lbar.view((m, m), (n - m, n - m)).into_owned();
    let spectrum = spectrum(&l22)?;
    Ok(ReducedBlock { lbar, l11, l22, transform, spectrum })
}

/// `M(κ) = L + κP` in the pinned-first ordering.
pub fn m_kappa(
    l: &SignedLaplacian,
    cfg: &PinningConfig,
    kappa: f64,
) -> Result<DMatrix<f64>, SpectralError> {
    let p = pinning_matrix(cfg, l.dim())?;
    Ok(permute(&l.matrix, &p.permutation) + p.matrix * kappa)
}

/// Eigenvalues sorted by real part, then imaginary part.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
}

impl Spectrum {
    pub fn from_unsorted(mut eigenvalues: Vec<Complex64>) -> Self {
        eigenvalues.sort_by(cmp_complex);
        Self { eigenvalues }
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex64> {
        self.eigenvalues.iter()
    }

    /// Smallest real part, `+inf` when empty.
    pub fn min_real(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.re).fold(f64::INFINITY, f64::min)
    }
}

fn cmp_complex(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// All eigenvalues of a real square matrix.
pub fn spectrum(a: &DMatrix<f64>) -> Result<Spectrum, SpectralError> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(SpectralError::Dimension(format!("{}x{} is not square", n, a.ncols())));
    }
    if n == 0 {
        return Ok(Spectrum::default());
    }
    if n == 1 {
        return Ok(Spectrum { eigenvalues: vec![Complex64::new(a[(0, 0)], 0.0)] });
    }
    let m = faer::Mat::<f64>::from_fn(n, n, |r, c| a[(r, c)]);
    let ev = m.eigenvalues().map_err(|_| SpectralError::Convergence(n))?;
    Ok(Spectrum::from_unsorted(ev.iter().map(|z| Complex64::new(z.re, z.im)).collect()))
}

/// Deletes the listed rows and columns from a square matrix.
pub fn delete_rows_cols(a: &DMatrix<f64>, remove: &[usize]) -> DMatrix<f64> {
    let keep: Vec<usize> = (0..a.nrows()).filter(|i| !remove.contains(i)).collect();
    DMatrix::from_fn(keep.len(), keep.len(), |r, c| a[(keep[r], keep[c])])
}

/// Greedy minimal-distance matching of two eigenvalue multisets: repeatedly
/// pairs the closest unmatched elements. Returns the largest paired distance,
/// or `None` when lengths differ.
pub fn match_distance(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            pairs.push(((x - y).norm(), i, j));
        }
    }
    pairs.sort_by(|p, q| {
        p.0.total_cmp(&q.0)
            .then(cmp_complex(&a[p.1], &a[q.1]))
            .then(cmp_complex(&b[p.2], &b[q.2]))
    });
    let (mut ua, mut ub) = (vec![false; a.len()], vec![false; b.len()]);
    let mut worst: f64 = 0.0;
    for (d, i, j) in pairs {
        if !ua[i] && !ub[j] {
            ua[i] = true;
            ub[j] = true;
            worst = worst.max(d);
        }
    }
    Some(worst)
}

/// Formats a float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Row-major matrix dump, no header.
pub fn write_matrix_csv<W: io::Write>(a: &DMatrix<f64>, out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    for r in 0..a.nrows() {
        w.write_record((0..a.ncols()).map(|c| fmt_f64(a[(r, c)])))?;
    }
    w.flush()?;
    Ok(())
}

/// Spectrum dump with columns `re,im`.
pub fn write_spectrum_csv<W: io::Write>(s: &Spectrum, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["re", "im"])?;
    for z in s.iter() {
        w.write_record([fmt_f64(z.re), fmt_f64(z.im)])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{example2, nearest_neighbor_3body, DirectedHyperedge, RingOrientation};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn close(s: &Spectrum, want: &[Complex64], tol: f64) -> bool {
        match_distance(&s.eigenvalues, want).is_some_and(|d| d <= tol)
    }

    #[test]
    fn example2_laplacian() {
        let l = laplacian(&example2());
        let want = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, -1.0, -1.0, 0.5, 0.5, -1.0, 0.5, 0.5]);
        assert_eq!(l.matrix, want);
    }

    #[test]
    fn pairwise_laplacian() {
        let h = DirectedHypergraph::new(
            2,
            vec![DirectedHyperedge::homogeneous(vec![0], vec![1], 1.0).unwrap()],
        )
        .unwrap();
        assert_eq!(laplacian(&h).matrix, DMatrix::from_row_slice(2, 2, &[0.0, 0.0, -1.0, 1.0]));
    }

    #[test]
    fn rows_sum_to_zero() {
        for seed in 0..20 {
            let h = crate::hypergraph::er_hypergraph(
                &crate::hypergraph::ErParams::new(30, 0.05, 5, 2.5),
                seed,
            )
            .unwrap();
            let l = laplacian(&h);
            for r in 0..30 {
                assert!(l.matrix.row(r).sum().abs() < 1e-10);
            }
        }
    }

    #[test]
    fn pinning_matrix_block() {
        let cfg = PinningConfig::new(vec![PinBlock::homogeneous(vec![0, 1]).unwrap()], 1.0).unwrap();
        let p = pinning_matrix(&cfg, 3).unwrap();
        let want = DMatrix::from_row_slice(3, 3, &[0.5, 0.5, 0.0, 0.5, 0.5, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(p.matrix, want);
        assert_eq!(p.permutation, vec![0, 1, 2]);
    }

    #[test]
    fn pinning_matrix_singletons() {
        let cfg = PinningConfig::singletons(&[0, 2], 1.0).unwrap();
        let p = pinning_matrix(&cfg, 3).unwrap();
        assert_eq!(p.matrix, DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, 0.0])));
        assert_eq!(p.permutation, vec![0, 2, 1]);
    }

    #[test]
    fn pinning_overlap_rejected() {
        let err = PinningConfig::new(
            vec![PinBlock::homogeneous(vec![0, 1]).unwrap(), PinBlock::homogeneous(vec![1]).unwrap()],
            1.0,
        )
        .unwrap_err();
        assert_eq!(err, SpectralError::Overlap(1));
    }

    #[test]
    fn zero_head_weight_rejected() {
        assert!(PinBlock::new(vec![0, 1], vec![1.0, 0.0]).is_err());
    }

    #[test]
    fn pinning_spectrum_is_ones_and_zeros() {
        let cfg = PinningConfig::new(
            vec![
                PinBlock::new(vec![4, 1, 6], vec![0.2, 0.3, 0.5]).unwrap(),
                PinBlock::singleton(0),
                PinBlock::homogeneous(vec![2, 5]).unwrap(),
            ],
            1.0,
        )
        .unwrap();
        let p = pinning_matrix(&cfg, 8).unwrap();
        let s = spectrum(&p.matrix).unwrap();
        let mut want = vec![c(0.0); 5];
        want.extend([c(1.0); 3]);
        assert!(close(&s, &want, 1e-9));
    }

    #[test]
    fn transform_homogeneous_pair() {
        let cfg = PinningConfig::new(vec![PinBlock::homogeneous(vec![0, 1]).unwrap()], 1.0).unwrap();
        let t = build_transform(&cfg, 2).unwrap();
        assert_eq!(t.matrix.column(0).as_slice(), &[1.0, 1.0]);
        // proportional to e1 - e2
        assert_eq!(t.matrix.column(1).as_slice(), &[2.0, -2.0]);
        let p = pinning_matrix(&cfg, 2).unwrap();
        let d = t.conjugate(&p.matrix).unwrap();
        assert!((d - DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0])).abs().max() < 1e-12);
    }

    #[test]
    fn transform_singleton_and_skewed() {
        let cfg = PinningConfig::singletons(&[0], 1.0).unwrap();
        assert_eq!(build_transform(&cfg, 1).unwrap().matrix[(0, 0)], 1.0);
        let b = PinBlock::new(vec![0, 1], vec![0.75, 0.25]).unwrap();
        let cfg = PinningConfig::new(vec![b], 1.0).unwrap();
        let t = build_transform(&cfg, 2).unwrap();
        let v = t.matrix.column(1);
        assert_eq!(v.as_slice(), &[1.0 / 0.75, -1.0 / 0.25]);
        assert!((0.75 * v[0] + 0.25 * v[1]).abs() < 1e-15);
    }

    #[test]
    fn reduced_block_example2() {
        let l = laplacian(&example2());
        let rb = reduced_block(&l, &PinningConfig::singletons(&[2], 1.0).unwrap()).unwrap();
        assert_eq!(rb.l22, DMatrix::from_row_slice(2, 2, &[1.0, 0.0, -1.0, 0.5]));
        assert!(close(&rb.spectrum, &[c(0.5), c(1.0)], 1e-12));

        let rb = reduced_block(&l, &PinningConfig::singletons(&[0], 1.0).unwrap()).unwrap();
        assert_eq!(rb.l22, DMatrix::from_row_slice(2, 2, &[0.5, 0.5, 0.5, 0.5]));
        assert!(close(&rb.spectrum, &[c(0.0), c(1.0)], 1e-12));
    }

    #[test]
    fn reduced_spectrum_ignores_null_basis() {
        // any invertible mix of the kernel columns still diagonalizes P
        let l = laplacian(&nearest_neighbor_3body(8, RingOrientation::default()).unwrap());
        let cfg = PinningConfig::new(
            vec![PinBlock::new(vec![1, 4], vec![0.3, 0.7]).unwrap(), PinBlock::singleton(6)],
            1.0,
        )
        .unwrap();
        let rb = reduced_block(&l, &cfg).unwrap();
        let (n, m) = (8, rb.transform.m);
        let mut mix = DMatrix::<f64>::identity(n, n);
        for i in m..n {
            for j in m..n {
                mix[(i, j)] += 0.1 * ((i * 7 + j * 3) % 5) as f64;
            }
        }
        let alt = Transform { matrix: &rb.transform.matrix * mix, ..rb.transform.clone() };
        let p = pinning_matrix(&cfg, n).unwrap();
        let d = alt.conjugate(&p.matrix).unwrap();
        assert!(d.view((m, m), (n - m, n - m)).abs().max() < 1e-12);
        let lbar = alt.conjugate(&permute(&l.matrix, &alt.permutation)).unwrap();
        let s = spectrum(&lbar.view((m, m), (n - m, n - m)).into_owned()).unwrap();
        assert!(close(&s, &rb.spectrum.eigenvalues, 1e-9));
    }

    #[test]
    fn all_pinned_is_empty() {
        let l = laplacian(&example2());
        let rb = reduced_block(&l, &PinningConfig::singletons(&[0, 1, 2], 1.0).unwrap()).unwrap();
        assert_eq!(rb.l22.nrows(), 0);
        assert!(rb.spectrum.is_empty());
    }

    #[test]
    fn m_kappa_zero_gain_is_l() {
        let l = laplacian(&example2());
        let cfg = PinningConfig::singletons(&[0], 1.0).unwrap();
        assert_eq!(m_kappa(&l, &cfg, 0.0).unwrap(), l.matrix);
    }

    #[test]
    fn m_kappa_large_gain_example2() {
        let l = laplacian(&example2());
        let cfg = PinningConfig::singletons(&[2], 1.0).unwrap();
        let s = spectrum(&m_kappa(&l, &cfg, 1e6).unwrap()).unwrap();
        assert!(s.eigenvalues[2].re > 1e5);
        assert!(close(&Spectrum::from_unsorted(s.eigenvalues[..2].to_vec()), &[c(0.5), c(1.0)], 1e-3));
    }

    #[test]
    fn m_kappa_fig2b_is_stable() {
        let h = nearest_neighbor_3body(7, RingOrientation::default()).unwrap();
        let l = laplacian(&h);
        let cfg = PinningConfig::new(
            vec![
                PinBlock::homogeneous(vec![0, 1]).unwrap(),
                PinBlock::homogeneous(vec![2, 3]).unwrap(),
                PinBlock::homogeneous(vec![4, 6]).unwrap(),
            ],
            5.0,
        )
        .unwrap();
        let s = spectrum(&m_kappa(&l, &cfg, 5.0).unwrap()).unwrap();
        assert!(s.min_real() > 0.0, "{:?}", s.eigenvalues);
    }

    #[test]
    fn spectrum_basics() {
        let s = spectrum(&DMatrix::from_row_slice(2, 2, &[1.0, 0.0, -1.0, 0.5])).unwrap();
        assert!(close(&s, &[c(0.5), c(1.0)], 1e-14));
        assert!(s.eigenvalues[0].re < s.eigenvalues[1].re);
        let s = spectrum(&DMatrix::identity(3, 3)).unwrap();
        assert_eq!(s.eigenvalues, vec![c(1.0); 3]);
        // companion matrix of x^2 - x - 1
        let s = spectrum(&DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 1.0])).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(close(&s, &[c(phi), c(1.0 - phi)], 1e-12));
    }

    #[test]
    fn spectrum_sorted_and_conjugate_closed() {
        // rotation plus a real eigenvalue
        let a = DMatrix::from_row_slice(3, 3, &[0.0, -2.0, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0, -1.0]);
        let s = spectrum(&a).unwrap();
        assert_eq!(s.eigenvalues[0], c(-1.0));
        assert!((s.eigenvalues[1] - Complex64::new(0.0, -2.0)).norm() < 1e-12);
        assert!((s.eigenvalues[1].conj() - s.eigenvalues[2]).norm() < 1e-12);
    }

    #[test]
    fn matching() {
        let a = [c(1.0), c(2.0), Complex64::new(0.0, 1.0)];
        let b = [Complex64::new(0.0, 1.1), c(2.05), c(0.99)];
        assert!((match_distance(&a, &b).unwrap() - 0.1).abs() < 1e-12);
        assert!(match_distance(&a, &b[..2]).is_none());
    }

    #[test]
    fn csv_dumps() {
        let mut buf = Vec::new();
        write_matrix_csv(&DMatrix::from_row_slice(1, 2, &[0.1, -2.0]), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "1.0000000000000001e-1,-2.0000000000000000e0\n");
        let mut buf = Vec::new();
        write_spectrum_csv(&Spectrum::from_unsorted(vec![c(1.0)]), &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("re,im\n"));
    }
}
