//! Alignment lattices: dynamic time warping (→, ↓, ↘ moves) and monotonic
//! alignment (→, ↘ moves) over an `rows x cols` grid of pairwise log-scores.
//!
//! Every edge entering cell `(i, j)` carries the score `w[i, j]`. The source
//! cell has no incoming edge, so `w[1, 1]` shifts every path score equally
//! and does not enter the distribution.
//!
//! Cells are numbered row-major over the reachable region, which is a
//! topological order for both move sets. For DTW every cell is reachable; for
//! monotonic alignment row `i` (0-based) holds columns `i ..= i + cols - rows`.
//! Incoming edges are listed per target cell in move order `→, ↘, ↓`, so the
//! generic [`Dag`] produced here and the dense wavefront kernels agree on the
//! edge index space and on summation order.

use rand::Rng;
use rayon::prelude::*;

use crate::dag::{Dag, EdgeWeights};
use crate::distribution::{check_alpha, draw_categorical, EdgeMarginals, PathDistribution};
use crate::error::{Error, Result};
use crate::math::log_sum_exp;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeKind {
    Dtw,
    MonotonicAlignment,
}

impl LatticeKind {
    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Dtw => "dtw",
            LatticeKind::MonotonicAlignment => "ma",
        }
    }
}

impl std::str::FromStr for LatticeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dtw" => Ok(LatticeKind::Dtw),
            "ma" => Ok(LatticeKind::MonotonicAlignment),
            other => Err(Error::DomainError(format!("unknown lattice kind {other:?}"))),
        }
    }
}

/// Step into a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Right,
    Diagonal,
    Down,
}

impl Move {
    /// Offset of the predecessor cell.
    fn back(self, (i, j): (usize, usize)) -> (usize, usize) {
        match self {
            Move::Right => (i, j - 1),
            Move::Diagonal => (i - 1, j - 1),
            Move::Down => (i - 1, j),
        }
    }
}

/// Lattice shape, kind and a row-major weight grid.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    rows: usize,
    cols: usize,
    kind: LatticeKind,
    weights: Vec<f64>,
}

impl LatticeSpec {
    pub fn new(kind: LatticeKind, rows: usize, cols: usize, weights: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch(format!("empty lattice {rows}x{cols}")));
        }
        if weights.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} lattice needs {} weights, got {}",
                rows * cols,
                weights.len()
            )));
        }
        if let Some(index) = weights.iter().position(|w| !w.is_finite()) {
            return Err(Error::NonFiniteWeight { index });
        }
        if kind == LatticeKind::MonotonicAlignment && rows > cols {
            return Err(Error::RowsExceedCols { rows, cols });
        }
        Ok(LatticeSpec {
            rows,
            cols,
            kind,
            weights,
        })
    }

    pub fn zeros(kind: LatticeKind, rows: usize, cols: usize) -> Result<Self> {
        Self::new(kind, rows, cols, vec![0.0; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    /// Row-major weights.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weight of 0-based cell `(i, j)`.
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.cols + j]
    }

    fn expect_kind(&self, kind: LatticeKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                expected: kind.name(),
                got: self.kind.name(),
            })
        }
    }
}

/// Node numbering and incoming-edge offsets of a lattice graph.
#[derive(Debug, Clone)]
pub struct LatticeLayout {
    rows: usize,
    cols: usize,
    kind: LatticeKind,
    /// Reachable columns per row: `lo(i) ..= lo(i) + width - 1`.
    width: usize,
    /// First incoming edge of each node, plus a final total.
    in_offset: Vec<usize>,
}

impl LatticeLayout {
    pub fn new(spec: &LatticeSpec) -> Self {
        let (rows, cols, kind) = (spec.rows, spec.cols, spec.kind);
        let width = match kind {
            LatticeKind::Dtw => cols,
            LatticeKind::MonotonicAlignment => cols - rows + 1,
        };
        let mut layout = LatticeLayout {
            rows,
            cols,
            kind,
            width,
            in_offset: Vec::with_capacity(rows * width + 1),
        };
        let mut total = 0;
        for node in 0..rows * width {
            layout.in_offset.push(total);
            total += layout.moves_into(layout.cell(node)).len();
        }
        layout.in_offset.push(total);
        layout
    }

    pub fn node_count(&self) -> usize {
        self.rows * self.width
    }

    pub fn edge_count(&self) -> usize {
        self.in_offset[self.node_count()]
    }

    fn row_start(&self, i: usize) -> usize {
        match self.kind {
            LatticeKind::Dtw => 0,
            LatticeKind::MonotonicAlignment => i,
        }
    }

    /// 0-based cell of a node.
    pub fn cell(&self, node: usize) -> (usize, usize) {
        let i = node / self.width;
        (i, self.row_start(i) + node % self.width)
    }

    /// Node of a 0-based cell, if the cell is reachable.
    pub fn node(&self, (i, j): (usize, usize)) -> Option<usize> {
        if i >= self.rows || j >= self.cols {
            return None;
        }
        let lo = self.row_start(i);
        (j >= lo && j < lo + self.width).then(|| i * self.width + j - lo)
    }

    /// Moves that can enter `cell`, in edge order.
    pub fn moves_into(&self, (i, j): (usize, usize)) -> MoveSet {
        let mut set = MoveSet::default();
        let lo = self.row_start(i);
        if j > lo {
            set.push(Move::Right);
        }
        if i > 0 && j > 0 {
            set.push(Move::Diagonal);
        }
        if i > 0 && self.kind == LatticeKind::Dtw {
            set.push(Move::Down);
        }
        set
    }

    /// Edge id of the first edge entering `node`.
    pub fn first_in_edge(&self, node: usize) -> usize {
        self.in_offset[node]
    }

    fn build(&self, spec: &LatticeSpec) -> Result<(Dag, EdgeWeights)> {
        let mut edges = Vec::with_capacity(self.edge_count());
        let mut weights = Vec::with_capacity(self.edge_count());
        for v in 0..self.node_count() {
            let cell = self.cell(v);
            for m in self.moves_into(cell).iter() {
                let u = self.node(m.back(cell)).expect("predecessor is reachable");
                edges.push((u, v));
                weights.push(spec.weight(cell.0, cell.1));
            }
        }
        let dag = Dag::from_forward_edges(self.node_count(), edges)?;
        let w = EdgeWeights::new(&dag, weights)?;
        Ok((dag, w))
    }

    fn check(&self, dist: &PathDistribution) -> Result<()> {
        let dag = dist.dag();
        if dag.node_count() != self.node_count() || dag.edge_count() != self.edge_count() {
            return Err(Error::SpecMismatch(format!(
                "lattice has {} nodes / {} edges, distribution has {} / {}",
                self.node_count(),
                self.edge_count(),
                dag.node_count(),
                dag.edge_count()
            )));
        }
        Ok(())
    }

    /// Wavefronts in sweep order: anti-diagonals for DTW, columns for
    /// monotonic alignment. Cells within one wavefront are independent.
    fn wavefronts(&self) -> Vec<Vec<usize>> {
        match self.kind {
            LatticeKind::Dtw => (0..self.rows + self.cols - 1)
                .map(|d| {
                    let lo = d.saturating_sub(self.cols - 1);
                    let hi = d.min(self.rows - 1);
                    (lo..=hi).map(|i| i * self.width + d - i).collect()
                })
                .collect(),
            LatticeKind::MonotonicAlignment => (0..self.cols)
                .map(|j| {
                    let lo = (j + self.rows).saturating_sub(self.cols);
                    let hi = j.min(self.rows - 1);
                    (lo..=hi)
                        .map(|i| self.node((i, j)).expect("inside band"))
                        .collect()
                })
                .collect(),
        }
    }

    /// Children of `node` sorted by node id (the generic backward-pass order).
    fn out_edges(&self, node: usize) -> MoveTargets {
        let (i, j) = self.cell(node);
        let mut out = MoveTargets::default();
        for (m, cell) in [
            (Move::Right, (i, j + 1)),
            (Move::Down, (i + 1, j)),
            (Move::Diagonal, (i + 1, j + 1)),
        ] {
            if let Some(v) = self.node(cell) {
                if let Some(k) = self.moves_into(cell).position(m) {
                    out.push((v, self.in_offset[v] + k));
                }
            }
        }
        out
    }
}

/// Up to three moves, stack-allocated.
#[derive(Debug, Clone, Copy, Default)]
pub struct MoveSet {
    moves: [Option<Move>; 3],
    len: usize,
}

impl MoveSet {
    fn push(&mut self, m: Move) {
        self.moves[self.len] = Some(m);
        self.len += 1;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Move> + '_ {
        self.moves[..self.len].iter().map(|m| m.expect("filled"))
    }

    fn position(&self, m: Move) -> Option<usize> {
        self.iter().position(|x| x == m)
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct MoveTargets {
    items: [(usize, usize); 3],
    len: usize,
}

impl MoveTargets {
    fn push(&mut self, item: (usize, usize)) {
        self.items[self.len] = item;
        self.len += 1;
    }

    fn as_slice(&self) -> &[(usize, usize)] {
        &self.items[..self.len]
    }
}

/// Sequence of 0-based cells from `(0, 0)` to `(rows - 1, cols - 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    pub cells: Vec<(usize, usize)>,
}

impl LatticePath {
    /// Row-major 0/1 alignment matrix.
    pub fn indicator(&self, rows: usize, cols: usize) -> Vec<u8> {
        let mut grid = vec![0u8; rows * cols];
        for &(i, j) in &self.cells {
            grid[i * cols + j] = 1;
        }
        grid
    }

    /// True when every step is an allowed move of `kind`.
    pub fn follows_moves(&self, kind: LatticeKind) -> bool {
        self.cells.windows(2).all(|w| {
            let (di, dj) = (w[1].0.wrapping_sub(w[0].0), w[1].1.wrapping_sub(w[0].1));
            match (di, dj) {
                (0, 1) | (1, 1) => true,
                (1, 0) => kind == LatticeKind::Dtw,
                _ => false,
            }
        })
    }
}

/// Generic DAG of a DTW lattice.
pub fn dtw_graph(spec: &LatticeSpec) -> Result<(Dag, EdgeWeights)> {
    spec.expect_kind(LatticeKind::Dtw)?;
    LatticeLayout::new(spec).build(spec)
}

/// Generic DAG of a monotonic-alignment lattice, unreachable cells removed.
pub fn ma_graph(spec: &LatticeSpec) -> Result<(Dag, EdgeWeights)> {
    spec.expect_kind(LatticeKind::MonotonicAlignment)?;
    LatticeLayout::new(spec).build(spec)
}

/// Generic DAG of either lattice kind.
pub fn lattice_graph(spec: &LatticeSpec) -> Result<(Dag, EdgeWeights)> {
    LatticeLayout::new(spec).build(spec)
}

/// Whether wavefront cells are evaluated on the rayon pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    #[default]
    Serial,
    Rayon,
}

struct CellUpdate {
    node: usize,
    mu: f64,
    log_pi: [f64; 3],
    len: usize,
}

fn update_cell(
    layout: &LatticeLayout,
    spec: &LatticeSpec,
    alpha: f64,
    mu: &[f64],
    node: usize,
) -> CellUpdate {
    let cell = layout.cell(node);
    let moves = layout.moves_into(cell);
    let aw = alpha * spec.weight(cell.0, cell.1);
    let mut scores = [0.0; 3];
    for (k, m) in moves.iter().enumerate() {
        let u = layout.node(m.back(cell)).expect("predecessor is reachable");
        scores[k] = mu[u] + aw;
    }
    let len = moves.len();
    let m = log_sum_exp(&scores[..len]);
    let mut log_pi = [0.0; 3];
    for k in 0..len {
        log_pi[k] = scores[k] - m;
    }
    CellUpdate {
        node,
        mu: m,
        log_pi,
        len,
    }
}

/// Runs `compute` over each wavefront (optionally in parallel), then folds the
/// results into `state` before moving to the next wavefront.
fn sweep<S, U, C, A>(fronts: &[Vec<usize>], par: Parallelism, state: &mut S, compute: C, apply: A)
where
    S: Sync,
    U: Send,
    C: Fn(&S, usize) -> U + Sync,
    A: Fn(&mut S, U),
{
    for front in fronts {
        let s: &S = state;
        let updates: Vec<U> = match par {
            Parallelism::Serial => front.iter().map(|&n| compute(s, n)).collect(),
            Parallelism::Rayon => front.par_iter().map(|&n| compute(s, n)).collect(),
        };
        for u in updates {
            apply(state, u);
        }
    }
}

fn fit_fast(spec: &LatticeSpec, alpha: f64, par: Parallelism) -> Result<PathDistribution> {
    check_alpha(alpha)?;
    let layout = LatticeLayout::new(spec);
    let (dag, weights) = layout.build(spec)?;
    let mut state = (vec![0.0; layout.node_count()], vec![0.0; layout.edge_count()]);
    let fronts = layout.wavefronts();
    // the source is the whole first wavefront and keeps mu = 0
    sweep(
        &fronts[1..],
        par,
        &mut state,
        |(mu, _), node| update_cell(&layout, spec, alpha, mu, node),
        |(mu, log_pi), c| {
            mu[c.node] = c.mu;
            let off = layout.in_offset[c.node];
            log_pi[off..off + c.len].copy_from_slice(&c.log_pi[..c.len]);
        },
    );
    let (mu, log_pi) = state;
    Ok(PathDistribution::from_tables(dag, weights, alpha, mu, log_pi))
}

/// Potentials and transitions of a DTW lattice by anti-diagonal sweeps.
pub fn dtw_fit_fast(spec: &LatticeSpec, alpha: f64) -> Result<PathDistribution> {
    spec.expect_kind(LatticeKind::Dtw)?;
    fit_fast(spec, alpha, Parallelism::Serial)
}

/// Potentials and transitions of a monotonic-alignment lattice by column sweeps.
pub fn ma_fit_fast(spec: &LatticeSpec, alpha: f64) -> Result<PathDistribution> {
    spec.expect_kind(LatticeKind::MonotonicAlignment)?;
    fit_fast(spec, alpha, Parallelism::Serial)
}

/// Wavefront fit for either kind with a chosen parallelism. Results do not
/// depend on `par`.
pub fn lattice_fit_fast(spec: &LatticeSpec, alpha: f64, par: Parallelism) -> Result<PathDistribution> {
    fit_fast(spec, alpha, par)
}

/// Samples an alignment by walking moves backwards from the last cell.
///
/// Consumes randomness exactly like [`PathDistribution::sample_path`], so both
/// return the same path for the same stream.
pub fn lattice_sample<R: Rng + ?Sized>(
    dist: &PathDistribution,
    spec: &LatticeSpec,
    rng: &mut R,
) -> Result<LatticePath> {
    let layout = LatticeLayout::new(spec);
    layout.check(dist)?;
    let log_pi = dist.log_pi();
    let mut cell = (spec.rows - 1, spec.cols - 1);
    let mut cells = vec![cell];
    let mut moves = [Move::Right; 3];
    while cell != (0, 0) {
        let node = layout.node(cell).expect("walk stays in the lattice");
        let set = layout.moves_into(cell);
        for (k, m) in set.iter().enumerate() {
            moves[k] = m;
        }
        let off = layout.in_offset[node];
        let k = draw_categorical(&log_pi[off..off + set.len()], rng);
        cell = moves[k].back(cell);
        cells.push(cell);
    }
    cells.reverse();
    Ok(LatticePath { cells })
}

/// Edge marginals by wavefront sweeps over the lattice.
pub fn lattice_marginals(dist: &PathDistribution, spec: &LatticeSpec) -> Result<EdgeMarginals> {
    lattice_marginals_with(dist, spec, Parallelism::Serial)
}

pub fn lattice_marginals_with(
    dist: &PathDistribution,
    spec: &LatticeSpec,
    par: Parallelism,
) -> Result<EdgeMarginals> {
    let layout = LatticeLayout::new(spec);
    layout.check(dist)?;
    let n = layout.node_count();
    let pi: Vec<f64> = dist.log_pi().iter().map(|lp| lp.exp()).collect();
    let fronts = layout.wavefronts();

    let set = |state: &mut Vec<f64>, (node, x): (usize, f64)| state[node] = x;

    let mut lambda = vec![0.0; n];
    lambda[0] = 1.0;
    sweep(&fronts[1..], par, &mut lambda, |s, node| {
        let cell = layout.cell(node);
        let off = layout.in_offset[node];
        let total = layout
            .moves_into(cell)
            .iter()
            .enumerate()
            .map(|(k, m)| s[layout.node(m.back(cell)).expect("reachable")] * pi[off + k])
            .sum();
        (node, total)
    }, set);

    let mut rho = vec![0.0; n];
    rho[n - 1] = 1.0;
    let back_fronts: Vec<Vec<usize>> = fronts[..fronts.len() - 1].iter().rev().cloned().collect();
    sweep(&back_fronts, par, &mut rho, |s, node| {
        let total = layout
            .out_edges(node)
            .as_slice()
            .iter()
            .map(|&(v, e)| s[v] * pi[e])
            .sum();
        (node, total)
    }, set);

    let mut omega = vec![0.0; layout.edge_count()];
    for (v, &rv) in rho.iter().enumerate().take(n) {
        let cell = layout.cell(v);
        let off = layout.in_offset[v];
        for (k, m) in layout.moves_into(cell).iter().enumerate() {
            let u = layout.node(m.back(cell)).expect("reachable");
            omega[off + k] = pi[off + k] * lambda[u] * rv;
        }
    }
    Ok(EdgeMarginals { omega, lambda, rho })
}
