//! Brute-force references by exhaustive path enumeration.
//!
//! Nothing here touches the recursions in [`crate::distribution`]: the pmf is
//! a softmax over enumerated path scores, marginals and KL are sums over the
//! enumerated paths, and sampling perturbs each whole path with its own
//! Gumbel. These are the ground truth for tests on small graphs.

use rand::Rng;

use crate::dag::{path_score, Dag, EdgeWeights, Path};
use crate::error::{Error, Result};
use crate::gumbel::Gumbel;
use crate::math::softmax;

pub const DEFAULT_PATH_LIMIT: usize = 1_000_000;

/// Every path of a graph with its score and exact probability.
#[derive(Debug, Clone, PartialEq)]
pub struct PathTable {
    pub paths: Vec<Path>,
    pub scores: Vec<f64>,
    pub pmf: Vec<f64>,
    pub alpha: f64,
}

impl PathTable {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Index of `path` in the table.
    pub fn position(&self, path: &Path) -> Option<usize> {
        self.paths.binary_search(path).ok()
    }
}

/// All source-to-sink paths in lexicographic order.
pub fn enumerate_paths(dag: &Dag, limit: usize) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    let mut stack = vec![dag.source()];
    extend(dag, &mut stack, &mut out, limit)?;
    Ok(out)
}

fn extend(dag: &Dag, stack: &mut Vec<usize>, out: &mut Vec<Path>, limit: usize) -> Result<()> {
    let u = *stack.last().expect("non-empty");
    if u == dag.sink() {
        if out.len() == limit {
            return Err(Error::TooManyPaths(limit));
        }
        out.push(Path::new(stack.clone()));
        return Ok(());
    }
    for &e in dag.children(u) {
        stack.push(dag.edge(e).1);
        extend(dag, stack, out, limit)?;
        stack.pop();
    }
    Ok(())
}

pub fn exact_distribution(dag: &Dag, weights: &EdgeWeights, alpha: f64, limit: usize) -> Result<PathTable> {
    let paths = enumerate_paths(dag, limit)?;
    let scores = paths
        .iter()
        .map(|y| path_score(dag, weights, y))
        .collect::<Result<Vec<_>>>()?;
    let scaled: Vec<f64> = scores.iter().map(|s| alpha * s).collect();
    let pmf = softmax(&scaled);
    Ok(PathTable {
        paths,
        scores,
        pmf,
        alpha,
    })
}

/// Per-edge probability mass of the paths through each edge.
pub fn exact_marginals(table: &PathTable, dag: &Dag) -> Vec<f64> {
    let mut omega = vec![0.0; dag.edge_count()];
    for (y, &p) in table.paths.iter().zip(&table.pmf) {
        for e in dag.path_edges(y).expect("table paths belong to the graph") {
            omega[e] += p;
        }
    }
    omega
}

/// Per-node probability mass of the paths visiting each node.
pub fn exact_hitting(table: &PathTable, dag: &Dag) -> Vec<f64> {
    let mut zeta = vec![0.0; dag.node_count()];
    for (y, &p) in table.paths.iter().zip(&table.pmf) {
        for &v in y.nodes() {
            zeta[v] += p;
        }
    }
    zeta
}

/// `sum_y p(y) log(p(y) / q(y))` over tables with the same path list.
pub fn exact_kl(p: &PathTable, q: &PathTable) -> Result<f64> {
    if p.paths != q.paths {
        return Err(Error::PathSetMismatch);
    }
    Ok(p.pmf
        .iter()
        .zip(&q.pmf)
        .filter(|(&a, _)| a > 0.0)
        .map(|(&a, &b)| a * (a / b).ln())
        .sum())
}

/// Argmax over paths of `alpha * score + G`, one unit Gumbel per path.
pub fn gumbel_race_sample<R: Rng + ?Sized>(table: &PathTable, rng: &mut R) -> Path {
    let noise = Gumbel::new(0.0);
    let mut best = (f64::NEG_INFINITY, 0);
    for (k, &s) in table.scores.iter().enumerate() {
        let v = table.alpha * s + noise.sample(rng);
        if v > best.0 {
            best = (v, k);
        }
    }
    table.paths[best.1].clone()
}

/// Total-variation distance between two probability vectors.
pub fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

/// Empirical frequencies of `samples` over the table's paths.
///
/// # Panics
///
/// If a sample is not in the table.
pub fn empirical_pmf(table: &PathTable, samples: &[Path]) -> Vec<f64> {
    let mut counts = vec![0usize; table.len()];
    for y in samples {
        counts[table.position(y).expect("sample is an enumerated path")] += 1;
    }
    let n = samples.len().max(1) as f64;
    counts.into_iter().map(|c| c as f64 / n).collect()
}
