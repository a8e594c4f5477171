use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dag::{Dag, EdgeWeights};

/// Random DAG on `num_nodes` nodes.
///
/// Each forward pair `i < j` is an edge with probability `edge_probability`,
/// drawn in lexicographic order from a ChaCha8 stream seeded with `seed`.
/// Afterwards every non-source node without a parent gets the edge
/// `(v - 1, v)`, and every non-sink node without a child gets `(u, u + 1)`.
/// The result is sorted lexicographically.
///
/// # Panics
///
/// If `num_nodes < 2` or `edge_probability` is outside `(0, 1]`.
pub fn random_dag(num_nodes: usize, edge_probability: f64, seed: u64) -> Dag {
    assert!(num_nodes >= 2, "random_dag needs at least two nodes");
    assert!(
        edge_probability > 0.0 && edge_probability <= 1.0,
        "edge probability must lie in (0, 1]"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = num_nodes;
    let mut adj = vec![vec![false; n]; n];
    for (u, row) in adj.iter_mut().enumerate() {
        for cell in row.iter_mut().skip(u + 1) {
            *cell = rng.gen::<f64>() < edge_probability;
        }
    }
    for v in 1..n {
        if !(0..v).any(|u| adj[u][v]) {
            adj[v - 1][v] = true;
        }
    }
    for u in (0..n - 1).rev() {
        if !adj[u][u + 1..].iter().any(|&x| x) {
            adj[u][u + 1] = true;
        }
    }
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| adj[u][v])
        .collect();
    Dag::from_forward_edges(n, edges).expect("repaired graph is connected")
}

/// Uniform weights in `[-scale, scale)`.
pub fn random_weights<R: Rng + ?Sized>(dag: &Dag, scale: f64, rng: &mut R) -> EdgeWeights {
    let w = (0..dag.edge_count())
        .map(|_| scale * (2.0 * rng.gen::<f64>() - 1.0))
        .collect();
    EdgeWeights::new(dag, w).expect("finite weights")
}

/// Node `u` links to `u + 1 ..= u + band` (clipped at the sink). Edge count
/// grows linearly in `num_nodes`, which makes it the generic benchmark graph.
pub fn banded_dag(num_nodes: usize, band: usize) -> Dag {
    assert!(num_nodes >= 2 && band >= 1);
    let edges = (0..num_nodes)
        .flat_map(|u| (u + 1..=(u + band).min(num_nodes - 1)).map(move |v| (u, v)))
        .collect();
    Dag::from_forward_edges(num_nodes, edges).expect("banded graph is connected")
}
