//! Topologically numbered DAGs with a single source and sink, their edge
//! weights, and source-to-sink paths.
//!
//! Internally nodes are 0-based (`0` is the source, `n - 1` the sink). The JSON
//! interchange format and all error messages use 1-based ids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated DAG whose node order is topological.
///
/// Edges keep their construction order; that order is the index space for
/// [`EdgeWeights`] and every per-edge output in the crate. Parent lists keep
/// edge order, child lists are sorted by target node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    parent_offsets: Vec<usize>,
    parent_edges: Vec<usize>,
    child_offsets: Vec<usize>,
    child_edges: Vec<usize>,
}

fn csr(node_count: usize, keys: impl Iterator<Item = usize> + Clone) -> (Vec<usize>, Vec<usize>) {
    let mut offsets = vec![0usize; node_count + 1];
    for k in keys.clone() {
        offsets[k + 1] += 1;
    }
    for i in 0..node_count {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut items = vec![0usize; offsets[node_count]];
    for (e, k) in keys.enumerate() {
        items[fill[k]] = e;
        fill[k] += 1;
    }
    (offsets, items)
}

impl Dag {
    /// Builds a DAG from 1-based `(u, v)` pairs.
    ///
    /// Checks run in this order: node range, forward direction, duplicates,
    /// then connectivity. With topologically numbered nodes a forward edge can
    /// neither enter node 1 nor leave node N, so the forward check also covers
    /// the endpoint rule.
    /// Connectivity reports the smallest node unreachable from the source,
    /// then the smallest node that cannot reach the sink.
    pub fn new(node_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if node_count < 2 || edges.is_empty() {
            return Err(Error::NoPath);
        }
        let mut zero_based = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > node_count || v > node_count {
                return Err(Error::NodeOutOfRange { u, v, n: node_count });
            }
            if u >= v {
                return Err(Error::EdgeNotForward { u, v });
            }
            zero_based.push((u - 1, v - 1));
        }
        Self::from_forward_edges(node_count, zero_based)
    }

    /// Builds from 0-based edges already known to satisfy `u < v` and range.
    pub(crate) fn from_forward_edges(node_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if node_count < 2 || edges.is_empty() {
            return Err(Error::NoPath);
        }
        let (parent_offsets, parent_edges) = csr(node_count, edges.iter().map(|&(_, v)| v));
        let (child_offsets, mut child_edges) = csr(node_count, edges.iter().map(|&(u, _)| u));
        for u in 0..node_count {
            let row = &mut child_edges[child_offsets[u]..child_offsets[u + 1]];
            row.sort_unstable_by_key(|&e| edges[e].1);
            if let Some(w) = row.windows(2).find(|w| edges[w[0]].1 == edges[w[1]].1) {
                let (u, v) = edges[w[0]];
                return Err(Error::DuplicateEdge { u: u + 1, v: v + 1 });
            }
        }
        let dag = Dag {
            node_count,
            edges,
            parent_offsets,
            parent_edges,
            child_offsets,
            child_edges,
        };
        dag.check_connectivity()?;
        Ok(dag)
    }

    fn check_connectivity(&self) -> Result<()> {
        let n = self.node_count;
        let mut forward = vec![false; n];
        forward[0] = true;
        for v in 1..n {
            forward[v] = self.parents(v).iter().any(|&e| forward[self.edges[e].0]);
        }
        if let Some(v) = forward.iter().position(|&r| !r) {
            return Err(Error::DisconnectedNode(v + 1));
        }
        let mut backward = vec![false; n];
        backward[n - 1] = true;
        for u in (0..n - 1).rev() {
            backward[u] = self.children(u).iter().any(|&e| backward[self.edges[e].1]);
        }
        if let Some(u) = backward.iter().position(|&r| !r) {
            return Err(Error::DisconnectedNode(u + 1));
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn source(&self) -> usize {
        0
    }

    pub fn sink(&self) -> usize {
        self.node_count - 1
    }

    /// 0-based endpoints of edge `e`.
    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge ids entering `v`, in construction order.
    pub fn parents(&self, v: usize) -> &[usize] {
        &self.parent_edges[self.parent_offsets[v]..self.parent_offsets[v + 1]]
    }

    /// Edge ids leaving `u`, sorted by target node.
    pub fn children(&self, u: usize) -> &[usize] {
        &self.child_edges[self.child_offsets[u]..self.child_offsets[u + 1]]
    }

    /// Edge id of `(u, v)` (0-based), if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.node_count {
            return None;
        }
        let row = self.children(u);
        row.binary_search_by_key(&v, |&e| self.edges[e].1)
            .ok()
            .map(|k| row[k])
    }

    /// Edge ids traversed by `path`, validating it against this graph.
    pub fn path_edges(&self, path: &Path) -> Result<Vec<usize>> {
        let nodes = path.nodes();
        match (nodes.first(), nodes.last()) {
            (Some(&first), Some(&last)) if first == self.source() && last == self.sink() => {}
            _ => {
                return Err(Error::InvalidPath(format!(
                    "path {path} must run from 1 to {}",
                    self.node_count
                )))
            }
        }
        nodes
            .windows(2)
            .map(|w| {
                self.edge_index(w[0], w[1]).ok_or_else(|| {
                    Error::InvalidPath(format!("({}, {}) is not an edge", w[0] + 1, w[1] + 1))
                })
            })
            .collect()
    }

    /// Number of source-to-sink paths, saturating at `u128::MAX`.
    pub fn count_paths(&self) -> u128 {
        let mut count = vec![0u128; self.node_count];
        count[0] = 1;
        for v in 1..self.node_count {
            count[v] = self
                .parents(v)
                .iter()
                .fold(0u128, |acc, &e| acc.saturating_add(count[self.edges[e].0]));
        }
        count[self.sink()]
    }
}

/// Per-edge log-scores, indexed like [`Dag::edges`]. Always finite.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWeights(Vec<f64>);

impl EdgeWeights {
    pub fn new(dag: &Dag, values: Vec<f64>) -> Result<Self> {
        if values.len() != dag.edge_count() {
            return Err(Error::WeightCountMismatch {
                expected: dag.edge_count(),
                got: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|w| !w.is_finite()) {
            return Err(Error::NonFiniteWeight { index });
        }
        Ok(EdgeWeights(values))
    }

    pub fn zeros(dag: &Dag) -> Self {
        EdgeWeights(vec![0.0; dag.edge_count()])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Index<usize> for EdgeWeights {
    type Output = f64;

    fn index(&self, e: usize) -> &f64 {
        &self.0[e]
    }
}

/// A node sequence, 0-based. Validity is checked against a [`Dag`] by
/// [`Dag::path_edges`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(nodes: Vec<usize>) -> Self {
        Path(nodes)
    }

    /// Builds from 1-based node ids. Returns `InvalidPath` on a zero id.
    pub fn from_one_based(nodes: &[usize]) -> Result<Self> {
        nodes
            .iter()
            .map(|&v| {
                v.checked_sub(1)
                    .ok_or_else(|| Error::InvalidPath("node ids are 1-based".into()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Path)
    }

    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for Path {
    /// 1-based ids joined by `-`, e.g. `1-2-4`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("-")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

/// Sum of the edge weights along `path`.
pub fn path_score(dag: &Dag, weights: &EdgeWeights, path: &Path) -> Result<f64> {
    Ok(dag.path_edges(path)?.iter().map(|&e| weights[e]).sum())
}

/// Highest-scoring path by max-plus recursion in topological order.
///
/// Ties go to the parent with the smallest node id.
pub fn optimal_path(dag: &Dag, weights: &EdgeWeights) -> (Path, f64) {
    let n = dag.node_count();
    let mut best = vec![f64::NEG_INFINITY; n];
    let mut arg = vec![usize::MAX; n];
    best[0] = 0.0;
    for v in 1..n {
        for &e in dag.parents(v) {
            let u = dag.edge(e).0;
            let cand = best[u] + weights[e];
            if cand > best[v] || (cand == best[v] && u < arg[v]) {
                best[v] = cand;
                arg[v] = u;
            }
        }
    }
    let mut nodes = vec![dag.sink()];
    let mut v = dag.sink();
    while v != 0 {
        v = arg[v];
        nodes.push(v);
    }
    nodes.reverse();
    (Path(nodes), best[dag.sink()])
}

/// JSON interchange document: `{"num_nodes": N, "edges": [[u, v, w], ...]}`
/// with 1-based node ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DagDocument {
    pub num_nodes: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl DagDocument {
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serialises")
    }

    pub fn from_parts(dag: &Dag, weights: &EdgeWeights) -> Self {
        DagDocument {
            num_nodes: dag.node_count(),
            edges: dag
                .edges()
                .iter()
                .zip(weights.as_slice())
                .map(|(&(u, v), &w)| (u + 1, v + 1, w))
                .collect(),
        }
    }

    /// Validates the document into a graph and its weights.
    pub fn to_parts(&self) -> Result<(Dag, EdgeWeights)> {
        let pairs: Vec<_> = self.edges.iter().map(|&(u, v, _)| (u, v)).collect();
        let dag = Dag::new(self.num_nodes, &pairs)?;
        let weights = EdgeWeights::new(&dag, self.edges.iter().map(|e| e.2).collect())?;
        Ok((dag, weights))
    }
}
