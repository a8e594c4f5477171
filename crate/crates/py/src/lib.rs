//! Python module `gibbspath`: a fitted path distribution with list-in,
//! list-out methods. Node ids and paths are 1-based on the Python side.

use gibbspath::zoo::{lattice_fit_fast, lattice_sample, LatticePath, Parallelism};
use gibbspath::{optimal_path, Dag, DagDocument, EdgeWeights, LatticeKind, LatticeSpec, Path, PathDistribution};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

create_exception!(gibbspath, GibbsPathError, PyValueError, "Raised with args (code, message).");

fn err(e: gibbspath::Error) -> PyErr {
    GibbsPathError::new_err((e.code(), e.to_string()))
}

fn path_arg(nodes: Vec<usize>) -> PyResult<Path> {
    Path::from_one_based(&nodes).map_err(err)
}

#[pyclass(name = "PathDistribution", module = "gibbspath", frozen)]
struct PyPathDistribution {
    inner: PathDistribution,
    lattice: Option<LatticeSpec>,
}

#[pymethods]
impl PyPathDistribution {
    /// Fit from 1-based `(u, v)` pairs and per-edge weights.
    #[staticmethod]
    #[pyo3(signature = (num_nodes, edges, weights, alpha = 1.0))]
    fn from_edges(num_nodes: usize, edges: Vec<(usize, usize)>, weights: Vec<f64>, alpha: f64) -> PyResult<Self> {
        let dag = Dag::new(num_nodes, &edges).map_err(err)?;
        let w = EdgeWeights::new(&dag, weights).map_err(err)?;
        let inner = PathDistribution::fit(dag, w, alpha).map_err(err)?;
        Ok(PyPathDistribution { inner, lattice: None })
    }

    /// Fit from a `{"num_nodes": N, "edges": [[u, v, w], ...]}` document.
    #[staticmethod]
    #[pyo3(signature = (text, alpha = 1.0))]
    fn from_json(text: &str, alpha: f64) -> PyResult<Self> {
        let doc = DagDocument::from_json(text).map_err(|e| GibbsPathError::new_err(("ParseError", e.to_string())))?;
        let (dag, w) = doc.to_parts().map_err(err)?;
        let inner = PathDistribution::fit(dag, w, alpha).map_err(err)?;
        Ok(PyPathDistribution { inner, lattice: None })
    }

    /// Fit a `"dtw"` or `"ma"` lattice from a row-major weight grid.
    #[staticmethod]
    #[pyo3(signature = (kind, rows, cols, weights, alpha = 1.0))]
    fn from_lattice(kind: &str, rows: usize, cols: usize, weights: Vec<f64>, alpha: f64) -> PyResult<Self> {
        let kind: LatticeKind = kind.parse().map_err(err)?;
        let spec = LatticeSpec::new(kind, rows, cols, weights).map_err(err)?;
        let inner = lattice_fit_fast(&spec, alpha, Parallelism::Serial).map_err(err)?;
        Ok(PyPathDistribution {
            inner,
            lattice: Some(spec),
        })
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha()
    }

    #[getter]
    fn num_nodes(&self) -> usize {
        self.inner.dag().node_count()
    }

    /// 1-based `(u, v)` pairs in weight order.
    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.dag().edges().iter().map(|&(u, v)| (u + 1, v + 1)).collect()
    }

    #[getter]
    fn weights(&self) -> Vec<f64> {
        self.inner.weights().as_slice().to_vec()
    }

    fn log_partition(&self) -> f64 {
        self.inner.log_partition()
    }

    #[pyo3(signature = (n, seed = 0))]
    fn sample(&self, n: usize, seed: u64) -> Vec<Vec<usize>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| self.inner.sample_path(&mut rng).to_one_based()).collect()
    }

    /// Row-major 0/1 alignment grids; lattice distributions only.
    #[pyo3(signature = (n, seed = 0))]
    fn sample_alignments(&self, n: usize, seed: u64) -> PyResult<Vec<Vec<u8>>> {
        let spec = self
            .lattice
            .as_ref()
            .ok_or_else(|| GibbsPathError::new_err(("KindMismatch", "distribution was not built from a lattice")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                lattice_sample(&self.inner, spec, &mut rng)
                    .map(|y: LatticePath| y.indicator(spec.rows(), spec.cols()))
                    .map_err(err)
            })
            .collect()
    }

    fn log_prob(&self, path: Vec<usize>) -> PyResult<f64> {
        self.inner.path_log_prob(&path_arg(path)?).map_err(err)
    }

    fn marginals(&self) -> Vec<f64> {
        self.inner.edge_marginals().omega
    }

    fn hitting(&self) -> Vec<f64> {
        self.inner.hitting_probabilities().zeta
    }

    fn grad_log_prob(&self, path: Vec<usize>) -> PyResult<Vec<f64>> {
        self.inner.grad_log_prob(&path_arg(path)?).map_err(err)
    }

    fn reinforce_grad(&self, path: Vec<usize>, reward: f64) -> PyResult<Vec<f64>> {
        self.inner.reinforce_grad(&path_arg(path)?, reward).map_err(err)
    }

    fn kl(&self, other: &PyPathDistribution) -> PyResult<f64> {
        self.inner.kl_divergence(&other.inner).map_err(err)
    }

    fn kl_grad_prior(&self, prior: &PyPathDistribution) -> PyResult<Vec<f64>> {
        self.inner.kl_grad_prior(&prior.inner).map_err(err)
    }

    /// `(gamma, delta)` of a relaxed sample.
    #[pyo3(signature = (tau, seed = 0))]
    fn soft_sample(&self, tau: f64, seed: u64) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = self.inner.soft_sample(tau, &mut rng).map_err(err)?;
        Ok((s.gamma, s.delta))
    }

    /// Highest-scoring path and its score.
    fn optimal(&self) -> (Vec<usize>, f64) {
        let (y, score) = optimal_path(self.inner.dag(), self.inner.weights());
        (y.to_one_based(), score)
    }

    fn __repr__(&self) -> String {
        format!(
            "PathDistribution(num_nodes={}, num_edges={}, alpha={})",
            self.inner.dag().node_count(),
            self.inner.dag().edge_count(),
            self.inner.alpha()
        )
    }
}

#[pymodule]
#[pyo3(name = "gibbspath")]
fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPathDistribution>()?;
    m.add("GibbsPathError", m.py().get_type::<GibbsPathError>())?;
    Ok(())
}
