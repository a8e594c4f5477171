//! The Gibbs distribution over source-to-sink paths,
//! `p(y) ∝ exp(alpha * score(y))`, and everything computable from its node
//! potentials in linear time.
//!
//! Fitting runs one topological pass:
//!
//! ```text
//! mu[source] = 0
//! mu[v]      = logsumexp_{u in P(v)} (mu[u] + alpha * w[u, v])
//! log_pi[e]  = mu[u] + alpha * w[u, v] - mu[v]          for e = (u, v)
//! ```
//!
//! `mu[v]` is the location of the max of Gumbel-perturbed partial path scores
//! ending at `v`, so `mu[sink]` is the log-partition function and `pi[u, v]`
//! is the probability that a path through `v` arrived from `u`. Paths are
//! sampled backwards from the sink with these transitions.

use rand::Rng;

use crate::dag::{Dag, EdgeWeights, Path};
use crate::error::{Error, Result};
use crate::gumbel::{binary_gumbel_softmax, open_unit_uniform, Gumbel};
use crate::math::log_sum_exp;

const KL_NEGATIVE_GUARD: f64 = 1e-12;
const ZETA_CLIP: f64 = 1e-12;

/// A fitted Gibbs path distribution. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PathDistribution {
    dag: Dag,
    weights: EdgeWeights,
    alpha: f64,
    mu: Vec<f64>,
    log_pi: Vec<f64>,
}

/// Per-edge marginals `omega[u, v] = pi[u, v] * lambda[u] * rho[v]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeMarginals {
    pub omega: Vec<f64>,
    pub lambda: Vec<f64>,
    pub rho: Vec<f64>,
}

/// Probability that a random path visits each node.
#[derive(Debug, Clone, PartialEq)]
pub struct HittingProbabilities {
    pub zeta: Vec<f64>,
}

/// A relaxed path: soft node indicators `gamma` and soft transitions `delta`.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftPath {
    pub gamma: Vec<f64>,
    pub delta: Vec<f64>,
    pub tau: f64,
}

impl SoftPath {
    /// Nodes with `gamma > 0.5`, if they form a valid path of `dag`.
    pub fn rounded_path(&self, dag: &Dag) -> Option<Path> {
        let nodes: Vec<usize> = (0..self.gamma.len()).filter(|&v| self.gamma[v] > 0.5).collect();
        let path = Path::new(nodes);
        dag.path_edges(&path).ok().map(|_| path)
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveAlpha(alpha))
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if tau > 0.0 && tau.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveTau(tau))
    }
}

/// Categorical draw over log-probabilities presented in order.
///
/// A single option consumes no randomness; otherwise exactly one uniform is
/// drawn. Both the generic and the lattice samplers go through here so they
/// produce identical streams.
pub(crate) fn draw_categorical<R: Rng + ?Sized>(log_probs: &[f64], rng: &mut R) -> usize {
    if log_probs.len() == 1 {
        return 0;
    }
    let u = open_unit_uniform(rng);
    let mut acc = 0.0;
    for (k, &lp) in log_probs.iter().enumerate() {
        acc += lp.exp();
        if u < acc {
            return k;
        }
    }
    // rounding left the cumulative sum just below u
    log_probs
        .iter()
        .rposition(|lp| lp.is_finite())
        .unwrap_or(log_probs.len() - 1)
}

impl PathDistribution {
    /// Fits node potentials and log-transitions in one topological pass.
    pub fn fit(dag: Dag, weights: EdgeWeights, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if weights.len() != dag.edge_count() {
            return Err(Error::WeightCountMismatch {
                expected: dag.edge_count(),
                got: weights.len(),
            });
        }
        let n = dag.node_count();
        let mut mu = vec![0.0; n];
        let mut log_pi = vec![0.0; dag.edge_count()];
        let mut scratch = Vec::new();
        for v in 1..n {
            scratch.clear();
            scratch.extend(
                dag.parents(v)
                    .iter()
                    .map(|&e| mu[dag.edge(e).0] + alpha * weights[e]),
            );
            let m = log_sum_exp(&scratch);
            mu[v] = m;
            for (&e, &s) in dag.parents(v).iter().zip(&scratch) {
                log_pi[e] = s - m;
            }
        }
        Ok(PathDistribution {
            dag,
            weights,
            alpha,
            mu,
            log_pi,
        })
    }

    /// Assembles a distribution from precomputed tables (lattice kernels).
    pub(crate) fn from_tables(
        dag: Dag,
        weights: EdgeWeights,
        alpha: f64,
        mu: Vec<f64>,
        log_pi: Vec<f64>,
    ) -> Self {
        debug_assert_eq!(mu.len(), dag.node_count());
        debug_assert_eq!(log_pi.len(), dag.edge_count());
        PathDistribution {
            dag,
            weights,
            alpha,
            mu,
            log_pi,
        }
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn weights(&self) -> &EdgeWeights {
        &self.weights
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Per-node log-potentials.
    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    /// Per-edge log transition probabilities, normalised over each node's parents.
    pub fn log_pi(&self) -> &[f64] {
        &self.log_pi
    }

    /// `log sum_y exp(alpha * score(y))`.
    pub fn log_partition(&self) -> f64 {
        self.mu[self.dag.sink()]
    }

    /// Draws a path by walking parents backwards from the sink.
    pub fn sample_path<R: Rng + ?Sized>(&self, rng: &mut R) -> Path {
        let mut v = self.dag.sink();
        let mut nodes = vec![v];
        let mut scratch = Vec::with_capacity(4);
        while v != self.dag.source() {
            let parents = self.dag.parents(v);
            scratch.clear();
            scratch.extend(parents.iter().map(|&e| self.log_pi[e]));
            let k = draw_categorical(&scratch, rng);
            v = self.dag.edge(parents[k]).0;
            nodes.push(v);
        }
        nodes.reverse();
        Path::new(nodes)
    }

    /// `log p(y)` as the sum of log-transitions along the path.
    pub fn path_log_prob(&self, path: &Path) -> Result<f64> {
        Ok(self.dag.path_edges(path)?.iter().map(|&e| self.log_pi[e]).sum())
    }

    /// Edge marginals from a forward (`lambda`) and a backward (`rho`) pass.
    pub fn edge_marginals(&self) -> EdgeMarginals {
        let dag = &self.dag;
        let n = dag.node_count();
        let pi: Vec<f64> = self.log_pi.iter().map(|lp| lp.exp()).collect();
        let mut lambda = vec![0.0; n];
        lambda[0] = 1.0;
        for v in 1..n {
            lambda[v] = dag
                .parents(v)
                .iter()
                .map(|&e| lambda[dag.edge(e).0] * pi[e])
                .sum();
        }
        let mut rho = vec![0.0; n];
        rho[n - 1] = 1.0;
        for u in (0..n - 1).rev() {
            rho[u] = dag
                .children(u)
                .iter()
                .map(|&e| rho[dag.edge(e).1] * pi[e])
                .sum();
        }
        let omega = dag
            .edges()
            .iter()
            .zip(&pi)
            .map(|(&(u, v), &p)| p * lambda[u] * rho[v])
            .collect();
        EdgeMarginals { omega, lambda, rho }
    }

    /// Node hitting probabilities by a reverse topological pass.
    pub fn hitting_probabilities(&self) -> HittingProbabilities {
        let dag = &self.dag;
        let n = dag.node_count();
        let mut zeta = vec![0.0; n];
        zeta[n - 1] = 1.0;
        for u in (0..n - 1).rev() {
            zeta[u] = dag
                .children(u)
                .iter()
                .map(|&e| zeta[dag.edge(e).1] * self.log_pi[e].exp())
                .sum();
        }
        HittingProbabilities { zeta }
    }

    fn check_same_family(&self, other: &PathDistribution) -> Result<()> {
        if self.dag != other.dag {
            return Err(Error::GraphMismatch);
        }
        if self.alpha != other.alpha {
            return Err(Error::AlphaMismatch {
                p: self.alpha,
                q: other.alpha,
            });
        }
        Ok(())
    }

    /// `KL(self || other)` in closed form from log-partitions and `self`'s
    /// edge marginals.
    ///
    /// Small negative results from cancellation are clamped to zero; the guard
    /// band is `1e-12` scaled by the magnitude of the summed terms.
    pub fn kl_divergence(&self, other: &PathDistribution) -> Result<f64> {
        self.check_same_family(other)?;
        let omega = self.edge_marginals().omega;
        let mut cross = 0.0;
        let mut scale = self.log_partition().abs() + other.log_partition().abs();
        for (e, &o) in omega.iter().enumerate() {
            let term = self.alpha * o * (self.weights[e] - other.weights[e]);
            cross += term;
            scale += term.abs();
        }
        let kl = other.log_partition() - self.log_partition() + cross;
        if kl >= 0.0 {
            Ok(kl)
        } else if kl >= -KL_NEGATIVE_GUARD * scale.max(1.0) {
            Ok(0.0)
        } else {
            Err(Error::NumericalInconsistency(format!("KL evaluated to {kl}")))
        }
    }

    /// `d log p(y) / d w = alpha * (1[e in y] - omega)`.
    pub fn grad_log_prob(&self, path: &Path) -> Result<Vec<f64>> {
        let on_path = self.dag.path_edges(path)?;
        let mut grad: Vec<f64> = self
            .edge_marginals()
            .omega
            .iter()
            .map(|&o| -self.alpha * o)
            .collect();
        for e in on_path {
            grad[e] += self.alpha;
        }
        Ok(grad)
    }

    /// Score-function (REINFORCE) term `reward * grad log p(y)`.
    pub fn reinforce_grad(&self, path: &Path, reward: f64) -> Result<Vec<f64>> {
        if !reward.is_finite() {
            return Err(Error::DomainError(format!("reward must be finite, got {reward}")));
        }
        Ok(self
            .grad_log_prob(path)?
            .into_iter()
            .map(|g| reward * g)
            .collect())
    }

    /// Gradient of `KL(self || prior)` with respect to the prior's weights:
    /// `alpha * (omega_prior - omega_self)`.
    pub fn kl_grad_prior(&self, prior: &PathDistribution) -> Result<Vec<f64>> {
        self.check_same_family(prior)?;
        let p = self.edge_marginals().omega;
        let q = prior.edge_marginals().omega;
        Ok(q.iter().zip(&p).map(|(a, b)| self.alpha * (a - b)).collect())
    }

    /// Monte-Carlo score-function estimate of the gradient of
    /// `KL(self || prior)` with respect to `self`'s weights.
    ///
    /// Averages `(log p(y) - log q(y)) * grad log p(y)` over `samples` draws.
    pub fn kl_grad_posterior_mc<R: Rng + ?Sized>(
        &self,
        prior: &PathDistribution,
        samples: usize,
        rng: &mut R,
    ) -> Result<Vec<f64>> {
        self.check_same_family(prior)?;
        let omega = self.edge_marginals().omega;
        let mut acc = vec![0.0; omega.len()];
        for _ in 0..samples {
            let y = self.sample_path(rng);
            let edges = self.dag.path_edges(&y)?;
            let lp: f64 = edges.iter().map(|&e| self.log_pi[e]).sum();
            let lq: f64 = edges.iter().map(|&e| prior.log_pi[e]).sum();
            let r = lp - lq;
            for (a, &o) in acc.iter_mut().zip(&omega) {
                *a -= r * self.alpha * o;
            }
            for e in edges {
                acc[e] += r * self.alpha;
            }
        }
        let n = samples.max(1) as f64;
        Ok(acc.into_iter().map(|a| a / n).collect())
    }

    /// Relaxed path sample at temperature `tau`.
    ///
    /// Each edge gets an independent unit Gumbel. For every node `v`, the
    /// backward choice of parent is relaxed into
    /// `delta[u, v] = softmax_{u in P(v)} ((log_pi[u, v] + G[u, v]) / tau)`,
    /// and soft indicators follow `gamma[sink] = 1`,
    /// `gamma[u] = sum_{v in C(u)} gamma[v] * delta[u, v]`. As `tau -> 0`
    /// this is the hard backward sampler.
    pub fn soft_sample<R: Rng + ?Sized>(&self, tau: f64, rng: &mut R) -> Result<SoftPath> {
        check_tau(tau)?;
        let dag = &self.dag;
        let n = dag.node_count();
        let noise = Gumbel::new(0.0);
        let perturbed: Vec<f64> = self
            .log_pi
            .iter()
            .map(|&lp| (lp + noise.sample(rng)) / tau)
            .collect();
        let mut delta = vec![0.0; dag.edge_count()];
        let mut scratch = Vec::new();
        for v in 1..n {
            let parents = dag.parents(v);
            scratch.clear();
            scratch.extend(parents.iter().map(|&e| perturbed[e]));
            let m = log_sum_exp(&scratch);
            for (&e, &s) in parents.iter().zip(&scratch) {
                delta[e] = (s - m).exp();
            }
        }
        let mut gamma = vec![0.0; n];
        gamma[n - 1] = 1.0;
        for u in (0..n - 1).rev() {
            gamma[u] = dag
                .children(u)
                .iter()
                .map(|&e| gamma[dag.edge(e).1] * delta[e])
                .sum();
        }
        Ok(SoftPath { gamma, delta, tau })
    }

    /// Independent relaxed Bernoulli(`zeta[v]`) per node.
    ///
    /// The endpoints and any node with `zeta` within `1e-12` of 1 are fixed
    /// at 1; other hitting probabilities are clipped into `[1e-12, 1 - 1e-12]`.
    pub fn node_bernoulli_soft<R: Rng + ?Sized>(&self, tau: f64, rng: &mut R) -> Result<Vec<f64>> {
        check_tau(tau)?;
        let zeta = self.hitting_probabilities().zeta;
        let last = zeta.len() - 1;
        zeta.iter()
            .enumerate()
            .map(|(v, &z)| {
                if v == 0 || v == last || z >= 1.0 - ZETA_CLIP {
                    Ok(1.0)
                } else {
                    let z = z.clamp(ZETA_CLIP, 1.0 - ZETA_CLIP);
                    binary_gumbel_softmax(z, tau, rng)
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn diamond(w: [f64; 4]) -> PathDistribution {
        let dag = Dag::new(4, &[(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        let w = EdgeWeights::new(&dag, w.to_vec()).unwrap();
        PathDistribution::fit(dag, w, 1.0).unwrap()
    }

    fn chain(w: Vec<f64>) -> PathDistribution {
        let dag = Dag::new(3, &[(1, 2), (2, 3)]).unwrap();
        let w = EdgeWeights::new(&dag, w).unwrap();
        PathDistribution::fit(dag, w, 1.0).unwrap()
    }

    fn y(nodes: &[usize]) -> Path {
        Path::from_one_based(nodes).unwrap()
    }

    // e^2 / (e^2 + 1), hand-checkable from the two diamond paths
    const P_TOP: f64 = 0.880_797_077_977_882_3;

    #[test]
    fn fit_chain_and_diamond() {
        let d = chain(vec![0.0, 0.0]);
        assert_eq!(d.mu(), &[0.0, 0.0, 0.0]);
        assert_eq!(d.log_pi(), &[0.0, 0.0]);

        let d = diamond([1.0, 0.0, 1.0, 0.0]);
        assert_abs_diff_eq!(d.log_partition(), (1.0 + 2f64.exp()).ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(d.log_pi()[2].exp(), P_TOP, epsilon = 1e-14);

        let d = diamond([0.0; 4]);
        assert_abs_diff_eq!(d.log_partition(), 2f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(d.log_pi()[2].exp(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d.log_pi()[3].exp(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn fit_rejects_bad_alpha() {
        let dag = Dag::new(2, &[(1, 2)]).unwrap();
        for a in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            let err = PathDistribution::fit(dag.clone(), EdgeWeights::zeros(&dag), a).unwrap_err();
            assert_eq!(err.code(), "NonPositiveAlpha");
        }
    }

    #[test]
    fn log_prob_values() {
        assert_eq!(chain(vec![0.3, -2.0]).path_log_prob(&y(&[1, 2, 3])).unwrap(), 0.0);
        let d = diamond([1.0, 0.0, 1.0, 0.0]);
        assert_abs_diff_eq!(d.path_log_prob(&y(&[1, 2, 4])).unwrap(), P_TOP.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(
            d.path_log_prob(&y(&[1, 3, 4])).unwrap(),
            (1.0 - P_TOP).ln(),
            epsilon = 1e-13
        );
        assert!(d.path_log_prob(&y(&[1, 4])).is_err());
    }

    #[test]
    fn chain_always_samples_the_same_path() {
        let d = chain(vec![1.0, 2.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..20 {
            assert_eq!(d.sample_path(&mut rng), y(&[1, 2, 3]));
        }
    }

    #[test]
    fn diamond_sample_frequencies() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for (w, want) in [([0.0; 4], 0.5), ([1.0, 0.0, 1.0, 0.0], P_TOP)] {
            let d = diamond(w);
            let n = 100_000;
            let top = (0..n).filter(|_| d.sample_path(&mut rng) == y(&[1, 2, 4])).count();
            assert_abs_diff_eq!(top as f64 / n as f64, want, epsilon = 0.01);
        }
    }

    #[test]
    fn marginals_and_hitting() {
        let d = chain(vec![0.4, 0.1]);
        let m = d.edge_marginals();
        assert_eq!(m.omega, vec![1.0, 1.0]);
        assert_eq!(m.lambda, vec![1.0; 3]);
        assert_eq!(m.rho, vec![1.0; 3]);
        assert_eq!(d.hitting_probabilities().zeta, vec![1.0; 3]);

        let d = diamond([1.0, 0.0, 1.0, 0.0]);
        let m = d.edge_marginals();
        let want = [P_TOP, 1.0 - P_TOP, P_TOP, 1.0 - P_TOP];
        for (o, w) in m.omega.iter().zip(want) {
            assert_abs_diff_eq!(*o, w, epsilon = 1e-14);
        }
        let z = d.hitting_probabilities().zeta;
        assert_abs_diff_eq!(z[1], P_TOP, epsilon = 1e-14);
        assert_abs_diff_eq!(z[2], 1.0 - P_TOP, epsilon = 1e-14);

        let m = diamond([0.0; 4]).edge_marginals();
        assert!(m.omega.iter().all(|&o| (o - 0.5).abs() < 1e-15));
    }

    #[test]
    fn kl_examples() {
        let p = diamond([1.0, 0.0, 1.0, 0.0]);
        let q = diamond([0.0; 4]);
        assert_eq!(p.kl_divergence(&p).unwrap(), 0.0);
        // p ln(2p) + (1-p) ln(2(1-p))
        let want = P_TOP * (2.0 * P_TOP).ln() + (1.0 - P_TOP) * (2.0 * (1.0 - P_TOP)).ln();
        assert_abs_diff_eq!(p.kl_divergence(&q).unwrap(), want, epsilon = 1e-12);
        assert_abs_diff_eq!(want, 0.327_813_325_472_737_7, epsilon = 1e-15);

        assert_eq!(chain(vec![3.0, -1.0]).kl_divergence(&chain(vec![0.0, 5.0])).unwrap(), 0.0);

        let other_alpha = PathDistribution::fit(q.dag().clone(), q.weights().clone(), 2.0).unwrap();
        assert_eq!(p.kl_divergence(&other_alpha).unwrap_err().code(), "AlphaMismatch");
        let c = chain(vec![0.0, 0.0]);
        assert_eq!(p.kl_divergence(&c).unwrap_err(), Error::GraphMismatch);
    }

    #[test]
    fn gradient_examples() {
        assert!(chain(vec![1.0, 2.0])
            .grad_log_prob(&y(&[1, 2, 3]))
            .unwrap()
            .iter()
            .all(|&g| g == 0.0));

        let d = diamond([1.0, 0.0, 1.0, 0.0]);
        let g = d.grad_log_prob(&y(&[1, 2, 4])).unwrap();
        let q = 1.0 - P_TOP;
        for (a, b) in g.iter().zip([q, -q, q, -q]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-14);
        }
        let g = diamond([0.0; 4]).grad_log_prob(&y(&[1, 2, 4])).unwrap();
        assert_eq!(g, vec![0.5, -0.5, 0.5, -0.5]);

        let base = d.grad_log_prob(&y(&[1, 2, 4])).unwrap();
        assert_eq!(d.reinforce_grad(&y(&[1, 2, 4]), 1.0).unwrap(), base);
        assert!(d.reinforce_grad(&y(&[1, 2, 4]), 0.0).unwrap().iter().all(|&g| g == 0.0));
        let neg = d.reinforce_grad(&y(&[1, 2, 4]), -2.0).unwrap();
        for (a, b) in neg.iter().zip(&base) {
            assert_eq!(*a, -2.0 * b);
        }
        assert!(d.reinforce_grad(&y(&[1, 2, 4]), f64::NAN).is_err());

        assert!(d.kl_grad_prior(&d).unwrap().iter().all(|&g| g == 0.0));
        assert!(chain(vec![1.0, 2.0])
            .kl_grad_prior(&chain(vec![-1.0, 0.5]))
            .unwrap()
            .iter()
            .all(|&g| g == 0.0));
    }

    #[test]
    fn posterior_kl_gradient_estimate_is_unbiased_on_the_diamond() {
        // analytic: d/dw_p KL = alpha * Cov_p(1[e in y], log p - log q)
        let p = diamond([1.0, 0.0, 1.0, 0.0]);
        let q = diamond([0.0, 0.5, 0.0, 0.0]);
        let h = 1e-6;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let est = p.kl_grad_posterior_mc(&q, 200_000, &mut rng).unwrap();
        for e in 0..4 {
            let shift = |s: f64| {
                let mut w = p.weights().as_slice().to_vec();
                w[e] += s;
                let w = EdgeWeights::new(p.dag(), w).unwrap();
                PathDistribution::fit(p.dag().clone(), w, 1.0)
                    .unwrap()
                    .kl_divergence(&q)
                    .unwrap()
            };
            let fd = (shift(h) - shift(-h)) / (2.0 * h);
            assert_abs_diff_eq!(est[e], fd, epsilon = 0.01);
        }
    }

    #[test]
    fn soft_sample_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = chain(vec![0.2, 0.3]).soft_sample(0.7, &mut rng).unwrap();
        assert_eq!(s.gamma, vec![1.0; 3]);
        assert_eq!(s.delta, vec![1.0; 2]);

        let d = diamond([0.0; 4]);
        for _ in 0..50 {
            let s = d.soft_sample(1.0, &mut rng).unwrap();
            assert_abs_diff_eq!(s.gamma[1] + s.gamma[2], 1.0, epsilon = 1e-15);
            assert_eq!(s.gamma[3], 1.0);
            assert_abs_diff_eq!(s.delta[2] + s.delta[3], 1.0, epsilon = 1e-15);
        }
        assert_eq!(d.soft_sample(0.0, &mut rng).unwrap_err().code(), "NonPositiveTau");
    }

    #[test]
    fn node_bernoulli_soft_behaviour() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert_eq!(chain(vec![0.0, 0.0]).node_bernoulli_soft(0.5, &mut rng).unwrap(), vec![1.0; 3]);

        let d = diamond([0.0; 4]);
        let n = 100_000;
        let mean: f64 =
            (0..n).map(|_| d.node_bernoulli_soft(1.0, &mut rng).unwrap()[1]).sum::<f64>() / n as f64;
        assert_abs_diff_eq!(mean, 0.5, epsilon = 0.01);

        let d = diamond([1.0, 0.0, 1.0, 0.0]);
        let hits = (0..n)
            .filter(|_| d.node_bernoulli_soft(0.01, &mut rng).unwrap()[1] > 0.5)
            .count();
        assert_abs_diff_eq!(hits as f64 / n as f64, P_TOP, epsilon = 0.01);
        assert!(d.node_bernoulli_soft(-1.0, &mut rng).is_err());
    }

    #[test]
    fn categorical_consumes_no_randomness_for_single_option() {
        let mut a = ChaCha8Rng::seed_from_u64(1);
        let b = a.clone();
        assert_eq!(draw_categorical(&[0.0], &mut a), 0);
        assert_eq!(a, b);
    }
}
