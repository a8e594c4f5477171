//! Wall-clock timing of fit, sample and marginals across graph sizes.

use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distribution::PathDistribution;
use crate::error::{Error, Result};
use crate::zoo::{banded_dag, lattice_fit_fast, lattice_marginals, random_weights};
use crate::zoo::{LatticeKind, LatticeSpec, Parallelism};

/// Out-degree of the generic benchmark graph.
pub const GENERIC_BAND: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchKind {
    Generic,
    Lattice(LatticeKind),
}

impl FromStr for BenchKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(BenchKind::Generic),
            other => other.parse().map(BenchKind::Lattice),
        }
    }
}

impl BenchKind {
    pub fn name(self) -> &'static str {
        match self {
            BenchKind::Generic => "generic",
            BenchKind::Lattice(k) => k.name(),
        }
    }
}

/// Benchmark size: node count for generic graphs, `rows x cols` for lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchSize {
    Nodes(usize),
    Grid(usize, usize),
}

impl FromStr for BenchSize {
    type Err = Error;

    /// `"N"` or `"RxC"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::DomainError(format!("bad size {s:?}, expected N or RxC"));
        match s.split_once(['x', 'X']) {
            Some((r, c)) => Ok(BenchSize::Grid(
                r.trim().parse().map_err(|_| bad())?,
                c.trim().parse().map_err(|_| bad())?,
            )),
            None => Ok(BenchSize::Nodes(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

impl std::fmt::Display for BenchSize {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BenchSize::Nodes(n) => write!(f, "{n}"),
            BenchSize::Grid(r, c) => write!(f, "{r}x{c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub kind: BenchKind,
    pub size: BenchSize,
    pub edges: usize,
    pub fit: Duration,
    pub sample: Duration,
    pub marginals: Duration,
}

impl BenchRecord {
    pub fn fit_plus_marginals(&self) -> Duration {
        self.fit + self.marginals
    }
}

fn min_of<T>(repeats: usize, mut f: impl FnMut() -> T) -> (Duration, T) {
    let mut best = Duration::MAX;
    let mut last = None;
    for _ in 0..repeats.max(1) {
        let t = Instant::now();
        let out = f();
        best = best.min(t.elapsed());
        last = Some(out);
    }
    (best, last.expect("at least one repeat"))
}

/// Times one size, keeping the fastest of `repeats` runs per stage.
///
/// Lattice fits include building the generic graph, since the resulting
/// distribution carries it.
pub fn run_one(kind: BenchKind, size: BenchSize, repeats: usize, seed: u64) -> Result<BenchRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (fit, dist, marginals) = match (kind, size) {
        (BenchKind::Generic, BenchSize::Nodes(n)) => {
            let dag = banded_dag(n.max(2), GENERIC_BAND);
            let w = random_weights(&dag, 1.0, &mut rng);
            let (fit, dist) = min_of(repeats, || PathDistribution::fit(dag.clone(), w.clone(), 1.0));
            let dist = dist?;
            let (marg, _) = min_of(repeats, || dist.edge_marginals());
            (fit, dist, marg)
        }
        (BenchKind::Lattice(k), size) => {
            let (r, c) = match size {
                BenchSize::Grid(r, c) => (r, c),
                BenchSize::Nodes(n) => (n, n),
            };
            let w = (0..r * c).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let spec = LatticeSpec::new(k, r, c, w)?;
            let (fit, dist) = min_of(repeats, || lattice_fit_fast(&spec, 1.0, Parallelism::Serial));
            let dist = dist?;
            let (marg, m) = min_of(repeats, || lattice_marginals(&dist, &spec));
            m?;
            (fit, dist, marg)
        }
        (BenchKind::Generic, BenchSize::Grid(..)) => {
            return Err(Error::DomainError("generic sizes are node counts".into()))
        }
    };
    let (sample, _) = min_of(repeats, || dist.sample_path(&mut rng));
    Ok(BenchRecord {
        kind,
        size,
        edges: dist.dag().edge_count(),
        fit,
        sample,
        marginals,
    })
}

pub fn run_sweep(kind: BenchKind, sizes: &[BenchSize], repeats: usize, seed: u64) -> Result<Vec<BenchRecord>> {
    sizes.iter().map(|&s| run_one(kind, s, repeats, seed)).collect()
}
