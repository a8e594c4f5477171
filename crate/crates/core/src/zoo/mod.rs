//! Graph constructors: alignment lattices with wavefront kernels, and random
//! DAGs for toy experiments.

pub mod lattice;
pub mod random;

pub use lattice::{
    dtw_fit_fast, dtw_graph, lattice_fit_fast, lattice_graph, lattice_marginals,
    lattice_marginals_with, lattice_sample, ma_fit_fast, ma_graph, LatticeKind, LatticeLayout,
    LatticePath, LatticeSpec, Move, Parallelism,
};
pub use random::{banded_dag, random_dag, random_weights};
