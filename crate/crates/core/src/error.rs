//! Error taxonomy shared by every module.
//!
//! Node ids carried by errors are 1-based, matching the external formats.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph has no source-to-sink path")]
    NoPath,
    #[error("edge ({u}, {v}) references a node outside 1..={n}")]
    NodeOutOfRange { u: usize, v: usize, n: usize },
    #[error("edge ({u}, {v}) does not point forward in topological order")]
    EdgeNotForward { u: usize, v: usize },
    #[error("edge ({u}, {v}) appears more than once")]
    DuplicateEdge { u: usize, v: usize },
    #[error("node {0} does not lie on any source-to-sink path")]
    DisconnectedNode(usize),
    #[error("edge ({u}, {v}) enters the source or leaves the sink")]
    BadEndpoints { u: usize, v: usize },
    #[error("expected {expected} edge weights, got {got}")]
    WeightCountMismatch { expected: usize, got: usize },
    #[error("weight of edge #{index} is not finite")]
    NonFiniteWeight { index: usize },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("alpha must be positive and finite, got {0}")]
    NonPositiveAlpha(f64),
    #[error("tau must be positive and finite, got {0}")]
    NonPositiveTau(f64),
    #[error("argument outside the function domain: {0}")]
    DomainError(String),
    #[error("distributions are defined on different graphs")]
    GraphMismatch,
    #[error("distributions use different alpha ({p} vs {q})")]
    AlphaMismatch { p: f64, q: f64 },
    #[error("numerical consistency check failed: {0}")]
    NumericalInconsistency(String),
    #[error("expected a {expected} lattice, got {got}")]
    KindMismatch {
        expected: &'static str,
        got: &'static str,
    },
    #[error("monotonic alignment needs rows <= cols, got {rows}x{cols}")]
    RowsExceedCols { rows: usize, cols: usize },
    #[error("distribution does not belong to this lattice: {0}")]
    SpecMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("more than {0} paths")]
    TooManyPaths(usize),
    #[error("path tables enumerate different path sets")]
    PathSetMismatch,
}

impl Error {
    /// Stable name of the variant, used for CLI diagnostics and the Python boundary.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NoPath => "NoPath",
            Error::NodeOutOfRange { .. } => "NodeOutOfRange",
            Error::EdgeNotForward { .. } => "EdgeNotForward",
            Error::DuplicateEdge { .. } => "DuplicateEdge",
            Error::DisconnectedNode(_) => "DisconnectedNode",
            Error::BadEndpoints { .. } => "BadEndpoints",
            Error::WeightCountMismatch { .. } => "WeightCountMismatch",
            Error::NonFiniteWeight { .. } => "NonFiniteWeight",
            Error::InvalidPath(_) => "InvalidPath",
            Error::NonPositiveAlpha(_) => "NonPositiveAlpha",
            Error::NonPositiveTau(_) => "NonPositiveTau",
            Error::DomainError(_) => "DomainError",
            Error::GraphMismatch => "GraphMismatch",
            Error::AlphaMismatch { .. } => "AlphaMismatch",
            Error::NumericalInconsistency(_) => "NumericalInconsistency",
            Error::KindMismatch { .. } => "KindMismatch",
            Error::RowsExceedCols { .. } => "RowsExceedCols",
            Error::SpecMismatch(_) => "SpecMismatch",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::TooManyPaths(_) => "TooManyPaths",
            Error::PathSetMismatch => "PathSetMismatch",
        }
    }

    /// True for errors caused by malformed input rather than numerical trouble.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::NumericalInconsistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
