use thiserror::Error;

/// Errors produced by graph construction and the spectral computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("node index {index} out of range 1..={n}")]
    NodeOutOfRange { index: usize, n: usize },

    #[error("frequency index {index} out of range 1..={n}")]
    FrequencyOutOfRange { index: usize, n: usize },

    #[error("graph has {n} node(s); operation needs at least {needed}")]
    TooFewNodes { n: usize, needed: usize },

    #[error("node indices must differ (both are {0})")]
    EqualIndices(usize),

    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph has {n} nodes, exact polynomial limit is {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("eigenvalue {k} has multiplicity {multiplicity}: derivative vanishes; use multiplicity-2 path")]
    Multiplicity { k: usize, multiplicity: usize },

    #[error("eigenvalue group of frequency {k} has size {size}, expected 2")]
    GroupSize { k: usize, size: usize },

    #[error("node {0} is isolated (degree 0)")]
    IsolatedNode(usize),

    #[error("b orthogonal to eigenvector {k} (beta = {beta:e}); choose another b")]
    OrthogonalChoice { k: usize, beta: f64 },

    #[error("eigenvalue {k} in spectrum of graph with node {j} deleted; component is 0")]
    SingularMinor { j: usize, k: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("integer overflow in walk count (exponent {0})")]
    Overflow(u32),

    #[error("vector length {got} does not match graph size {expected}")]
    Dimension { expected: usize, got: usize },

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
