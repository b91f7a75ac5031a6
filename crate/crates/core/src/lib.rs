//! Eigenvector centrality from node-deleted characteristic polynomials.
//!
//! The squared eigenvector component `(x_k)_j²` of an adjacency matrix is
//! computed several independent ways (shifted node-deleted determinants,
//! the squared eigenvalue equation, walk expansions, the resolvent) and
//! cross-checked against a dense Jacobi eigensolver. On top of that sit the
//! fundamental weight `w = Xᵀu`, its dual `φ = Xu`, and slack-reporting
//! checks for a family of eigenvector and eigenvalue bounds.
//!
//! Node and frequency indices are 1-based throughout the public API.

pub mod bounds;
pub mod centrality;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod report;
pub mod spectral;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use graph::{generate, parse_graph, Graph, GraphFormat, GraphKind, GraphStats};
pub use spectral::{decompose, decompose_with, SpectralDecomposition, SpectralOptions};
