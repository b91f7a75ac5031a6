//! Seeded random graph collections used by the verification runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{generate, Graph, GraphKind};
use crate::spectral::decompose;

/// Parameters of an Erdős–Rényi corpus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorpusSpec {
    pub count: usize,
    /// Inclusive node-count range.
    pub n_min: usize,
    pub n_max: usize,
    pub p: f64,
    pub seed: u64,
    /// Reject disconnected draws.
    pub connected: bool,
    /// Reject draws with a repeated eigenvalue.
    pub simple_spectrum: bool,
}

impl CorpusSpec {
    /// Connected graphs with `N ∈ [4, 20]` and `p = 0.3`.
    pub fn connected_er(count: usize, seed: u64) -> Self {
        Self { count, n_min: 4, n_max: 20, p: 0.3, seed, connected: true, simple_spectrum: false }
    }

    pub fn simple(mut self) -> Self {
        self.simple_spectrum = true;
        self
    }
}

/// Draws attempted per requested graph before giving up.
pub const MAX_ATTEMPTS_PER_GRAPH: usize = 1000;

/// Generates the corpus described by `spec`.
///
/// A ChaCha8 stream seeded with `spec.seed` supplies the node count and the
/// per-graph generator seed of every draw, so the result depends only on
/// `spec`.
pub fn er_corpus(spec: &CorpusSpec) -> Result<Vec<Graph>> {
    if spec.n_min == 0 || spec.n_min > spec.n_max {
        return Err(Error::InvalidParams(format!(
            "node range [{}, {}] is empty or starts at zero",
            spec.n_min, spec.n_max
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    let budget = spec.count.saturating_mul(MAX_ATTEMPTS_PER_GRAPH).max(MAX_ATTEMPTS_PER_GRAPH);
    for _ in 0..budget {
        if out.len() == spec.count {
            break;
        }
        let n = rng.gen_range(spec.n_min..=spec.n_max);
        let g = generate(GraphKind::ErdosRenyi { n, p: spec.p }, rng.gen())?;
        if spec.connected && !g.is_connected() {
            continue;
        }
        if spec.simple_spectrum && !decompose(&g)?.all_simple() {
            continue;
        }
        out.push(g);
    }
    if out.len() < spec.count {
        return Err(Error::InvalidParams(format!(
            "only {} of {} graphs satisfied the corpus filters",
            out.len(),
            spec.count
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_filtered() {
        let spec = CorpusSpec::connected_er(10, 3).simple();
        let a = er_corpus(&spec).unwrap();
        let b = er_corpus(&spec).unwrap();
        assert_eq!(a.len(), 10);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.adjacency(), y.adjacency());
            assert!(x.is_connected() && (4..=20).contains(&x.n()));
            assert!(decompose(x).unwrap().all_simple());
        }
        let bad = CorpusSpec { n_min: 5, n_max: 4, ..spec };
        assert!(er_corpus(&bad).is_err());
    }
}
