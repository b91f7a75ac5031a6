//! Undirected simple graphs stored as dense adjacency matrices.
//!
//! Every public function takes and returns 1-based node indices; the
//! 0-based layout of the backing storage never leaves this module.

use std::collections::VecDeque;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// An undirected simple graph: symmetric 0/1 adjacency, zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    labels: Vec<String>,
}

/// Summary statistics of a graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphStats {
    pub num_nodes: usize,
    pub num_links: usize,
    pub degrees: Vec<usize>,
    pub d_min: f64,
    pub d_max: f64,
    pub d_av: f64,
    pub connected: bool,
}

/// Deterministic generator families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GraphKind {
    Complete(usize),
    /// Star on `n` nodes with node 1 as center.
    Star(usize),
    Path(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
    ErdosRenyi {
        n: usize,
        p: f64,
    },
}

/// Text formats accepted by [`parse_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    AdjacencyMatrix,
}

impl Graph {
    /// The graph on `n` nodes without links.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewNodes { n, needed: 1 });
        }
        Ok(Self { n, adj: vec![false; n * n], labels: default_labels(n) })
    }

    /// Builds a graph from 1-based edges. Duplicates collapse; self-loops are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(i, j) in edges {
            g.check_node(i)?;
            g.check_node(j)?;
            if i == j {
                return Err(Error::Domain(format!("self-loop at node {i}")));
            }
            g.set(i - 1, j - 1, true);
        }
        Ok(g)
    }

    /// Builds a graph from a square 0/1 matrix given as rows.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut g = Self::empty(n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension { expected: n, got: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 if i == j => return Err(Error::Domain(format!("self-loop at node {}", i + 1))),
                    1 => g.adj[i * n + j] = true,
                    _ => return Err(Error::Domain(format!("entry ({}, {}) is not 0/1", i + 1, j + 1))),
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if g.adj[i * n + j] != g.adj[j * n + i] {
                    return Err(Error::Domain(format!("matrix not symmetric at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::Dimension { expected: self.n, got: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Whether nodes `i` and `j` (1-based) are adjacent.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[(i - 1) * self.n + (j - 1)]
    }

    #[inline]
    pub(crate) fn adj0(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: bool) {
        self.adj[i * self.n + j] = v;
        self.adj[j * self.n + i] = v;
    }

    pub(crate) fn check_node(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.n {
            Err(Error::NodeOutOfRange { index: j, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn degree(&self, j: usize) -> usize {
        let i = j - 1;
        (0..self.n).filter(|&l| self.adj0(i, l)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (1..=self.n).map(|j| self.degree(j)).collect()
    }

    pub fn num_links(&self) -> usize {
        self.adj.iter().filter(|&&a| a).count() / 2
    }

    /// Links as 1-based pairs `(i, j)` with `i < j`, in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_links());
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.adj0(i, j) {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// Neighbours of node `j`, 1-based, ascending.
    pub fn neighbors(&self, j: usize) -> Vec<usize> {
        (1..=self.n).filter(|&l| self.adjacent(j, l)).collect()
    }

    pub fn adjacency(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| if self.adj0(i, j) { 1.0 } else { 0.0 })
    }

    /// Laplacian `Q = diag(d) - A`.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let d = self.degrees();
        DMatrix::from_fn(self.n, self.n, |i, j| {
            if i == j {
                d[i] as f64
            } else if self.adj0(i, j) {
                -1.0
            } else {
                0.0
            }
        })
    }

    pub fn stats(&self) -> GraphStats {
        let degrees = self.degrees();
        let num_links = self.num_links();
        GraphStats {
            num_nodes: self.n,
            num_links,
            d_min: degrees.iter().copied().min().unwrap_or(0) as f64,
            d_max: degrees.iter().copied().max().unwrap_or(0) as f64,
            d_av: 2.0 * num_links as f64 / self.n as f64,
            degrees,
            connected: self.is_connected(),
        }
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degrees();
        d.windows(2).all(|w| w[0] == w[1])
    }

    /// Breadth-first reachability from node 1.
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Connected components as sorted lists of 1-based nodes.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start + 1];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for u in 0..self.n {
                    if self.adj0(v, u) && !seen[u] {
                        seen[u] = true;
                        comp.push(u + 1);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn has_isolated_node(&self) -> bool {
        (1..=self.n).any(|j| self.degree(j) == 0)
    }

    /// Removes node `j` and its incident links; remaining nodes keep their order.
    pub fn delete_node(&self, j: usize) -> Result<Self> {
        self.check_node(j)?;
        if self.n < 2 {
            return Err(Error::TooFewNodes { n: self.n, needed: 2 });
        }
        Ok(self.remove_sorted(&[j - 1]))
    }

    /// Removes two distinct nodes and their incident links.
    pub fn delete_node_pair(&self, j: usize, m: usize) -> Result<Self> {
        self.check_node(j)?;
        self.check_node(m)?;
        if j == m {
            return Err(Error::EqualIndices(j));
        }
        if self.n < 3 {
            return Err(Error::TooFewNodes { n: self.n, needed: 3 });
        }
        let mut drop = [j - 1, m - 1];
        drop.sort_unstable();
        Ok(self.remove_sorted(&drop))
    }

    fn remove_sorted(&self, drop: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|i| !drop.contains(i)).collect();
        let m = keep.len();
        let mut adj = vec![false; m * m];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                adj[a * m + b] = self.adj0(i, j);
            }
        }
        Self { n: m, adj, labels: keep.iter().map(|&i| self.labels[i].clone()).collect() }
    }

    /// Complementary graph, adjacency `J - I - A`.
    pub fn complement(&self) -> Self {
        let n = self.n;
        let adj = (0..n * n).map(|idx| idx / n != idx % n && !self.adj[idx]).collect();
        Self { n, adj, labels: self.labels.clone() }
    }

    /// Relabels nodes: node `i` of the result is node `perm[i-1]` of `self` (both 1-based),
    /// so that the new adjacency is `P^T A P`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::Dimension { expected: self.n, got: perm.len() });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            self.check_node(p)?;
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::Domain(format!("node {p} repeated in permutation")));
            }
        }
        let n = self.n;
        let adj = (0..n * n).map(|idx| self.adj0(perm[idx / n] - 1, perm[idx % n] - 1)).collect();
        Ok(Self { n, adj, labels: perm.iter().map(|&p| self.labels[p - 1].clone()).collect() })
    }

    /// Edge-list text with a `# nodes N` header, readable by [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("# nodes {}\n", self.n);
        for (i, j) in self.edges() {
            let _ = writeln!(s, "{i} {j}");
        }
        s
    }

    pub fn to_adjacency_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.n {
            let row: Vec<&str> = (0..self.n).map(|j| if self.adj0(i, j) { "1" } else { "0" }).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Builds a graph of the requested family.
///
/// `erdos_renyi` visits the pairs `(i, j)`, `i < j`, in row-major order and
/// keeps each one when a ChaCha8 draw (`rand_chacha::ChaCha8Rng`, seeded with
/// `seed_from_u64(seed)`) of a uniform `f64` in `[0, 1)` is below `p`.
/// The other families ignore the seed.
pub fn generate(kind: GraphKind, seed: u64) -> Result<Graph> {
    let need = |n: usize, min: usize| {
        if n < min {
            Err(Error::InvalidParams(format!("size {n} below minimum {min}")))
        } else {
            Ok(())
        }
    };
    match kind {
        GraphKind::Complete(n) => {
            need(n, 1)?;
            let mut g = Graph::empty(n)?;
            for i in 0..n {
                for j in (i + 1)..n {
                    g.set(i, j, true);
                }
            }
            Ok(g)
        }
        GraphKind::Star(n) => {
            need(n, 2)?;
            let edges: Vec<_> = (2..=n).map(|j| (1, j)).collect();
            Graph::from_edges(n, &edges)
        }
        GraphKind::Path(n) => {
            need(n, 1)?;
            let edges: Vec<_> = (1..n).map(|j| (j, j + 1)).collect();
            Graph::from_edges(n, &edges)
        }
        GraphKind::Cycle(n) => {
            need(n, 3)?;
            let mut edges: Vec<_> = (1..n).map(|j| (j, j + 1)).collect();
            edges.push((n, 1));
            Graph::from_edges(n, &edges)
        }
        GraphKind::CompleteBipartite(a, b) => {
            need(a, 1)?;
            need(b, 1)?;
            let mut edges = Vec::with_capacity(a * b);
            for i in 1..=a {
                for j in (a + 1)..=(a + b) {
                    edges.push((i, j));
                }
            }
            Graph::from_edges(a + b, &edges)
        }
        GraphKind::ErdosRenyi { n, p } => {
            need(n, 1)?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParams(format!("link probability {p} outside [0, 1]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut g = Graph::empty(n)?;
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen::<f64>() < p {
                        g.set(i, j, true);
                    }
                }
            }
            Ok(g)
        }
    }
}

/// Parses the edge-list or adjacency-matrix text format.
///
/// Edge lists hold one `i j` pair per line (1-based); `#` starts a comment.
/// A comment of the form `# nodes N` fixes the node count, otherwise it is
/// the largest index seen.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::AdjacencyMatrix => parse_matrix(text),
    }
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_index = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let (body, comment) = match raw.find('#') {
            Some(pos) => (&raw[..pos], Some(&raw[pos + 1..])),
            None => (raw, None),
        };
        if let Some(c) = comment {
            let mut it = c.split_whitespace();
            if it.next() == Some("nodes") {
                let n = it
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse { line, msg: "malformed '# nodes N' header".into() })?;
                declared = Some(n);
            }
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if toks.len() != 2 {
            return Err(Error::Parse { line, msg: format!("expected 'i j', found {} token(s)", toks.len()) });
        }
        let mut pair = [0usize; 2];
        for (slot, tok) in pair.iter_mut().zip(&toks) {
            let v: i64 = tok.parse().map_err(|_| Error::Parse { line, msg: format!("non-integer token '{tok}'") })?;
            if v < 1 {
                return Err(Error::Parse { line, msg: format!("node index {v} < 1") });
            }
            *slot = v as usize;
        }
        if pair[0] == pair[1] {
            return Err(Error::Parse { line, msg: format!("self-loop at node {}", pair[0]) });
        }
        max_index = max_index.max(pair[0]).max(pair[1]);
        edges.push((pair[0], pair[1]));
    }
    let n = match declared {
        Some(n) if n < max_index => {
            return Err(Error::Parse {
                line: 0,
                msg: format!("edge uses node {max_index} but header declares {n} nodes"),
            })
        }
        Some(n) => n,
        None => max_index,
    };
    if n == 0 {
        return Err(Error::Parse { line: 0, msg: "no nodes".into() });
    }
    Graph::from_edges(n, &edges)
}

fn parse_matrix(text: &str) -> Result<Graph> {
    let mut rows: Vec<Vec<u8>> = Vec::new();
    let mut lines = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let mut row = Vec::with_capacity(toks.len());
        for tok in toks {
            match tok.parse::<i64>() {
                Ok(v @ (0 | 1)) => row.push(v as u8),
                Ok(v) => return Err(Error::Parse { line, msg: format!("entry {v} is not 0 or 1") }),
                Err(_) => return Err(Error::Parse { line, msg: format!("non-integer token '{tok}'") }),
            }
        }
        rows.push(row);
        lines.push(line);
    }
    let n = rows.len();
    if n == 0 {
        return Err(Error::Parse { line: 0, msg: "empty matrix".into() });
    }
    for (row, &line) in rows.iter().zip(&lines) {
        if row.len() != n {
            return Err(Error::Parse { line, msg: format!("row has {} entries, expected {n}", row.len()) });
        }
    }
    for i in 0..n {
        if rows[i][i] != 0 {
            return Err(Error::Parse { line: lines[i], msg: format!("self-loop at node {}", i + 1) });
        }
        for j in 0..i {
            if rows[i][j] != rows[j][i] {
                return Err(Error::Parse {
                    line: lines[i],
                    msg: format!("matrix not symmetric at ({}, {})", i + 1, j + 1),
                });
            }
        }
    }
    Graph::from_rows(&rows)
}
