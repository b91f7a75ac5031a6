//! Symmetric eigendecomposition, shifted determinants and exact polynomials.
//!
//! Eigenvalues are ordered `λ_1 ≥ … ≥ λ_N`; eigenvector `x_k` is column
//! `k - 1` of [`SpectralDecomposition::vectors`]. Each column is sign
//! normalized so that its component sum `w_k` is positive, falling back to
//! a positive largest-magnitude component when `|w_k|` is below `sign_tol`.

mod jacobi;
mod poly;
mod walks;

use std::ops::RangeInclusive;

use nalgebra::{DMatrix, DVector, DVectorView};

pub use jacobi::{jacobi_eigen, MAX_SWEEPS};
pub use poly::{char_poly_exact, char_poly_exact_limit, deflate, IntPolynomial, EXACT_POLY_LIMIT};
pub use walks::{adjacency_power, adjacency_powers, matrix_power_entry, WalkMatrix, MAX_WALK_EXPONENT};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Tolerances for [`decompose_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralOptions {
    /// Absolute eigenvalue gap below which neighbours share a multiplicity
    /// group; `None` means `1e-7 * max(1, |λ_1|)`.
    pub mult_tol: Option<f64>,
    pub sign_tol: f64,
    pub max_sweeps: usize,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        Self { mult_tol: None, sign_tol: 1e-9, max_sweeps: MAX_SWEEPS }
    }
}

/// Ordered spectrum, orthonormal eigenvectors and multiplicity groups.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    eigenvalues: DVector<f64>,
    vectors: DMatrix<f64>,
    /// 0-based inclusive index runs.
    groups: Vec<(usize, usize)>,
    group_of: Vec<usize>,
    mult_tol: f64,
}

/// Decomposes the adjacency matrix of `g` with default tolerances.
pub fn decompose(g: &Graph) -> Result<SpectralDecomposition> {
    decompose_with(g, &SpectralOptions::default())
}

pub fn decompose_with(g: &Graph, opts: &SpectralOptions) -> Result<SpectralDecomposition> {
    decompose_symmetric(&g.adjacency(), opts)
}

/// Decomposes any real symmetric matrix (Laplacians, complements, test matrices).
pub fn decompose_symmetric(a: &DMatrix<f64>, opts: &SpectralOptions) -> Result<SpectralDecomposition> {
    let n = a.nrows();
    let (raw_vals, raw_vecs) = jacobi_eigen(a, opts.max_sweeps)?;
    // Descending; stable sort keeps the solver's order among exact ties.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw_vals[j].total_cmp(&raw_vals[i]));
    let eigenvalues = DVector::from_fn(n, |k, _| raw_vals[order[k]]);
    let mut vectors = DMatrix::from_fn(n, n, |i, k| raw_vecs[(i, order[k])]);

    for k in 0..n {
        let w: f64 = vectors.column(k).sum();
        let flip = if w > opts.sign_tol {
            false
        } else if w < -opts.sign_tol {
            true
        } else {
            let col = vectors.column(k);
            let mut best = 0;
            for i in 1..n {
                // first index wins among equal magnitudes
                if col[i].abs() > col[best].abs() + 1e-12 {
                    best = i;
                }
            }
            col[best] < 0.0
        };
        if flip {
            vectors.column_mut(k).neg_mut();
        }
    }

    let lead = if n > 0 { eigenvalues[0].abs() } else { 0.0 };
    let mult_tol = opts.mult_tol.unwrap_or(1e-7 * lead.max(1.0));
    let mut groups = Vec::new();
    let mut group_of = vec![0; n];
    let mut start = 0;
    for k in 0..n {
        let ends = k + 1 == n || (eigenvalues[k] - eigenvalues[k + 1]).abs() > mult_tol;
        if ends {
            for slot in &mut group_of[start..=k] {
                *slot = groups.len();
            }
            groups.push((start, k));
            start = k + 1;
        }
    }
    Ok(SpectralDecomposition { eigenvalues, vectors, groups, group_of, mult_tol })
}

impl SpectralDecomposition {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// `λ_k`, 1-based.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        self.eigenvalues[k - 1]
    }

    /// The orthogonal matrix `X` with `x_k` in column `k - 1`.
    pub fn vectors(&self) -> &DMatrix<f64> {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> DVectorView<'_, f64> {
        self.vectors.column(k - 1)
    }

    /// `(x_k)_j`, both 1-based.
    pub fn component(&self, j: usize, k: usize) -> f64 {
        self.vectors[(j - 1, k - 1)]
    }

    pub fn mult_tol(&self) -> f64 {
        self.mult_tol
    }

    /// Copy with `x_k` negated wherever `flips[k − 1]` is true. The result no
    /// longer follows the sign canon.
    pub fn with_sign_flips(&self, flips: &[bool]) -> Result<Self> {
        if flips.len() != self.n() {
            return Err(Error::Dimension { expected: self.n(), got: flips.len() });
        }
        let mut out = self.clone();
        for (k, &f) in flips.iter().enumerate() {
            if f {
                out.vectors.column_mut(k).neg_mut();
            }
        }
        Ok(out)
    }

    pub(crate) fn check_frequency(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n() {
            Err(Error::FrequencyOutOfRange { index: k, n: self.n() })
        } else {
            Ok(())
        }
    }

    /// Frequencies sharing `λ_k`'s multiplicity group, 1-based.
    pub fn group(&self, k: usize) -> RangeInclusive<usize> {
        let (a, b) = self.groups[self.group_of[k - 1]];
        (a + 1)..=(b + 1)
    }

    /// All multiplicity groups in order, 1-based.
    pub fn groups(&self) -> Vec<RangeInclusive<usize>> {
        self.groups.iter().map(|&(a, b)| (a + 1)..=(b + 1)).collect()
    }

    pub fn multiplicity(&self, k: usize) -> usize {
        let (a, b) = self.groups[self.group_of[k - 1]];
        b - a + 1
    }

    pub fn is_simple(&self, k: usize) -> bool {
        self.multiplicity(k) == 1
    }

    pub fn all_simple(&self) -> bool {
        self.groups.len() == self.n()
    }

    /// `max(‖XᵀX − I‖_max, ‖XXᵀ − I‖_max)`.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.n();
        let id = DMatrix::<f64>::identity(n, n);
        let a = (self.vectors.transpose() * &self.vectors - &id).amax();
        let b = (&self.vectors * self.vectors.transpose() - &id).amax();
        a.max(b)
    }

    /// `‖M X − X diag(λ)‖_max` for the matrix that was decomposed.
    pub fn eigen_residual(&self, m: &DMatrix<f64>) -> f64 {
        let lhs = m * &self.vectors;
        let rhs = &self.vectors * DMatrix::from_diagonal(&self.eigenvalues);
        (lhs - rhs).amax()
    }

    /// `c′_A(λ_k) = (−1)^N Π_{l≠k} (λ_k − λ_l)`; requires a simple eigenvalue.
    pub fn char_poly_derivative_at(&self, k: usize) -> Result<f64> {
        self.check_frequency(k)?;
        let m = self.multiplicity(k);
        if m > 1 {
            return Err(Error::Multiplicity { k, multiplicity: m });
        }
        let lk = self.eigenvalue(k);
        let prod: f64 = (1..=self.n()).filter(|&l| l != k).map(|l| lk - self.eigenvalue(l)).product();
        Ok(sign_pow(self.n()) * prod)
    }

    /// `c″_A(λ_k)` at a double eigenvalue: `2 Π_{l∉group} (λ_l − λ_k)`.
    pub fn char_poly_second_derivative_at(&self, k: usize) -> Result<f64> {
        self.check_frequency(k)?;
        let size = self.multiplicity(k);
        if size != 2 {
            return Err(Error::GroupSize { k, size });
        }
        let group = self.group(k);
        let lk = self.eigenvalue(k);
        let prod: f64 = (1..=self.n()).filter(|l| !group.contains(l)).map(|l| self.eigenvalue(l) - lk).product();
        Ok(2.0 * prod)
    }

    /// Largest eigenvalue; zero for the one-node graph.
    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `min_k λ_k²`.
    pub fn min_lambda_sq(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l * l).fold(f64::INFINITY, f64::min)
    }
}

/// `(−1)^n` as a float.
pub(crate) fn sign_pow(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Determinant by LU factorization with partial pivoting.
pub fn det(m: DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return 1.0;
    }
    m.lu().determinant()
}

/// `det(M − λI)` for a square matrix.
pub fn det_shifted(m: &DMatrix<f64>, lambda: f64) -> f64 {
    let mut s = m.clone();
    for i in 0..s.nrows() {
        s[(i, i)] -= lambda;
    }
    det(s)
}

/// `det(A − λI)` for the adjacency matrix of `g`.
pub fn det_shift(g: &Graph, lambda: f64) -> f64 {
    det_shifted(&g.adjacency(), lambda)
}

/// `det(A_{G∖{j}} − λI)` for every node `j`, in node order.
pub fn node_deleted_dets(g: &Graph, lambda: f64) -> Vec<f64> {
    use rayon::prelude::*;
    let a = g.adjacency();
    (0..g.n()).into_par_iter().map(|j| det_shifted(&a.clone().remove_row(j).remove_column(j), lambda)).collect()
}
