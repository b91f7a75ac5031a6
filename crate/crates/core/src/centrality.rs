//! Squared eigenvector components `(x_k)_j²` and the formulas that produce them.
//!
//! The determinantal route reads `(x_k)_j²` off the shifted characteristic
//! polynomial of the graph with node `j` removed:
//! `(x_k)_j² = −det(A_{G∖{j}} − λ_k I) / c′_A(λ_k)`. Independent routes
//! (walk expansion, resolvent, squared eigenvalue equation) and the
//! eigensolver check it.

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{
    adjacency_powers, char_poly_exact, decompose_symmetric, det, det_shifted, node_deleted_dets, sign_pow,
    SpectralDecomposition, SpectralOptions,
};

/// Which formula produced a cell of the centrality matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Determinantal,
    Eigensolver,
    Walk,
    Resolvent,
    Multiplicity2,
}

/// Graphs above this size fill simple frequencies from the eigensolver
/// instead of `N²` node-deleted determinants.
pub const DETERMINANTAL_LIMIT: usize = 128;

/// Default threshold below which a squared component counts as zero.
pub const ZERO_TOL: f64 = 1e-8;

/// Squared components per node (row `j`) and frequency (column `k`).
///
/// Inside a multiplicity group every column holds the group average
/// `Σ_{l∈group} (x_l)_j² / r`, which does not depend on the basis chosen
/// for the eigenspace. For `r = 2` this is the node-pair-deletion value.
#[derive(Clone, Debug)]
pub struct CentralityReport {
    y: DMatrix<f64>,
    methods: Vec<Method>,
    residuals: DMatrix<f64>,
    basis_dependent: Vec<bool>,
    redundancy: Vec<usize>,
}

impl CentralityReport {
    /// Row `j − 1`, column `k − 1` holds `(x_k)_j²`.
    pub fn y(&self) -> &DMatrix<f64> {
        &self.y
    }

    pub fn value(&self, j: usize, k: usize) -> f64 {
        self.y[(j - 1, k - 1)]
    }

    pub fn method(&self, k: usize) -> Method {
        self.methods[k - 1]
    }

    pub fn methods(&self) -> &[Method] {
        &self.methods
    }

    /// `|value − eigensolver value|` per cell.
    pub fn residuals(&self) -> &DMatrix<f64> {
        &self.residuals
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.amax()
    }

    /// Frequencies whose individual eigenvectors are basis dependent.
    pub fn basis_dependent(&self) -> &[bool] {
        &self.basis_dependent
    }

    /// Redundancy `r_j` at the zero tolerance the report was built with.
    pub fn redundancy(&self) -> &[usize] {
        &self.redundancy
    }

    /// Replaces the matrix, keeping everything else. Used for negative controls.
    pub fn with_y(mut self, y: DMatrix<f64>) -> Self {
        self.y = y;
        self
    }
}

/// Squared components from the eigensolver, averaged inside multiplicity groups.
pub fn eigensolver_squares(dec: &SpectralDecomposition) -> DMatrix<f64> {
    let n = dec.n();
    let sq = dec.vectors().map(|v| v * v);
    let mut y = DMatrix::zeros(n, n);
    for group in dec.groups() {
        let r = group.clone().count() as f64;
        for j in 0..n {
            let s: f64 = group.clone().map(|k| sq[(j, k - 1)]).sum();
            for k in group.clone() {
                y[(j, k - 1)] = s / r;
            }
        }
    }
    y
}

/// Builds the centrality matrix with the default zero tolerance.
pub fn centrality_report(g: &Graph, dec: &SpectralDecomposition) -> Result<CentralityReport> {
    centrality_report_with(g, dec, ZERO_TOL)
}

pub fn centrality_report_with(g: &Graph, dec: &SpectralDecomposition, zero_tol: f64) -> Result<CentralityReport> {
    let n = g.n();
    if dec.n() != n {
        return Err(Error::Dimension { expected: n, got: dec.n() });
    }
    let oracle = eigensolver_squares(dec);
    let use_det = (2..=DETERMINANTAL_LIMIT).contains(&n);
    let columns: Vec<(Method, Vec<f64>)> = (1..=n)
        .into_par_iter()
        .map(|k| -> Result<(Method, Vec<f64>)> {
            let m = dec.multiplicity(k);
            if !use_det {
                return Ok((Method::Eigensolver, oracle.column(k - 1).iter().copied().collect()));
            }
            match m {
                1 => {
                    let cp = dec.char_poly_derivative_at(k)?;
                    let dets = node_deleted_dets(g, dec.eigenvalue(k));
                    Ok((Method::Determinantal, dets.iter().map(|d| -d / cp).collect()))
                }
                2 if n >= 3 => {
                    let col = (1..=n).map(|j| squared_component_mult2(g, dec, j, k)).collect::<Result<Vec<_>>>()?;
                    Ok((Method::Multiplicity2, col))
                }
                _ => Ok((Method::Eigensolver, oracle.column(k - 1).iter().copied().collect())),
            }
        })
        .collect::<Result<_>>()?;
    let mut y = DMatrix::zeros(n, n);
    let mut methods = Vec::with_capacity(n);
    for (k, (method, col)) in columns.into_iter().enumerate() {
        for (j, v) in col.into_iter().enumerate() {
            y[(j, k)] = v;
        }
        methods.push(method);
    }
    let residuals = (&y - &oracle).abs();
    let basis_dependent = (1..=n).map(|k| !dec.is_simple(k)).collect();
    let redundancy = redundancy_of(&y, zero_tol);
    Ok(CentralityReport { y, methods, residuals, basis_dependent, redundancy })
}

fn redundancy_of(y: &DMatrix<f64>, zero_tol: f64) -> Vec<usize> {
    y.row_iter().map(|row| row.iter().filter(|&&v| v <= zero_tol).count()).collect()
}

/// Number of frequencies at which each node's squared component is at most `zero_tol`.
pub fn redundancy(report: &CentralityReport, zero_tol: f64) -> Vec<usize> {
    redundancy_of(&report.y, zero_tol)
}

fn check_simple(dec: &SpectralDecomposition, k: usize) -> Result<()> {
    dec.check_frequency(k)?;
    let m = dec.multiplicity(k);
    if m > 1 {
        Err(Error::Multiplicity { k, multiplicity: m })
    } else {
        Ok(())
    }
}

/// `(x_k)_j² = −det(A_{G∖{j}} − λ_k I) / c′_A(λ_k)` for a simple eigenvalue.
pub fn squared_component_det(g: &Graph, dec: &SpectralDecomposition, j: usize, k: usize) -> Result<f64> {
    g.check_node(j)?;
    check_simple(dec, k)?;
    let cp = dec.char_poly_derivative_at(k)?;
    if g.n() == 1 {
        // det of the empty matrix is 1 and c′ = −1
        return Ok(1.0);
    }
    let minor = g.delete_node(j)?;
    Ok(-det_shifted(&minor.adjacency(), dec.eigenvalue(k)) / cp)
}

/// Double eigenvalue: `(1 / c″_A(λ_k)) Σ_{n≠j} det(A_{G∖{j,n}} − λ_k I)`.
///
/// This equals half of `Σ_{l∈group} (x_l)_j²` for any orthonormal basis of
/// the two-dimensional eigenspace.
pub fn squared_component_mult2(g: &Graph, dec: &SpectralDecomposition, j: usize, k: usize) -> Result<f64> {
    g.check_node(j)?;
    dec.check_frequency(k)?;
    let c2 = dec.char_poly_second_derivative_at(k)?;
    let lk = dec.eigenvalue(k);
    let mut sum = 0.0;
    for m in (1..=g.n()).filter(|&m| m != j) {
        let minor = g.delete_node_pair(j, m)?;
        sum += det_shifted(&minor.adjacency(), lk);
    }
    Ok(sum / c2)
}

/// `(x_k)_j (x_k)_m = (−1)^{j+m+1} det((A − λ_k I)_{∖row j ∖col m}) / c′_A(λ_k)`.
///
/// The minor is generally not symmetric.
pub fn component_product(g: &Graph, dec: &SpectralDecomposition, j: usize, m: usize, k: usize) -> Result<f64> {
    g.check_node(j)?;
    g.check_node(m)?;
    check_simple(dec, k)?;
    let cp = dec.char_poly_derivative_at(k)?;
    let mut shifted = g.adjacency();
    for i in 0..g.n() {
        shifted[(i, i)] -= dec.eigenvalue(k);
    }
    let minor = shifted.remove_row(j - 1).remove_column(m - 1);
    Ok(sign_pow(j + m + 1) * det(minor) / cp)
}

/// `det((A − λ_k I)_{row j = b})` for every `j`.
fn row_replaced_dets(g: &Graph, lambda: f64, b: &[f64]) -> Vec<f64> {
    let n = g.n();
    let mut shifted = g.adjacency();
    for i in 0..n {
        shifted[(i, i)] -= lambda;
    }
    (0..n)
        .into_par_iter()
        .map(|j| {
            let mut m = shifted.clone();
            for (c, &bv) in b.iter().enumerate() {
                m[(j, c)] = bv;
            }
            det(m)
        })
        .collect()
}

/// Choice vector used to pin the scale and sign of an eigenvector.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChoiceVector {
    AllOnes,
    Degree,
    Basis(usize),
    Custom(Vec<f64>),
}

impl ChoiceVector {
    pub fn to_vec(&self, g: &Graph) -> Vec<f64> {
        match self {
            Self::AllOnes => vec![1.0; g.n()],
            Self::Degree => g.degrees().into_iter().map(|d| d as f64).collect(),
            Self::Basis(m) => (1..=g.n()).map(|j| if j == *m { 1.0 } else { 0.0 }).collect(),
            Self::Custom(v) => v.clone(),
        }
    }
}

/// Minimum `|bᵀx_k|` accepted by [`signed_components`].
pub const BETA_TOL: f64 = 1e-8;

/// `u`, then `d`, then `e_m` at the largest `|(x_k)_m|`: the first with `|bᵀx_k| > BETA_TOL`.
pub fn default_choice(g: &Graph, dec: &SpectralDecomposition, k: usize) -> ChoiceVector {
    let x = dec.vector(k);
    for c in [ChoiceVector::AllOnes, ChoiceVector::Degree] {
        let b = c.to_vec(g);
        let beta: f64 = b.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
        if beta.abs() > BETA_TOL {
            return c;
        }
    }
    let m = x.iamax() + 1;
    ChoiceVector::Basis(m)
}

/// Signed eigenvector from determinants alone:
/// `(x_k)_j = −det((A − λ_k I)_{row j = b}) / (β_k c′_A(λ_k))`, with
/// `β_k² = −Σ_j b_j det((A − λ_k I)_{row j = b}) / c′_A(λ_k)` and `β_k > 0`.
///
/// The result is the unit eigenvector with `bᵀx_k > 0`.
pub fn signed_components(g: &Graph, dec: &SpectralDecomposition, k: usize, b: &[f64]) -> Result<DVector<f64>> {
    check_simple(dec, k)?;
    if b.len() != g.n() {
        return Err(Error::Dimension { expected: g.n(), got: b.len() });
    }
    let beta_check: f64 = b.iter().zip(dec.vector(k).iter()).map(|(a, x)| a * x).sum();
    if beta_check.abs() <= BETA_TOL {
        return Err(Error::OrthogonalChoice { k, beta: beta_check });
    }
    let cp = dec.char_poly_derivative_at(k)?;
    let rows = row_replaced_dets(g, dec.eigenvalue(k), b);
    let beta_sq = -b.iter().zip(&rows).map(|(bj, d)| bj * d).sum::<f64>() / cp;
    if beta_sq <= 0.0 {
        return Err(Error::OrthogonalChoice { k, beta: beta_sq.abs().sqrt() });
    }
    let beta = beta_sq.sqrt();
    Ok(DVector::from_iterator(g.n(), rows.iter().map(|d| -d / (beta * cp))))
}

/// Split of `r_i(k)` into its two non-negative parts.
#[derive(Clone, Debug)]
pub struct RiDecomposition {
    /// `Σ_{j≠i, j≁i} (x_k)_j²`
    pub non_neighbor: DMatrix<f64>,
    /// `(1/2d_i) Σ_{j,l ∈ N(i)} ((x_k)_l − (x_k)_j)²`
    pub spread: DMatrix<f64>,
    /// `r_i(k)`, row `i − 1`, column `k − 1`.
    pub r: DMatrix<f64>,
    /// `|(x_k)_i² − (1 − r_i(k)) / (λ_k²/d_i + 1)|`
    pub reconstruction: DMatrix<f64>,
}

impl RiDecomposition {
    /// `Σ_k (1 − r_i(k))` per node; equals 2.
    pub fn complement_sums(&self) -> Vec<f64> {
        self.r.row_iter().map(|row| row.iter().map(|r| 1.0 - r).sum()).collect()
    }
}

/// Decomposes every squared component through the squared eigenvalue equation
/// `(x_k)_i² = (1 − r_i(k)) / (λ_k²/d_i + 1)`.
pub fn r_decomposition(g: &Graph, dec: &SpectralDecomposition) -> Result<RiDecomposition> {
    let n = g.n();
    let degrees = g.degrees();
    if let Some(i) = degrees.iter().position(|&d| d == 0) {
        return Err(Error::IsolatedNode(i + 1));
    }
    let x = dec.vectors();
    let nbrs: Vec<Vec<usize>> = (1..=n).map(|i| g.neighbors(i).into_iter().map(|l| l - 1).collect()).collect();
    let mut non_neighbor = DMatrix::zeros(n, n);
    let mut spread = DMatrix::zeros(n, n);
    let mut r = DMatrix::zeros(n, n);
    let mut reconstruction = DMatrix::zeros(n, n);
    for k in 0..n {
        let lk2 = dec.eigenvalues()[k].powi(2);
        for i in 0..n {
            let nn: f64 = (0..n).filter(|&j| j != i && !g.adj0(i, j)).map(|j| x[(j, k)].powi(2)).sum();
            let di = degrees[i] as f64;
            let mut sp = 0.0;
            for &j in &nbrs[i] {
                for &l in &nbrs[i] {
                    sp += (x[(l, k)] - x[(j, k)]).powi(2);
                }
            }
            sp /= 2.0 * di;
            non_neighbor[(i, k)] = nn;
            spread[(i, k)] = sp;
            r[(i, k)] = nn + sp;
            let predicted = (1.0 - nn - sp) / (lk2 / di + 1.0);
            reconstruction[(i, k)] = (x[(i, k)].powi(2) - predicted).abs();
        }
    }
    Ok(RiDecomposition { non_neighbor, spread, r, reconstruction })
}

/// Precomputed data for the walk expansion of squared components.
///
/// The sum `Σ_r (A^r)_jj b_r(k)` cancels heavily once `N` passes about 15,
/// so it is evaluated in double-double arithmetic: the integer inputs are
/// exact, `λ_k` is refined by Newton steps on the exact polynomial, and the
/// deflation and both sums run at roughly 32 significant digits.
#[derive(Clone, Debug)]
pub struct WalkExpansion {
    /// Monic `(−1)^N c_A(x)`, ascending coefficients.
    monic: Vec<TwoFloat>,
    /// `(A^r)_jj` for `r = 0..N−1`, row `j − 1`.
    closed: Vec<Vec<TwoFloat>>,
    /// `W_r = trace(A^r)`.
    closed_totals: Vec<TwoFloat>,
}

/// Newton steps applied to each eigenvalue before deflation.
const NEWTON_STEPS: usize = 4;

fn int_to_tf(v: i128) -> TwoFloat {
    TwoFloat::from(v)
}

fn horner(coeffs: &[TwoFloat], x: TwoFloat) -> (TwoFloat, TwoFloat) {
    let mut p = TwoFloat::from(0.0);
    let mut dp = TwoFloat::from(0.0);
    for c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + *c;
    }
    (p, dp)
}

fn deflate_tf(coeffs: &[TwoFloat], root: TwoFloat) -> Vec<TwoFloat> {
    let deg = coeffs.len() - 1;
    let mut q = vec![TwoFloat::from(0.0); deg];
    let mut carry = TwoFloat::from(0.0);
    for r in (1..=deg).rev() {
        carry = coeffs[r] + carry * root;
        q[r - 1] = carry;
    }
    q
}

impl WalkExpansion {
    /// Requires all eigenvalues simple and `N` within the exact-polynomial limit.
    pub fn new(g: &Graph, dec: &SpectralDecomposition) -> Result<Self> {
        if let Some(k) = (1..=dec.n()).find(|&k| !dec.is_simple(k)) {
            return Err(Error::Multiplicity { k, multiplicity: dec.multiplicity(k) });
        }
        let n = g.n();
        let cp = char_poly_exact(g)?;
        let negate = n % 2 == 1;
        let monic = cp
            .coeffs()
            .iter()
            .map(|c| {
                let c = if negate { -c } else { c.clone() };
                c.to_i128().map(int_to_tf).ok_or_else(|| {
                    Error::InvalidParams(format!("characteristic polynomial coefficient {c} exceeds 128 bits"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let powers = adjacency_powers(g, n.saturating_sub(1) as u32)?;
        let closed = (1..=n).map(|j| powers.iter().map(|p| int_to_tf(p.get(j, j))).collect()).collect();
        let closed_totals = powers.iter().map(|p| int_to_tf(p.trace())).collect();
        Ok(Self { monic, closed, closed_totals })
    }

    fn refined_root(&self, dec: &SpectralDecomposition, k: usize) -> TwoFloat {
        let mut x = TwoFloat::from(dec.eigenvalue(k));
        let (mut p, mut dp) = horner(&self.monic, x);
        for _ in 0..NEWTON_STEPS {
            if dp.hi() == 0.0 {
                break;
            }
            let next = x - p / dp;
            let (pn, dpn) = horner(&self.monic, next);
            if pn.abs() >= p.abs() {
                break;
            }
            x = next;
            p = pn;
            dp = dpn;
        }
        x
    }

    fn coefficients_tf(&self, dec: &SpectralDecomposition, k: usize) -> (TwoFloat, Vec<TwoFloat>) {
        let root = self.refined_root(dec, k);
        (root, deflate_tf(&self.monic, root))
    }

    /// `b_r(k)`: coefficients of `Π_{l≠k} (x − λ_l)` by synthetic division.
    pub fn coefficients(&self, dec: &SpectralDecomposition, k: usize) -> Vec<f64> {
        self.coefficients_tf(dec, k).1.into_iter().map(|b| b.hi()).collect()
    }

    /// `(x_k)_j² = ((−1)^N / c′_A(λ_k)) Σ_r (A^r)_jj b_r(k)`.
    pub fn squared(&self, dec: &SpectralDecomposition, j: usize, k: usize) -> Result<f64> {
        dec.check_frequency(k)?;
        let row = self.closed.get(j.wrapping_sub(1)).ok_or(Error::NodeOutOfRange { index: j, n: dec.n() })?;
        let (root, b) = self.coefficients_tf(dec, k);
        // (−1)^N c′_A(λ_k) is the derivative of the monic polynomial
        let (_, dp) = horner(&self.monic, root);
        let sum = row.iter().zip(&b).fold(TwoFloat::from(0.0), |acc, (w, b)| acc + *w * *b);
        Ok((sum / dp).hi())
    }

    /// `(−1)^N Σ_r W_r b_r(k)`, which equals `c′_A(λ_k)`.
    pub fn derivative_from_closed_walks(&self, dec: &SpectralDecomposition, k: usize) -> f64 {
        let (_, b) = self.coefficients_tf(dec, k);
        let sum = self.closed_totals.iter().zip(&b).fold(TwoFloat::from(0.0), |acc, (w, b)| acc + *w * *b);
        sign_pow(dec.n()) * sum.hi()
    }
}

/// One-shot walk expansion of `(x_k)_j²`.
pub fn walk_expansion_squared(g: &Graph, dec: &SpectralDecomposition, j: usize, k: usize) -> Result<f64> {
    g.check_node(j)?;
    WalkExpansion::new(g, dec)?.squared(dec, j, k)
}

/// Relative pivot size below which the shifted minor counts as singular.
pub const SINGULAR_TOL: f64 = 1e-10;

/// `(x_k)_j² = 1 / (1 + aᵀ (A_{G∖{j}} − λ_k I)^{−2} a)` with `a` the
/// adjacency column of `j` without entry `j`.
pub fn resolvent_squared(g: &Graph, dec: &SpectralDecomposition, j: usize, k: usize) -> Result<f64> {
    g.check_node(j)?;
    check_simple(dec, k)?;
    let n = g.n();
    if n == 1 {
        return Ok(1.0);
    }
    let a = g.adjacency();
    let mut minor = a.clone().remove_row(j - 1).remove_column(j - 1);
    for i in 0..n - 1 {
        minor[(i, i)] -= dec.eigenvalue(k);
    }
    let col = a.column(j - 1).clone_owned().remove_row(j - 1);
    let lu = minor.lu();
    let u = lu.u();
    let diag = u.diagonal();
    let max_pivot = diag.amax().max(1.0);
    if diag.iter().any(|p| p.abs() <= SINGULAR_TOL * max_pivot) {
        return Err(Error::SingularMinor { j, k });
    }
    let y = lu.solve(&col).ok_or(Error::SingularMinor { j, k })?;
    Ok(1.0 / (1.0 + y.norm_squared()))
}

/// Residuals of the normalization identities for a choice vector `b`.
#[derive(Clone, Debug, Serialize)]
pub struct BetaCheck {
    /// `β_k = bᵀx_k` from the eigensolver.
    pub beta: f64,
    /// `|Σ_j b_j det(A_{G∖{j}} − λ_k I) / det((A − λ_k I)_{row j=b}) − 1|`
    pub sum_one: f64,
    /// `|β_k² + Σ_j b_j det((A − λ_k I)_{row j=b}) / c′_A(λ_k)|`
    pub beta_sq: f64,
    /// `|1/β_k² − Σ_j det²(A_{G∖{j}} − λ_k I) / det²(…)_{row j=b}|`, relative to `1/β_k²`.
    pub inv_beta_sq: f64,
    /// `‖b‖² − β_k²`, non-negative.
    pub norm_slack: f64,
}

impl BetaCheck {
    pub fn max_residual(&self) -> f64 {
        self.sum_one.max(self.beta_sq).max(self.inv_beta_sq)
    }
}

pub fn beta_normalization_check(g: &Graph, dec: &SpectralDecomposition, k: usize, b: &[f64]) -> Result<BetaCheck> {
    check_simple(dec, k)?;
    if b.len() != g.n() {
        return Err(Error::Dimension { expected: g.n(), got: b.len() });
    }
    let beta: f64 = b.iter().zip(dec.vector(k).iter()).map(|(a, x)| a * x).sum();
    if beta.abs() <= BETA_TOL {
        return Err(Error::OrthogonalChoice { k, beta });
    }
    let lk = dec.eigenvalue(k);
    let cp = dec.char_poly_derivative_at(k)?;
    let rows = row_replaced_dets(g, lk, b);
    let deleted = if g.n() == 1 { vec![1.0] } else { node_deleted_dets(g, lk) };
    // Cells with (x_k)_j = 0 have both determinants zero and contribute nothing.
    let row_scale = rows.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let live: Vec<usize> = (0..g.n()).filter(|&j| rows[j].abs() > 1e-12 * row_scale).collect();
    let s1: f64 = live.iter().map(|&j| b[j] * deleted[j] / rows[j]).sum();
    let s2: f64 = b.iter().zip(&rows).map(|(bj, d)| bj * d).sum::<f64>() / cp;
    let s3: f64 = live.iter().map(|&j| (deleted[j] / rows[j]).powi(2)).sum();
    let inv = 1.0 / (beta * beta);
    Ok(BetaCheck {
        beta,
        sum_one: (s1 - 1.0).abs(),
        beta_sq: (beta * beta + s2).abs(),
        inv_beta_sq: (inv - s3).abs() / inv,
        norm_slack: b.iter().map(|v| v * v).sum::<f64>() - beta * beta,
    })
}

/// Predicts a zero component from the spectrum of `G∖{j}`: true when `λ_k`
/// appears there at least as often as in `G` (within `tol`).
pub fn zero_by_deleted_spectrum(g: &Graph, dec: &SpectralDecomposition, j: usize, k: usize, tol: f64) -> Result<bool> {
    g.check_node(j)?;
    dec.check_frequency(k)?;
    if g.n() == 1 {
        return Ok(false);
    }
    let sub = decompose_symmetric(&g.delete_node(j)?.adjacency(), &SpectralOptions::default())?;
    Ok(count_near(sub.eigenvalues().as_slice(), dec.eigenvalue(k), tol) >= dec.multiplicity(k))
}

/// Same predicate for all nodes and frequencies; row `j − 1`, column `k − 1`.
pub fn zero_by_deleted_spectrum_all(g: &Graph, dec: &SpectralDecomposition, tol: f64) -> Result<Vec<Vec<bool>>> {
    Ok(deleted_spectrum_distances(g, dec)?.into_iter().map(|row| row.into_iter().map(|d| d <= tol).collect()).collect())
}

/// Distance from `λ_k` to the `r`-th closest eigenvalue of `G∖{j}`, where
/// `r` is the multiplicity of `λ_k`; row `j − 1`, column `k − 1`. The
/// predicate of [`zero_by_deleted_spectrum`] is `distance ≤ tol`.
pub fn deleted_spectrum_distances(g: &Graph, dec: &SpectralDecomposition) -> Result<Vec<Vec<f64>>> {
    let n = g.n();
    if n == 1 {
        return Ok(vec![vec![f64::INFINITY]]);
    }
    (1..=n)
        .into_par_iter()
        .map(|j| {
            let sub = decompose_symmetric(&g.delete_node(j)?.adjacency(), &SpectralOptions::default())?;
            Ok((1..=n)
                .map(|k| {
                    let target = dec.eigenvalue(k);
                    let mut dist: Vec<f64> = sub.eigenvalues().iter().map(|v| (v - target).abs()).collect();
                    dist.sort_by(f64::total_cmp);
                    dist.get(dec.multiplicity(k) - 1).copied().unwrap_or(f64::INFINITY)
                })
                .collect())
        })
        .collect()
}

fn count_near(values: &[f64], target: f64, tol: f64) -> usize {
    values.iter().filter(|v| (*v - target).abs() <= tol).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};
    use crate::spectral::decompose;

    fn setup(kind: GraphKind) -> (Graph, SpectralDecomposition) {
        let g = generate(kind, 0).unwrap();
        let d = decompose(&g).unwrap();
        (g, d)
    }

    #[test]
    fn determinantal_small_cases() {
        let (k2, d) = setup(GraphKind::Complete(2));
        assert!((squared_component_det(&k2, &d, 1, 1).unwrap() - 0.5).abs() < 1e-15);
        let (p3, d) = setup(GraphKind::Path(3));
        assert!((squared_component_det(&p3, &d, 2, 1).unwrap() - 0.5).abs() < 1e-14);
        assert!(squared_component_det(&p3, &d, 2, 2).unwrap().abs() < 1e-14);
        let (k3, d) = setup(GraphKind::Complete(3));
        assert!(matches!(squared_component_det(&k3, &d, 1, 2), Err(Error::Multiplicity { .. })));
    }

    #[test]
    fn multiplicity_two() {
        let (k3, d) = setup(GraphKind::Complete(3));
        for j in 1..=3 {
            assert!((squared_component_mult2(&k3, &d, j, 2).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        }
        let (c4, d) = setup(GraphKind::Cycle(4));
        assert_eq!(d.multiplicity(2), 2);
        assert!((squared_component_mult2(&c4, &d, 1, 2).unwrap() - 0.25).abs() < 1e-12);
        let (p3, d) = setup(GraphKind::Star(3));
        assert!(matches!(squared_component_mult2(&p3, &d, 1, 2), Err(Error::GroupSize { size: 1, .. })));
    }

    #[test]
    fn products() {
        let (k2, d) = setup(GraphKind::Complete(2));
        assert!((component_product(&k2, &d, 1, 2, 1).unwrap() - 0.5).abs() < 1e-15);
        let (p3, d) = setup(GraphKind::Path(3));
        assert!((component_product(&p3, &d, 1, 3, 2).unwrap() + 0.5).abs() < 1e-14);
        for j in 1..=3 {
            for k in 1..=3 {
                let a = component_product(&p3, &d, j, j, k).unwrap();
                let b = squared_component_det(&p3, &d, j, k).unwrap();
                assert!((a - b).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn signed_vectors() {
        let (p3, d) = setup(GraphKind::Path(3));
        let x = signed_components(&p3, &d, 1, &[1.0; 3]).unwrap();
        let r2 = 2f64.sqrt();
        for (a, b) in x.iter().zip([0.5, r2 / 2.0, 0.5]) {
            assert!((a - b).abs() < 1e-14);
        }
        let (c5, d) = setup(GraphKind::Cycle(5));
        let _ = c5;
        let (k4, dk) = setup(GraphKind::Complete(4));
        let _ = (d, k4, dk);
        // regular graph, k > 1: u is orthogonal to x_k
        let (c6, d6) = setup(GraphKind::Cycle(6));
        assert!(matches!(signed_components(&c6, &d6, 6, &[1.0; 6]), Err(Error::OrthogonalChoice { .. })));
        // b = e_m: the returned vector has positive m-th entry and ratio (x)_j/(x)_m
        let g = generate(GraphKind::ErdosRenyi { n: 8, p: 0.5 }, 11).unwrap();
        let dg = decompose(&g).unwrap();
        if dg.all_simple() {
            for k in 1..=8 {
                let m = dg.vector(k).iamax() + 1;
                let b = ChoiceVector::Basis(m).to_vec(&g);
                let v = signed_components(&g, &dg, k, &b).unwrap();
                for j in 1..=8 {
                    let want = dg.component(j, k) / dg.component(m, k);
                    assert!((v[j - 1] / v[m - 1] - want).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn ri_small_cases() {
        let (k2, d) = setup(GraphKind::Complete(2));
        let r = r_decomposition(&k2, &d).unwrap();
        assert!(r.r[(0, 0)].abs() < 1e-15);
        let (p3, d) = setup(GraphKind::Path(3));
        let r = r_decomposition(&p3, &d).unwrap();
        assert!(r.r[(1, 0)].abs() < 1e-14);
        for s in r.complement_sums() {
            assert!((s - 2.0).abs() < 1e-12);
        }
        let iso = Graph::from_edges(3, &[(1, 2)]).unwrap();
        let di = decompose(&iso).unwrap();
        assert!(matches!(r_decomposition(&iso, &di), Err(Error::IsolatedNode(3))));
    }

    #[test]
    fn redundancy_cases() {
        let (p3, d) = setup(GraphKind::Path(3));
        let rep = centrality_report(&p3, &d).unwrap();
        assert_eq!(rep.redundancy(), &[0, 1, 0]);
        let (k3, d) = setup(GraphKind::Complete(3));
        let rep = centrality_report(&k3, &d).unwrap();
        assert_eq!(rep.redundancy(), &[0, 0, 0]);
        assert_eq!(rep.method(2), Method::Multiplicity2);
        let (s5, d) = setup(GraphKind::Star(5));
        let rep = centrality_report(&s5, &d).unwrap();
        // eigenvalue 0 is triple and orthogonal to the center
        assert_eq!(rep.redundancy(), &[3, 0, 0, 0, 0]);
        assert!((rep.value(1, 1) - 0.5).abs() < 1e-12);
        for j in 2..=5 {
            assert!((rep.value(j, 1) - 0.125).abs() < 1e-12);
        }
    }

    #[test]
    fn walk_small_cases() {
        let (k2, d) = setup(GraphKind::Complete(2));
        let w = WalkExpansion::new(&k2, &d).unwrap();
        let b = w.coefficients(&d, 1);
        assert!((b[0] - 1.0).abs() < 1e-15 && (b[1] - 1.0).abs() < 1e-15);
        assert!((w.squared(&d, 1, 1).unwrap() - 0.5).abs() < 1e-15);
        let (p3, d) = setup(GraphKind::Path(3));
        assert!(walk_expansion_squared(&p3, &d, 2, 2).unwrap().abs() < 1e-14);
        let (k3, d) = setup(GraphKind::Complete(3));
        assert!(WalkExpansion::new(&k3, &d).is_err());
    }

    #[test]
    fn resolvent_small_cases() {
        let (k2, d) = setup(GraphKind::Complete(2));
        assert!((resolvent_squared(&k2, &d, 1, 1).unwrap() - 0.5).abs() < 1e-15);
        let (p3, d) = setup(GraphKind::Path(3));
        assert!(matches!(resolvent_squared(&p3, &d, 2, 2), Err(Error::SingularMinor { j: 2, k: 2 })));
    }

    #[test]
    fn beta_examples() {
        let (p3, d) = setup(GraphKind::Path(3));
        let c = beta_normalization_check(&p3, &d, 1, &[1.0; 3]).unwrap();
        assert!((c.beta - (1.0 + 2f64.sqrt() / 2.0)).abs() < 1e-14);
        assert!(c.max_residual() < 1e-12 && c.norm_slack >= 0.0);
        let c = beta_normalization_check(&p3, &d, 1, &[1.0, 0.0, 0.0]).unwrap();
        assert!((c.beta - d.component(1, 1)).abs() < 1e-15);
        let x1: Vec<f64> = d.vector(1).iter().copied().collect();
        let c = beta_normalization_check(&p3, &d, 1, &x1).unwrap();
        assert!((c.beta - 1.0).abs() < 1e-14);
        assert!(c.max_residual() < 1e-12);
    }
}
