//! Runs every identity and inequality suite on a graph and collects the
//! entries into one report.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{bound_suite, xi_statistic};
use crate::centrality::{
    centrality_report_with, deleted_spectrum_distances, eigensolver_squares, r_decomposition, CentralityReport,
    ZERO_TOL,
};
use crate::error::Result;
use crate::graph::Graph;
use crate::report::{CheckReport, Scope, SkipReason};
use crate::spectral::{adjacency_powers, decompose, node_deleted_dets, SpectralDecomposition};
use crate::weights::{complement_coupling_of, identity_suite, spacing_bounds, weight_profile, DEFAULT_M_MAX};

/// Tolerance on eigenvalues when comparing a spectrum with a node-deleted one.
pub const PREDICATE_TOL: f64 = 1e-7;

/// Squared components and eigenvalue distances at or below this are treated
/// as structural zeros by [`centrality_checks`].
pub const STRUCTURAL_ZERO: f64 = 1e-12;

/// Walk lengths of the function-of-matrix reconstruction check.
const RECONSTRUCTION_POWERS: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub m_max: u32,
    pub zero_tol: f64,
    /// Negative control: shifts one entry of `Y` before the centrality
    /// checks run, which must then fail.
    pub corrupt_y: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { m_max: DEFAULT_M_MAX, zero_tol: ZERO_TOL, corrupt_y: false }
    }
}

/// Everything checked on one graph.
#[derive(Clone, Debug, Serialize)]
pub struct GraphVerification {
    pub n: usize,
    pub links: usize,
    pub connected: bool,
    /// `d_min − min_k λ_k² − μ_{N−1}`; reported, never checked.
    pub xi: Option<f64>,
    pub checks: CheckReport,
}

impl GraphVerification {
    pub fn passed(&self) -> bool {
        self.checks.all_pass()
    }
}

/// Spectrum-level identities: trace moments, reconstruction of `A^m`, node
/// moments, and the node-deletion determinant identities.
pub fn spectral_checks(g: &Graph, dec: &SpectralDecomposition) -> Result<CheckReport> {
    let n = g.n();
    let mut r = CheckReport::new();
    let lambda = dec.eigenvalues();
    r.equal("trace_zero", Scope::global(), lambda.sum(), 0.0, 1.0, 1e-8, "sum_k lambda_k = 0");
    let l2: f64 = lambda.iter().map(|l| l * l).sum();
    let two_l = 2.0 * g.num_links() as f64;
    r.equal("trace_square", Scope::global(), l2, two_l, 1.0, 1e-6, "sum_k lambda_k^2 = 2L");
    r.equal("orthonormal_basis", Scope::global(), dec.orthogonality_residual(), 0.0, 1.0, 1e-9, "X^T X = I");

    let x = dec.vectors();
    let powers = adjacency_powers(g, RECONSTRUCTION_POWERS)?;
    for m in 0..=RECONSTRUCTION_POWERS {
        let diag = DMatrix::from_diagonal(&lambda.map(|l| l.powi(m as i32)));
        let rec = x * diag * x.transpose();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((rec[(i, j)] - powers[m as usize].get(i + 1, j + 1) as f64).abs());
            }
        }
        r.equal(
            "function_of_matrix",
            Scope::global().with_param(m as i64),
            worst,
            0.0,
            1.0,
            1e-6,
            "sum_k lambda_k^m x_k x_k^T = A^m",
        );
    }

    let y = eigensolver_squares(dec);
    for j in 0..n {
        let s1: f64 = (0..n).map(|k| lambda[k] * y[(j, k)]).sum();
        let s2: f64 = (0..n).map(|k| lambda[k] * lambda[k] * y[(j, k)]).sum();
        r.equal("node_moment_one", Scope::node(j + 1), s1, 0.0, 1.0, 1e-7, "sum_k lambda_k (x_k)_j^2 = 0");
        r.equal(
            "node_moment_two",
            Scope::node(j + 1),
            s2,
            g.degree(j + 1) as f64,
            1.0,
            1e-7,
            "sum_k lambda_k^2 (x_k)_j^2 = d_j",
        );
    }

    if n >= 2 {
        for k in 1..=n {
            let scope = Scope::frequency(k);
            if !dec.is_simple(k) {
                r.skip(
                    "deleted_det_sign",
                    scope,
                    SkipReason::Multiplicity,
                    "sign det(A_j - lambda_k I) = -sign c'(lambda_k)",
                );
                r.skip(
                    "deleted_det_sum",
                    scope,
                    SkipReason::Multiplicity,
                    "sum_j det(A_j - lambda_k I) = -c'(lambda_k)",
                );
                continue;
            }
            let cp = dec.char_poly_derivative_at(k)?;
            let dets = node_deleted_dets(g, dec.eigenvalue(k));
            let scale = dets.iter().fold(0.0f64, |a, d| a.max(d.abs())).max(f64::MIN_POSITIVE);
            let worst = dets.iter().map(|d| d * cp.signum() / scale).fold(f64::NEG_INFINITY, f64::max);
            r.le("deleted_det_sign", scope, worst, 0.0, "sign det(A_j - lambda_k I) = -sign c'(lambda_k)");
            let sum: f64 = dets.iter().sum();
            r.equal(
                "deleted_det_sum",
                scope,
                sum,
                -cp,
                cp.abs().max(1.0),
                1e-6,
                "sum_j det(A_j - lambda_k I) = -c'(lambda_k)",
            );
        }
    }
    Ok(r)
}

/// Checks on the centrality matrix `Y` and the `r_i(k)` decomposition.
pub fn centrality_checks(
    g: &Graph,
    dec: &SpectralDecomposition,
    report: &CentralityReport,
    zero_tol: f64,
) -> Result<CheckReport> {
    let n = g.n();
    let y = report.y();
    let lambda = dec.eigenvalues();
    let mut r = CheckReport::new();
    for j in 0..n {
        let s: f64 = y.row(j).sum();
        r.equal("y_row_sum", Scope::node(j + 1), s, 1.0, 1.0, 1e-7, "sum_k (x_k)_j^2 = 1");
    }
    for k in 0..n {
        let s: f64 = y.column(k).sum();
        r.equal("y_column_sum", Scope::frequency(k + 1), s, 1.0, 1.0, 1e-7, "sum_j (x_k)_j^2 = 1");
    }
    let y_lambda = y * lambda;
    let lambda_scale = dec.lambda_max().abs().max(1.0);
    for j in 0..n {
        r.equal("y_lambda_zero", Scope::node(j + 1), y_lambda[j], 0.0, lambda_scale, 1e-6, "Y lambda = 0");
    }
    let oracle = eigensolver_squares(dec);
    let worst = (y - &oracle).amax();
    r.equal("y_eigensolver", Scope::global(), worst, 0.0, 1.0, 1e-7, "Y = X o X");

    if n >= 2 {
        for k in 1..=n {
            let scope = Scope::frequency(k);
            let cited = "(x_k)_j^2/(x_k)_m^2 = det(A_j - lambda_k I)/det(A_m - lambda_k I)";
            if !dec.is_simple(k) {
                r.skip("ratio_identity", scope, SkipReason::Multiplicity, cited);
                continue;
            }
            let dets = node_deleted_dets(g, dec.eigenvalue(k));
            let m = (0..n).max_by(|&a, &b| dets[a].abs().total_cmp(&dets[b].abs())).unwrap_or(0);
            if dets[m].abs() <= 1e-9 || y[(m, k - 1)] <= zero_tol {
                r.skip("ratio_identity", scope, SkipReason::NearZeroDenominator, cited);
                continue;
            }
            let worst = (0..n)
                .map(|j| {
                    let expected = dets[j] / dets[m];
                    (y[(j, k - 1)] / y[(m, k - 1)] - expected).abs() / expected.abs().max(1.0)
                })
                .fold(0.0, f64::max);
            r.equal("ratio_identity", scope, worst, 0.0, 1.0, 1e-6, cited);
        }
    }

    // A small component moves a deleted eigenvalue by roughly y / |S| with
    // S = Σ_{l≠k} (x_l)_j² / (λ_l − λ_k), so cells near either threshold can
    // fall on different sides. Only a structural zero on one side facing a
    // value above PREDICATE_TOL on the other counts as a disagreement.
    let dist = deleted_spectrum_distances(g, dec)?;
    let disagreements = (0..n)
        .flat_map(|j| (0..n).map(move |k| (j, k)))
        .filter(|&(j, k)| {
            let (v, d) = (y[(j, k)], dist[j][k]);
            (v <= STRUCTURAL_ZERO && d > PREDICATE_TOL) || (d <= STRUCTURAL_ZERO && v > PREDICATE_TOL)
        })
        .count();
    r.le(
        "zero_predicate_agreement",
        Scope::global(),
        disagreements as f64,
        0.0,
        "(x_k)_j = 0 iff lambda_k in spectrum(A_j)",
    );

    if g.has_isolated_node() {
        r.skip("ri_reconstruction", Scope::global(), SkipReason::IsolatedNode, "r_i(k) decomposition");
        r.skip("ri_range", Scope::global(), SkipReason::IsolatedNode, "0 <= r_i(k) <= 1");
    } else {
        let ri = r_decomposition(g, dec)?;
        r.equal(
            "ri_reconstruction",
            Scope::global(),
            ri.reconstruction.amax(),
            0.0,
            1.0,
            1e-9,
            "(x_k)_i^2 = (1 - r_i(k))/(lambda_k^2/d_i + 1)",
        );
        let lo = ri.r.min();
        let hi = ri.r.max();
        r.le("ri_range", Scope::global(), 0.0, lo, "0 <= r_i(k)");
        r.le("ri_range", Scope::global(), hi, 1.0, "r_i(k) <= 1");
    }
    Ok(r)
}

/// Runs every suite on `g`.
pub fn verify_graph(g: &Graph, opts: &VerifyOptions) -> Result<GraphVerification> {
    let dec = decompose(g)?;
    let mut checks = spectral_checks(g, &dec)?;

    let mut report = centrality_report_with(g, &dec, opts.zero_tol)?;
    if opts.corrupt_y {
        let mut y = report.y().clone();
        y[(0, 0)] += 0.25;
        report = report.with_y(y);
    }
    checks.extend(centrality_checks(g, &dec, &report, opts.zero_tol)?);

    let profile = weight_profile(g, &dec, opts.m_max)?;
    checks.extend(identity_suite(g, &dec, &profile));
    if g.n() >= 2 {
        checks.extend(spacing_bounds(g, &profile)?.checks);
        checks.extend(complement_coupling_of(g, &dec)?.checks);
    }
    checks.extend(bound_suite(g, &dec, &profile)?);

    Ok(GraphVerification {
        n: g.n(),
        links: g.num_links(),
        connected: g.is_connected(),
        xi: xi_statistic(g, &dec).ok(),
        checks,
    })
}

/// Runs [`verify_graph`] on each graph in parallel; results keep input order.
pub fn verify_all(graphs: &[Graph], opts: &VerifyOptions) -> Result<Vec<GraphVerification>> {
    graphs.par_iter().map(|g| verify_graph(g, opts)).collect()
}
