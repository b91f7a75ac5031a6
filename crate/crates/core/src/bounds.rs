//! Inequalities on eigenvector components and eigenvalues, evaluated as
//! slack-reporting checks.

use serde::Serialize;

use crate::centrality::r_decomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::report::{CheckReport, Scope, SkipReason};
use crate::spectral::{adjacency_powers, decompose_symmetric, SpectralDecomposition, SpectralOptions};
use crate::weights::WeightProfile;

/// Largest walk length accepted by [`walk_minmax_bounds`].
pub const MAX_BOUND_WALK: u32 = 16;

/// Walk lengths evaluated by [`bound_suite`].
pub const SUITE_WALKS: [u32; 4] = [0, 1, 2, 3];

fn check_no_isolated(g: &Graph) -> Result<Vec<f64>> {
    let d = g.degrees();
    match d.iter().position(|&v| v == 0) {
        Some(i) => Err(Error::IsolatedNode(i + 1)),
        None => Ok(d.into_iter().map(|v| v as f64).collect()),
    }
}

fn sq(dec: &SpectralDecomposition, j: usize, k: usize) -> f64 {
    dec.component(j, k).powi(2)
}

/// `(x_k)_i² ≤ 1 / (1 + λ_k²/d_i)` for every node and frequency.
pub fn upper_bound_squared(g: &Graph, dec: &SpectralDecomposition) -> Result<CheckReport> {
    let d = check_no_isolated(g)?;
    let mut r = CheckReport::new();
    for k in 1..=g.n() {
        let l2 = dec.eigenvalue(k).powi(2);
        for i in 1..=g.n() {
            r.le(
                "upper_bound_squared",
                Scope::cell(i, k),
                sq(dec, i, k),
                1.0 / (1.0 + l2 / d[i - 1]),
                "(x_k)_i^2 <= 1/(1 + lambda_k^2/d_i)",
            );
        }
    }
    Ok(r)
}

/// `s_k`: smallest `((x_k)_l − (x_k)_j)²` over node pairs `l ≠ j`.
pub fn min_square_spacing(dec: &SpectralDecomposition, k: usize) -> f64 {
    let mut v: Vec<f64> = dec.vector(k).iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v.windows(2).map(|w| (w[1] - w[0]).powi(2)).fold(f64::INFINITY, f64::min)
}

/// `min_j (x_k)_j² ≤ (1 − (d_min/2) s_k) / (λ_k²/d_min + N − d_min)` per frequency.
///
/// Advisory: `K_2` at `k = 2` violates it.
pub fn nikiforov_extended(g: &Graph, dec: &SpectralDecomposition) -> CheckReport {
    let cited = "min_j (x_k)_j^2 <= (1 - (d_min/2) s_k)/(lambda_k^2/d_min + N - d_min)";
    let mut r = CheckReport::new();
    let n = g.n();
    let d_min = g.degrees().into_iter().min().unwrap_or(0) as f64;
    for k in 1..=n {
        if d_min == 0.0 {
            r.skip("nikiforov_extended", Scope::frequency(k), SkipReason::IsolatedNode, cited);
            continue;
        }
        let s_k = if n < 2 { 0.0 } else { min_square_spacing(dec, k) };
        let lhs = (1..=n).map(|j| sq(dec, j, k)).fold(f64::INFINITY, f64::min);
        let rhs = (1.0 - d_min / 2.0 * s_k) / (dec.eigenvalue(k).powi(2) / d_min + n as f64 - d_min);
        r.le_advisory("nikiforov_extended", Scope::frequency(k), lhs, rhs, cited);
    }
    r
}

/// Walk-count bounds for walk length `m`:
/// `min_j (x_k)_j ≤ λ_k^m w_k / N_m ≤ max_j (x_k)_j`,
/// `|λ_k^m| / √N_{2m} ≤ max_j (x_k)_j`, and
/// `min_k (x_k)_j² ≤ (A^m)_jj / W_m ≤ max_k (x_k)_j²`.
///
/// The second family and the odd-`m` closed-walk entries are advisory.
pub fn walk_minmax_bounds(
    g: &Graph,
    dec: &SpectralDecomposition,
    profile: &WeightProfile,
    m: u32,
) -> Result<CheckReport> {
    if m > MAX_BOUND_WALK {
        return Err(Error::InvalidParams(format!("walk length {m} exceeds {MAX_BOUND_WALK}")));
    }
    let n = g.n();
    let powers = adjacency_powers(g, 2 * m)?;
    let nm = powers[m as usize].total() as f64;
    let n2m = powers[2 * m as usize].total() as f64;
    let wm = powers[m as usize].trace() as f64;
    let mut r = CheckReport::new();
    let c_min = "min_j (x_k)_j <= lambda_k^m w_k / N_m";
    let c_max = "lambda_k^m w_k / N_m <= max_j (x_k)_j";
    let c_lb = "|lambda_k^m| / sqrt(N_2m) <= max_j (x_k)_j";
    for k in 1..=n {
        let scope = Scope::frequency(k).with_param(m as i64);
        let x = dec.vector(k);
        let lo = x.min();
        let hi = x.max();
        let lm = dec.eigenvalue(k).powi(m as i32);
        if nm == 0.0 {
            r.skip("walk_node_min", scope, SkipReason::ZeroWalkCount, c_min);
            r.skip("walk_node_max", scope, SkipReason::ZeroWalkCount, c_max);
        } else {
            let mid = lm * profile.w[k - 1] / nm;
            r.le("walk_node_min", scope, lo, mid, c_min);
            r.le("walk_node_max", scope, mid, hi, c_max);
        }
        if n2m == 0.0 {
            r.skip("walk_lower_max", scope, SkipReason::ZeroWalkCount, c_lb);
        } else {
            r.le_advisory("walk_lower_max", scope, lm.abs() / n2m.sqrt(), hi, c_lb);
        }
    }
    let cc_min = "min_k (x_k)_j^2 <= (A^m)_jj / W_m";
    let cc_max = "(A^m)_jj / W_m <= max_k (x_k)_j^2";
    for j in 1..=n {
        let scope = Scope::node(j).with_param(m as i64);
        if wm == 0.0 {
            r.skip("walk_closed_min", scope, SkipReason::ZeroWalkCount, cc_min);
            r.skip("walk_closed_max", scope, SkipReason::ZeroWalkCount, cc_max);
            continue;
        }
        let ratio = powers[m as usize].get(j, j) as f64 / wm;
        let row: Vec<f64> = (1..=n).map(|k| sq(dec, j, k)).collect();
        let lo = row.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if m.is_multiple_of(2) {
            r.le("walk_closed_min", scope, lo, ratio, cc_min);
            r.le("walk_closed_max", scope, ratio, hi, cc_max);
        } else {
            r.le_advisory("walk_closed_min", scope, lo, ratio, cc_min);
            r.le_advisory("walk_closed_max", scope, ratio, hi, cc_max);
        }
    }
    Ok(r)
}

/// `4 / (N (3 + (A⁴)_ii / d_i²)) ≤ max_k (x_k)_i²` per node.
pub fn max_component_lb(g: &Graph, dec: &SpectralDecomposition) -> Result<CheckReport> {
    let d = check_no_isolated(g)?;
    let n = g.n();
    let a4 = &adjacency_powers(g, 4)?[4];
    let mut r = CheckReport::new();
    for i in 1..=n {
        let lhs = 4.0 / (n as f64 * (3.0 + a4.get(i, i) as f64 / d[i - 1].powi(2)));
        let rhs = (1..=n).map(|k| sq(dec, i, k)).fold(f64::NEG_INFINITY, f64::max);
        r.le("max_component_lb", Scope::node(i), lhs, rhs, "4/(N (3 + (A^4)_ii/d_i^2)) <= max_k (x_k)_i^2");
    }
    Ok(r)
}

/// Upper bounds on the smallest squared component, over frequencies per node
/// and over nodes per frequency.
pub fn min_over_k_and_i_bounds(g: &Graph, dec: &SpectralDecomposition) -> Result<CheckReport> {
    let d = check_no_isolated(g)?;
    let n = g.n();
    let nf = n as f64;
    let d_av = d.iter().sum::<f64>() / nf;
    let d_max = d.iter().copied().fold(0.0, f64::max);
    let harmonic = d.iter().map(|v| 1.0 / v).sum::<f64>() / nf;
    let min_l2 = dec.min_lambda_sq();
    let mut r = CheckReport::new();
    for i in 1..=n {
        let di = d[i - 1];
        let lhs = (1..=n).map(|k| sq(dec, i, k)).fold(f64::INFINITY, f64::min);
        let rhs = (1.0 + d_av / di).min(2.0) / nf / (min_l2 / di + 1.0);
        r.le(
            "min_over_k",
            Scope::node(i),
            lhs,
            rhs,
            "min_k (x_k)_i^2 <= (1/N) min(1 + d_av/d_i, 2) / min_k(lambda_k^2/d_i + 1)",
        );
    }
    for k in 1..=n {
        let l2 = dec.eigenvalue(k).powi(2);
        let lhs = (1..=n).map(|i| sq(dec, i, k)).fold(f64::INFINITY, f64::min);
        let rhs = (1.0 + l2 * harmonic) / nf / (1.0 + l2 / d_max);
        r.le(
            "min_over_i",
            Scope::frequency(k),
            lhs,
            rhs,
            "min_i (x_k)_i^2 <= (1/N) (1 + lambda_k^2 E[1/D]) / (1 + lambda_k^2/d_max)",
        );
    }
    Ok(r)
}

/// `√d_max ≤ λ_1`, `min_k λ_k² ≤ d_min`, and both unity sums of the squared
/// eigenvalue equation.
pub fn spectral_degree_checks(g: &Graph, dec: &SpectralDecomposition) -> Result<CheckReport> {
    let d = check_no_isolated(g)?;
    let n = g.n();
    let d_max = d.iter().copied().fold(0.0, f64::max);
    let d_min = d.iter().copied().fold(f64::INFINITY, f64::min);
    let mut r = CheckReport::new();
    r.le("lambda1_sqrt_dmax", Scope::global(), d_max.sqrt(), dec.lambda_max(), "sqrt(d_max) <= lambda_1");
    r.le("min_lambda_sq_dmin", Scope::global(), dec.min_lambda_sq(), d_min, "min_k lambda_k^2 <= d_min");
    let ri = r_decomposition(g, dec)?;
    let term = |i: usize, k: usize| (1.0 - ri.r[(i, k)]) / (dec.eigenvalues()[k].powi(2) / d[i] + 1.0);
    for i in 0..n {
        let s: f64 = (0..n).map(|k| term(i, k)).sum();
        r.equal("unity_sum_node", Scope::node(i + 1), s, 1.0, 1.0, 1e-8, "sum_k (1 - r_i(k))/(lambda_k^2/d_i + 1) = 1");
    }
    for k in 0..n {
        let s: f64 = (0..n).map(|i| term(i, k)).sum();
        r.equal(
            "unity_sum_frequency",
            Scope::frequency(k + 1),
            s,
            1.0,
            1.0,
            1e-8,
            "sum_i (1 - r_i(k))/(lambda_k^2/d_i + 1) = 1",
        );
    }
    for (i, s) in ri.complement_sums().into_iter().enumerate() {
        r.equal("complement_sum_two", Scope::node(i + 1), s, 2.0, 1.0, 1e-7, "sum_k (1 - r_i(k)) = 2");
    }
    Ok(r)
}

/// `S_i` per node and the checks built on it.
#[derive(Clone, Debug, Serialize)]
pub struct SiProfile {
    #[serde(rename = "S")]
    pub s: Vec<f64>,
    pub min_lambda_sq: f64,
    /// `|min_k λ_k² − d_i (1 − S_i)/(1 + S_i)| / d_i`
    pub reconstruction: Vec<f64>,
    pub connected: bool,
    pub checks: CheckReport,
}

/// True when every `λ_k²` is the same; among connected graphs only `K_2`.
fn equal_squared_eigenvalues(dec: &SpectralDecomposition) -> bool {
    let l2: Vec<f64> = dec.eigenvalues().iter().map(|l| l * l).collect();
    let hi = l2.iter().copied().fold(0.0, f64::max);
    let lo = l2.iter().copied().fold(f64::INFINITY, f64::min);
    hi - lo <= 1e-9 * hi.max(1.0)
}

pub fn si_profile(g: &Graph, dec: &SpectralDecomposition) -> Result<SiProfile> {
    let d = check_no_isolated(g)?;
    let n = g.n();
    let ri = r_decomposition(g, dec)?;
    let l2: Vec<f64> = dec.eigenvalues().iter().map(|l| l * l).collect();
    // k* order: frequencies by descending λ², ties by index
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| l2[b].total_cmp(&l2[a]));
    let min_l2 = l2.iter().copied().fold(f64::INFINITY, f64::min);
    let connected = g.is_connected();
    let mut s = vec![0.0; n];
    let mut reconstruction = vec![0.0; n];
    for i in 0..n {
        let di = d[i];
        let h = |k: usize| 1.0 / (l2[order[k]] / di + 1.0);
        let mut partial = 0.0;
        let mut si = 0.0;
        for k in 0..n.saturating_sub(1) {
            partial += 1.0 - ri.r[(i, order[k])];
            si += partial * (h(k + 1) - h(k));
        }
        s[i] = si;
        reconstruction[i] = (min_l2 - di * (1.0 - si) / (1.0 + si)).abs() / di;
    }

    let mut r = CheckReport::new();
    let flat = equal_squared_eigenvalues(dec);
    for i in 0..n {
        let scope = Scope::node(i + 1);
        r.equal(
            "si_reconstruction",
            scope,
            reconstruction[i],
            0.0,
            1.0,
            1e-7,
            "min_k lambda_k^2 = d_i (1 - S_i)/(1 + S_i)",
        );
        r.le("si_nonnegative", scope, 0.0, s[i], "0 <= S_i");
        r.le("si_at_most_one", scope, s[i], 1.0, "S_i <= 1");
        let c_pos = "0 < S_i on connected graphs";
        if !connected {
            r.skip("si_positive", scope, SkipReason::Disconnected, c_pos);
        } else if flat {
            r.skip("si_positive", scope, SkipReason::EqualSquaredEigenvalues, c_pos);
        } else {
            r.lt("si_positive", scope, 0.0, s[i], c_pos);
        }
        let lower = (0..n).filter(|&j| d[j] < d[i]).map(|j| s[j]).fold(f64::NEG_INFINITY, f64::max);
        if lower.is_finite() {
            r.le("si_degree_monotone", scope, lower, s[i], "d_j < d_i implies S_j <= S_i");
        }
    }
    let d_min = d.iter().copied().fold(f64::INFINITY, f64::min);
    let c_strict = "min_k lambda_k^2 < d_min on connected graphs";
    if !connected {
        r.skip("min_eigenvalue_strict", Scope::global(), SkipReason::Disconnected, c_strict);
    } else if flat {
        r.skip("min_eigenvalue_strict", Scope::global(), SkipReason::EqualSquaredEigenvalues, c_strict);
    } else {
        r.lt("min_eigenvalue_strict", Scope::global(), min_l2, d_min, c_strict);
    }
    if (min_l2 - d_min).abs() <= 1e-9 {
        let c_eq = "min_k lambda_k^2 = d_min implies disconnected";
        if flat && connected {
            r.skip("equality_implies_disconnected", Scope::global(), SkipReason::EqualSquaredEigenvalues, c_eq);
        } else {
            let lhs = if connected { 1.0 } else { 0.0 };
            r.le("equality_implies_disconnected", Scope::global(), lhs, 0.0, c_eq);
        }
    }
    Ok(SiProfile { s, min_lambda_sq: min_l2, reconstruction, connected, checks: r })
}

/// `ξ = d_min − min_k λ_k² − μ_{N−1}` with `μ_{N−1}` the algebraic
/// connectivity. Reported as a statistic only.
pub fn xi_statistic(g: &Graph, dec: &SpectralDecomposition) -> Result<f64> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewNodes { n, needed: 2 });
    }
    let lap = decompose_symmetric(&g.laplacian(), &SpectralOptions::default())?;
    let mu = lap.eigenvalue(n - 1);
    let d_min = g.degrees().into_iter().min().unwrap_or(0) as f64;
    Ok(d_min - dec.min_lambda_sq() - mu)
}

type SuiteFn = fn(&Graph, &SpectralDecomposition) -> Result<CheckReport>;

/// Every inequality above on one graph.
///
/// Three statements have known counterexamples and are recorded as advisory
/// entries: the extended Nikiforov bound (`K_2`, `k = 2`), the
/// `|λ_k^m|/√N_2m` lower bound (which holds for `max_j |(x_k)_j|` but not for
/// the signed maximum), and the closed-walk sandwich for odd `m` (where
/// `λ^m` is negative on part of the spectrum). Checks that need a positive minimum
/// degree are skipped on graphs with isolated nodes.
pub fn bound_suite(g: &Graph, dec: &SpectralDecomposition, profile: &WeightProfile) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    let isolated = g.has_isolated_node();
    let guarded: [(&str, SuiteFn); 4] = [
        ("upper_bound_squared", upper_bound_squared),
        ("max_component_lb", max_component_lb),
        ("min_over_k_and_i", min_over_k_and_i_bounds),
        ("spectral_degree", spectral_degree_checks),
    ];
    for (name, f) in guarded {
        if isolated {
            r.skip(name, Scope::global(), SkipReason::IsolatedNode, name);
        } else {
            r.extend(f(g, dec)?);
        }
    }
    r.extend(nikiforov_extended(g, dec));
    for m in SUITE_WALKS {
        r.extend(walk_minmax_bounds(g, dec, profile, m)?);
    }
    if isolated {
        r.skip("si_profile", Scope::global(), SkipReason::IsolatedNode, "si_profile");
    } else {
        r.extend(si_profile(g, dec)?.checks);
    }
    Ok(r)
}
