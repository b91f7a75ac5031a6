//! Slack-reporting containers shared by the identity and inequality suites.

use serde::Serialize;

/// Absolute part of the inequality tolerance.
pub const ABS_TOL: f64 = 1e-9;
/// Relative part of the inequality tolerance, applied to the larger side.
pub const REL_TOL: f64 = 1e-9;

/// Tolerance for `lhs ≤ rhs`: `ABS_TOL + REL_TOL · max(|lhs|, |rhs|)`.
pub fn inequality_tol(lhs: f64, rhs: f64) -> f64 {
    ABS_TOL + REL_TOL * lhs.abs().max(rhs.abs())
}

/// Node and frequency indices an entry refers to (1-based), plus an optional
/// integer parameter such as a walk length.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Scope {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frequency: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param: Option<i64>,
}

impl Scope {
    pub fn global() -> Self {
        Self::default()
    }

    pub fn node(j: usize) -> Self {
        Self { node: Some(j), ..Self::default() }
    }

    pub fn frequency(k: usize) -> Self {
        Self { frequency: Some(k), ..Self::default() }
    }

    pub fn cell(j: usize, k: usize) -> Self {
        Self { node: Some(j), frequency: Some(k), param: None }
    }

    pub fn with_param(mut self, p: i64) -> Self {
        self.param = Some(p);
        self
    }
}

/// How `lhs` and `rhs` are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs ≤ rhs` within the tolerance.
    Le,
    /// `lhs < rhs`: the slack must be positive.
    Lt,
    /// `|lhs − rhs| ≤ tol`.
    Eq,
}

/// Machine-readable reason an entry was not evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    ZeroWalkCount,
    Multiplicity,
    NearZeroDenominator,
    IsolatedNode,
    Disconnected,
    EqualSquaredEigenvalues,
    NotNegative,
    NullGraph,
}

impl SkipReason {
    pub fn code(self) -> &'static str {
        match self {
            Self::ZeroWalkCount => "zero_walk_count",
            Self::Multiplicity => "multiplicity",
            Self::NearZeroDenominator => "near_zero_denominator",
            Self::IsolatedNode => "isolated_node",
            Self::Disconnected => "disconnected",
            Self::EqualSquaredEigenvalues => "equal_squared_eigenvalues",
            Self::NotNegative => "not_negative",
            Self::NullGraph => "null_graph",
        }
    }
}

/// One evaluated (or skipped) identity or inequality instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub scope: Scope,
    pub relation: Relation,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs` for inequalities, `−|lhs − rhs|` for equalities.
    pub slack: f64,
    pub tol: f64,
    pub pass: bool,
    /// The statement being checked, written as a formula.
    pub cited: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<SkipReason>,
    /// Evaluated and reported, but excluded from [`CheckReport::failures`]
    /// because the statement has known counterexamples.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub advisory: bool,
}

/// Ordered list of check entries.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `lhs ≤ rhs` with the default inequality tolerance.
    pub fn le(&mut self, name: &str, scope: Scope, lhs: f64, rhs: f64, cited: &str) {
        let tol = inequality_tol(lhs, rhs);
        let slack = rhs - lhs;
        self.entries.push(CheckEntry {
            name: name.to_string(),
            scope,
            relation: Relation::Le,
            lhs,
            rhs,
            slack,
            tol,
            pass: slack >= -tol,
            cited: cited.to_string(),
            skipped: None,
            advisory: false,
        });
    }

    /// Records `lhs < rhs`; passes only for positive slack.
    pub fn lt(&mut self, name: &str, scope: Scope, lhs: f64, rhs: f64, cited: &str) {
        let slack = rhs - lhs;
        self.entries.push(CheckEntry {
            name: name.to_string(),
            scope,
            relation: Relation::Lt,
            lhs,
            rhs,
            slack,
            tol: 0.0,
            pass: slack > 0.0,
            cited: cited.to_string(),
            skipped: None,
            advisory: false,
        });
    }

    /// Records `lhs = rhs`; `tol` applies to `|lhs − rhs| / scale`.
    pub fn equal(&mut self, name: &str, scope: Scope, lhs: f64, rhs: f64, scale: f64, tol: f64, cited: &str) {
        let residual = (lhs - rhs).abs() / scale.max(f64::MIN_POSITIVE);
        self.entries.push(CheckEntry {
            name: name.to_string(),
            scope,
            relation: Relation::Eq,
            lhs,
            rhs,
            slack: -residual,
            tol,
            pass: residual <= tol,
            cited: cited.to_string(),
            skipped: None,
            advisory: false,
        });
    }

    /// Records an entry that was not evaluated; it counts as neither pass nor failure.
    pub fn skip(&mut self, name: &str, scope: Scope, reason: SkipReason, cited: &str) {
        self.entries.push(CheckEntry {
            name: name.to_string(),
            scope,
            relation: Relation::Le,
            lhs: f64::NAN,
            rhs: f64::NAN,
            slack: f64::NAN,
            tol: 0.0,
            pass: true,
            cited: cited.to_string(),
            skipped: Some(reason),
            advisory: false,
        });
    }

    /// Records `lhs ≤ rhs` as an advisory entry.
    pub fn le_advisory(&mut self, name: &str, scope: Scope, lhs: f64, rhs: f64, cited: &str) {
        self.le(name, scope, lhs, rhs, cited);
        if let Some(e) = self.entries.last_mut() {
            e.advisory = true;
        }
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.entries.extend(other.entries);
    }

    pub fn evaluated(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| e.skipped.is_none())
    }

    /// Failed entries that are not advisory.
    pub fn failures(&self) -> Vec<&CheckEntry> {
        self.evaluated().filter(|e| !e.pass && !e.advisory).collect()
    }

    /// Failed advisory entries.
    pub fn advisory_failures(&self) -> Vec<&CheckEntry> {
        self.evaluated().filter(|e| !e.pass && e.advisory).collect()
    }

    /// True when no non-advisory entry failed.
    pub fn all_pass(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn pass_count(&self) -> usize {
        self.evaluated().filter(|e| e.pass).count()
    }

    pub fn skip_count(&self) -> usize {
        self.entries.len() - self.evaluated().count()
    }

    /// Smallest tolerance-relative margin: `slack + tol`, minimized over evaluated entries.
    pub fn worst_margin(&self) -> Option<f64> {
        self.evaluated().map(|e| e.slack + e.tol).reduce(f64::min)
    }

    /// Smallest raw slack over evaluated inequality entries.
    pub fn worst_slack(&self) -> Option<f64> {
        self.evaluated().filter(|e| e.relation != Relation::Eq).map(|e| e.slack).reduce(f64::min)
    }

    /// Entries with the given name.
    pub fn named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a CheckEntry> + 'a {
        self.entries.iter().filter(move |e| e.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_and_counts() {
        let mut r = CheckReport::new();
        r.le("a", Scope::global(), 1.0, 1.0 - 5e-10, "x <= y");
        r.le("b", Scope::node(1), 2.0, 1.0, "x <= y");
        r.lt("c", Scope::frequency(2), 1.0, 1.0, "x < y");
        r.equal("d", Scope::cell(1, 2), 3.0, 3.0 + 1e-8, 3.0, 1e-8, "x = y");
        r.skip("e", Scope::global(), SkipReason::ZeroWalkCount, "x <= y");
        r.le_advisory("f", Scope::global(), 2.0, 1.0, "x <= y");
        assert_eq!(r.advisory_failures().len(), 1);
        assert_eq!(r.pass_count(), 2);
        assert_eq!(r.failures().len(), 2);
        assert_eq!(r.skip_count(), 1);
        assert!(!r.all_pass());
        assert_eq!(r.worst_slack(), Some(-1.0));
        assert_eq!(SkipReason::ZeroWalkCount.code(), "zero_walk_count");
    }
}
