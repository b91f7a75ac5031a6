//! `analyze`: one document with the spectrum, centrality matrix, weights and
//! a summary of the bound checks.

use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use serde::Serialize;
use spectramark::bounds::bound_suite;
use spectramark::centrality::{centrality_report_with, Method, ZERO_TOL};
use spectramark::report::{CheckReport, ABS_TOL, REL_TOL};
use spectramark::spectral::char_poly_exact;
use spectramark::verify::PREDICATE_TOL;
use spectramark::weights::{weight_profile, WeightProfile, DEFAULT_M_MAX};
use spectramark::{decompose, Graph, GraphStats};

use crate::input::{InputArgs, LoadedGraph};
use crate::output::{csv_writer, fmt_f64, open_output, write_json, SCHEMA_VERSION, TOOL_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DocFormat {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = DocFormat::Json)]
    pub out: DocFormat,
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Largest walk length of the weight profile.
    #[arg(long, default_value_t = DEFAULT_M_MAX)]
    pub mmax: u32,
}

#[derive(Debug, Serialize)]
pub struct Tolerances {
    pub multiplicity: f64,
    pub zero_component: f64,
    pub deleted_spectrum: f64,
    pub inequality_abs: f64,
    pub inequality_rel: f64,
}

#[derive(Debug, Serialize)]
pub struct Spectrum {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct Centrality {
    /// `y[j][k] = (x_k)_j²`, 0-based rows and columns.
    pub y: Vec<Vec<f64>>,
    /// Formula used per frequency.
    pub methods: Vec<Method>,
    pub redundancy: Vec<usize>,
    /// Largest deviation from the eigensolver squares.
    pub max_residual: f64,
}

#[derive(Debug, Serialize)]
pub struct BoundSummary {
    pub evaluated: usize,
    pub passed: usize,
    pub failed: usize,
    pub advisory_failed: usize,
    pub skipped: usize,
    pub worst_slack: Option<f64>,
    /// Names of failed entries, advisory ones included, without repeats.
    pub failing: Vec<String>,
}

impl BoundSummary {
    pub fn of(r: &CheckReport) -> Self {
        let mut failing: Vec<String> = Vec::new();
        for e in r.evaluated().filter(|e| !e.pass) {
            if !failing.contains(&e.name) {
                failing.push(e.name.clone());
            }
        }
        Self {
            evaluated: r.evaluated().count(),
            passed: r.pass_count(),
            failed: r.failures().len(),
            advisory_failed: r.advisory_failures().len(),
            skipped: r.skip_count(),
            worst_slack: r.worst_slack(),
            failing,
        }
    }
}

/// Everything `analyze` reports, in output key order.
#[derive(Debug, Serialize)]
pub struct AnalysisDocument {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub source: String,
    pub seed: Option<u64>,
    pub tolerances: Tolerances,
    pub graph: GraphStats,
    pub spectrum: Spectrum,
    /// Coefficients of `det(A − xI)` as decimal strings, constant term
    /// first; absent above the exact-arithmetic size limit.
    pub characteristic_polynomial: Option<Vec<String>>,
    pub centrality: Centrality,
    pub weights: WeightProfile,
    pub bounds: BoundSummary,
}

pub fn analyze(loaded: &LoadedGraph, m_max: u32) -> Result<AnalysisDocument> {
    let g: &Graph = &loaded.graph;
    let dec = decompose(g)?;
    let report = centrality_report_with(g, &dec, ZERO_TOL)?;
    let profile = weight_profile(g, &dec, m_max)?;
    let bounds = bound_suite(g, &dec, &profile)?;
    let y = report.y();
    Ok(AnalysisDocument {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        source: loaded.source.clone(),
        seed: loaded.seed,
        tolerances: Tolerances {
            multiplicity: dec.mult_tol(),
            zero_component: ZERO_TOL,
            deleted_spectrum: PREDICATE_TOL,
            inequality_abs: ABS_TOL,
            inequality_rel: REL_TOL,
        },
        graph: g.stats(),
        spectrum: Spectrum {
            eigenvalues: dec.eigenvalues().iter().copied().collect(),
            multiplicities: (1..=g.n()).map(|k| dec.multiplicity(k)).collect(),
        },
        characteristic_polynomial: char_poly_exact(g)
            .ok()
            .map(|p| (0..=g.n()).map(|r| p.coeff(r).to_string()).collect()),
        centrality: Centrality {
            y: y.row_iter().map(|row| row.iter().copied().collect()).collect(),
            methods: report.methods().to_vec(),
            redundancy: report.redundancy().to_vec(),
            max_residual: report.max_residual(),
        },
        weights: profile,
        bounds: BoundSummary::of(&bounds),
    })
}

fn write_csv(doc: &AnalysisDocument, args: &AnalyzeArgs) -> Result<()> {
    let mut w = csv_writer(open_output(args.output.as_deref())?)?;
    w.write_record(["section", "i", "j", "value"])?;
    let mut row = |section: &str, i: Option<usize>, j: Option<usize>, value: String| {
        let idx = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        w.write_record([section.to_string(), idx(i), idx(j), value])
    };
    row("schema_version", None, None, doc.schema_version.to_string())?;
    row("num_nodes", None, None, doc.graph.num_nodes.to_string())?;
    row("num_links", None, None, doc.graph.num_links.to_string())?;
    if let Some(seed) = doc.seed {
        row("seed", None, None, seed.to_string())?;
    }
    for (j, d) in doc.graph.degrees.iter().enumerate() {
        row("degree", Some(j + 1), None, d.to_string())?;
    }
    for (k, (l, m)) in doc.spectrum.eigenvalues.iter().zip(&doc.spectrum.multiplicities).enumerate() {
        row("eigenvalue", Some(k + 1), None, fmt_f64(*l))?;
        row("multiplicity", Some(k + 1), None, m.to_string())?;
    }
    if let Some(coeffs) = &doc.characteristic_polynomial {
        for (r, c) in coeffs.iter().enumerate() {
            row("char_poly", Some(r), None, c.clone())?;
        }
    }
    for (j, yrow) in doc.centrality.y.iter().enumerate() {
        for (k, v) in yrow.iter().enumerate() {
            row("y", Some(j + 1), Some(k + 1), fmt_f64(*v))?;
        }
    }
    for (k, m) in doc.centrality.methods.iter().enumerate() {
        let tag = serde_json::to_value(m)?.as_str().unwrap_or_default().to_string();
        row("method", Some(k + 1), None, tag)?;
    }
    for (j, r) in doc.centrality.redundancy.iter().enumerate() {
        row("redundancy", Some(j + 1), None, r.to_string())?;
    }
    for (k, v) in doc.weights.w.iter().enumerate() {
        row("w", Some(k + 1), None, fmt_f64(*v))?;
    }
    for (j, v) in doc.weights.phi.iter().enumerate() {
        row("phi", Some(j + 1), None, fmt_f64(*v))?;
    }
    row("s_x", None, None, fmt_f64(doc.weights.s_x))?;
    row("s_x2", None, None, fmt_f64(doc.weights.s_x2))?;
    for (m, v) in doc.weights.closed_walks.iter().enumerate() {
        row("closed_walks", Some(m), None, v.to_string())?;
    }
    for (m, v) in doc.weights.total_walks.iter().enumerate() {
        row("total_walks", Some(m), None, v.to_string())?;
    }
    let b = &doc.bounds;
    row("bounds_evaluated", None, None, b.evaluated.to_string())?;
    row("bounds_passed", None, None, b.passed.to_string())?;
    row("bounds_failed", None, None, b.failed.to_string())?;
    row("bounds_advisory_failed", None, None, b.advisory_failed.to_string())?;
    row("bounds_skipped", None, None, b.skipped.to_string())?;
    if let Some(s) = b.worst_slack {
        row("bounds_worst_slack", None, None, fmt_f64(s))?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<()> {
    let doc = analyze(&args.input.load()?, args.mmax)?;
    match args.out {
        DocFormat::Json => write_json(open_output(args.output.as_deref())?, &doc),
        DocFormat::Csv => write_csv(&doc, args),
    }
}
