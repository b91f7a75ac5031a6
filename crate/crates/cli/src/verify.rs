//! `verify`: runs every identity and inequality suite and sets the exit
//! status from the outcome.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::Serialize;
use spectramark::corpus::{er_corpus, CorpusSpec};
use spectramark::report::{CheckEntry, Relation, Scope};
use spectramark::verify::{verify_all, GraphVerification, VerifyOptions};
use spectramark::weights::DEFAULT_M_MAX;
use spectramark::Graph;

use crate::input::{load_path, InputFormat};
use crate::output::{open_output, version_line, write_json, SCHEMA_VERSION, TOOL_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Graph file, or a directory whose files are all graphs.
    #[arg(required_unless_present = "random", conflicts_with = "random")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,
    /// Erdős–Rényi corpus instead of an input path.
    #[arg(long, num_args = 4, value_names = ["N", "P", "COUNT", "SEED"])]
    pub random: Option<Vec<String>>,
    /// Also fail on statements flagged advisory.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
    /// Write the report to this file instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Largest walk length of the weight identities.
    #[arg(long, default_value_t = DEFAULT_M_MAX)]
    pub mmax: u32,
    /// Negative control: shifts one entry of the centrality matrix.
    #[arg(long, hide = true)]
    pub corrupt_y: bool,
}

fn random_corpus(raw: &[String]) -> Result<Vec<(String, Graph)>> {
    let n: usize = raw[0].parse().with_context(|| format!("invalid node count '{}'", raw[0]))?;
    let p: f64 = raw[1].parse().with_context(|| format!("invalid link probability '{}'", raw[1]))?;
    let count: usize = raw[2].parse().with_context(|| format!("invalid count '{}'", raw[2]))?;
    let seed: u64 = raw[3].parse().with_context(|| format!("invalid seed '{}'", raw[3]))?;
    if n == 0 || count == 0 {
        bail!("--random needs N >= 1 and COUNT >= 1");
    }
    let spec = CorpusSpec { count, n_min: n, n_max: n, p, seed, connected: false, simple_spectrum: false };
    let graphs = er_corpus(&spec)?;
    Ok(graphs.into_iter().enumerate().map(|(i, g)| (format!("random:{seed}:{}", i + 1), g)).collect())
}

#[derive(Serialize)]
struct GraphResult<'a> {
    source: &'a str,
    passed: bool,
    #[serde(flatten)]
    verification: &'a GraphVerification,
}

#[derive(Serialize)]
struct VerifyDocument<'a> {
    schema_version: u32,
    tool_version: &'static str,
    strict: bool,
    passed: bool,
    graphs: Vec<GraphResult<'a>>,
}

/// Per-statement aggregate over all graphs.
struct Aggregate<'a> {
    name: &'a str,
    relation: Relation,
    cited: &'a str,
    evaluated: usize,
    failed: usize,
    advisory_failed: usize,
    skipped: usize,
    worst_margin: f64,
}

fn aggregate<'a>(results: &'a [GraphVerification]) -> Vec<Aggregate<'a>> {
    let mut rows: Vec<Aggregate<'a>> = Vec::new();
    for e in results.iter().flat_map(|v| &v.checks.entries) {
        let idx = match rows.iter().position(|r| r.name == e.name) {
            Some(i) => i,
            None => {
                rows.push(Aggregate {
                    name: &e.name,
                    relation: e.relation,
                    cited: &e.cited,
                    evaluated: 0,
                    failed: 0,
                    advisory_failed: 0,
                    skipped: 0,
                    worst_margin: f64::INFINITY,
                });
                rows.len() - 1
            }
        };
        let row = &mut rows[idx];
        if e.skipped.is_some() {
            row.skipped += 1;
            continue;
        }
        row.evaluated += 1;
        row.worst_margin = row.worst_margin.min(e.slack + e.tol);
        if !e.pass {
            if e.advisory {
                row.advisory_failed += 1;
            } else {
                row.failed += 1;
            }
        }
    }
    rows
}

fn scope_text(s: &Scope) -> String {
    let mut parts = Vec::new();
    if let Some(j) = s.node {
        parts.push(format!("j={j}"));
    }
    if let Some(k) = s.frequency {
        parts.push(format!("k={k}"));
    }
    if let Some(m) = s.param {
        parts.push(format!("m={m}"));
    }
    if parts.is_empty() {
        "-".to_string()
    } else {
        parts.join(",")
    }
}

fn relation_text(r: Relation) -> &'static str {
    match r {
        Relation::Le => "<=",
        Relation::Lt => "<",
        Relation::Eq => "=",
    }
}

fn failed_entry(e: &CheckEntry, strict: bool) -> bool {
    e.skipped.is_none() && !e.pass && (strict || !e.advisory)
}

fn write_text(
    out: &mut dyn Write,
    sources: &[String],
    results: &[GraphVerification],
    strict: bool,
    passed: bool,
) -> Result<()> {
    writeln!(out, "{}", version_line())?;
    writeln!(
        out,
        "{:<6} {:>4} {:>5} {:>9} {:>9} {:>7} {:>6} {:>8}  source",
        "graph", "N", "L", "evaluated", "passed", "skipped", "failed", "advisory"
    )?;
    for (i, (src, v)) in sources.iter().zip(results).enumerate() {
        let c = &v.checks;
        writeln!(
            out,
            "{:<6} {:>4} {:>5} {:>9} {:>9} {:>7} {:>6} {:>8}  {src}",
            i + 1,
            v.n,
            v.links,
            c.evaluated().count(),
            c.pass_count(),
            c.skip_count(),
            c.failures().len(),
            c.advisory_failures().len()
        )?;
    }
    writeln!(out)?;
    writeln!(
        out,
        "{:<34} {:>2} {:>9} {:>6} {:>8} {:>7} {:>12}  statement",
        "check", "", "evaluated", "failed", "advisory", "skipped", "worst_margin"
    )?;
    for a in aggregate(results) {
        let margin = if a.evaluated > 0 { format!("{:.3e}", a.worst_margin) } else { "-".to_string() };
        writeln!(
            out,
            "{:<34} {:>2} {:>9} {:>6} {:>8} {:>7} {:>12}  {}",
            a.name,
            relation_text(a.relation),
            a.evaluated,
            a.failed,
            a.advisory_failed,
            a.skipped,
            margin,
            a.cited
        )?;
    }
    let failing: Vec<(usize, &CheckEntry)> = results
        .iter()
        .enumerate()
        .flat_map(|(i, v)| v.checks.entries.iter().map(move |e| (i, e)))
        .filter(|(_, e)| failed_entry(e, strict))
        .collect();
    if !failing.is_empty() {
        writeln!(out)?;
        for (i, e) in failing {
            let tag = if e.advisory { "ADVISORY" } else { "FAIL" };
            writeln!(
                out,
                "{tag} graph {} {} [{}] lhs={:.16e} rhs={:.16e} slack={:.3e}  {}",
                i + 1,
                e.name,
                scope_text(&e.scope),
                e.lhs,
                e.rhs,
                e.slack,
                e.cited
            )?;
        }
    }
    writeln!(out)?;
    let mode = if strict { "strict" } else { "default" };
    let verdict = if passed { "PASS" } else { "FAIL" };
    writeln!(out, "verify ({mode}): {verdict}, {} graph(s)", results.len())?;
    Ok(())
}

/// Returns `true` when every graph passes.
pub fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let inputs: Vec<(String, Graph)> = match (&args.random, &args.input) {
        (Some(raw), _) => random_corpus(raw)?,
        (None, Some(path)) => load_path(path, args.format)?.into_iter().map(|l| (l.source, l.graph)).collect(),
        (None, None) => bail!("either an input path or --random is required"),
    };
    let (sources, graphs): (Vec<String>, Vec<Graph>) = inputs.into_iter().unzip();
    let opts = VerifyOptions { m_max: args.mmax, corrupt_y: args.corrupt_y, ..VerifyOptions::default() };
    let results = verify_all(&graphs, &opts)?;
    let graph_passed = |v: &GraphVerification| v.checks.entries.iter().all(|e| !failed_entry(e, args.strict));
    let passed = results.iter().all(graph_passed);
    let mut out = open_output(args.output.as_deref())?;
    match args.report {
        ReportFormat::Text => {
            write_text(&mut out, &sources, &results, args.strict, passed)?;
            out.flush()?;
        }
        ReportFormat::Json => {
            let doc = VerifyDocument {
                schema_version: SCHEMA_VERSION,
                tool_version: TOOL_VERSION,
                strict: args.strict,
                passed,
                graphs: sources
                    .iter()
                    .zip(&results)
                    .map(|(s, v)| GraphResult { source: s, passed: graph_passed(v), verification: v })
                    .collect(),
            };
            write_json(out, &doc)?;
        }
    }
    Ok(passed)
}
