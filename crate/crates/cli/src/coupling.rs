//! `complement`: coupling between the eigenvectors of a graph and of its
//! complement.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use serde::Serialize;
use spectramark::decompose;
use spectramark::report::{CheckEntry, Relation};
use spectramark::weights::{complement_coupling_of, PowerResidual};

use crate::analyze::{BoundSummary, DocFormat};
use crate::input::InputArgs;
use crate::output::{csv_writer, fmt_f64, open_output, write_json, SCHEMA_VERSION, TOOL_VERSION};

#[derive(Args, Debug)]
pub struct ComplementArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = DocFormat::Json)]
    pub out: DocFormat,
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Serialize)]
struct CouplingDocument<'a> {
    schema_version: u32,
    tool_version: &'static str,
    n: usize,
    lambda: Vec<f64>,
    theta: &'a [f64],
    w: Vec<f64>,
    v: &'a [f64],
    summary: BoundSummary,
    checks: &'a [CheckEntry],
    power_formula_residuals: &'a [PowerResidual],
}

pub fn cmd_complement(args: &ComplementArgs) -> Result<()> {
    let g = args.input.load()?.graph;
    let dec = decompose(&g)?;
    let c = complement_coupling_of(&g, &dec)?;
    let out = open_output(args.output.as_deref())?;
    match args.out {
        DocFormat::Json => {
            let doc = CouplingDocument {
                schema_version: SCHEMA_VERSION,
                tool_version: TOOL_VERSION,
                n: g.n(),
                lambda: dec.eigenvalues().iter().copied().collect(),
                theta: &c.theta,
                w: (0..g.n()).map(|k| dec.vector(k + 1).sum()).collect(),
                v: &c.v,
                summary: BoundSummary::of(&c.checks),
                checks: &c.checks.entries,
                power_formula_residuals: &c.power_formula_residuals,
            };
            write_json(out, &doc)
        }
        DocFormat::Csv => {
            let mut w = csv_writer(out)?;
            w.write_record(["check", "m", "k", "lhs", "rhs", "residual", "slack", "pass", "skipped"])?;
            for e in &c.checks.entries {
                let idx = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
                let (lhs, rhs, residual, slack, pass) = if e.skipped.is_some() {
                    Default::default()
                } else {
                    let residual =
                        if e.relation == Relation::Eq { fmt_f64((e.lhs - e.rhs).abs()) } else { String::new() };
                    (fmt_f64(e.lhs), fmt_f64(e.rhs), residual, fmt_f64(e.slack), e.pass.to_string())
                };
                let skipped = e.skipped.map(|s| s.code().to_string()).unwrap_or_default();
                w.write_record([
                    e.name.clone(),
                    idx(e.scope.node),
                    idx(e.scope.frequency),
                    lhs,
                    rhs,
                    residual,
                    slack,
                    pass,
                    skipped,
                ])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}
