//! Figure data: sampled characteristic polynomials and the centrality grid.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use spectramark::centrality::centrality_report;
use spectramark::decompose;
use spectramark::spectral::char_poly_exact;

use crate::input::InputArgs;
use crate::output::{csv_writer, fmt_f64, open_output};

/// Default number of grid points.
pub const DEFAULT_STEPS: usize = 201;

/// Padding of the default grid, as a fraction of `λ_1 − λ_N`.
pub const GRID_PADDING: f64 = 0.05;

#[derive(Args, Debug)]
pub struct PolynomialArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Sample grid `lo:hi:steps`; `steps` points including both ends.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GridArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Grid {
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            bail!("grid '{s}' is not lo:hi:steps");
        }
        let lo: f64 = parts[0].parse().with_context(|| format!("invalid grid start '{}'", parts[0]))?;
        let hi: f64 = parts[1].parse().with_context(|| format!("invalid grid end '{}'", parts[1]))?;
        let steps: usize = parts[2].parse().with_context(|| format!("invalid step count '{}'", parts[2]))?;
        if steps == 0 || !lo.is_finite() || !hi.is_finite() || lo > hi {
            bail!("grid needs finite lo <= hi and at least one step");
        }
        Ok(Self { lo, hi, steps })
    }

    /// `[λ_N − ε, λ_1 + ε]` with `ε = 0.05 (λ_1 − λ_N)`, or `ε = 0.05` for a
    /// spectrum without spread.
    pub fn around(lambda_max: f64, lambda_min: f64) -> Self {
        let spread = lambda_max - lambda_min;
        let eps = if spread > 0.0 { GRID_PADDING * spread } else { GRID_PADDING };
        Self { lo: lambda_min - eps, hi: lambda_max + eps, steps: DEFAULT_STEPS }
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let h = (self.hi - self.lo) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| if i + 1 == self.steps { self.hi } else { self.lo + i as f64 * h }).collect()
    }
}

pub fn cmd_polynomials(args: &PolynomialArgs) -> Result<()> {
    let g = args.input.load()?.graph;
    let c_a = char_poly_exact(&g)?;
    let deleted = (1..=g.n())
        .map(|j| if g.n() == 1 { Ok(None) } else { char_poly_exact(&g.delete_node(j)?).map(Some) })
        .collect::<spectramark::Result<Vec<_>>>()?;
    let dec = decompose(&g)?;
    let lambda: Vec<f64> = dec.eigenvalues().iter().copied().collect();
    let grid = match &args.grid {
        Some(s) => Grid::parse(s)?,
        None => Grid::around(lambda[0], lambda[g.n() - 1]),
    };

    let mut w = csv_writer(open_output(args.output.as_deref())?)?;
    let mut eig = vec!["# eigenvalues".to_string()];
    eig.extend(lambda.iter().map(|l| fmt_f64(*l)));
    w.write_record(&eig)?;
    let mut header = vec!["x".to_string(), "c_A".to_string()];
    header.extend(g.labels().iter().map(|l| format!("c_A\\{{{l}}}")));
    w.write_record(&header)?;
    for x in grid.points() {
        let mut rec = vec![fmt_f64(x), fmt_f64(c_a.eval(x))];
        // the graph without its only node has det = 1
        rec.extend(deleted.iter().map(|p| fmt_f64(p.as_ref().map_or(1.0, |p| p.eval(x)))));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_centrality_grid(args: &GridArgs) -> Result<()> {
    let g = args.input.load()?.graph;
    let dec = decompose(&g)?;
    let report = centrality_report(&g, &dec)?;
    let degrees = g.degrees();
    let dtd: usize = degrees.iter().map(|d| d * d).sum();

    let mut w = csv_writer(open_output(args.output.as_deref())?)?;
    let mut header = vec!["node".to_string()];
    header.extend((1..=g.n()).map(|k| format!("y_{k}")));
    header.push("normalized_degree".to_string());
    w.write_record(&header)?;
    for (j, label) in g.labels().iter().enumerate() {
        let mut rec = vec![label.clone()];
        rec.extend(report.y().row(j).iter().map(|v| fmt_f64(*v)));
        // undefined without links
        rec.push(if dtd == 0 { String::new() } else { fmt_f64((degrees[j] * degrees[j]) as f64 / dtd as f64) });
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
