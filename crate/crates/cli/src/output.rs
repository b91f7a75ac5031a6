//! Output plumbing shared by the subcommands.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};

/// Bumped whenever a field of an emitted document changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// First line of every CSV and text artifact.
pub fn version_line() -> String {
    format!("# spectramark {TOOL_VERSION} schema {SCHEMA_VERSION}")
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(v: f64) -> String {
    // no negative zero in data files
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

/// Buffered writer on `path`, or on stdout when no path is given.
pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            let file = File::create(p).with_context(|| format!("cannot create {}", p.display()))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Pretty-printed JSON followed by a newline.
pub fn write_json<T: serde::Serialize>(mut out: Box<dyn Write>, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

/// CSV writer placed after the version line.
pub fn csv_writer(mut out: Box<dyn Write>) -> Result<csv::Writer<Box<dyn Write>>> {
    writeln!(out, "{}", version_line())?;
    Ok(csv::WriterBuilder::new().flexible(true).from_writer(out))
}
