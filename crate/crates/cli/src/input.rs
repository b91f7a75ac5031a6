//! Reading graph files and generating graphs.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use spectramark::{generate, parse_graph, Graph, GraphFormat, GraphKind};

use crate::output::open_output;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// `.adj` and `.mat` files are adjacency matrices, anything else an edge list.
    Auto,
    Edges,
    Adjacency,
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Graph file.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,
}

/// A parsed graph together with where it came from.
pub struct LoadedGraph {
    pub source: String,
    pub graph: Graph,
    /// Value of a `# seed S` comment, as written by `gen`.
    pub seed: Option<u64>,
}

fn resolve_format(path: &Path, format: InputFormat) -> GraphFormat {
    match format {
        InputFormat::Edges => GraphFormat::EdgeList,
        InputFormat::Adjacency => GraphFormat::AdjacencyMatrix,
        InputFormat::Auto => match path.extension().and_then(|e| e.to_str()) {
            Some("adj" | "mat") => GraphFormat::AdjacencyMatrix,
            _ => GraphFormat::EdgeList,
        },
    }
}

fn seed_comment(text: &str) -> Option<u64> {
    text.lines().filter_map(|l| l.trim_start().strip_prefix('#')).find_map(|c| {
        let mut it = c.split_whitespace();
        match (it.next(), it.next()) {
            (Some("seed"), Some(v)) => v.parse().ok(),
            _ => None,
        }
    })
}

pub fn load_graph(path: &Path, format: InputFormat) -> Result<LoadedGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let graph = parse_graph(&text, resolve_format(path, format)).with_context(|| format!("{}", path.display()))?;
    Ok(LoadedGraph { source: path.display().to_string(), graph, seed: seed_comment(&text) })
}

impl InputArgs {
    pub fn load(&self) -> Result<LoadedGraph> {
        load_graph(&self.input, self.format)
    }
}

/// A single file, or every visible file of a directory in name order.
pub fn load_path(path: &Path, format: InputFormat) -> Result<Vec<LoadedGraph>> {
    if !path.is_dir() {
        return Ok(vec![load_graph(path, format)?]);
    }
    let mut files: Vec<PathBuf> = fs::read_dir(path)
        .with_context(|| format!("cannot list {}", path.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.is_file() && !p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with('.')));
    files.sort();
    if files.is_empty() {
        bail!("{} contains no graph files", path.display());
    }
    files.iter().map(|p| load_graph(p, format)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenFamily {
    Complete,
    Star,
    Path,
    Cycle,
    /// Two sizes: `a b`.
    Bipartite,
    /// Node count and link probability: `n p`.
    Er,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub family: GenFamily,
    /// Size parameters of the family.
    #[arg(required = true, allow_negative_numbers = true)]
    pub params: Vec<String>,
    /// Seed of the Erdős–Rényi draw.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = InputFormat::Edges)]
    pub format: InputFormat,
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn param<T: std::str::FromStr>(params: &[String], i: usize, what: &str) -> Result<T> {
    let raw = params.get(i).with_context(|| format!("missing {what}"))?;
    raw.parse().map_err(|_| anyhow::anyhow!("invalid {what} '{raw}'"))
}

pub fn gen_kind(family: GenFamily, params: &[String]) -> Result<GraphKind> {
    let expected = if matches!(family, GenFamily::Bipartite | GenFamily::Er) { 2 } else { 1 };
    if params.len() != expected {
        bail!("{family:?} takes {expected} parameter(s), got {}", params.len());
    }
    let n = || param::<usize>(params, 0, "node count");
    Ok(match family {
        GenFamily::Complete => GraphKind::Complete(n()?),
        GenFamily::Star => GraphKind::Star(n()?),
        GenFamily::Path => GraphKind::Path(n()?),
        GenFamily::Cycle => GraphKind::Cycle(n()?),
        GenFamily::Bipartite => {
            GraphKind::CompleteBipartite(param(params, 0, "first side")?, param(params, 1, "second side")?)
        }
        GenFamily::Er => GraphKind::ErdosRenyi { n: n()?, p: param(params, 1, "link probability")? },
    })
}

pub fn cmd_gen(args: &GenArgs) -> Result<()> {
    let kind = gen_kind(args.family, &args.params)?;
    let g = generate(kind, args.seed)?;
    let mut text = format!("# {} {}\n", format!("{:?}", args.family).to_lowercase(), args.params.join(" "));
    if matches!(kind, GraphKind::ErdosRenyi { .. }) {
        text.push_str(&format!("# seed {}\n", args.seed));
    }
    match args.format {
        InputFormat::Adjacency => text.push_str(&g.to_adjacency_text()),
        _ => text.push_str(&g.to_edge_list()),
    }
    let mut out = open_output(args.output.as_deref())?;
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_is_read_from_comments() {
        assert_eq!(seed_comment("# er 10 0.2\n# seed 42\n# nodes 10\n1 2\n"), Some(42));
        assert_eq!(seed_comment("# nodes 3\n1 2\n"), None);
    }

    #[test]
    fn gen_parameters_are_checked() {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(gen_kind(GenFamily::Star, &s(&["5"])).unwrap(), GraphKind::Star(5));
        assert!(gen_kind(GenFamily::Er, &s(&["10"])).is_err());
        assert!(gen_kind(GenFamily::Complete, &s(&["x"])).is_err());
    }
}
