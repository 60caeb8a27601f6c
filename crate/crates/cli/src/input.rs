use std::io::Read as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use factor_spectra::graph::{parse_edge_list, parse_graph6};
use factor_spectra::Graph;

use crate::Failure;

#[derive(Clone, Copy, ValueEnum)]
pub enum InputFormat {
    /// One graph per line.
    #[value(alias = "g6")]
    Graph6,
    /// A single graph: the order on the first line, then one `u v` pair per line.
    #[value(alias = "edge-list")]
    Edges,
}

#[derive(Args)]
pub struct InputArgs {
    /// Read graphs from this file, or `-` for stdin (the default).
    #[arg(long = "in", value_name = "PATH", conflicts_with = "g6")]
    pub path: Option<PathBuf>,
    /// A single graph6 string given inline.
    #[arg(long)]
    pub g6: Option<String>,
    #[arg(long, value_enum, default_value = "graph6")]
    pub format: InputFormat,
}

/// Parsed graphs tagged with their 1-based input line.
pub fn read_graphs(args: &InputArgs) -> Result<Vec<(usize, Graph)>, Failure> {
    if let Some(s) = &args.g6 {
        let g = parse_graph6(s.trim()).map_err(|e| Failure::Usage(format!("--g6: {e}")))?;
        return Ok(vec![(1, g)]);
    }
    let mut text = String::new();
    match &args.path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        }
    }
    match args.format {
        InputFormat::Edges => {
            let g =
                parse_edge_list(&text).map_err(|e| Failure::Usage(format!("edge list: {e}")))?;
            Ok(vec![(1, g)])
        }
        InputFormat::Graph6 => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .map(|(i, l)| {
                parse_graph6(l.trim())
                    .map(|g| (i + 1, g))
                    .map_err(|e| Failure::Usage(format!("line {}: {e}", i + 1)))
            })
            .collect(),
    }
}
