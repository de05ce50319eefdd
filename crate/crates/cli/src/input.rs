use std::fs;
use std::io::Read;

use lexkernel::export::read_adjacency_csv;
use lexkernel::graph::DirectedGraph;
use lexkernel::ingest::{
    normalize, NormalizationReport, NormalizeOptions, RawDictionary, RawFormat,
};

use crate::error::CliError;
use crate::{InputArgs, InputFormat};

/// The graph under analysis and how it was obtained.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: DirectedGraph,
    /// `None` for arc-list input, which skips normalization.
    pub normalization: Option<NormalizationReport>,
    /// Whether words were stemmed (norms must then be stemmed too).
    pub stemmed: bool,
}

pub fn read_text(path: &std::path::Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::io("<stdin>", e))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Reads and normalizes the input; an empty graph is an error.
pub fn load(args: &InputArgs) -> Result<LoadedGraph, CliError> {
    let text = read_text(&args.input)?;
    let name = args.input.display().to_string();
    let loaded = match args.input_format {
        InputFormat::Edges => LoadedGraph {
            graph: read_adjacency_csv(text.as_bytes()).map_err(|e| CliError::ingest(&name, e))?,
            normalization: None,
            stemmed: false,
        },
        InputFormat::Tsv | InputFormat::Json => {
            let format = if args.input_format == InputFormat::Tsv {
                RawFormat::Tsv
            } else {
                RawFormat::Json
            };
            let raw =
                RawDictionary::parse(&text, format).map_err(|e| CliError::ingest(&name, e))?;
            let options = NormalizeOptions {
                stem: !args.no_stem,
                keep_all_senses: args.keep_all_senses,
            };
            let (dict, report) =
                normalize(&raw, options).map_err(|e| CliError::ingest(&name, e))?;
            LoadedGraph {
                graph: dict.associated_graph(),
                normalization: Some(report),
                stemmed: options.stem,
            }
        }
    };
    if loaded.graph.is_empty() {
        return Err(CliError::Empty(format!(
            "{name}: the graph has no vertices"
        )));
    }
    Ok(loaded)
}
