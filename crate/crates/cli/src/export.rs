use std::io::Write;

use clap::{Args, ValueEnum};

use lexkernel::export::{kernel_dot, quotient_dot, scc_dot, to_dot, write_adjacency_csv};
use lexkernel::graph::DirectedGraph;
use lexkernel::kernel::KernelDecomposition;
use lexkernel::scc::condense;

use crate::error::CliError;
use crate::output;
use crate::{input, InputArgs, OutputArgs, OutputFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum View {
    /// Grounding kernel and kernel core as nested clusters.
    Kernel,
    /// Every non-trivial strongly connected component as a cluster.
    Scc,
    /// The SCC-quotient graph.
    Quotient,
    /// No clusters.
    Plain,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// What the DOT rendering shows.
    #[arg(long, value_enum, default_value_t = View::Kernel)]
    pub view: View,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn dot(g: &DirectedGraph, view: View) -> String {
    match view {
        View::Kernel => kernel_dot(g, &KernelDecomposition::compute(g)),
        View::Scc => scc_dot(g, condense(g).partition()),
        View::Quotient => quotient_dot(&condense(g), g),
        View::Plain => to_dot(g),
    }
}

pub fn adjacency_csv(g: &DirectedGraph) -> Vec<u8> {
    let mut buf = Vec::new();
    write_adjacency_csv(g, &mut buf).expect("write to memory");
    buf
}

/// Prints the requested format, or with an output directory and no explicit
/// format writes both `graph.dot` and `graph.csv`.
pub fn run(args: &ExportArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let format = output::format(
        &args.output,
        OutputFormat::Dot,
        &[OutputFormat::Dot, OutputFormat::Csv],
        "export",
    )?;
    let loaded = input::load(&args.input)?;
    let g = &loaded.graph;
    if args.output.out_dir.is_some() && args.output.format.is_none() {
        output::emit(
            &args.output,
            "graph.dot",
            dot(g, args.view).as_bytes(),
            stdout,
        )?;
        return output::emit(&args.output, "graph.csv", &adjacency_csv(g), stdout);
    }
    match format {
        OutputFormat::Csv => output::emit(&args.output, "graph.csv", &adjacency_csv(g), stdout),
        _ => output::emit(
            &args.output,
            "graph.dot",
            dot(g, args.view).as_bytes(),
            stdout,
        ),
    }
}
