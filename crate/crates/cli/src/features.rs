use std::collections::BTreeMap;
use std::io::Write;

use clap::Args;
use serde::Serialize;

use lexkernel::graph::{DirectedGraph, VertexId};
use lexkernel::ingest::NormalizationReport;
use lexkernel::kernel::KernelDecomposition;

use crate::error::CliError;
use crate::output::{self, cell};
use crate::{input, InputArgs, OutputArgs, OutputFormat};

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubgraphFeatures {
    pub vertices: usize,
    pub arcs: usize,
    /// `|E| / |V|²`; absent for an empty subgraph.
    pub density: Option<f64>,
}

impl SubgraphFeatures {
    fn of(g: &DirectedGraph) -> Self {
        SubgraphFeatures {
            vertices: g.vertex_count(),
            arcs: g.arc_count(),
            density: g.density().ok(),
        }
    }

    fn induced(g: &DirectedGraph, vertices: &[VertexId]) -> Self {
        Self::of(&g.induced_by(vertices).0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureReport {
    pub graph: SubgraphFeatures,
    pub gk: SubgraphFeatures,
    pub kc: SubgraphFeatures,
    pub scc_count: usize,
    /// Components with more than one vertex.
    pub nontrivial_scc_count: usize,
    pub largest_scc: usize,
    pub quotient_sources: usize,
    pub strip_waves: usize,
    pub in_degree_histogram: BTreeMap<usize, usize>,
    pub out_degree_histogram: BTreeMap<usize, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalization: Option<NormalizationReport>,
}

impl FeatureReport {
    pub fn compute(g: &DirectedGraph) -> Self {
        Self::from_decomposition(g, &KernelDecomposition::compute(g))
    }

    pub fn from_decomposition(g: &DirectedGraph, d: &KernelDecomposition) -> Self {
        let partition = d.quotient.partition();
        FeatureReport {
            graph: SubgraphFeatures::of(g),
            gk: SubgraphFeatures::induced(g, &d.gk),
            kc: SubgraphFeatures::induced(g, &d.kc),
            scc_count: partition.len(),
            nontrivial_scc_count: partition
                .components()
                .iter()
                .filter(|c| c.len() > 1)
                .count(),
            largest_scc: partition.largest_size(),
            quotient_sources: d.source_components.len(),
            strip_waves: d.strip_order.len(),
            in_degree_histogram: g.in_degree_histogram(),
            out_degree_histogram: g.out_degree_histogram(),
            normalization: None,
        }
    }

    /// One row in the shape of a dictionary-features table.
    pub fn to_csv(&self) -> Vec<u8> {
        let header = [
            "V",
            "E",
            "density",
            "V_gk",
            "E_gk",
            "density_gk",
            "V_kc",
            "E_kc",
            "density_kc",
            "scc_count",
            "largest_scc",
            "quotient_sources",
        ];
        let mut row = Vec::new();
        for s in [&self.graph, &self.gk, &self.kc] {
            row.extend([s.vertices.to_string(), s.arcs.to_string(), cell(s.density)]);
        }
        row.extend([
            self.scc_count.to_string(),
            self.largest_scc.to_string(),
            self.quotient_sources.to_string(),
        ]);
        output::csv(&header, [row])
    }
}

pub fn run(args: &FeaturesArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let format = output::format(
        &args.output,
        OutputFormat::Json,
        &[OutputFormat::Json, OutputFormat::Csv],
        "features",
    )?;
    let loaded = input::load(&args.input)?;
    let mut report = FeatureReport::compute(&loaded.graph);
    report.normalization = loaded.normalization;
    let (name, bytes) = match format {
        OutputFormat::Csv => ("features.csv", report.to_csv()),
        _ => ("features.json", output::json(&report)),
    };
    output::emit(&args.output, name, &bytes, stdout)
}
