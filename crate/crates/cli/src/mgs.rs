use std::io::Write;

use clap::Args;
use serde::Serialize;

use lexkernel::error::GroundingError;
use lexkernel::graph::DirectedGraph;
use lexkernel::grounding::{
    heuristic_grounding_set, minimum_grounding_sets, GroundingSearchResult, SearchLimits,
    SearchMethod,
};

use crate::error::CliError;
use crate::output;
use crate::{input, InputArgs, OutputArgs, OutputFormat};

#[derive(Debug, Args)]
pub struct MgsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Exact minimum with enumeration of all minimum sets (default).
    #[arg(long, conflicts_with = "greedy")]
    pub exact: bool,
    /// Greedy grounding set for graphs too large for the exact search.
    #[arg(long)]
    pub greedy: bool,
    /// Branch-node budget of the exact search.
    #[arg(long, default_value_t = SearchLimits::default().node_budget)]
    pub budget: u64,
    /// Maximum number of minimum sets to list.
    #[arg(long, default_value_t = SearchLimits::default().enumeration_cap)]
    pub cap: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MgsStatus {
    /// Every minimum set is listed (exact) or the greedy set is reported.
    Complete,
    /// More minimum sets exist than the cap allowed.
    Truncated,
    /// The exact search gave up; `sets` holds the greedy fallback.
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MgsReport {
    pub status: MgsStatus,
    pub method: SearchMethod,
    /// Minimum size (exact) or size of the reported set.
    pub size: usize,
    pub lower_bound: usize,
    pub nodes_explored: u64,
    pub set_count: usize,
    pub sets: Vec<Vec<String>>,
}

impl MgsReport {
    fn from_result(g: &DirectedGraph, r: &GroundingSearchResult) -> Self {
        MgsReport {
            status: if r.truncated {
                MgsStatus::Truncated
            } else {
                MgsStatus::Complete
            },
            method: r.method,
            size: r.minimum_size,
            lower_bound: r.lower_bound,
            nodes_explored: r.nodes_explored,
            set_count: r.sets.len(),
            sets: r.sets.iter().map(|s| g.labels_of(s)).collect(),
        }
    }

    pub fn exact(g: &DirectedGraph, limits: SearchLimits) -> Self {
        match minimum_grounding_sets(g, limits) {
            Ok(r) => Self::from_result(g, &r),
            Err(GroundingError::BudgetExceeded { budget, best, .. }) => {
                let fallback = heuristic_grounding_set(g);
                MgsReport {
                    status: MgsStatus::BudgetExceeded,
                    method: SearchMethod::Heuristic,
                    size: best.len(),
                    lower_bound: fallback.lower_bound,
                    nodes_explored: budget,
                    set_count: 1,
                    sets: vec![best],
                }
            }
            Err(GroundingError::Graph(e)) => unreachable!("kernel subgraphs are valid: {e}"),
        }
    }

    pub fn greedy(g: &DirectedGraph) -> Self {
        Self::from_result(g, &heuristic_grounding_set(g))
    }

    pub fn to_csv(&self) -> Vec<u8> {
        output::csv(
            &["set", "size", "words"],
            self.sets
                .iter()
                .enumerate()
                .map(|(i, s)| [(i + 1).to_string(), s.len().to_string(), s.join(" ")]),
        )
    }
}

pub fn run(args: &MgsArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let format = output::format(
        &args.output,
        OutputFormat::Json,
        &[OutputFormat::Json, OutputFormat::Csv],
        "mgs",
    )?;
    if args.cap == 0 {
        return Err(CliError::Usage("--cap must be at least 1".into()));
    }
    let loaded = input::load(&args.input)?;
    let report = if args.greedy {
        MgsReport::greedy(&loaded.graph)
    } else {
        let limits = SearchLimits {
            node_budget: args.budget,
            enumeration_cap: args.cap,
        };
        MgsReport::exact(&loaded.graph, limits)
    };
    let (name, bytes) = match format {
        OutputFormat::Csv => ("mgs.csv", report.to_csv()),
        _ => ("mgs.json", output::json(&report)),
    };
    output::emit(&args.output, name, &bytes, stdout)?;
    if report.status == MgsStatus::BudgetExceeded {
        return Err(CliError::BudgetExceeded {
            budget: args.budget,
            upper_bound: report.size,
        });
    }
    Ok(())
}
