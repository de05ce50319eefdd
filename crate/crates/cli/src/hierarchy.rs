use std::cmp::Ordering;
use std::io::Write;

use clap::{Args, ValueEnum};
use serde::Serialize;

use lexkernel::error::KernelError;
use lexkernel::graph::DirectedGraph;
use lexkernel::kernel::KernelReport;

use crate::error::CliError;
use crate::output::{self, cell};
use crate::{input, InputArgs, OutputArgs, OutputFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SortKey {
    Word,
    Gk,
    Scc,
    SccWithinGk,
}

#[derive(Debug, Args)]
pub struct HierarchyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Row order; levels ascending with ties broken by word.
    #[arg(long, value_enum, default_value_t = SortKey::Word)]
    pub sort: SortKey,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HierarchyRow {
    pub word: String,
    pub l_gk: Option<u32>,
    pub l_scc: Option<u32>,
    pub l_scc_within_gk: Option<u32>,
    pub in_gk: bool,
    pub in_kc: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HierarchyReport {
    pub gk: Vec<String>,
    pub kc: Vec<String>,
    pub strip_order: Vec<Vec<String>>,
    pub quotient_sources: usize,
    pub rows: Vec<HierarchyRow>,
}

impl HierarchyReport {
    pub fn compute(g: &DirectedGraph) -> Result<Self, KernelError> {
        Ok(Self::from_report(g, &KernelReport::compute(g)?))
    }

    pub fn from_report(g: &DirectedGraph, r: &KernelReport) -> Self {
        let d = &r.decomposition;
        let in_gk = g.mask(&d.gk);
        let in_kc = g.mask(&d.kc);
        let rows = g
            .vertices()
            .map(|v| HierarchyRow {
                word: g.label(v).clone(),
                l_gk: r.gk_levels.get(v),
                l_scc: r.scc_levels.get(v),
                l_scc_within_gk: r.scc_within_gk_levels.as_ref().and_then(|l| l.get(v)),
                in_gk: in_gk[v.index()],
                in_kc: in_kc[v.index()],
            })
            .collect();
        HierarchyReport {
            gk: g.labels_of(&d.gk),
            kc: g.labels_of(&d.kc),
            strip_order: d.strip_order.iter().map(|w| g.labels_of(w)).collect(),
            quotient_sources: d.source_components.len(),
            rows,
        }
    }

    pub fn sort(&mut self, key: SortKey) {
        let level = |r: &HierarchyRow| match key {
            SortKey::Word => None,
            SortKey::Gk => r.l_gk,
            SortKey::Scc => r.l_scc,
            SortKey::SccWithinGk => r.l_scc_within_gk,
        };
        // Missing levels sort last.
        self.rows.sort_by(|a, b| {
            let ord = match (level(a), level(b)) {
                (Some(x), Some(y)) => x.cmp(&y),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => Ordering::Equal,
            };
            ord.then_with(|| a.word.cmp(&b.word))
        });
    }

    pub fn to_csv(&self) -> Vec<u8> {
        output::csv(
            &["word", "L_gk", "L_scc", "L_scc_within_gk", "in_gk", "in_kc"],
            self.rows.iter().map(|r| {
                [
                    r.word.clone(),
                    cell(r.l_gk),
                    cell(r.l_scc),
                    cell(r.l_scc_within_gk),
                    r.in_gk.to_string(),
                    r.in_kc.to_string(),
                ]
            }),
        )
    }
}

pub fn run(args: &HierarchyArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let format = output::format(
        &args.output,
        OutputFormat::Csv,
        &[OutputFormat::Csv, OutputFormat::Json],
        "hierarchy",
    )?;
    let loaded = input::load(&args.input)?;
    let mut report =
        HierarchyReport::compute(&loaded.graph).map_err(|e| CliError::Empty(e.to_string()))?;
    report.sort(args.sort);
    let (name, bytes) = match format {
        OutputFormat::Json => ("hierarchy.json", output::json(&report)),
        _ => ("hierarchy.csv", report.to_csv()),
    };
    output::emit(&args.output, name, &bytes, stdout)
}
