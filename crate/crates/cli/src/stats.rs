use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use lexkernel::graph::DirectedGraph;
use lexkernel::kernel::KernelReport;
use lexkernel::levels::HierarchyKind;
use lexkernel::psyling::{
    anova, correlations, join_levels, level_means, load_norms, merge_norms, regress, stars,
    AnalysisOptions, AnovaResult, Correlation, LevelMeans, LevelScale, LeveledObservations,
    NormTable, RegressionResult, Variable,
};

use crate::error::CliError;
use crate::output::{self, cell};
use crate::{input, InputArgs, OutputArgs, OutputFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HierarchyChoice {
    Gk,
    Scc,
    SccWithinGk,
}

impl HierarchyChoice {
    pub const ALL: [HierarchyChoice; 3] = [
        HierarchyChoice::Gk,
        HierarchyChoice::Scc,
        HierarchyChoice::SccWithinGk,
    ];

    fn kind(self) -> HierarchyKind {
        match self {
            HierarchyChoice::Gk => HierarchyKind::Gk,
            HierarchyChoice::Scc => HierarchyKind::Scc,
            HierarchyChoice::SccWithinGk => HierarchyKind::SccWithinGk,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScaleChoice {
    Interval,
    Ordinal,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Norms CSV (`word,aoa,c,i,bf,tlf`); repeat to merge, earlier files win.
    #[arg(long, required = true, value_name = "FILE")]
    pub norms: Vec<PathBuf>,
    /// Analyze one hierarchy; every hierarchy gets its own run when omitted.
    #[arg(long, value_enum)]
    pub hierarchy: Option<HierarchyChoice>,
    /// The restricted runs drop levels up to and including this one.
    #[arg(long, default_value_t = 0)]
    pub exclude_level: u32,
    /// Ignore levels above this one in every analysis.
    #[arg(long)]
    pub max_level: Option<u32>,
    /// Treat levels as numbers or replace them by their ranks.
    #[arg(long, value_enum, default_value_t = ScaleChoice::Interval)]
    pub level_scale: ScaleChoice,
    /// Use ln(1 + x) for the two frequency variables.
    #[arg(long)]
    pub log_frequencies: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionRun {
    /// `first-last` level actually present in the analyzed records.
    pub levels: String,
    pub options: AnalysisOptions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<RegressionResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnovaRun {
    pub variable: Variable,
    pub levels: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<AnovaResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HierarchyStats {
    pub hierarchy: HierarchyKind,
    pub hierarchy_words: usize,
    pub matched_words: usize,
    pub coverage: f64,
    pub unmatched_norms: usize,
    pub means: Vec<LevelMeans>,
    /// Full range first, then the restricted range.
    pub regressions: Vec<RegressionRun>,
    pub anova: Vec<AnovaRun>,
    pub correlations: Vec<Correlation>,
    /// Why nothing could be analyzed for this hierarchy.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsSummary {
    pub norm_words: usize,
    pub norm_rows_rejected: usize,
    /// Fraction of dictionary words with a norm row.
    pub dictionary_coverage: f64,
    pub exclude_level: u32,
    pub hierarchies: Vec<HierarchyStats>,
}

fn level_span(obs: &LeveledObservations, options: &AnalysisOptions) -> String {
    let admitted = obs.records.iter().map(|o| o.level).filter(|&l| {
        options.min_level.is_none_or(|m| l >= m) && options.max_level.is_none_or(|m| l <= m)
    });
    let (lo, hi) = admitted.fold((u32::MAX, 0), |(lo, hi), l| (lo.min(l), hi.max(l)));
    if lo > hi {
        "none".to_string()
    } else {
        format!("{lo}-{hi}")
    }
}

/// All analyses of one hierarchy.
pub fn analyze(
    g: &DirectedGraph,
    report: &KernelReport,
    kind: HierarchyKind,
    norms: &NormTable,
    base: AnalysisOptions,
    exclude_level: u32,
) -> HierarchyStats {
    let mut stats = HierarchyStats {
        hierarchy: kind,
        hierarchy_words: 0,
        matched_words: 0,
        coverage: 0.0,
        unmatched_norms: 0,
        means: Vec::new(),
        regressions: Vec::new(),
        anova: Vec::new(),
        correlations: Vec::new(),
        error: None,
    };
    let Some(levels) = report.levels(kind) else {
        stats.error = Some("the grounding kernel is empty".into());
        return stats;
    };
    let obs = match join_levels(g, levels, norms) {
        Ok(obs) => obs,
        Err(e) => {
            stats.hierarchy_words = levels.iter().count();
            stats.error = Some(e.to_string());
            return stats;
        }
    };
    stats.hierarchy_words = obs.hierarchy_words;
    stats.matched_words = obs.records.len();
    stats.coverage = obs.coverage;
    stats.unmatched_norms = obs.unmatched_norms;
    stats.means = level_means(&obs, &base);
    stats.correlations = correlations(&obs, &base);

    let restricted = AnalysisOptions {
        min_level: Some(exclude_level + 1),
        ..base
    };
    for options in [base, restricted] {
        let levels = level_span(&obs, &options);
        let (result, error) = split(regress(&obs, &options));
        stats.regressions.push(RegressionRun {
            levels: levels.clone(),
            options,
            result,
            error,
        });
        for v in Variable::ALL {
            let (result, error) = split(anova(&obs, v, &options));
            stats.anova.push(AnovaRun {
                variable: v,
                levels: levels.clone(),
                result,
                error,
            });
        }
    }
    stats
}

fn split<T, E: ToString>(r: Result<T, E>) -> (Option<T>, Option<String>) {
    match r {
        Ok(x) => (Some(x), None),
        Err(e) => (None, Some(e.to_string())),
    }
}

pub fn load_all_norms(paths: &[PathBuf], stem: bool) -> Result<NormTable, CliError> {
    let mut tables = Vec::with_capacity(paths.len());
    for path in paths {
        let name = path.display().to_string();
        let file = File::open(path)
            .map_err(|e| CliError::Usage(format!("cannot open norms file {name}: {e}")))?;
        tables.push(load_norms(file, stem).map_err(|e| CliError::norms(&name, e))?);
    }
    Ok(merge_norms(&tables))
}

pub fn run(args: &StatsArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    output::format(
        &args.output,
        OutputFormat::Json,
        &[OutputFormat::Json, OutputFormat::Csv],
        "stats",
    )?;
    if args.output.format == Some(OutputFormat::Csv) && args.output.out_dir.is_none() {
        return Err(CliError::Usage(
            "the CSV bundle of `stats` needs --out-dir".into(),
        ));
    }
    if let Some(max) = args.max_level {
        if max <= args.exclude_level {
            return Err(CliError::Usage(format!(
                "--max-level {max} leaves nothing above --exclude-level {}",
                args.exclude_level
            )));
        }
    }
    // Norms are checked before the dictionary so that a missing file is a
    // usage error regardless of the input.
    for path in &args.norms {
        if !path.is_file() {
            return Err(CliError::Usage(format!(
                "norms file {} does not exist",
                path.display()
            )));
        }
    }
    let loaded = input::load(&args.input)?;
    let norms = load_all_norms(&args.norms, loaded.stemmed)?;
    let g = &loaded.graph;
    let dictionary_coverage = norms.coverage(g.labels().iter().map(String::as_str));
    if dictionary_coverage == 0.0 {
        return Err(CliError::NoOverlap);
    }

    let report = KernelReport::compute(g).map_err(|e| CliError::Empty(e.to_string()))?;
    let base = AnalysisOptions {
        min_level: None,
        max_level: args.max_level,
        level_scale: match args.level_scale {
            ScaleChoice::Interval => LevelScale::Interval,
            ScaleChoice::Ordinal => LevelScale::Ordinal,
        },
        log_frequencies: args.log_frequencies,
    };
    let choices = match args.hierarchy {
        Some(h) => vec![h],
        None => HierarchyChoice::ALL.to_vec(),
    };
    let hierarchies = choices
        .iter()
        .map(|c| analyze(g, &report, c.kind(), &norms, base, args.exclude_level))
        .collect();
    let summary = StatsSummary {
        norm_words: norms.len(),
        norm_rows_rejected: norms.rejected_rows,
        dictionary_coverage,
        exclude_level: args.exclude_level,
        hierarchies,
    };

    match &args.output.out_dir {
        None => output::emit(&args.output, "", &output::json(&summary), stdout),
        Some(dir) => {
            output::write_file(dir, "stats-summary.json", &output::json(&summary))?;
            for (name, bytes) in bundle(&summary) {
                output::write_file(dir, &name, &bytes)?;
            }
            Ok(())
        }
    }
}

/// Tidy CSV files of a summary, named `<hierarchy>-<table>.csv`.
pub fn bundle(summary: &StatsSummary) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    for h in &summary.hierarchies {
        let name = h.hierarchy.name();
        files.push((format!("{name}-means.csv"), means_csv(&h.means)));
        for (run, suffix) in h.regressions.iter().zip(["full", "restricted"]) {
            files.push((
                format!("{name}-regression-{suffix}.csv"),
                regression_csv(run.result.as_ref()),
            ));
        }
        files.push((format!("{name}-anova.csv"), anova_csv(&h.anova)));
        files.push((format!("{name}-posthoc.csv"), posthoc_csv(&h.anova)));
        files.push((
            format!("{name}-correlations.csv"),
            output::csv(
                &["a", "b", "r", "n"],
                h.correlations
                    .iter()
                    .map(|c| [c.a.clone(), c.b.clone(), cell(c.r), c.n.to_string()]),
            ),
        ));
    }
    files
}

pub fn means_csv(means: &[LevelMeans]) -> Vec<u8> {
    output::csv(
        &["level", "variable", "mean", "n"],
        means.iter().flat_map(|m| {
            Variable::ALL.map(|v| {
                let c = m.get(v);
                vec![
                    m.level.to_string(),
                    v.name().to_string(),
                    cell(c.mean),
                    c.n.to_string(),
                ]
            })
        }),
    )
}

pub fn regression_csv(result: Option<&RegressionResult>) -> Vec<u8> {
    output::csv(
        &["predictor", "beta", "t", "p", "stars"],
        result.into_iter().flat_map(|r| {
            r.coefficients.iter().map(|c| {
                vec![
                    c.predictor.name().to_string(),
                    c.beta.to_string(),
                    c.t.to_string(),
                    c.p.to_string(),
                    c.stars.to_string(),
                ]
            })
        }),
    )
}

fn anova_csv(runs: &[AnovaRun]) -> Vec<u8> {
    output::csv(
        &[
            "variable",
            "levels",
            "F",
            "df_between",
            "df_within",
            "p",
            "stars",
        ],
        runs.iter().filter_map(|run| {
            let a = run.result.as_ref()?;
            Some(vec![
                run.variable.name().to_string(),
                run.levels.clone(),
                a.f.to_string(),
                a.df_between.to_string(),
                a.df_within.to_string(),
                a.p.to_string(),
                stars(a.p).to_string(),
            ])
        }),
    )
}

fn posthoc_csv(runs: &[AnovaRun]) -> Vec<u8> {
    output::csv(
        &[
            "variable",
            "levels",
            "level_a",
            "level_b",
            "t",
            "df",
            "p",
            "p_adjusted",
            "stars",
        ],
        runs.iter().flat_map(|run| {
            run.result.iter().flat_map(move |a| {
                a.posthoc.iter().map(move |t| {
                    vec![
                        run.variable.name().to_string(),
                        run.levels.clone(),
                        t.a.to_string(),
                        t.b.to_string(),
                        t.t.to_string(),
                        t.df.to_string(),
                        t.p.to_string(),
                        t.p_adjusted.to_string(),
                        stars(t.p_adjusted).to_string(),
                    ]
                })
            })
        }),
    )
}
