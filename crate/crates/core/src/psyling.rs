//! Psycholinguistic norms joined onto hierarchy levels: per-level means,
//! standardized multiple regression, one-way ANOVA with Bonferroni post-hoc
//! tests, and pairwise correlations.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::StatsError;
use crate::graph::DirectedGraph;
use crate::levels::{HierarchyKind, HierarchyLevels};
use crate::porter;
use crate::stats::{f_upper_p, mean, t_two_sided_p, variance};

/// The five norm variables, in column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Variable {
    #[serde(rename = "AOA")]
    Aoa,
    C,
    I,
    #[serde(rename = "BF")]
    Bf,
    #[serde(rename = "TLF")]
    Tlf,
}

impl Variable {
    pub const ALL: [Variable; 5] = [
        Variable::Aoa,
        Variable::C,
        Variable::I,
        Variable::Bf,
        Variable::Tlf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variable::Aoa => "AOA",
            Variable::C => "C",
            Variable::I => "I",
            Variable::Bf => "BF",
            Variable::Tlf => "TLF",
        }
    }

    fn column(self) -> usize {
        self as usize
    }

    fn is_frequency(self) -> bool {
        matches!(self, Variable::Bf | Variable::Tlf)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Values of the five variables for one word; `None` is missing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct NormRecord {
    pub values: [Option<f64>; 5],
}

impl NormRecord {
    pub fn get(&self, v: Variable) -> Option<f64> {
        self.values[v.column()]
    }

    fn is_empty(&self) -> bool {
        self.values.iter().all(Option::is_none)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct NormTable {
    rows: BTreeMap<String, NormRecord>,
    /// Input rows ignored because every variable was blank.
    pub rejected_rows: usize,
}

pub const NORMS_HEADER: [&str; 6] = ["word", "aoa", "c", "i", "bf", "tlf"];

impl NormTable {
    /// Rows without any value are skipped.
    pub fn from_rows(rows: impl IntoIterator<Item = (String, NormRecord)>) -> Self {
        NormTable {
            rows: rows.into_iter().filter(|(_, r)| !r.is_empty()).collect(),
            rejected_rows: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&NormRecord> {
        self.rows.get(word)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &NormRecord)> {
        self.rows.iter().map(|(w, r)| (w.as_str(), r))
    }

    /// Fraction of `words` that have a row.
    pub fn coverage<'a>(&self, words: impl IntoIterator<Item = &'a str>) -> f64 {
        let (mut hit, mut total) = (0usize, 0usize);
        for w in words {
            total += 1;
            hit += usize::from(self.rows.contains_key(w));
        }
        if total == 0 {
            0.0
        } else {
            hit as f64 / total as f64
        }
    }
}

/// Reads a `word,aoa,c,i,bf,tlf` CSV. Words are lowercased and, when `stem`
/// is set, Porter-stemmed; rows landing on the same word are averaged per
/// variable.
pub fn load_norms<R: Read>(reader: R, stem: bool) -> Result<NormTable, StatsError> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_lowercase).collect();
    if header != NORMS_HEADER {
        return Err(StatsError::Parse {
            line: 1,
            message: format!("expected header `{}`", NORMS_HEADER.join(",")),
        });
    }
    let mut sums: BTreeMap<String, [(f64, usize); 5]> = BTreeMap::new();
    let mut rejected = 0;
    for row in rdr.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        if row.len() != NORMS_HEADER.len() {
            return Err(StatsError::Parse {
                line,
                message: format!("expected 6 fields, found {}", row.len()),
            });
        }
        let word = row[0].to_lowercase();
        if word.is_empty() {
            return Err(StatsError::Parse {
                line,
                message: "empty word".into(),
            });
        }
        let mut values = [None; 5];
        for (slot, cell) in values.iter_mut().zip(row.iter().skip(1)) {
            if cell.is_empty() {
                continue;
            }
            let x: f64 = cell.parse().map_err(|_| StatsError::Parse {
                line,
                message: format!("not a number: {cell:?}"),
            })?;
            if !x.is_finite() {
                return Err(StatsError::Parse {
                    line,
                    message: format!("not a finite number: {cell:?}"),
                });
            }
            *slot = Some(x);
        }
        if values.iter().all(Option::is_none) {
            rejected += 1;
            continue;
        }
        let key = if stem { porter::stem(&word) } else { word };
        let acc = sums.entry(key).or_insert([(0.0, 0); 5]);
        for (a, v) in acc.iter_mut().zip(values) {
            if let Some(x) = v {
                a.0 += x;
                a.1 += 1;
            }
        }
    }
    let rows = sums.into_iter().map(|(w, acc)| {
        let mut values = [None; 5];
        for (slot, (sum, n)) in values.iter_mut().zip(acc) {
            if n > 0 {
                *slot = Some(sum / n as f64);
            }
        }
        (w, NormRecord { values })
    });
    let mut table = NormTable::from_rows(rows);
    table.rejected_rows = rejected;
    Ok(table)
}

/// Per word and variable, the first table providing a value wins.
pub fn merge_norms(tables: &[NormTable]) -> NormTable {
    let mut rows: BTreeMap<String, NormRecord> = BTreeMap::new();
    for table in tables {
        for (word, record) in &table.rows {
            let slot = rows.entry(word.clone()).or_default();
            for (mine, theirs) in slot.values.iter_mut().zip(record.values) {
                if mine.is_none() {
                    *mine = theirs;
                }
            }
        }
    }
    NormTable {
        rows,
        rejected_rows: tables.iter().map(|t| t.rejected_rows).sum(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observation {
    pub word: String,
    pub level: u32,
    pub values: [Option<f64>; 5],
}

impl Observation {
    pub fn get(&self, v: Variable) -> Option<f64> {
        self.values[v.column()]
    }
}

/// Words of one hierarchy that have norms, with their levels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeveledObservations {
    pub hierarchy: HierarchyKind,
    pub records: Vec<Observation>,
    /// Words in the hierarchy.
    pub hierarchy_words: usize,
    /// `records.len() / hierarchy_words`.
    pub coverage: f64,
    /// Norm rows whose word is not in the hierarchy.
    pub unmatched_norms: usize,
}

/// Inner join of a hierarchy with a norm table on the word.
pub fn join_levels(
    g: &DirectedGraph,
    levels: &HierarchyLevels,
    norms: &NormTable,
) -> Result<LeveledObservations, StatsError> {
    let mut records = Vec::new();
    let mut hierarchy_words = 0;
    for (v, level) in levels.iter() {
        hierarchy_words += 1;
        let word = g.label(v);
        if let Some(r) = norms.get(word) {
            records.push(Observation {
                word: word.clone(),
                level,
                values: r.values,
            });
        }
    }
    if records.is_empty() {
        return Err(StatsError::NoOverlap);
    }
    let unmatched_norms = norms
        .iter()
        .filter(|(w, _)| g.vertex(*w).and_then(|v| levels.get(v)).is_none())
        .count();
    Ok(LeveledObservations {
        hierarchy: levels.kind(),
        coverage: records.len() as f64 / hierarchy_words as f64,
        records,
        hierarchy_words,
        unmatched_norms,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelScale {
    /// Levels used as numbers.
    Interval,
    /// Levels replaced by their mid-ranks.
    Ordinal,
}

/// Knobs shared by the analyses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisOptions {
    /// Inclusive lower level bound.
    pub min_level: Option<u32>,
    /// Inclusive upper level bound.
    pub max_level: Option<u32>,
    pub level_scale: LevelScale,
    /// Replace BF and TLF by `ln(1 + x)`.
    pub log_frequencies: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            min_level: None,
            max_level: None,
            level_scale: LevelScale::Interval,
            log_frequencies: false,
        }
    }
}

impl AnalysisOptions {
    pub fn excluding_below(min_level: u32) -> Self {
        AnalysisOptions {
            min_level: Some(min_level),
            ..Default::default()
        }
    }

    fn admits(&self, level: u32) -> bool {
        self.min_level.is_none_or(|m| level >= m) && self.max_level.is_none_or(|m| level <= m)
    }

    fn value(&self, o: &Observation, v: Variable) -> Option<f64> {
        let x = o.get(v)?;
        Some(if self.log_frequencies && v.is_frequency() {
            x.ln_1p()
        } else {
            x
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanCell {
    pub mean: Option<f64>,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelMeans {
    pub level: u32,
    pub records: usize,
    pub cells: [MeanCell; 5],
}

impl LevelMeans {
    pub fn get(&self, v: Variable) -> MeanCell {
        self.cells[v.column()]
    }
}

/// Arithmetic mean of every variable at every level, over the records that
/// have the variable. A cell without data has `mean: None`.
pub fn level_means(obs: &LeveledObservations, options: &AnalysisOptions) -> Vec<LevelMeans> {
    let mut by_level: BTreeMap<u32, Vec<&Observation>> = BTreeMap::new();
    for o in obs.records.iter().filter(|o| options.admits(o.level)) {
        by_level.entry(o.level).or_default().push(o);
    }
    by_level
        .into_iter()
        .map(|(level, rows)| {
            let cells = Variable::ALL.map(|v| {
                let xs: Vec<f64> = rows.iter().filter_map(|o| options.value(o, v)).collect();
                MeanCell {
                    mean: (!xs.is_empty()).then(|| mean(&xs)),
                    n: xs.len(),
                }
            });
            LevelMeans {
                level,
                records: rows.len(),
                cells,
            }
        })
        .collect()
}

/// `***` below .001, `**` below .01, `*` below .05.
pub fn stars(p: f64) -> &'static str {
    if p < 0.001 {
        "***"
    } else if p < 0.01 {
        "**"
    } else if p < 0.05 {
        "*"
    } else {
        ""
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Coefficient {
    pub predictor: Variable,
    pub beta: f64,
    pub t: f64,
    pub p: f64,
    pub stars: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionResult {
    pub coefficients: Vec<Coefficient>,
    pub r_squared: f64,
    pub n: usize,
    /// Residual degrees of freedom, `n - 5 - 1`.
    pub df: usize,
}

impl RegressionResult {
    pub fn get(&self, v: Variable) -> &Coefficient {
        &self.coefficients[v.column()]
    }
}

/// Regresses the level on the five z-scored variables (level z-scored too)
/// over complete cases. Betas are the standardized coefficients; t and p are
/// the usual two-sided OLS tests with `n - 6` degrees of freedom.
pub fn regress(
    obs: &LeveledObservations,
    options: &AnalysisOptions,
) -> Result<RegressionResult, StatsError> {
    let mut levels = Vec::new();
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); 5];
    for o in obs.records.iter().filter(|o| options.admits(o.level)) {
        let values: Option<Vec<f64>> = Variable::ALL.iter().map(|&v| options.value(o, v)).collect();
        if let Some(values) = values {
            levels.push(o.level as f64);
            for (c, x) in columns.iter_mut().zip(values) {
                c.push(x);
            }
        }
    }
    let p = Variable::ALL.len();
    let n = levels.len();
    if n < p + 2 {
        return Err(StatsError::InsufficientData {
            needed: p + 2,
            have: n,
        });
    }
    if options.level_scale == LevelScale::Ordinal {
        levels = mid_ranks(&levels);
    }
    let y = zscore(&levels).ok_or_else(|| StatsError::Constant {
        what: "level".into(),
    })?;
    let mut x = Vec::with_capacity(p);
    for (v, c) in Variable::ALL.iter().zip(&columns) {
        x.push(zscore(c).ok_or_else(|| StatsError::Constant {
            what: format!("predictor {v}"),
        })?);
    }
    let fit = ols(&x, &y).map_err(|cols| StatsError::Collinear {
        columns: cols
            .iter()
            .map(|&j| Variable::ALL[j].name().to_string())
            .collect(),
    })?;

    let df = n - p - 1;
    let sigma2 = fit.rss / df as f64;
    let coefficients = Variable::ALL
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let beta = fit.beta[j];
            let se = (sigma2 * fit.xtx_inv_diag[j]).sqrt();
            let t = if se > 0.0 {
                beta / se
            } else if beta == 0.0 {
                0.0
            } else {
                beta.signum() * f64::INFINITY
            };
            let p = t_two_sided_p(t, df as f64);
            Coefficient {
                predictor: v,
                beta,
                t,
                p,
                stars: stars(p),
            }
        })
        .collect();
    Ok(RegressionResult {
        coefficients,
        r_squared: 1.0 - fit.rss / (n as f64 - 1.0),
        n,
        df,
    })
}

fn zscore(xs: &[f64]) -> Option<Vec<f64>> {
    let m = mean(xs);
    let sd = variance(xs).sqrt();
    // NaN and zero spread are both rejected.
    if sd.is_nan() || sd <= 1e-12 * m.abs() || sd == 0.0 {
        return None;
    }
    Some(xs.iter().map(|x| (x - m) / sd).collect())
}

fn mid_ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

struct OlsFit {
    beta: Vec<f64>,
    rss: f64,
    /// Diagonal of `(XᵀX)⁻¹`.
    xtx_inv_diag: Vec<f64>,
}

/// Least squares without intercept through Householder QR. `columns` are the
/// design columns. Fails with the indices of columns that are (numerically)
/// linear combinations of earlier ones.
fn ols(columns: &[Vec<f64>], y: &[f64]) -> Result<OlsFit, Vec<usize>> {
    let p = columns.len();
    let n = y.len();
    // Column-major working copy.
    let mut a: Vec<Vec<f64>> = columns.to_vec();
    let mut qty = y.to_vec();
    let mut diag = vec![0.0; p];
    let mut dependent = Vec::new();
    let scale: Vec<f64> = columns
        .iter()
        .map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect();

    for k in 0..p {
        let norm = a[k][k..].iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm <= 1e-10 * scale[k].max(f64::MIN_POSITIVE) {
            dependent.push(k);
            continue;
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = a[k][k..].to_vec();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        let reflect = |col: &mut [f64]| {
            let dot: f64 = v.iter().zip(col.iter()).map(|(a, b)| a * b).sum();
            let f = 2.0 * dot / vnorm2;
            for (c, vi) in col.iter_mut().zip(&v) {
                *c -= f * vi;
            }
        };
        for col in a.iter_mut().skip(k) {
            reflect(&mut col[k..]);
        }
        reflect(&mut qty[k..]);
        diag[k] = a[k][k];
    }
    if !dependent.is_empty() {
        return Err(dependent);
    }

    // R is upper triangular: r(i, j) = a[j][i] for i <= j.
    let r = |i: usize, j: usize| a[j][i];
    let mut beta = vec![0.0; p];
    for i in (0..p).rev() {
        let s: f64 = (i + 1..p).map(|j| r(i, j) * beta[j]).sum();
        beta[i] = (qty[i] - s) / diag[i];
    }
    let rss: f64 = qty[p..n].iter().map(|x| x * x).sum();

    // (XᵀX)⁻¹ = R⁻¹ R⁻ᵀ; only its diagonal is needed.
    let mut rinv = vec![vec![0.0; p]; p];
    for j in 0..p {
        rinv[j][j] = 1.0 / diag[j];
        for i in (0..j).rev() {
            let s: f64 = (i + 1..=j).map(|k| r(i, k) * rinv[k][j]).sum();
            rinv[i][j] = -s / diag[i];
        }
    }
    let xtx_inv_diag = (0..p)
        .map(|i| (i..p).map(|j| rinv[i][j] * rinv[i][j]).sum())
        .collect();
    Ok(OlsFit {
        beta,
        rss,
        xtx_inv_diag,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupSummary {
    pub level: u32,
    pub n: usize,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairwiseTest {
    pub a: u32,
    pub b: u32,
    pub t: f64,
    pub df: usize,
    pub p: f64,
    /// Bonferroni-adjusted over all level pairs, capped at 1.
    pub p_adjusted: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnovaResult {
    pub variable: Variable,
    pub f: f64,
    pub df_between: usize,
    pub df_within: usize,
    pub p: f64,
    pub groups: Vec<GroupSummary>,
    pub posthoc: Vec<PairwiseTest>,
}

impl AnovaResult {
    /// Adjusted post-hoc p-value of a level pair, in either order.
    pub fn pair(&self, a: u32, b: u32) -> Option<&PairwiseTest> {
        self.posthoc
            .iter()
            .find(|t| (t.a, t.b) == (a, b) || (t.a, t.b) == (b, a))
    }
}

/// One-way fixed-effects ANOVA of `variable` across levels, with pooled
/// two-sample t-tests between every pair of levels.
pub fn anova(
    obs: &LeveledObservations,
    variable: Variable,
    options: &AnalysisOptions,
) -> Result<AnovaResult, StatsError> {
    let mut groups: BTreeMap<u32, Vec<f64>> = BTreeMap::new();
    for o in obs.records.iter().filter(|o| options.admits(o.level)) {
        if let Some(x) = options.value(o, variable) {
            groups.entry(o.level).or_default().push(x);
        }
    }
    if groups.len() < 2 {
        return Err(StatsError::TooFewGroups(groups.len()));
    }
    if let Some((&level, xs)) = groups.iter().find(|(_, xs)| xs.len() < 2) {
        return Err(StatsError::InsufficientGroup {
            level,
            count: xs.len(),
        });
    }
    let k = groups.len();
    let total: usize = groups.values().map(Vec::len).sum();
    let grand = groups.values().flatten().sum::<f64>() / total as f64;
    let summaries: Vec<GroupSummary> = groups
        .iter()
        .map(|(&level, xs)| GroupSummary {
            level,
            n: xs.len(),
            mean: mean(xs),
        })
        .collect();
    let ss_between: f64 = summaries
        .iter()
        .map(|g| g.n as f64 * (g.mean - grand).powi(2))
        .sum();
    let ss_within: f64 = groups
        .values()
        .zip(&summaries)
        .map(|(xs, g)| xs.iter().map(|x| (x - g.mean).powi(2)).sum::<f64>())
        .sum();
    let (df_between, df_within) = (k - 1, total - k);
    let (f, p) = f_ratio(ss_between, df_between, ss_within, df_within);

    let pairs = k * (k - 1) / 2;
    let mut posthoc = Vec::with_capacity(pairs);
    let entries: Vec<(&u32, &Vec<f64>)> = groups.iter().collect();
    for i in 0..k {
        for j in i + 1..k {
            let (a, xa) = entries[i];
            let (b, xb) = entries[j];
            let (t, df, p) = pooled_t(xa, xb);
            posthoc.push(PairwiseTest {
                a: *a,
                b: *b,
                t,
                df,
                p,
                p_adjusted: (p * pairs as f64).min(1.0),
            });
        }
    }
    Ok(AnovaResult {
        variable,
        f,
        df_between,
        df_within,
        p,
        groups: summaries,
        posthoc,
    })
}

fn f_ratio(ssb: f64, dfb: usize, ssw: f64, dfw: usize) -> (f64, f64) {
    if ssw == 0.0 {
        return if ssb == 0.0 {
            (0.0, 1.0)
        } else {
            (f64::INFINITY, 0.0)
        };
    }
    let f = (ssb / dfb as f64) / (ssw / dfw as f64);
    (f, f_upper_p(f, dfb as f64, dfw as f64))
}

fn pooled_t(a: &[f64], b: &[f64]) -> (f64, usize, f64) {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let df = a.len() + b.len() - 2;
    let diff = mean(a) - mean(b);
    let sp2 = ((na - 1.0) * variance(a) + (nb - 1.0) * variance(b)) / df as f64;
    let se = (sp2 * (1.0 / na + 1.0 / nb)).sqrt();
    if se == 0.0 {
        return if diff == 0.0 {
            (0.0, df, 1.0)
        } else {
            (diff.signum() * f64::INFINITY, df, 0.0)
        };
    }
    let t = diff / se;
    (t, df, t_two_sided_p(t, df as f64))
}

/// Pearson correlation between two series over pairwise-complete cases.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Correlation {
    pub a: String,
    pub b: String,
    pub r: Option<f64>,
    pub n: usize,
}

/// Correlations among the level and the five variables.
pub fn correlations(obs: &LeveledObservations, options: &AnalysisOptions) -> Vec<Correlation> {
    let rows: Vec<&Observation> = obs
        .records
        .iter()
        .filter(|o| options.admits(o.level))
        .collect();
    let series: Vec<(String, Vec<Option<f64>>)> = std::iter::once((
        "level".to_string(),
        rows.iter().map(|o| Some(o.level as f64)).collect(),
    ))
    .chain(Variable::ALL.iter().map(|&v| {
        (
            v.name().to_string(),
            rows.iter().map(|o| options.value(o, v)).collect(),
        )
    }))
    .collect();
    let mut out = Vec::new();
    for i in 0..series.len() {
        for j in i + 1..series.len() {
            let pairs: Vec<(f64, f64)> = series[i]
                .1
                .iter()
                .zip(&series[j].1)
                .filter_map(|(a, b)| Some(((*a)?, (*b)?)))
                .collect();
            out.push(Correlation {
                a: series[i].0.clone(),
                b: series[j].0.clone(),
                r: pearson(&pairs),
                n: pairs.len(),
            });
        }
    }
    out
}

fn pearson(pairs: &[(f64, f64)]) -> Option<f64> {
    if pairs.len() < 2 {
        return None;
    }
    let n = pairs.len() as f64;
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in pairs {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    (sxx > 0.0 && syy > 0.0).then(|| sxy / (sxx * syy).sqrt())
}
