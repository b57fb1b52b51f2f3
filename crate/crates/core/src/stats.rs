//! Network summary statistics and the simulation-based goodness-of-fit
//! report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::cores::{shell_distribution, ShellDistribution};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Number of 3-cliques.
pub fn triangles(g: &Graph) -> usize {
    let mut count = 0;
    for u in 0..g.n() {
        let nu = g.neighbors(u);
        for (i, &v) in nu.iter().enumerate() {
            if v <= u {
                continue;
            }
            count += nu[i + 1..].iter().filter(|&&w| g.has_edge(v, w)).count();
        }
    }
    count
}

/// `hist[d]` = number of vertices of degree `d`, length `n`.
pub fn degree_histogram(g: &Graph) -> Vec<usize> {
    let mut hist = vec![0; g.n()];
    for v in 0..g.n() {
        hist[g.degree(v)] += 1;
    }
    hist
}

/// Freeman degree centralization `Σ_v (d_max - d_v) / ((n-1)(n-2))`.
pub fn centrality(g: &Graph) -> Result<f64> {
    centrality_from_histogram(&degree_histogram(g))
}

pub fn centrality_from_histogram(hist: &[usize]) -> Result<f64> {
    let n = hist.len();
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "degree centralization needs n >= 3, got {n}"
        )));
    }
    let d_max = hist.iter().rposition(|&c| c > 0).unwrap_or(0);
    let spread: usize = hist[..=d_max]
        .iter()
        .enumerate()
        .map(|(d, &c)| c * (d_max - d))
        .sum();
    Ok(spread as f64 / ((n - 1) * (n - 2)) as f64)
}

/// Largest shell index present, i.e. the degeneracy.
pub fn largest_core_index(g: &Graph) -> usize {
    shell_distribution(g).degeneracy().unwrap_or(0)
}

pub fn largest_shell_size(g: &Graph) -> usize {
    shell_distribution(g).largest_shell_size()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRecord {
    pub edges: usize,
    pub triangles: usize,
    /// Degree centralization; `NaN` below three vertices.
    pub centrality: f64,
    pub largest_core_index: usize,
    pub largest_shell_size: usize,
    pub degree_distribution: Vec<usize>,
    pub shell_distribution: Vec<usize>,
}

impl SummaryRecord {
    pub fn from_graph(g: &Graph) -> Self {
        let d = shell_distribution(g);
        Self::assemble(&d, g.edge_count(), triangles(g), degree_histogram(g))
    }

    /// From a truncated shell distribution and precomputed counts.
    pub fn from_parts(
        truncated: &[usize],
        edges: usize,
        triangles: usize,
        degree_histogram: &[usize],
    ) -> Self {
        let d = ShellDistribution::from_truncated(truncated)
            .expect("truncated distribution of a graph");
        Self::assemble(&d, edges, triangles, degree_histogram.to_vec())
    }

    fn assemble(d: &ShellDistribution, edges: usize, triangles: usize, degrees: Vec<usize>) -> Self {
        Self {
            edges,
            triangles,
            centrality: centrality_from_histogram(&degrees).unwrap_or(f64::NAN),
            largest_core_index: d.degeneracy().unwrap_or(0),
            largest_shell_size: d.largest_shell_size(),
            degree_distribution: degrees,
            shell_distribution: d.counts().to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.shell_distribution.len()
    }
}

/// Quantile levels reported for every scalar statistic.
pub const QUANTILE_LEVELS: [f64; 7] = [0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95];

/// Bins used for the centrality histogram.
pub const CENTRALITY_BINS: usize = 20;

/// Linear-interpolation sample quantile of sorted data (R's type 7).
pub fn quantile(sorted: &[f64], level: f64) -> f64 {
    assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * level.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramBin {
    pub value: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatisticSummary {
    pub name: String,
    pub observed: f64,
    pub mean: f64,
    /// `(level, value)` for each of [`QUANTILE_LEVELS`].
    pub quantiles: Vec<(f64, f64)>,
    /// Mid-rank position of the observed value in the sample:
    /// `(#below + #equal / 2) / #samples`.
    pub observed_quantile: f64,
    pub histogram: Vec<HistogramBin>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexBoxPlot {
    pub index: usize,
    pub observed: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GofReport {
    pub n: usize,
    pub samples: usize,
    pub statistics: Vec<StatisticSummary>,
    pub degree_boxplots: Vec<IndexBoxPlot>,
    pub shell_boxplots: Vec<IndexBoxPlot>,
    /// Sampled truncated shell distributions, most frequent first.
    pub modal_shell_distributions: Vec<(Vec<usize>, usize)>,
}

impl GofReport {
    pub fn statistic(&self, name: &str) -> Option<&StatisticSummary> {
        self.statistics.iter().find(|s| s.name == name)
    }

    /// `value,count` rows of one statistic's histogram.
    pub fn histogram_csv(&self, name: &str) -> Option<String> {
        let stat = self.statistic(name)?;
        let mut out = String::from("value,count\n");
        for b in &stat.histogram {
            let _ = writeln!(out, "{},{}", b.value, b.count);
        }
        Some(out)
    }

    /// `kind,index,observed,min,q1,median,q3,max` rows for degree and shell
    /// box plots.
    pub fn boxplot_csv(&self) -> String {
        let mut out = String::from("kind,index,observed,min,q1,median,q3,max\n");
        for (kind, rows) in [("degree", &self.degree_boxplots), ("shell", &self.shell_boxplots)] {
            for b in rows {
                let _ = writeln!(
                    out,
                    "{kind},{},{},{},{},{},{},{}",
                    b.index, b.observed, b.min, b.q1, b.median, b.q3, b.max
                );
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn unit_histogram(values: &[f64]) -> Vec<HistogramBin> {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &v in values {
        *counts.entry(v.round() as i64).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|(v, count)| HistogramBin {
            value: v as f64,
            count,
        })
        .collect()
}

fn equal_width_histogram(values: &[f64], bins: usize) -> Vec<HistogramBin> {
    let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    if finite.is_empty() {
        return Vec::new();
    }
    let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi == lo {
        return vec![HistogramBin {
            value: lo,
            count: finite.len(),
        }];
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for v in finite {
        let b = (((v - lo) / width) as usize).min(bins - 1);
        counts[b] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| HistogramBin {
            value: lo + (i as f64 + 0.5) * width,
            count,
        })
        .collect()
}

fn summarize(name: &str, observed: f64, values: &[f64], integer: bool) -> StatisticSummary {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let below = sorted.iter().filter(|&&v| v < observed).count();
    let equal = sorted.iter().filter(|&&v| v == observed).count();
    StatisticSummary {
        name: name.into(),
        observed,
        mean: values.iter().sum::<f64>() / values.len() as f64,
        quantiles: QUANTILE_LEVELS
            .iter()
            .map(|&q| (q, quantile(&sorted, q)))
            .collect(),
        observed_quantile: (below as f64 + 0.5 * equal as f64) / values.len() as f64,
        histogram: if integer {
            unit_histogram(values)
        } else {
            equal_width_histogram(values, CENTRALITY_BINS)
        },
    }
}

fn boxplots(observed: &[usize], samples: &[&[usize]]) -> Vec<IndexBoxPlot> {
    (0..observed.len())
        .map(|i| {
            let mut col: Vec<f64> = samples.iter().map(|s| s[i] as f64).collect();
            col.sort_by(f64::total_cmp);
            IndexBoxPlot {
                index: i,
                observed: observed[i],
                min: col[0],
                q1: quantile(&col, 0.25),
                median: quantile(&col, 0.5),
                q3: quantile(&col, 0.75),
                max: col[col.len() - 1],
            }
        })
        .collect()
}

/// Compares an observed graph against summaries of simulated graphs.
pub fn gof_compare(observed: &Graph, samples: &[SummaryRecord]) -> Result<GofReport> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("no samples to compare against".into()));
    }
    let n = observed.n();
    if let Some(bad) = samples.iter().find(|s| s.n() != n) {
        return Err(Error::SizeMismatch {
            expected: n,
            found: bad.n(),
        });
    }
    let obs = SummaryRecord::from_graph(observed);

    type Getter = fn(&SummaryRecord) -> f64;
    let scalars: [(&str, Getter, bool); 5] = [
        ("edges", |s| s.edges as f64, true),
        ("triangles", |s| s.triangles as f64, true),
        ("centrality", |s| s.centrality, false),
        ("largest_core_index", |s| s.largest_core_index as f64, true),
        ("largest_shell_size", |s| s.largest_shell_size as f64, true),
    ];
    let statistics = scalars
        .iter()
        .map(|(name, get, integer)| {
            let values: Vec<f64> = samples.iter().map(get).collect();
            summarize(name, get(&obs), &values, *integer)
        })
        .collect();

    let degree_rows: Vec<&[usize]> = samples.iter().map(|s| s.degree_distribution.as_slice()).collect();
    let shell_rows: Vec<&[usize]> = samples.iter().map(|s| s.shell_distribution.as_slice()).collect();

    let mut modes: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for s in samples {
        let trunc = s.shell_distribution[..n.saturating_sub(1)].to_vec();
        *modes.entry(trunc).or_insert(0) += 1;
    }
    let mut modal: Vec<(Vec<usize>, usize)> = modes.into_iter().collect();
    modal.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));

    Ok(GofReport {
        n,
        samples: samples.len(),
        statistics,
        degree_boxplots: boxplots(&obs.degree_distribution, &degree_rows),
        shell_boxplots: boxplots(&obs.shell_distribution, &shell_rows),
        modal_shell_distributions: modal,
    })
}

/// [`gof_compare`] over explicit sampled graphs.
pub fn gof_compare_graphs(observed: &Graph, samples: &[Graph]) -> Result<GofReport> {
    let records: Vec<SummaryRecord> = samples.iter().map(SummaryRecord::from_graph).collect();
    gof_compare(observed, &records)
}
