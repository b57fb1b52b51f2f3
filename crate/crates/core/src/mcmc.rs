//! Metropolis sampling from the shell-distribution ERGM with the tie-no-tie
//! (TNT) proposal.
//!
//! Each step picks the edge set or the non-edge set with probability 1/2 and
//! toggles `k` uniformly chosen dyads inside it. When the chosen set is empty
//! the other set is used; when it holds fewer than `k` dyads the whole set is
//! toggled.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cores::shell_distribution;
use crate::ergm::ModelParams;
use crate::error::{Error, Result};
use crate::graph::{dyad_count, Dyad, Graph, GraphBuilder};
use crate::scalar::Scalar;
use crate::stats::{degree_histogram, triangles, SummaryRecord};

/// Acceptance rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Correction {
    /// `min(1, P(g')/P(g))`, treating the TNT proposal as symmetric.
    #[default]
    Metropolis,
    /// Metropolis-Hastings with the exact TNT proposal ratio; targets the
    /// model exactly.
    HastingsCorrected,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainConfig {
    pub steps: usize,
    pub k: usize,
    pub burn_in: usize,
    pub thin: usize,
    pub seed: u64,
    pub correction: Correction,
}

impl Default for ChainConfig {
    fn default() -> Self {
        Self {
            steps: 20_000,
            k: 5,
            burn_in: 0,
            thin: 1,
            seed: 0,
            correction: Correction::Metropolis,
        }
    }
}

impl ChainConfig {
    pub fn validate(&self, n: usize) -> Result<()> {
        let dyads = dyad_count(n);
        if self.steps == 0 {
            return Err(Error::InvalidArgument("steps must be positive".into()));
        }
        if self.thin == 0 {
            return Err(Error::InvalidArgument("thin must be at least 1".into()));
        }
        if self.k == 0 || self.k > dyads {
            return Err(Error::InvalidArgument(format!(
                "k = {} must lie in 1..={dyads}",
                self.k
            )));
        }
        if self.burn_in > self.steps {
            return Err(Error::InvalidArgument(format!(
                "burn-in {} exceeds steps {}",
                self.burn_in, self.steps
            )));
        }
        Ok(())
    }

    /// Number of records `run_chain` produces.
    pub fn recorded(&self) -> usize {
        (self.steps - self.burn_in) / self.thin
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    RemoveEdges,
    AddNonEdges,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Proposal {
    pub graph: Graph,
    pub branch: Branch,
    pub toggled: Vec<Dyad>,
    /// `ln q(g | g') - ln q(g' | g)`; negative infinity when the reverse move
    /// cannot be proposed.
    pub log_ratio: f64,
}

fn branch_log_prob(edges: usize, non_edges: usize, branch: Branch) -> f64 {
    let chosen = match branch {
        Branch::RemoveEdges => edges,
        Branch::AddNonEdges => non_edges,
    };
    if chosen == 0 {
        f64::NEG_INFINITY
    } else if edges == 0 || non_edges == 0 {
        0.0
    } else {
        -std::f64::consts::LN_2
    }
}

fn ln_choose(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).map(|i| ((n - i) as f64 / (i + 1) as f64).ln()).sum()
}

/// `ln q(next | current)` for toggling exactly `size` dyads of the set named
/// by `branch`, given the edge/non-edge counts of the current graph.
fn move_log_prob(edges: usize, non_edges: usize, branch: Branch, size: usize, k: usize) -> f64 {
    let set = match branch {
        Branch::RemoveEdges => edges,
        Branch::AddNonEdges => non_edges,
    };
    if set == 0 || size != k.min(set) {
        return f64::NEG_INFINITY;
    }
    branch_log_prob(edges, non_edges, branch) - ln_choose(set, size)
}

pub fn tnt_propose<R: Rng + ?Sized>(g: &Graph, k: usize, rng: &mut R) -> Proposal {
    let edges = g.edge_count();
    let non_edges = g.non_edge_count();
    debug_assert!(edges + non_edges > 0, "needs n >= 2");
    let branch = if edges == 0 {
        Branch::AddNonEdges
    } else if non_edges == 0 || rng.gen_bool(0.5) {
        Branch::RemoveEdges
    } else {
        Branch::AddNonEdges
    };
    let pool: Vec<Dyad> = match branch {
        Branch::RemoveEdges => g.edges().collect(),
        Branch::AddNonEdges => g.non_edges().collect(),
    };
    let size = k.min(pool.len());
    let mut toggled: Vec<Dyad> = index::sample(rng, pool.len(), size)
        .into_iter()
        .map(|i| pool[i])
        .collect();
    toggled.sort_unstable();

    let mut b = GraphBuilder::from_graph(g);
    for d in &toggled {
        b.toggle(d.u(), d.v());
    }
    let next = b.build();

    let forward = move_log_prob(edges, non_edges, branch, size, k);
    let reverse_branch = match branch {
        Branch::RemoveEdges => Branch::AddNonEdges,
        Branch::AddNonEdges => Branch::RemoveEdges,
    };
    let reverse = move_log_prob(
        next.edge_count(),
        next.non_edge_count(),
        reverse_branch,
        size,
        k,
    );
    Proposal {
        graph: next,
        branch,
        toggled,
        log_ratio: reverse - forward,
    }
}

/// Acceptance probability from the change in truncated shell statistics.
pub fn accept_prob_from_stats<T: Scalar>(
    params: &ModelParams<T>,
    current: &[usize],
    proposed: &[usize],
    log_ratio: f64,
    correction: Correction,
) -> T {
    let mut log_pi = params.dot(proposed) - params.dot(current);
    if correction == Correction::HastingsCorrected {
        log_pi = log_pi + T::from_f64_lossy(log_ratio);
    }
    if log_pi.is_nan() {
        return T::zero();
    }
    if log_pi >= T::zero() {
        T::one()
    } else {
        log_pi.exp()
    }
}

/// `min(1, exp(Σ_j Δn_j θ_j))`, times the proposal ratio in corrected mode.
pub fn accept_prob<T: Scalar>(
    params: &ModelParams<T>,
    g: &Graph,
    proposed: &Graph,
    log_ratio: f64,
    correction: Correction,
) -> Result<T> {
    for h in [g, proposed] {
        if h.n() != params.n() {
            return Err(Error::SizeMismatch {
                expected: params.n(),
                found: h.n(),
            });
        }
    }
    let cur = shell_distribution(g).truncated();
    let next = shell_distribution(proposed).truncated();
    Ok(accept_prob_from_stats(params, &cur, &next, log_ratio, correction))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRecord {
    pub step: usize,
    pub truncated: Vec<usize>,
    pub edges: usize,
    pub triangles: usize,
    pub accepted: bool,
    pub degree_histogram: Vec<usize>,
}

impl TraceRecord {
    pub fn summary(&self) -> SummaryRecord {
        SummaryRecord::from_parts(
            &self.truncated,
            self.edges,
            self.triangles,
            &self.degree_histogram,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainTrace {
    pub n: usize,
    pub records: Vec<TraceRecord>,
    pub acceptance_rate: f64,
    /// Visit counts of truncated shell distributions over every post-burn-in
    /// step, independent of thinning.
    pub visits: BTreeMap<Vec<usize>, u64>,
    pub final_graph: Graph,
}

/// Lag used for the autocorrelation entries of [`ChainTrace::summary_json`].
pub const SUMMARY_MAX_LAG: usize = 50;

impl ChainTrace {
    pub fn summaries(&self) -> Vec<SummaryRecord> {
        self.records.iter().map(TraceRecord::summary).collect()
    }

    /// Visited truncated distributions, most frequent first (ties broken by
    /// the vector order).
    pub fn modes(&self) -> Vec<(Vec<usize>, u64)> {
        let mut v: Vec<(Vec<usize>, u64)> =
            self.visits.iter().map(|(k, &c)| (k.clone(), c)).collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        v
    }

    pub fn edge_series(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.edges as f64).collect()
    }

    pub fn triangle_series(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.triangles as f64).collect()
    }

    pub fn shell_series(&self, j: usize) -> Vec<f64> {
        self.records.iter().map(|r| r.truncated[j] as f64).collect()
    }

    /// Autocorrelation of edges, triangles and each truncated shell count,
    /// keyed `edges`, `triangles`, `n_0`, `n_1`, ...
    pub fn autocorrelations(&self, max_lag: usize) -> BTreeMap<String, Autocorrelation> {
        let mut out = BTreeMap::new();
        let lag = max_lag.min(self.records.len().saturating_sub(1));
        if self.records.len() < 2 {
            return out;
        }
        out.insert("edges".into(), autocorrelation(&self.edge_series(), lag));
        out.insert("triangles".into(), autocorrelation(&self.triangle_series(), lag));
        for j in 0..self.n.saturating_sub(1) {
            out.insert(format!("n_{j}"), autocorrelation(&self.shell_series(j), lag));
        }
        out
    }

    /// `step,n_0,...,n_{n-2},edges,triangles,accepted`
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step");
        for j in 0..self.n.saturating_sub(1) {
            let _ = write!(out, ",n_{j}");
        }
        out.push_str(",edges,triangles,accepted\n");
        for r in &self.records {
            let _ = write!(out, "{}", r.step);
            for c in &r.truncated {
                let _ = write!(out, ",{c}");
            }
            let _ = writeln!(out, ",{},{},{}", r.edges, r.triangles, u8::from(r.accepted));
        }
        out
    }

    pub fn summary_json(&self) -> serde_json::Value {
        let acf: BTreeMap<String, serde_json::Value> = self
            .autocorrelations(SUMMARY_MAX_LAG)
            .into_iter()
            .map(|(k, a)| {
                (
                    k,
                    serde_json::json!({ "values": a.values, "constant": a.constant }),
                )
            })
            .collect();
        let modes: Vec<serde_json::Value> = self
            .modes()
            .into_iter()
            .take(10)
            .map(|(d, c)| serde_json::json!({ "truncated": d, "visits": c }))
            .collect();
        serde_json::json!({
            "n": self.n,
            "records": self.records.len(),
            "acceptance_rate": self.acceptance_rate,
            "autocorrelation": acf,
            "modes": modes,
        })
    }
}

fn record_of(step: usize, g: &Graph, truncated: &[usize], accepted: bool) -> TraceRecord {
    TraceRecord {
        step,
        truncated: truncated.to_vec(),
        edges: g.edge_count(),
        triangles: triangles(g),
        accepted,
        degree_histogram: degree_histogram(g),
    }
}

/// Runs one Metropolis chain. Identical inputs give identical traces.
pub fn run_chain<T: Scalar>(
    params: &ModelParams<T>,
    init: &Graph,
    cfg: &ChainConfig,
) -> Result<ChainTrace> {
    if init.n() != params.n() {
        return Err(Error::SizeMismatch {
            expected: params.n(),
            found: init.n(),
        });
    }
    if init.n() < 2 {
        return Err(Error::InvalidArgument("chain needs at least 2 vertices".into()));
    }
    cfg.validate(init.n())?;
    let mut rng = crate::rng_from_seed(cfg.seed);
    let mut state = init.clone();
    let mut stats = shell_distribution(&state).truncated();
    let mut accepted_total = 0usize;
    let mut records = Vec::with_capacity(cfg.recorded());
    let mut visits: BTreeMap<Vec<usize>, u64> = BTreeMap::new();

    for step in 1..=cfg.steps {
        let proposal = tnt_propose(&state, cfg.k, &mut rng);
        let proposed_stats = shell_distribution(&proposal.graph).truncated();
        let pi = accept_prob_from_stats(
            params,
            &stats,
            &proposed_stats,
            proposal.log_ratio,
            cfg.correction,
        )
        .as_f64();
        let u: f64 = rng.gen();
        let accepted = u < pi;
        if accepted {
            state = proposal.graph;
            stats = proposed_stats;
            accepted_total += 1;
        }
        if step > cfg.burn_in {
            *visits.entry(stats.clone()).or_insert(0) += 1;
            if (step - cfg.burn_in).is_multiple_of(cfg.thin) {
                records.push(record_of(step, &state, &stats, accepted));
            }
        }
    }

    Ok(ChainTrace {
        n: init.n(),
        records,
        acceptance_rate: accepted_total as f64 / cfg.steps as f64,
        visits,
        final_graph: state,
    })
}

/// Runs independent chains on scoped threads; results come back in the order
/// of `configs`.
pub fn run_chains<T: Scalar>(
    params: &ModelParams<T>,
    init: &Graph,
    configs: &[ChainConfig],
) -> Result<Vec<ChainTrace>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = configs
            .iter()
            .map(|cfg| scope.spawn(move || run_chain(params, init, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("chain thread panicked"))
            .collect()
    })
}

/// Sums visit histograms of several chains.
pub fn merge_visits(traces: &[ChainTrace]) -> BTreeMap<Vec<usize>, u64> {
    let mut out = BTreeMap::new();
    for t in traces {
        for (k, &c) in &t.visits {
            *out.entry(k.clone()).or_insert(0) += c;
        }
    }
    out
}

/// `G(n, p)` draw, used as a default chain start.
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut b = GraphBuilder::new(n);
    for v in 0..n {
        for u in 0..v {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                b.add_edge(u, v);
            }
        }
    }
    b.build()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Autocorrelation {
    pub values: Vec<f64>,
    /// Set when the series has zero variance; values are then `1, 0, 0, ...`.
    pub constant: bool,
}

/// Sample autocorrelation `r_k = Σ_t (x_t - x̄)(x_{t+k} - x̄) / Σ_t (x_t - x̄)²`
/// for `k = 0..=max_lag`.
pub fn autocorrelation(series: &[f64], max_lag: usize) -> Autocorrelation {
    assert!(series.len() > max_lag, "series shorter than max_lag + 1");
    let n = series.len() as f64;
    let mean = series.iter().sum::<f64>() / n;
    let centered: Vec<f64> = series.iter().map(|x| x - mean).collect();
    let denom: f64 = centered.iter().map(|x| x * x).sum();
    if denom <= f64::EPSILON * n * mean.abs().max(1.0) {
        let mut values = vec![0.0; max_lag + 1];
        values[0] = 1.0;
        return Autocorrelation {
            values,
            constant: true,
        };
    }
    let values = (0..=max_lag)
        .map(|k| {
            centered
                .iter()
                .zip(&centered[k..])
                .map(|(a, b)| a * b)
                .sum::<f64>()
                / denom
        })
        .collect();
    Autocorrelation {
        values,
        constant: false,
    }
}
