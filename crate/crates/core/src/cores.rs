//! Core decomposition: shell indices, k-cores and shell distributions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Per-vertex shell indices, `s[v]` being the largest `k` with `v` in the
/// `k`-core.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ShellSequence(pub Vec<usize>);

impl ShellSequence {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sorted(&self) -> Vec<usize> {
        let mut s = self.0.clone();
        s.sort_unstable();
        s
    }

    /// Histogram of the sequence, padded to length `n`.
    pub fn distribution(&self) -> ShellDistribution {
        let n = self.0.len();
        let mut counts = vec![0; n];
        for &s in &self.0 {
            counts[s] += 1;
        }
        ShellDistribution { counts }
    }
}

/// Number of vertices in each shell, always of length `n` (the vertex count).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ShellDistribution {
    counts: Vec<usize>,
}

impl ShellDistribution {
    /// Wraps raw counts. The length fixes `n`; no realizability check is done
    /// here (see [`crate::realizability::is_realizable`]).
    pub fn from_counts(counts: Vec<usize>) -> Self {
        Self { counts }
    }

    /// Full distribution from a truncated one of length `n - 1`, restoring
    /// the last coordinate so the counts sum to `n`.
    pub fn from_truncated(truncated: &[usize]) -> Result<Self> {
        let n = truncated.len() + 1;
        let used: usize = truncated.iter().sum();
        if used > n {
            return Err(Error::InvalidArgument(format!(
                "truncated counts sum to {used} > n = {n}"
            )));
        }
        let mut counts = truncated.to_vec();
        counts.push(n - used);
        Ok(Self { counts })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `(n_0, ..., n_{n-2})`: the last coordinate is dropped.
    pub fn truncated(&self) -> Vec<usize> {
        let end = self.counts.len().saturating_sub(1);
        self.counts[..end].to_vec()
    }

    /// Largest index with a non-zero count.
    pub fn degeneracy(&self) -> Result<usize> {
        self.counts
            .iter()
            .rposition(|&c| c > 0)
            .ok_or_else(|| Error::InvalidArgument("all-zero shell distribution".into()))
    }

    /// Size of the most populated shell.
    pub fn largest_shell_size(&self) -> usize {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    /// Non-decreasing shell sequence with this histogram.
    pub fn expand(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(j, &c)| std::iter::repeat_n(j, c))
            .collect()
    }
}

impl fmt::Display for ShellDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for ShellDistribution {
    type Err = Error;

    /// Accepts `0,2,1,4` with optional surrounding parentheses or brackets.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let counts = inner
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|_| Error::Parse {
                    line: 1,
                    message: format!("bad shell count {:?}", t.trim()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { counts })
    }
}

/// Shell index of every vertex by degree-bucket peeling, in `O(n + m)`.
///
/// Vertices are kept in buckets by current degree, initially filled in label
/// order, and the lowest bucket is always drained first. The resulting
/// indices do not depend on tie order.
pub fn shell_sequence(g: &Graph) -> ShellSequence {
    ShellSequence(peel(g).0)
}

/// Shell indices together with the order in which vertices were removed.
pub fn peel(g: &Graph) -> (Vec<usize>, Vec<usize>) {
    let n = g.n();
    let mut degree = g.degree_sequence();
    let max_deg = degree.iter().copied().max().unwrap_or(0);

    // vertices sorted by degree (counting sort, stable so labels ascend)
    let mut bin_start = vec![0usize; max_deg + 2];
    for &d in &degree {
        bin_start[d + 1] += 1;
    }
    for d in 1..bin_start.len() {
        bin_start[d] += bin_start[d - 1];
    }
    let mut order = vec![0usize; n];
    let mut position = vec![0usize; n];
    {
        let mut next = bin_start.clone();
        for v in 0..n {
            let d = degree[v];
            order[next[d]] = v;
            position[v] = next[d];
            next[d] += 1;
        }
    }

    let mut shell = vec![0usize; n];
    let mut current = 0usize;
    for i in 0..n {
        let v = order[i];
        current = current.max(degree[v]);
        shell[v] = current;
        for &w in g.neighbors(v) {
            if position[w] > i && degree[w] > degree[v] {
                // move w to the front of its bin, then shrink the bin
                let dw = degree[w];
                let front = bin_start[dw].max(i + 1);
                let u = order[front];
                if u != w {
                    order.swap(front, position[w]);
                    position[u] = position[w];
                    position[w] = front;
                }
                bin_start[dw] = front + 1;
                degree[w] -= 1;
            }
        }
    }
    (shell, order)
}

/// The maximal subgraph of minimum degree at least `k`, relabelled densely
/// in increasing order of the original labels. Empty when no vertex
/// survives.
pub fn k_core(g: &Graph, k: usize) -> Graph {
    g.induced(&k_core_vertices(g, k))
}

/// Original labels of the vertices of the `k`-core, ascending.
pub fn k_core_vertices(g: &Graph, k: usize) -> Vec<usize> {
    let s = shell_sequence(g);
    (0..g.n()).filter(|&v| s.0[v] >= k).collect()
}

pub fn shell_distribution(g: &Graph) -> ShellDistribution {
    shell_sequence(g).distribution()
}

pub fn truncated_distribution(d: &ShellDistribution) -> Vec<usize> {
    d.truncated()
}

pub fn degeneracy(d: &ShellDistribution) -> Result<usize> {
    d.degeneracy()
}
