//! Random graphs with a prescribed shell distribution.
//!
//! Vertices `v_1..v_n` are processed in order of a sorted shell sequence
//! `s_1 <= ... <= s_n`. A vertex outside the tail connects to a random set of
//! later vertices whose size keeps it removable at exactly level `s_i`; the
//! tail (the last `s_n + 1` vertices, all in the top shell) is closed off by
//! charging each missing tail edge against the slack `t_j` of both ends. Every
//! graph of the fiber is produced, up to isomorphism, with positive
//! probability.

use std::collections::{BTreeMap, HashSet};

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::Serialize;

use crate::cores::{shell_sequence, ShellDistribution};
use crate::enumerate::{canonical_certificate, CERTIFICATE_CAP};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::realizability::ensure_realizable;

pub use crate::enumerate::{enumerate_fiber, FiberEnumeration, IsoClass};

/// A realizable shell distribution expanded into its sorted sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SortedShellSpec {
    s: Vec<usize>,
}

impl SortedShellSpec {
    /// Validates a non-decreasing sequence whose histogram is realizable.
    pub fn new(s: Vec<usize>) -> Result<Self> {
        if s.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument(
                "shell sequence must be non-decreasing".into(),
            ));
        }
        let n = s.len();
        if let Some(&bad) = s.iter().find(|&&x| x >= n.max(1)) {
            return Err(Error::InvalidArgument(format!(
                "shell index {bad} out of range for n = {n}"
            )));
        }
        let mut counts = vec![0; n];
        for &x in &s {
            counts[x] += 1;
        }
        ensure_realizable(&ShellDistribution::from_counts(counts))?;
        Ok(Self { s })
    }

    pub fn sequence(&self) -> &[usize] {
        &self.s
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    /// First (0-based) position of the tail block of the last `s_n + 1`
    /// vertices.
    pub fn tail_start(&self) -> usize {
        match self.s.last() {
            Some(&top) => self.s.len() - top - 1,
            None => 0,
        }
    }
}

pub fn sort_spec(d: &ShellDistribution) -> Result<SortedShellSpec> {
    ensure_realizable(d)?;
    Ok(SortedShellSpec { s: d.expand() })
}

/// Draws one graph on `v_0..v_{n-1}` whose shell index of `v_i` is `s_i`.
///
/// Each random set is chosen by drawing its size uniformly from the allowed
/// range and then a uniform subset of that size; the next tail vertex is
/// picked uniformly. The overall law on the fiber is not uniform.
pub fn sample_fiber<R: Rng + ?Sized>(spec: &SortedShellSpec, rng: &mut R) -> Graph {
    let s = &spec.s;
    let n = s.len();
    let mut b = GraphBuilder::new(n);
    if n == 0 {
        return b.build();
    }
    let tail = spec.tail_start();
    let mut t = vec![0usize; n];

    for i in 0..tail {
        let later = n - i - 1;
        let lo = s[i].saturating_sub(t[i]);
        let hi = s[i].min(later);
        let size = rng.gen_range(lo..=hi);
        for offset in index::sample(rng, later, size) {
            let j = i + 1 + offset;
            b.add_edge(i, j);
            if s[j] == s[i] {
                t[j] += 1;
            }
        }
    }

    let mut active: Vec<usize> = (tail..n).collect();
    let mut k = 0;
    while k < active.len() {
        let j = active[k];
        if t[j] == 0 {
            active.remove(k);
            for &w in &active {
                b.add_edge(j, w);
            }
        } else {
            k += 1;
        }
    }

    while !active.is_empty() {
        let vi = active.swap_remove(rng.gen_range(0..active.len()));
        let lo = active.len().saturating_sub(t[vi]);
        let size = rng.gen_range(lo..=active.len());
        let mut chosen = vec![false; active.len()];
        for idx in index::sample(rng, active.len(), size) {
            chosen[idx] = true;
        }
        let mut skipped = Vec::with_capacity(active.len() - size);
        for (idx, &vj) in active.iter().enumerate() {
            if chosen[idx] {
                b.add_edge(vi, vj);
            } else {
                skipped.push(vj);
            }
        }
        for vj in skipped {
            t[vj] -= 1;
            if t[vj] == 0 {
                let pos = active.iter().position(|&w| w == vj).expect("still active");
                active.swap_remove(pos);
                for &w in &active {
                    b.add_edge(vj, w);
                }
            }
        }
    }
    b.build()
}

/// Applies a uniformly random vertex permutation.
pub fn random_relabel<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

/// Whether `g`, with vertices taken in label order, is a possible output of
/// the construction for the sorted sequence `s`.
///
/// Outside the tail: `v_i` has at least `s_i` neighbors of shell `>= s_i` and
/// at most `s_i` neighbors after it. In the tail: `v_i` has at most `t_i`
/// non-neighbors among the tail vertices, where `t_i` counts its same-shell
/// neighbors placed before the tail.
pub fn check_conditions(g: &Graph, s: &[usize]) -> bool {
    let n = g.n();
    if s.len() != n || s.windows(2).any(|w| w[0] > w[1]) {
        return false;
    }
    if n == 0 {
        return true;
    }
    let tail = n - s[n - 1].min(n - 1) - 1;
    for i in 0..tail {
        let nbrs = g.neighbors(i);
        let high = nbrs.iter().filter(|&&j| s[j] >= s[i]).count();
        let later = nbrs.iter().filter(|&&j| j > i).count();
        if high < s[i] || later > s[i] {
            return false;
        }
    }
    for i in tail..n {
        let t = g
            .neighbors(i)
            .iter()
            .filter(|&&j| j < tail && s[j] == s[i])
            .count();
        let missing = (tail..n).filter(|&j| j != i && !g.has_edge(i, j)).count();
        if missing > t {
            return false;
        }
    }
    true
}

/// The peeling-order condition for every vertex: at least `s_i` neighbors of
/// shell `>= s_i` and at most `s_i` later neighbors.
pub fn satisfies_peeling_order(g: &Graph, s: &[usize]) -> bool {
    s.len() == g.n()
        && (0..g.n()).all(|i| {
            let nbrs = g.neighbors(i);
            nbrs.iter().filter(|&&j| s[j] >= s[i]).count() >= s[i]
                && nbrs.iter().filter(|&&j| j > i).count() <= s[i]
        })
}

/// Outcome of repeated sampling from one fiber.
#[derive(Debug, Clone, Serialize)]
pub struct Discovery {
    pub runs: usize,
    pub distinct_labeled: usize,
    /// Isomorphism classes seen, with the 1-based run at which each first
    /// appeared; `None` when `n` exceeds the certificate cap.
    pub classes_first_seen: Option<BTreeMap<u64, usize>>,
    /// Outputs whose shell sequence disagreed with the requested one. Always 0 for a
    /// correct sampler.
    pub failures: usize,
}

impl Discovery {
    pub fn class_count(&self) -> Option<usize> {
        self.classes_first_seen.as_ref().map(BTreeMap::len)
    }

    /// Number of runs after which `count` distinct classes had been seen.
    pub fn runs_to_find(&self, count: usize) -> Option<usize> {
        let firsts = self.classes_first_seen.as_ref()?;
        if firsts.len() < count || count == 0 {
            return None;
        }
        let mut v: Vec<usize> = firsts.values().copied().collect();
        v.sort_unstable();
        Some(v[count - 1])
    }
}

/// Runs the sampler `runs` times, optionally relabeling each output, and
/// tallies distinct labeled graphs and isomorphism classes.
pub fn discover<R: Rng + ?Sized>(
    spec: &SortedShellSpec,
    runs: usize,
    relabel: bool,
    rng: &mut R,
) -> Discovery {
    let with_classes = spec.n() <= CERTIFICATE_CAP;
    let mut seen: HashSet<Graph> = HashSet::new();
    let mut firsts = BTreeMap::new();
    let mut failures = 0;
    for run in 1..=runs {
        let g = sample_fiber(spec, rng);
        if shell_sequence(&g).0 != spec.s {
            failures += 1;
        }
        let g = if relabel { random_relabel(&g, rng) } else { g };
        if with_classes {
            let cert = canonical_certificate(&g).expect("under cap");
            firsts.entry(cert).or_insert(run);
        }
        seen.insert(g);
    }
    Discovery {
        runs,
        distinct_labeled: seen.len(),
        classes_first_seen: with_classes.then_some(firsts),
        failures,
    }
}
