//! Exhaustive enumeration of all labeled graphs on a handful of vertices.
//!
//! Graphs are encoded as dyad bitmasks (bit `i` is [`Dyad::from_index`]`(i)`)
//! with per-vertex neighbor bitsets, which keeps a full sweep over the
//! `2^21` graphs on seven vertices cheap.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cores::ShellDistribution;
use crate::error::{Error, Result};
use crate::graph::{dyad_count, Dyad, Graph};

/// Largest vertex count for which isomorphism certificates are computed.
pub const CERTIFICATE_CAP: usize = 8;

/// Largest vertex count accepted by [`enumerate_fiber`].
pub const FIBER_CAP: usize = 7;

/// Neighbor bitsets of the graph encoded by `mask`.
pub fn adjacency_of_mask(n: usize, mask: u64) -> [u16; 16] {
    debug_assert!(n <= 16);
    let mut adj = [0u16; 16];
    let mut bits = mask;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let d = Dyad::from_index(i);
        adj[d.u()] |= 1 << d.v();
        adj[d.v()] |= 1 << d.u();
    }
    adj
}

/// Shell indices by literal repeated deletion: remove any vertex of degree at
/// most `s*`, raising `s*` when none is left. Independent of
/// [`crate::cores::shell_sequence`], which uses bucket peeling.
pub fn shells_of_adjacency(n: usize, adj: &[u16]) -> [u8; 16] {
    let mut shells = [0u8; 16];
    let mut remaining: u16 = if n == 16 { u16::MAX } else { (1 << n) - 1 };
    let mut level = 0u32;
    while remaining != 0 {
        let mut removed = false;
        let mut scan = remaining;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            if (adj[v] & remaining).count_ones() <= level {
                remaining &= !(1 << v);
                shells[v] = level as u8;
                removed = true;
                break;
            }
        }
        if !removed {
            level += 1;
        }
    }
    shells
}

/// Truncated shell distribution `(n_0, ..., n_{n-2})` of a bitmask graph.
pub fn truncated_of_mask(n: usize, mask: u64) -> Vec<usize> {
    let adj = adjacency_of_mask(n, mask);
    let shells = shells_of_adjacency(n, &adj);
    let mut counts = vec![0usize; n];
    for &s in &shells[..n] {
        counts[s as usize] += 1;
    }
    counts.truncate(n.saturating_sub(1));
    counts
}

fn check_mask_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

/// Number of labeled graphs per truncated shell distribution, over all
/// `2^(n(n-1)/2)` graphs on `n <= cap` vertices.
pub fn statistic_histogram(n: usize, cap: usize) -> Result<BTreeMap<Vec<usize>, u64>> {
    check_mask_cap(n, cap.min(11))?;
    let mut hist = BTreeMap::new();
    for mask in 0..1u64 << dyad_count(n) {
        *hist.entry(truncated_of_mask(n, mask)).or_insert(0) += 1;
    }
    Ok(hist)
}

/// Canonical form of a bitmask graph: the smallest dyad mask over all
/// relabelings that list vertices in non-decreasing order of an
/// isomorphism-invariant key (degree, then sorted neighbor degrees).
///
/// Restricting to key-sorted relabelings keeps the minimum an isomorphism
/// invariant while skipping most of the `n!` permutations.
pub fn canonical_mask(n: usize, adj: &[u16]) -> u64 {
    let degree: Vec<u32> = (0..n).map(|v| adj[v].count_ones()).collect();
    let key: Vec<(u32, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<u32> = (0..n)
                .filter(|&w| adj[v] >> w & 1 == 1)
                .map(|w| degree[w])
                .collect();
            nd.sort_unstable();
            (degree[v], nd)
        })
        .collect();
    let mut slots: Vec<usize> = (0..n).collect();
    slots.sort_by(|&a, &b| key[a].cmp(&key[b]));
    let slot_keys: Vec<&(u32, Vec<u32>)> = slots.iter().map(|&v| &key[v]).collect();

    let mut best = u64::MAX;
    let mut label = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(n, adj, &key, &slot_keys, 0, &mut label, &mut used, &mut best);
    best
}

#[allow(clippy::too_many_arguments)]
fn search(
    n: usize,
    adj: &[u16],
    key: &[(u32, Vec<u32>)],
    slot_keys: &[&(u32, Vec<u32>)],
    slot: usize,
    label: &mut [usize],
    used: &mut [bool],
    best: &mut u64,
) {
    if slot == n {
        let mut mask = 0u64;
        for u in 0..n {
            let mut nbrs = adj[u];
            while nbrs != 0 {
                let v = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                if u < v {
                    let d = Dyad::new(label[u], label[v]).expect("distinct labels");
                    mask |= 1 << d.index();
                }
            }
        }
        if mask < *best {
            *best = mask;
        }
        return;
    }
    for v in 0..n {
        if !used[v] && key[v] == *slot_keys[slot] {
            used[v] = true;
            label[v] = slot;
            search(n, adj, key, slot_keys, slot + 1, label, used, best);
            used[v] = false;
        }
    }
}

/// Isomorphism certificate: equal iff the graphs are isomorphic.
pub fn canonical_certificate(g: &Graph) -> Result<u64> {
    check_mask_cap(g.n(), CERTIFICATE_CAP)?;
    let n = g.n();
    let adj = adjacency_of_mask(n, g.dyad_mask());
    Ok(canonical_mask(n, &adj))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoClass {
    pub certificate: u64,
    pub labeled_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberEnumeration {
    pub distribution: Vec<usize>,
    pub labeled_count: u64,
    /// Sorted by certificate.
    pub iso_classes: Vec<IsoClass>,
}

impl FiberEnumeration {
    pub fn class_count(&self) -> usize {
        self.iso_classes.len()
    }

    /// Graph representatives, one per class.
    pub fn representatives(&self) -> Vec<Graph> {
        let n = self.distribution.len();
        self.iso_classes
            .iter()
            .map(|c| Graph::from_dyad_mask(n, c.certificate))
            .collect()
    }
}

/// Every labeled graph with shell distribution `d`, grouped into
/// isomorphism classes. Refuses `n > FIBER_CAP`.
pub fn enumerate_fiber(d: &ShellDistribution) -> Result<FiberEnumeration> {
    let n = d.n();
    check_mask_cap(n, FIBER_CAP)?;
    let target = d.counts();
    let mut classes: BTreeMap<u64, u64> = BTreeMap::new();
    let mut labeled = 0u64;
    for mask in 0..1u64 << dyad_count(n) {
        let adj = adjacency_of_mask(n, mask);
        let shells = shells_of_adjacency(n, &adj);
        let mut counts = [0usize; 16];
        for &s in &shells[..n] {
            counts[s as usize] += 1;
        }
        if counts[..n] != *target {
            continue;
        }
        labeled += 1;
        *classes.entry(canonical_mask(n, &adj)).or_insert(0) += 1;
    }
    Ok(FiberEnumeration {
        distribution: target.to_vec(),
        labeled_count: labeled,
        iso_classes: classes
            .into_iter()
            .map(|(certificate, labeled_count)| IsoClass {
                certificate,
                labeled_count,
            })
            .collect(),
    })
}

/// All realizable shell distributions on `n` vertices, in lexicographic
/// order of their counts.
pub fn realizable_distributions(n: usize) -> Vec<ShellDistribution> {
    fn rec(n: usize, idx: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<ShellDistribution>) {
        if idx == n {
            if left == 0 {
                let d = ShellDistribution::from_counts(cur.clone());
                if crate::realizability::is_realizable(&d) {
                    out.push(d);
                }
            }
            return;
        }
        for c in 0..=left {
            cur.push(c);
            rec(n, idx + 1, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, n, &mut Vec::new(), &mut out);
    out
}
