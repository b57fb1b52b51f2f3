//! Which shell distributions occur, a witness graph for each, and whether
//! the maximum-likelihood estimate exists for a sample.
//!
//! A vector `(n_0, ..., n_{n-1})` is the shell distribution of some graph on
//! `n` vertices exactly when it sums to `n` and its last non-zero entry
//! `n_m` satisfies `n_m >= m + 1`. The truncated statistics therefore span
//! the dilated simplex `conv{0, n e_0, ..., n e_{n-2}}`, and the MLE exists
//! iff the sample-mean statistic lies strictly inside it.

use num_rational::Rational64;
use num_traits::{FromPrimitive, Num};
use serde::Serialize;

use crate::cores::{shell_distribution, ShellDistribution};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

pub fn is_realizable(d: &ShellDistribution) -> bool {
    realizability_problem(d).is_none()
}

/// `None` when realizable, otherwise a human-readable reason.
pub fn realizability_problem(d: &ShellDistribution) -> Option<String> {
    let n = d.n();
    let total = d.total();
    if total != n {
        return Some(format!("counts sum to {total}, expected n = {n}"));
    }
    if n == 0 {
        return None;
    }
    // sum == n > 0, so some entry is non-zero
    let m = d.degeneracy().expect("non-zero distribution");
    let top = d.counts()[m];
    if top < m + 1 {
        return Some(format!(
            "top shell {m} holds {top} vertices but needs n_m >= m+1 = {}",
            m + 1
        ));
    }
    None
}

pub(crate) fn ensure_realizable(d: &ShellDistribution) -> Result<()> {
    match realizability_problem(d) {
        None => Ok(()),
        Some(reason) => Err(Error::Unrealizable {
            counts: d.counts().to_vec(),
            reason,
        }),
    }
}

/// A graph with shell distribution `d`.
///
/// Vertices `0..m` form `K_m`, the next `n_m - m` vertices are joined to all
/// of it (completing the `m`-shell), and each remaining vertex of shell
/// `j < m` is joined to vertices `0..j`. Lower shells follow in decreasing
/// order of index.
pub fn construct_witness(d: &ShellDistribution) -> Result<Graph> {
    ensure_realizable(d)?;
    let n = d.n();
    let mut b = GraphBuilder::new(n);
    if n == 0 {
        return Ok(b.build());
    }
    let m = d.degeneracy()?;
    let counts = d.counts();
    for v in 0..m {
        for u in 0..v {
            b.add_edge(u, v);
        }
    }
    let mut next = m;
    for _ in m..counts[m] {
        for u in 0..m {
            b.add_edge(u, next);
        }
        next += 1;
    }
    for j in (0..m).rev() {
        for _ in 0..counts[j] {
            for u in 0..j {
                b.add_edge(u, next);
            }
            next += 1;
        }
    }
    debug_assert_eq!(next, n);
    Ok(b.build())
}

/// A point of the truncated sufficient-statistic space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolytopePoint<T> {
    pub coords: Vec<T>,
    /// Vertex count; the polytope is the simplex dilated by `n`.
    pub n: usize,
}

impl<T> PolytopePoint<T>
where
    T: Num + FromPrimitive + Clone + PartialOrd,
{
    /// Componentwise mean of the truncated shell distributions of a sample.
    pub fn sample_mean(sample: &[Graph]) -> Result<Self> {
        let first = sample
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty sample".into()))?;
        let n = first.n();
        let mut sums = vec![0usize; n.saturating_sub(1)];
        for g in sample {
            if g.n() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: g.n(),
                });
            }
            for (s, c) in sums.iter_mut().zip(shell_distribution(g).truncated()) {
                *s += c;
            }
        }
        let m = T::from_usize(sample.len()).expect("sample size representable");
        let coords = sums
            .into_iter()
            .map(|s| T::from_usize(s).expect("count representable") / m.clone())
            .collect();
        Ok(Self { coords, n })
    }

    /// Strict interior of `conv{0, n e_i}`: every coordinate positive and the
    /// coordinate sum below `n`.
    pub fn is_interior(&self) -> bool {
        let zero = T::zero();
        let sum = self
            .coords
            .iter()
            .cloned()
            .fold(T::zero(), |acc, c| acc + c);
        let n = T::from_usize(self.n).expect("n representable");
        self.coords.iter().all(|c| *c > zero) && sum < n
    }
}

/// Exact-rational test of MLE existence for an i.i.d. sample of graphs.
///
/// A single vertex has no free parameter, so the answer there is vacuously
/// `true`.
pub fn mle_exists(sample: &[Graph]) -> Result<bool> {
    Ok(PolytopePoint::<Rational64>::sample_mean(sample)?.is_interior())
}
