//! The shell-distribution exponential random graph model.
//!
//! `P(G = g) = exp(Σ_{j<n-1} n_j(g) θ_j - ψ(θ))`, with the truncated shell
//! distribution as sufficient statistic and the top shell `n - 1` as the
//! reference category (`θ_{n-1} = 0`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cores::shell_distribution;
use crate::enumerate::statistic_histogram;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::{log_sum_exp_weighted, Scalar};

/// Default largest `n` for exact enumeration (`2^15` graphs).
pub const PARTITION_CAP: usize = 6;
/// Hard ceiling for a caller-raised cap (`2^21` graphs).
pub const PARTITION_CAP_MAX: usize = 7;

/// Natural parameters `θ_0 .. θ_{n-2}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct ModelParams<T> {
    n: usize,
    theta: Vec<T>,
}

impl<T: Scalar> ModelParams<T> {
    pub fn new(n: usize, theta: Vec<T>) -> Result<Self> {
        if n < 1 || theta.len() != n - 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} natural parameters for n = {n}, got {}",
                n.saturating_sub(1),
                theta.len()
            )));
        }
        if let Some(bad) = theta.iter().position(|t| !t.is_finite()) {
            return Err(Error::InvalidArgument(format!("theta[{bad}] is not finite")));
        }
        Ok(Self { n, theta })
    }

    /// The uniform model over all labeled graphs.
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            theta: vec![T::zero(); n.saturating_sub(1)],
        }
    }

    /// From shell propensities `p_0 .. p_{n-1}` (any positive scale):
    /// `θ_j = ln(p_j / p_{n-1})`.
    pub fn from_propensities(p: &[T]) -> Result<Self> {
        if p.iter().any(|&x| !x.is_finite() || x <= T::zero()) {
            return Err(Error::InvalidArgument(
                "propensities must be positive and finite".into(),
            ));
        }
        let n = p.len();
        let last = *p
            .last()
            .ok_or_else(|| Error::InvalidArgument("no propensities".into()))?;
        Self::new(n, p[..n - 1].iter().map(|&x| (x / last).ln()).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> &[T] {
        &self.theta
    }

    /// Normalized propensities `p̃_j = exp(θ_j)`, with `p̃_{n-1} = 1`.
    pub fn p_tilde(&self) -> Vec<T> {
        self.theta
            .iter()
            .map(|t| t.exp())
            .chain(std::iter::once(T::one()))
            .collect()
    }

    /// `Σ_j truncated[j] θ_j`.
    pub fn dot(&self, truncated: &[usize]) -> T {
        debug_assert_eq!(truncated.len(), self.theta.len());
        truncated
            .iter()
            .zip(&self.theta)
            .fold(T::zero(), |acc, (&c, &t)| acc + T::of_count(c) * t)
    }

    /// Same parameters in another float type.
    pub fn cast<U: Scalar>(&self) -> ModelParams<U> {
        ModelParams {
            n: self.n,
            theta: self
                .theta
                .iter()
                .map(|t| U::from_f64_lossy(t.as_f64()))
                .collect(),
        }
    }
}

fn ensure_size<T>(params: &ModelParams<T>, g: &Graph) -> Result<()> {
    if g.n() != params.n {
        return Err(Error::SizeMismatch {
            expected: params.n,
            found: g.n(),
        });
    }
    Ok(())
}

/// `Σ_{j<n-1} n_j(g) θ_j`.
pub fn unnormalized_log_prob<T: Scalar>(params: &ModelParams<T>, g: &Graph) -> Result<T> {
    ensure_size(params, g)?;
    Ok(params.dot(&shell_distribution(g).truncated()))
}

/// `ψ(θ)` by enumerating all labeled graphs, for `n <= PARTITION_CAP`.
pub fn exact_log_partition<T: Scalar>(params: &ModelParams<T>) -> Result<T> {
    exact_log_partition_with_cap(params, PARTITION_CAP)
}

/// As [`exact_log_partition`] with a raised cap (at most
/// [`PARTITION_CAP_MAX`]).
pub fn exact_log_partition_with_cap<T: Scalar>(params: &ModelParams<T>, cap: usize) -> Result<T> {
    let hist = statistic_histogram(params.n, cap.min(PARTITION_CAP_MAX))?;
    let terms: Vec<(u64, T)> = hist
        .iter()
        .map(|(stat, &count)| (count, params.dot(stat)))
        .collect();
    Ok(log_sum_exp_weighted(&terms))
}

/// `log P(G = g)`.
pub fn log_prob<T: Scalar>(params: &ModelParams<T>, g: &Graph) -> Result<T> {
    let unnorm = unnormalized_log_prob(params, g)?;
    Ok(unnorm - exact_log_partition(params)?)
}

/// Exact law of the truncated shell distribution under the model: the
/// probability mass of each statistic value, summed over its fiber.
pub fn exact_statistic_law<T: Scalar>(
    params: &ModelParams<T>,
    cap: usize,
) -> Result<BTreeMap<Vec<usize>, T>> {
    let hist = statistic_histogram(params.n, cap.min(PARTITION_CAP_MAX))?;
    let terms: Vec<(u64, T)> = hist
        .iter()
        .map(|(stat, &count)| (count, params.dot(stat)))
        .collect();
    let psi = log_sum_exp_weighted(&terms);
    Ok(hist
        .into_iter()
        .zip(terms)
        .map(|((stat, _), (count, w))| {
            let c = <T as num_traits::FromPrimitive>::from_u64(count).expect("count fits");
            (stat, c * (w - psi).exp())
        })
        .collect())
}

/// Additive smoothing `α_0 .. α_{n-1}` for the empirical estimator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct SmoothingAlpha<T> {
    alpha: Vec<T>,
}

impl<T: Scalar> SmoothingAlpha<T> {
    pub fn new(alpha: Vec<T>) -> Result<Self> {
        if alpha.iter().any(|&a| !a.is_finite() || a < T::zero()) {
            return Err(Error::InvalidArgument(
                "smoothing weights must be finite and non-negative".into(),
            ));
        }
        Ok(Self { alpha })
    }

    /// The same weight for every shell.
    pub fn uniform(n: usize, value: T) -> Result<Self> {
        Self::new(vec![value; n])
    }

    pub fn values(&self) -> &[T] {
        &self.alpha
    }

    /// `|α| = Σ α_i`.
    pub fn total(&self) -> T {
        self.alpha.iter().fold(T::zero(), |a, &b| a + b)
    }
}

/// Smoothed plug-in estimate: `p̂ = (n_S(g) + α) / (n + |α|)` and
/// `θ̂_i = ln(p̂_i / p̂_{n-1})`.
pub fn empirical_estimate<T: Scalar>(g: &Graph, alpha: &SmoothingAlpha<T>) -> Result<ModelParams<T>> {
    let n = g.n();
    if alpha.alpha.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: alpha.alpha.len(),
        });
    }
    if n == 0 {
        return Err(Error::Estimator("graph has no vertices".into()));
    }
    let counts = shell_distribution(g);
    let denom = T::of_count(n) + alpha.total();
    let p_hat: Vec<T> = counts
        .counts()
        .iter()
        .zip(&alpha.alpha)
        .map(|(&c, &a)| (T::of_count(c) + a) / denom)
        .collect();
    if p_hat[n - 1].is_nan() || p_hat[n - 1] <= T::zero() {
        return Err(Error::Estimator(format!(
            "shell {} is empty and unsmoothed; raise alpha[{}] above 0",
            n - 1,
            n - 1
        )));
    }
    if let Some(j) = p_hat.iter().position(|&p| p.is_nan() || p <= T::zero()) {
        return Err(Error::Estimator(format!(
            "shell {j} is empty and unsmoothed; raise alpha[{j}] above 0"
        )));
    }
    let last = p_hat[n - 1];
    ModelParams::new(n, p_hat[..n - 1].iter().map(|&p| (p / last).ln()).collect())
}
