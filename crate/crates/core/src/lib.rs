//! Exponential random graph models whose sufficient statistic is the
//! k-core shell distribution: core decomposition, realizability and MLE
//! existence checks, exact fiber sampling and enumeration, exact likelihood
//! for small graphs, TNT Metropolis sampling and goodness-of-fit summaries.

pub mod cores;
pub mod enumerate;
pub mod ergm;
pub mod error;
pub mod fiber;
pub mod graph;
pub mod mcmc;
pub mod realizability;
pub mod scalar;
pub mod stats;

use num_rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use cores::{shell_distribution, shell_sequence, ShellDistribution, ShellSequence};
pub use error::{Error, Result};
pub use graph::{from_edge_list, from_labeled_edge_list, Dyad, Graph, GraphBuilder, LabeledGraph};
pub use mcmc::{ChainConfig, ChainTrace, Correction};
pub use scalar::Scalar;
pub use stats::{GofReport, SummaryRecord};

/// Double-precision model parameters.
pub type Params = ergm::ModelParams<f64>;
/// Single-precision model parameters.
pub type Params32 = ergm::ModelParams<f32>;
/// Double-precision smoothing vector.
pub type Alpha = ergm::SmoothingAlpha<f64>;
/// Exact point of the statistic polytope.
pub type RationalPoint = realizability::PolytopePoint<Rational64>;

/// The generator used throughout; fixed algorithm so seeds reproduce.
pub type Rng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` derived from `seed`.
pub fn rng_from_seed_stream(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Edge list of the bundled 18-vertex stand-in for the Sampson monastery
/// network (same size and shell counts, not the original ties).
pub const SAMPSON_EDGES: &str = include_str!("../data/sampson.edges");

pub fn sampson() -> Graph {
    from_edge_list(SAMPSON_EDGES).expect("bundled data parses")
}
