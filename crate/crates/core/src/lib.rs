//! Intermediacy of nodes between a source and a target in a directed acyclic
//! graph.
//!
//! Every edge is independently active with probability `p`; the intermediacy
//! of a node is the probability that it lies on a fully active path from the
//! source to the target. This crate computes it exactly (contraction and
//! deletion, for small graphs) or by Monte Carlo sampling, together with the
//! usual alternatives (main path analysis, expected path count, resistance)
//! and the tooling for empirical comparisons.

pub mod analysis;
pub mod baselines;
mod closure;
mod error;
pub mod estimate;
pub mod exact;
pub mod generate;
mod graph;
pub mod io;
pub mod montecarlo;
pub mod paths;
mod scores;

pub use closure::{st_closure, StContext};
pub use error::{Error, Result};
pub use estimate::{Estimator, MethodChoice};
pub use exact::{exact_intermediacy, reach_probability, ReliabilityQuery};
pub use graph::{Dag, EdgeIx, NodeIx, NodeRecord};
pub use montecarlo::{estimate_intermediacy, estimate_st_probability, SamplerConfig};
pub use paths::{edge_independent_through, path_stats, PathStats};
pub use scores::{IntermediacyScores, Method, Probability};
