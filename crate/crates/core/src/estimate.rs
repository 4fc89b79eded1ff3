//! Choosing between exact evaluation and Monte Carlo estimation.

use serde::Serialize;

use crate::closure::StContext;
use crate::error::{Error, Result};
use crate::exact::{exact_intermediacy, exact_st_probability, ReliabilityQuery, DEFAULT_MAX_EDGES};
use crate::montecarlo::{estimate_intermediacy, SamplerConfig, DEFAULT_SAMPLES};
use crate::scores::{IntermediacyScores, Method};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    /// Exact when the closure has at most `max_edges` edges.
    Auto,
    Exact,
    MonteCarlo,
}

impl std::str::FromStr for MethodChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(MethodChoice::Auto),
            "exact" => Ok(MethodChoice::Exact),
            "mc" | "monte_carlo" => Ok(MethodChoice::MonteCarlo),
            other => Err(Error::InvalidConfig(format!("unknown method {other:?}"))),
        }
    }
}

/// Settings shared by every estimate in a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimator {
    pub choice: MethodChoice,
    pub max_edges: usize,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

impl Default for Estimator {
    fn default() -> Self {
        Estimator {
            choice: MethodChoice::Auto,
            max_edges: DEFAULT_MAX_EDGES,
            samples: DEFAULT_SAMPLES,
            seed: 0,
            workers: 1,
        }
    }
}

impl Estimator {
    pub fn method_for(&self, ctx: &StContext) -> Method {
        match self.choice {
            MethodChoice::Exact => Method::Exact,
            MethodChoice::MonteCarlo => Method::MonteCarlo,
            MethodChoice::Auto if ctx.edge_count() <= self.max_edges => Method::Exact,
            MethodChoice::Auto => Method::MonteCarlo,
        }
    }

    /// Sampler for the `index`-th evaluation point of a run. Each point gets
    /// its own seed so points are independent and order-insensitive.
    pub fn sampler(&self, p: f64, index: u64) -> Result<SamplerConfig> {
        SamplerConfig::new(p, self.samples, derive_seed(self.seed, index))?.with_workers(self.workers)
    }

    fn query(&self, p: f64) -> Result<ReliabilityQuery> {
        ReliabilityQuery::new(p)?.with_max_edges(self.max_edges)
    }

    pub fn scores(&self, ctx: &StContext, p: f64, index: u64) -> Result<IntermediacyScores> {
        match self.method_for(ctx) {
            Method::Exact => exact_intermediacy(ctx, &self.query(p)?),
            Method::MonteCarlo => Ok(estimate_intermediacy(ctx, &self.sampler(p, index)?)),
        }
    }

    /// Probability of an active source-target path with its standard error
    /// (`None` when exact).
    pub fn st_probability(&self, ctx: &StContext, p: f64, index: u64) -> Result<(f64, Option<f64>, Method)> {
        match self.method_for(ctx) {
            Method::Exact => Ok((exact_st_probability(ctx, &self.query(p)?)?, None, Method::Exact)),
            Method::MonteCarlo => {
                let scores = estimate_intermediacy(ctx, &self.sampler(p, index)?);
                let s = ctx.source();
                Ok((scores.phi(s), scores.stderr(s), Method::MonteCarlo))
            }
        }
    }
}

/// SplitMix64 mix of a base seed and a point index.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn auto_switches_on_edge_count() {
        let est = Estimator {
            max_edges: 3,
            ..Estimator::default()
        };
        assert_eq!(est.method_for(&generate::chain(3)), Method::Exact);
        assert_eq!(est.method_for(&generate::chain(4)), Method::MonteCarlo);
    }

    #[test]
    fn forced_exact_on_large_graph_fails() {
        let est = Estimator {
            choice: MethodChoice::Exact,
            ..Estimator::default()
        };
        assert!(matches!(
            est.scores(&generate::chain(40), 0.5, 0),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
        assert_ne!(derive_seed(1, 0), derive_seed(2, 0));
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }
}
