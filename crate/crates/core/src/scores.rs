use serde::Serialize;

use crate::closure::StContext;
use crate::error::{Error, Result};
use crate::graph::NodeIx;

/// Edge activation probability, strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Probability(f64);

impl Probability {
    pub fn new(p: f64) -> Result<Probability> {
        if p > 0.0 && p < 1.0 {
            Ok(Probability(p))
        } else {
            Err(Error::InvalidProbability(p))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `1 - p`.
    pub fn complement(self) -> f64 {
        1.0 - self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    MonteCarlo,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::MonteCarlo => "monte_carlo",
        })
    }
}

/// Intermediacy of every closure node, indexed by closure node index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntermediacyScores {
    pub method: Method,
    pub p: f64,
    pub phi: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl IntermediacyScores {
    pub fn phi(&self, v: NodeIx) -> f64 {
        self.phi[v]
    }

    pub fn stderr(&self, v: NodeIx) -> Option<f64> {
        self.stderr.as_ref().map(|se| se[v])
    }

    /// Probability that some source-target path is active; this is the score
    /// of both the source and the target.
    pub fn st_probability(&self, ctx: &StContext) -> f64 {
        self.phi[ctx.source()]
    }

    /// Closure node indices ordered by decreasing score, ties by node id.
    pub fn ranking(&self, ctx: &StContext) -> Vec<NodeIx> {
        let mut order: Vec<NodeIx> = (0..self.phi.len()).collect();
        order.sort_by(|&a, &b| {
            self.phi[b]
                .total_cmp(&self.phi[a])
                .then_with(|| ctx.id(a).cmp(ctx.id(b)))
        });
        order
    }
}
