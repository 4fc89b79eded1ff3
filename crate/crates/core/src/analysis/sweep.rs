use rayon::prelude::*;
use serde::Serialize;

use crate::closure::StContext;
use crate::error::{Error, Result};
use crate::estimate::Estimator;
use crate::scores::Method;

/// The `p` values reported side by side in ranked tables and correlations.
pub const TABLE_GRID: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub p: f64,
    pub st_probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    pub fn grid(&self) -> Vec<f64> {
        self.points.iter().map(|pt| pt.p).collect()
    }
}

/// `count` logarithmically spaced values from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..count)
                .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
                .collect()
        }
    }
}

/// 50 log-spaced points on `[0.01, 0.99]`.
pub fn default_grid() -> Vec<f64> {
    let mut grid = log_grid(0.01, 0.99, 50);
    // pin the ends against exp/ln round-off
    grid[0] = 0.01;
    grid[49] = 0.99;
    grid
}

/// Probability of an active source-target path at each grid value. Point `i`
/// uses the estimator's seed derived for index `i`.
pub fn p_sweep(ctx: &StContext, grid: &[f64], estimator: &Estimator) -> Result<SweepResult> {
    if let Some(&bad) = grid.iter().find(|&&p| !(p > 0.0 && p < 1.0)) {
        return Err(Error::InvalidProbability(bad));
    }
    let points = grid
        .par_iter()
        .enumerate()
        .map(|(i, &p)| {
            let (st_probability, stderr, method) = estimator.st_probability(ctx, p, i as u64)?;
            Ok(SweepPoint {
                p,
                st_probability,
                stderr,
                method,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { points })
}
