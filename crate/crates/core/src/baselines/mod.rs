//! Alternatives to intermediacy (main path analysis, expected path count and
//! resistance) and the graph surgery operations used to compare them.

mod epc;
mod mainpath;
mod resistance;
mod surgery;

pub use epc::{expected_path_count, path_weights};
pub use mainpath::{global_main_path, local_main_path, MainPathResult, MainPathVariant};
pub use resistance::{effective_resistance, resistance_all, resistance_through};
pub use surgery::{add_path, contract_paths, Contracted};

use crate::closure::StContext;
use crate::error::Result;
use crate::paths::path_stats;

/// Per-node baseline values, indexed by closure node index.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineScores {
    pub epc: Vec<f64>,
    pub resistance: Vec<f64>,
    pub shortest_through: Vec<usize>,
    pub edge_independent: Vec<usize>,
}

pub fn baseline_scores(ctx: &StContext, p: f64) -> Result<BaselineScores> {
    let stats = path_stats(ctx);
    Ok(BaselineScores {
        epc: expected_path_count(ctx, p)?,
        resistance: resistance_all(ctx),
        shortest_through: stats.shortest_through,
        edge_independent: stats.edge_independent,
    })
}
