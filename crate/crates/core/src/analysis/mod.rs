//! Empirical analysis: parameter suggestion, sweeps over `p`, score
//! distributions, correlations and ranked tables.

mod correlation;
mod distribution;
mod ranking;
mod suggest;
mod sweep;

pub use correlation::{average_ranks, correlation_matrix, pearson, spearman, CorrelationKind};
pub use distribution::score_cdf;
pub use ranking::{ranking_table, RankingRow, RankingTable, RowRole};
pub use suggest::{equivalence_threshold, suggest_p, suggest_p_from_counts};
pub use sweep::{default_grid, log_grid, p_sweep, SweepPoint, SweepResult, TABLE_GRID};

/// Reference `p` for ranked tables.
pub const DEFAULT_REFERENCE_P: f64 = 0.1;
