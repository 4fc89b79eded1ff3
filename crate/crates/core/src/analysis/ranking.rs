use serde::Serialize;

use crate::closure::StContext;
use crate::error::{Error, Result};
use crate::graph::NodeIx;
use crate::scores::IntermediacyScores;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowRole {
    Target,
    Source,
    Ranked(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankingRow {
    pub role: RowRole,
    #[serde(skip)]
    pub node: NodeIx,
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub year: Option<i32>,
    /// One score per entry of [`RankingTable::ps`].
    pub phi: Vec<f64>,
    pub citation_count: usize,
    pub reference_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankingTable {
    pub ps: Vec<f64>,
    pub reference_p: f64,
    pub rows: Vec<RankingRow>,
}

/// The `top_n` most intermediate nodes at `reference_p`, preceded by the
/// target and source rows. Ties are broken by node id.
pub fn ranking_table(
    ctx: &StContext,
    scores_by_p: &[IntermediacyScores],
    reference_p: f64,
    top_n: usize,
) -> Result<RankingTable> {
    let reference = scores_by_p
        .iter()
        .find(|s| s.p == reference_p)
        .ok_or_else(|| Error::InvalidInput(format!("no scores computed for reference p = {reference_p}")))?;
    let row = |v: NodeIx, role: RowRole| {
        let rec = ctx.dag().node(v);
        RankingRow {
            role,
            node: v,
            id: rec.id.clone(),
            label: rec.label.clone(),
            year: rec.year,
            phi: scores_by_p.iter().map(|s| s.phi(v)).collect(),
            citation_count: ctx.citation_count(v),
            reference_count: ctx.reference_count(v),
        }
    };
    let mut rows = vec![row(ctx.target(), RowRole::Target), row(ctx.source(), RowRole::Source)];
    rows.extend(
        reference
            .ranking(ctx)
            .into_iter()
            .filter(|&v| v != ctx.source() && v != ctx.target())
            .take(top_n)
            .enumerate()
            .map(|(i, v)| row(v, RowRole::Ranked(i + 1))),
    );
    Ok(RankingTable {
        ps: scores_by_p.iter().map(|s| s.p).collect(),
        reference_p,
        rows,
    })
}
