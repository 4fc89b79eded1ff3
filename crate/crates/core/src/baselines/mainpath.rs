use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::closure::StContext;
use crate::graph::{EdgeIx, NodeIx};
use crate::paths::search_path_counts;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MainPathVariant {
    /// Greedy walk from the source along the heaviest outgoing edge.
    Local,
    /// The source-target path with the largest total search path count.
    Global,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainPathResult {
    pub edges: Vec<EdgeIx>,
    pub spc_total: BigUint,
    pub variant: MainPathVariant,
}

impl MainPathResult {
    pub fn nodes(&self, ctx: &StContext) -> Vec<NodeIx> {
        let dag = ctx.dag();
        std::iter::once(ctx.source())
            .chain(self.edges.iter().map(|&e| dag.edge(e).1))
            .collect()
    }
}

/// Picks the heaviest edge, ties going to the smallest head id.
fn heaviest<'a, I>(ctx: &StContext, candidates: I) -> EdgeIx
where
    I: Iterator<Item = (EdgeIx, &'a BigUint)>,
{
    let dag = ctx.dag();
    candidates
        .max_by(|(ea, wa), (eb, wb)| {
            wa.cmp(wb)
                .then_with(|| ctx.id(dag.edge(*eb).1).cmp(ctx.id(dag.edge(*ea).1)))
        })
        .map(|(e, _)| e)
        .expect("every closure node except the target has an outgoing edge")
}

pub fn local_main_path(ctx: &StContext) -> MainPathResult {
    let spc = search_path_counts(ctx);
    let dag = ctx.dag();
    let mut edges = Vec::new();
    let mut total = BigUint::zero();
    let mut v = ctx.source();
    while v != ctx.target() {
        let e = heaviest(ctx, dag.out_edges(v).iter().map(|&e| (e, &spc[e])));
        total += &spc[e];
        edges.push(e);
        v = dag.edge(e).1;
    }
    MainPathResult {
        edges,
        spc_total: total,
        variant: MainPathVariant::Local,
    }
}

pub fn global_main_path(ctx: &StContext) -> MainPathResult {
    let spc = search_path_counts(ctx);
    let dag = ctx.dag();
    let n = ctx.node_count();
    // best[v]: heaviest v -> t continuation and its first edge
    let mut best = vec![BigUint::zero(); n];
    let mut choice: Vec<Option<EdgeIx>> = vec![None; n];
    let mut weight = vec![BigUint::zero(); dag.edge_count()];
    for &v in dag.topo_order().iter().rev() {
        if v == ctx.target() || dag.out_degree(v) == 0 {
            continue;
        }
        for &e in dag.out_edges(v) {
            weight[e] = &spc[e] + &best[dag.edge(e).1];
        }
        let e = heaviest(ctx, dag.out_edges(v).iter().map(|&e| (e, &weight[e])));
        best[v] = weight[e].clone();
        choice[v] = Some(e);
    }
    let mut edges = Vec::new();
    let mut v = ctx.source();
    while v != ctx.target() {
        let e = choice[v].expect("path continues to the target");
        edges.push(e);
        v = dag.edge(e).1;
    }
    MainPathResult {
        edges,
        spc_total: best[ctx.source()].clone(),
        variant: MainPathVariant::Global,
    }
}
