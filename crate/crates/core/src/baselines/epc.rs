use crate::closure::StContext;
use crate::error::Result;
use crate::scores::Probability;

/// Path weight sums `W(s, v) = sum over s -> v paths of p^len` and
/// `W(v, t)`, by dynamic programming over the topological order.
pub fn path_weights(ctx: &StContext, p: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let p = Probability::new(p)?.get();
    let dag = ctx.dag();
    let n = ctx.node_count();
    let mut from_s = vec![0.0; n];
    from_s[ctx.source()] = 1.0;
    for &v in dag.topo_order() {
        let incoming: f64 = dag.predecessors(v).map(|w| from_s[w]).sum();
        if v != ctx.source() {
            from_s[v] = p * incoming;
        }
    }
    let mut to_t = vec![0.0; n];
    to_t[ctx.target()] = 1.0;
    for &v in dag.topo_order().iter().rev() {
        let outgoing: f64 = dag.successors(v).map(|w| to_t[w]).sum();
        if v != ctx.target() {
            to_t[v] = p * outgoing;
        }
    }
    Ok((from_s, to_t))
}

/// Expected number of active source-target paths through each node.
///
/// By linearity of expectation this is `W(s, v) * W(v, t)`. Values beyond
/// double range come out as infinity.
pub fn expected_path_count(ctx: &StContext, p: f64) -> Result<Vec<f64>> {
    let (from_s, to_t) = path_weights(ctx, p)?;
    let epc: Vec<f64> = from_s.iter().zip(&to_t).map(|(a, b)| a * b).collect();
    if epc.iter().any(|x| x.is_infinite()) {
        log::warn!("expected path counts overflow double precision at p = {p}; reporting inf");
    }
    Ok(epc)
}
