use crate::closure::StContext;

/// Percolation starting point `p = 1/k` with `k = 2m/n` the mean number of
/// links per node in the closure.
pub fn suggest_p(ctx: &StContext) -> f64 {
    suggest_p_from_counts(ctx.node_count(), ctx.edge_count())
}

pub fn suggest_p_from_counts(nodes: usize, edges: usize) -> f64 {
    nodes as f64 / (2.0 * edges as f64)
}

/// The `p` at which one direct edge is exactly as likely to be active as at
/// least one of `k` parallel length-2 paths, i.e. the root of
/// `p = 1 - (1 - p^2)^k` inside `(0, 1)`. There is none for `k < 2`.
pub fn equivalence_threshold(k: u32) -> Option<f64> {
    if k < 2 {
        return None;
    }
    // below the root the direct edge wins, above it the parallel paths do
    let gap = |p: f64| 1.0 - (1.0 - p * p).powi(k as i32) - p;
    let (mut lo, mut hi) = (1e-9, 1.0 - 1e-9);
    debug_assert!(gap(lo) < 0.0 && gap(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
