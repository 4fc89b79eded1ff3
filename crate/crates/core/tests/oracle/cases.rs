//! Generated before/after pairs for the path addition and contraction
//! properties. These use the library to build the graphs; expectations are
//! derived from plain reachability on the edge list.

use intermediacy::baselines::{add_path, contract_paths};
use intermediacy::generate::random_closure;
use intermediacy::{st_closure, Dag, StContext};
use rand::seq::IndexedRandom;
use rand::Rng;

use super::Graph;

pub struct SurgeryCase {
    pub before: StContext,
    pub after: StContext,
    /// Ids expected to become strictly more intermediate.
    pub raised: Vec<String>,
    /// Ids expected to keep their score.
    pub unchanged: Vec<String>,
}

/// Adds a fresh path between two closure nodes `u`, `v` with no `v -> u`
/// path. Raised nodes are the ancestors of `u` and descendants of `v`.
pub fn addition<R: Rng>(rng: &mut R) -> SurgeryCase {
    loop {
        let before = random_closure(3, 10, rng);
        let g = Graph::from_ctx(&before);
        let mut pairs = Vec::new();
        for u in 0..g.n {
            for v in 0..g.n {
                if u != v && !g.reachable(v)[u] {
                    pairs.push((u, v));
                }
            }
        }
        let Some(&(u, v)) = pairs.choose(rng) else { continue };
        let mut len = rng.random_range(1..=3);
        if len == 1 && g.edges.contains(&(u, v)) {
            len = 2;
        }
        let dag = add_path(before.dag(), before.id(u), before.id(v), len).expect("valid addition");
        let after = st_closure(&dag, before.source_id(), before.target_id()).expect("still connected");
        let up = g.reaching(u);
        let down = g.reachable(v);
        let (raised, unchanged) = split_ids(&before, |x| up[x] || down[x]);
        return SurgeryCase {
            before,
            after,
            raised,
            unchanged,
        };
    }
}

/// Replaces an inner node `x` of a random closure by a gadget
/// `x~in -> (random routes) -> x~out` and contracts the gadget back.
pub fn contraction<R: Rng>(rng: &mut R) -> SurgeryCase {
    let base = random_closure(3, 8, rng);
    let inner: Vec<usize> = (0..base.node_count())
        .filter(|&v| v != base.source() && v != base.target())
        .collect();
    let x = *inner.choose(rng).expect("closure has an inner node");
    let x_id = base.id(x).to_owned();
    let (x_in, x_out) = (format!("{x_id}~in"), format!("{x_id}~out"));

    let mut edges: Vec<(String, String)> = base
        .dag()
        .edge_ids()
        .map(|(a, b)| {
            let a = if a == x_id { x_out.clone() } else { a.to_owned() };
            let b = if b == x_id { x_in.clone() } else { b.to_owned() };
            (a, b)
        })
        .collect();
    let k = rng.random_range(1..=3);
    let g = |i: usize| format!("{x_id}~g{i}");
    for i in 0..k {
        edges.push((x_in.clone(), g(i)));
        edges.push((g(i), x_out.clone()));
        for j in i + 1..k {
            if rng.random_bool(0.4) {
                edges.push((g(i), g(j)));
            }
        }
    }
    if rng.random_bool(0.3) {
        edges.push((x_in.clone(), x_out.clone()));
    }

    let dag = Dag::from_edges(&edges).expect("gadget keeps the graph acyclic");
    let before = st_closure(&dag, base.source_id(), base.target_id()).expect("connected");
    let contracted = contract_paths(before.dag(), &x_in, &x_out).expect("gadget satisfies the precondition");
    let after = st_closure(&contracted.dag, base.source_id(), base.target_id()).expect("connected");

    let g = Graph::from_ctx(&before);
    let (i, o) = (before.require(&x_in).unwrap(), before.require(&x_out).unwrap());
    let (up, from_in) = (g.reaching(i), g.reachable(i));
    let (down, to_out) = (g.reachable(o), g.reaching(o));
    let inside = |v: usize| from_in[v] && to_out[v];
    let (raised, unchanged) = split_ids(&before, |v| (up[v] || down[v]) && !inside(v));
    let unchanged = unchanged
        .into_iter()
        .filter(|id| !inside(before.require(id).unwrap()))
        .collect();
    SurgeryCase {
        before,
        after,
        raised,
        unchanged,
    }
}

fn split_ids(ctx: &StContext, raised: impl Fn(usize) -> bool) -> (Vec<String>, Vec<String>) {
    (0..ctx.node_count())
        .map(|v| (raised(v), ctx.id(v).to_owned()))
        .fold((Vec::new(), Vec::new()), |(mut r, mut u), (is_raised, id)| {
            if is_raised {
                r.push(id);
            } else {
                u.push(id);
            }
            (r, u)
        })
}
