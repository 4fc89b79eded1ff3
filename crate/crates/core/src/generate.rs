//! Small graph families and random generators used by tests, benchmarks and
//! the `exact-check` command.

use rand::seq::index::sample;
use rand::Rng;

use crate::closure::{st_closure, StContext};
use crate::graph::Dag;

fn closure_of(edges: &[(String, String)]) -> StContext {
    let dag = Dag::from_edges(edges).expect("generator emits a DAG");
    st_closure(&dag, "s", "t").expect("generator connects s to t")
}

/// `s -> w1 -> ... -> t` with `len` edges.
pub fn chain(len: usize) -> StContext {
    assert!(len >= 1);
    let ids: Vec<String> = std::iter::once("s".to_owned())
        .chain((1..len).map(|i| format!("w{i}")))
        .chain(std::iter::once("t".to_owned()))
        .collect();
    let edges: Vec<_> = ids.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    closure_of(&edges)
}

/// `k` parallel length-2 routes `s -> m{i} -> t`.
pub fn parallel_two_paths(k: usize) -> StContext {
    let edges: Vec<_> = (0..k)
        .flat_map(|i| {
            let m = format!("m{i}");
            [("s".to_owned(), m.clone()), (m, "t".to_owned())]
        })
        .collect();
    closure_of(&edges)
}

/// A source reaching the target either through `u`, two routes `u -> x -> v`
/// and `u -> y -> v` and then `v`, or directly through a single node `w`.
pub fn route_comparison_graph() -> StContext {
    let edges = [
        ("s", "u"),
        ("u", "x"),
        ("x", "v"),
        ("u", "y"),
        ("y", "v"),
        ("v", "t"),
        ("s", "w"),
        ("w", "t"),
    ];
    let dag = Dag::from_edges(&edges).unwrap();
    st_closure(&dag, "s", "t").unwrap()
}

/// Generalized route comparison: `u_routes` parallel length-2 routes between
/// `u` and `v`, and `w_routes` parallel length-2 routes from `w` to `t`.
pub fn route_comparison_family(u_routes: usize, w_routes: usize) -> Dag {
    let mut edges = vec![
        ("s".to_owned(), "u".to_owned()),
        ("v".to_owned(), "t".to_owned()),
        ("s".to_owned(), "w".to_owned()),
    ];
    for i in 0..u_routes {
        let x = format!("x{i}");
        edges.push(("u".into(), x.clone()));
        edges.push((x, "v".into()));
    }
    for j in 0..w_routes {
        let y = format!("y{j}");
        edges.push(("w".into(), y.clone()));
        edges.push((y, "t".into()));
    }
    Dag::from_edges(&edges).unwrap()
}

/// Random DAG on nodes `0..n` where each forward pair `i < j` is an edge with
/// probability `edge_prob`.
pub fn random_dag<R: Rng + ?Sized>(n: usize, edge_prob: f64, rng: &mut R) -> Dag {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(edge_prob) {
                edges.push((i.to_string(), j.to_string()));
            }
        }
    }
    let records = (0..n).map(|i| crate::graph::NodeRecord::new(i.to_string())).collect();
    Dag::build(records, edges).unwrap()
}

/// Draws random DAGs until the closure between the first and last node has
/// between `min_edges` and `max_edges` edges and at least three nodes.
pub fn random_closure<R: Rng + ?Sized>(min_edges: usize, max_edges: usize, rng: &mut R) -> StContext {
    loop {
        let n = rng.random_range(4..=9);
        let prob = rng.random_range(0.25..0.6);
        let dag = random_dag(n, prob, rng);
        let Ok(ctx) = st_closure(&dag, "0", &(n - 1).to_string()) else {
            continue;
        };
        let m = ctx.edge_count();
        if ctx.node_count() >= 3 && (min_edges..=max_edges).contains(&m) {
            return ctx;
        }
    }
}

/// Layered DAG from `s` through `layers` layers of `width` nodes to `t`.
/// Every node links to `fanout` distinct nodes of the next layer, and every
/// node has at least one link from the previous layer, so all nodes lie on
/// an `s -> t` path.
pub fn layered_dag<R: Rng + ?Sized>(layers: usize, width: usize, fanout: usize, rng: &mut R) -> Dag {
    assert!(layers >= 1 && width >= fanout && fanout >= 1);
    let name = |layer: usize, i: usize| format!("L{layer}_{i}");
    let mut edges = Vec::with_capacity(2 * width + (layers - 1) * width * fanout);
    for i in 0..width {
        edges.push(("s".to_owned(), name(0, i)));
        edges.push((name(layers - 1, i), "t".to_owned()));
    }
    for layer in 0..layers - 1 {
        let mut covered = vec![false; width];
        let mut targets_per_node = Vec::with_capacity(width);
        for _ in 0..width {
            let heads: Vec<usize> = sample(rng, width, fanout).into_iter().collect();
            for &h in &heads {
                covered[h] = true;
            }
            targets_per_node.push(heads);
        }
        // patch uncovered heads onto random tails that do not already link to them
        for h in (0..width).filter(|&h| !covered[h]) {
            loop {
                let tail = rng.random_range(0..width);
                if !targets_per_node[tail].contains(&h) {
                    targets_per_node[tail].push(h);
                    break;
                }
            }
        }
        for (i, heads) in targets_per_node.into_iter().enumerate() {
            for h in heads {
                edges.push((name(layer, i), name(layer + 1, h)));
            }
        }
    }
    Dag::from_edges(&edges).unwrap()
}
