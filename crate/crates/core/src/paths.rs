//! Deterministic path quantities on a source-target closure: path counts,
//! shortest source-target lengths through each node, edge-independent path
//! counts and search path counts.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::closure::StContext;
use crate::graph::{Dag, EdgeIx, NodeIx};

#[derive(Debug, Clone, PartialEq)]
pub struct PathStats {
    /// Number of paths from the source to each node.
    pub n_from_source: Vec<BigUint>,
    /// Number of paths from each node to the target.
    pub n_to_target: Vec<BigUint>,
    /// Length in edges of the shortest source-target path through each node.
    pub shortest_through: Vec<usize>,
    /// Maximum number of edge-disjoint source-target paths through each node.
    pub edge_independent: Vec<usize>,
    /// Search path count of each edge, indexed by edge.
    pub spc: Vec<BigUint>,
}

impl PathStats {
    /// Total number of source-target paths.
    pub fn total_paths(&self, ctx: &StContext) -> &BigUint {
        &self.n_from_source[ctx.target()]
    }

    /// Number of source-target paths through `v`.
    pub fn paths_through(&self, v: NodeIx) -> BigUint {
        &self.n_from_source[v] * &self.n_to_target[v]
    }
}

pub fn path_stats(ctx: &StContext) -> PathStats {
    let (n_from_source, n_to_target) = path_counts(ctx);
    let spc = spc_from_counts(ctx.dag(), &n_from_source, &n_to_target);
    let from_s = unit_distances(ctx.dag(), ctx.source(), Direction::Forward);
    let to_t = unit_distances(ctx.dag(), ctx.target(), Direction::Backward);
    let shortest_through = from_s.iter().zip(&to_t).map(|(a, b)| a + b).collect();
    let edge_independent = (0..ctx.node_count())
        .into_par_iter()
        .map(|v| edge_independent_through(ctx, v))
        .collect();
    PathStats {
        n_from_source,
        n_to_target,
        shortest_through,
        edge_independent,
        spc,
    }
}

/// Path counts from the source to every node and from every node to the
/// target, by dynamic programming over the topological order.
pub fn path_counts(ctx: &StContext) -> (Vec<BigUint>, Vec<BigUint>) {
    let dag = ctx.dag();
    let n = dag.node_count();
    let mut from_s = vec![BigUint::zero(); n];
    from_s[ctx.source()] = BigUint::one();
    for &v in dag.topo_order() {
        for w in dag.predecessors(v) {
            let add = from_s[w].clone();
            from_s[v] += add;
        }
    }
    let mut to_t = vec![BigUint::zero(); n];
    to_t[ctx.target()] = BigUint::one();
    for &v in dag.topo_order().iter().rev() {
        for w in dag.successors(v) {
            let add = to_t[w].clone();
            to_t[v] += add;
        }
    }
    (from_s, to_t)
}

/// Search path count of every edge: the number of source-target paths that
/// traverse it.
pub fn search_path_counts(ctx: &StContext) -> Vec<BigUint> {
    let (from_s, to_t) = path_counts(ctx);
    spc_from_counts(ctx.dag(), &from_s, &to_t)
}

fn spc_from_counts(dag: &Dag, from_s: &[BigUint], to_t: &[BigUint]) -> Vec<BigUint> {
    dag.edges().iter().map(|&(a, b)| &from_s[a] * &to_t[b]).collect()
}

#[derive(Clone, Copy)]
enum Direction {
    Forward,
    Backward,
}

fn unit_distances(dag: &Dag, root: NodeIx, dir: Direction) -> Vec<usize> {
    let mut dist = vec![usize::MAX; dag.node_count()];
    dist[root] = 0;
    let order: Box<dyn Iterator<Item = &NodeIx>> = match dir {
        Direction::Forward => Box::new(dag.topo_order().iter()),
        Direction::Backward => Box::new(dag.topo_order().iter().rev()),
    };
    for &v in order {
        if dist[v] == usize::MAX {
            continue;
        }
        let next: Vec<NodeIx> = match dir {
            Direction::Forward => dag.successors(v).collect(),
            Direction::Backward => dag.predecessors(v).collect(),
        };
        for w in next {
            dist[w] = dist[w].min(dist[v] + 1);
        }
    }
    dist
}

/// Maximum number of pairwise edge-disjoint source-target paths through `v`.
///
/// In a DAG no edge lies both on a path into `v` and on a path out of `v`, so
/// the two unit-capacity flow problems `s -> v` and `v -> t` never compete for
/// an edge and their minimum is exact.
pub fn edge_independent_through(ctx: &StContext, v: NodeIx) -> usize {
    let dag = ctx.dag();
    let (s, t) = (ctx.source(), ctx.target());
    if v == s || v == t {
        let all = vec![true; dag.node_count()];
        return unit_max_flow(dag, s, t, &all, dag.out_degree(s).min(dag.in_degree(t)));
    }
    let into = unit_max_flow(dag, s, v, &dag.ancestors(v), dag.in_degree(v));
    if into == 0 {
        return 0;
    }
    let out = unit_max_flow(dag, v, t, &dag.descendants(v), dag.out_degree(v).min(into));
    into.min(out)
}

/// Augmenting-path max flow with unit capacities, confined to `allowed` nodes
/// and stopping early once `bound` is reached.
fn unit_max_flow(dag: &Dag, src: NodeIx, dst: NodeIx, allowed: &[bool], bound: usize) -> usize {
    let mut used = vec![false; dag.edge_count()];
    let mut parent: Vec<Option<EdgeIx>> = vec![None; dag.node_count()];
    let mut flow = 0;
    while flow < bound {
        parent.iter_mut().for_each(|p| *p = None);
        let mut visited = vec![false; dag.node_count()];
        visited[src] = true;
        let mut queue = std::collections::VecDeque::from([src]);
        'bfs: while let Some(x) = queue.pop_front() {
            for &e in dag.out_edges(x) {
                let y = dag.edge(e).1;
                if !used[e] && allowed[y] && !visited[y] {
                    visited[y] = true;
                    parent[y] = Some(e);
                    if y == dst {
                        break 'bfs;
                    }
                    queue.push_back(y);
                }
            }
            for &e in dag.in_edges(x) {
                let y = dag.edge(e).0;
                if used[e] && allowed[y] && !visited[y] {
                    visited[y] = true;
                    parent[y] = Some(e);
                    queue.push_back(y);
                }
            }
        }
        if !visited[dst] {
            break;
        }
        let mut x = dst;
        while x != src {
            let e = parent[x].expect("augmenting path");
            let (a, b) = dag.edge(e);
            // forward step sets flow, a backward step cancels it
            if b == x && !used[e] {
                used[e] = true;
                x = a;
            } else {
                used[e] = false;
                x = b;
            }
        }
        flow += 1;
    }
    flow
}
