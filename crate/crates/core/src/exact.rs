//! Exact reachability probabilities by contraction and deletion of edges.
//!
//! Conditioning on an edge being active contracts it, conditioning on it being
//! inactive deletes it:
//!
//! ```text
//! Pr(u ~> v | G) = p * Pr(u ~> v | G / e) + (1 - p) * Pr(u ~> v | G - e)
//! ```
//!
//! The recursion always branches on an edge leaving the component already
//! contracted into the start node. That component is tracked as a node set,
//! so a contraction just adds the edge's head to it. Edges entering the
//! component become self-loops and are ignored. Parallel edges that arise
//! from contraction stay distinct: each is an independent Bernoulli trial.
//!
//! Graphs are packed into bitmasks, so exact evaluation supports at most 64
//! edges; the practical limit is much lower (`DEFAULT_MAX_EDGES`).

use crate::closure::StContext;
use crate::error::{Error, Result};
use crate::graph::{Dag, NodeIx};
use crate::scores::{IntermediacyScores, Method, Probability};

/// Keeps a worst-case evaluation around a few times 10^7 recursion leaves.
pub const DEFAULT_MAX_EDGES: usize = 25;
const HARD_EDGE_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReliabilityQuery {
    p: Probability,
    max_edges: usize,
}

impl ReliabilityQuery {
    pub fn new(p: f64) -> Result<ReliabilityQuery> {
        Ok(ReliabilityQuery {
            p: Probability::new(p)?,
            max_edges: DEFAULT_MAX_EDGES,
        })
    }

    pub fn with_max_edges(mut self, max_edges: usize) -> Result<ReliabilityQuery> {
        if max_edges > HARD_EDGE_LIMIT {
            return Err(Error::InvalidConfig(format!(
                "max_edges {max_edges} exceeds the exact solver's hard limit of {HARD_EDGE_LIMIT}"
            )));
        }
        self.max_edges = max_edges;
        Ok(self)
    }

    pub fn p(&self) -> f64 {
        self.p.get()
    }

    pub fn max_edges(&self) -> usize {
        self.max_edges
    }

    fn check(&self, edges: usize) -> Result<()> {
        if edges > self.max_edges {
            Err(Error::TooLarge {
                edges,
                max_edges: self.max_edges,
            })
        } else {
            Ok(())
        }
    }
}

/// Exact probability that at least one `u -> v` path is fully active.
///
/// Only the subgraph of nodes on `u -> v` paths matters; its edge count is
/// what `max_edges` bounds.
pub fn reach_probability(
    ctx: &StContext,
    u: NodeIx,
    v: NodeIx,
    query: &ReliabilityQuery,
) -> Result<f64> {
    if u == v {
        return Ok(1.0);
    }
    let dag = ctx.dag();
    let from_u = dag.descendants(u);
    if !from_u[v] {
        return Ok(0.0);
    }
    let to_v = dag.ancestors(v);
    let keep: Vec<bool> = from_u.iter().zip(&to_v).map(|(a, b)| *a && *b).collect();
    let sub = Packed::induced(dag, &keep, false);
    query.check(sub.edge_count())?;
    let solver = Solver::new(&sub, query.p);
    Ok(solver.connect(sub.local(u), sub.local(v)))
}

/// Exact intermediacy of every node: `phi_v = Pr(s ~> v) * Pr(v ~> t)`.
///
/// The two factors are independent because in a DAG no edge lies both on a
/// path into `v` and on a path out of `v`.
pub fn exact_intermediacy(ctx: &StContext, query: &ReliabilityQuery) -> Result<IntermediacyScores> {
    let both = ReachTables::compute(ctx, query)?;
    let phi = (0..ctx.node_count())
        .map(|v| both.forward.reached[v] * both.backward.reached[v])
        .collect();
    Ok(IntermediacyScores {
        method: Method::Exact,
        p: query.p(),
        phi,
        stderr: None,
        samples: None,
        seed: None,
    })
}

/// `1 - phi_v` for every node, computed from the probability mass of the
/// failure events directly so that it keeps full relative precision as `p`
/// approaches 1.
pub fn exact_inactivity(ctx: &StContext, query: &ReliabilityQuery) -> Result<Vec<f64>> {
    let both = ReachTables::compute(ctx, query)?;
    Ok((0..ctx.node_count())
        .map(|v| {
            let a = both.forward.missed[v];
            let b = both.backward.missed[v];
            a + b - a * b
        })
        .collect())
}

/// Exact probability of an active source-target path.
pub fn exact_st_probability(ctx: &StContext, query: &ReliabilityQuery) -> Result<f64> {
    query.check(ctx.edge_count())?;
    reach_probability(ctx, ctx.source(), ctx.target(), query)
}

struct ReachTables {
    forward: Reach,
    backward: Reach,
}

impl ReachTables {
    fn compute(ctx: &StContext, query: &ReliabilityQuery) -> Result<ReachTables> {
        query.check(ctx.edge_count())?;
        let all = vec![true; ctx.node_count()];
        let fwd_graph = Packed::induced(ctx.dag(), &all, false);
        let bwd_graph = Packed::induced(ctx.dag(), &all, true);
        let mut forward = Solver::new(&fwd_graph, query.p).reach_all(ctx.source());
        let mut backward = Solver::new(&bwd_graph, query.p).reach_all(ctx.target());
        // Both recursions compute Pr(s ~> t); use a single value so the source
        // and target scores agree exactly.
        let (s, t) = (ctx.source(), ctx.target());
        backward.reached[s] = forward.reached[t];
        backward.missed[s] = forward.missed[t];
        forward.reached[s] = 1.0;
        forward.missed[s] = 0.0;
        Ok(ReachTables { forward, backward })
    }
}

/// Per-node probability of being reached from a root, plus its complement
/// accumulated independently.
struct Reach {
    reached: Vec<f64>,
    missed: Vec<f64>,
}

/// A graph packed into bitmasks: node `v` owns bit `v` of a `u128`, edge `e`
/// owns bit `e` of a `u64`.
struct Packed {
    /// local index -> dense index in the source graph
    global: Vec<NodeIx>,
    to_local: Vec<usize>,
    tails: Vec<u8>,
    heads: Vec<u8>,
    out_mask: Vec<u64>,
    in_mask: Vec<u64>,
}

impl Packed {
    fn induced(dag: &Dag, keep: &[bool], reversed: bool) -> Packed {
        let mut to_local = vec![usize::MAX; dag.node_count()];
        let mut global = Vec::new();
        for v in 0..dag.node_count() {
            if keep[v] {
                to_local[v] = global.len();
                global.push(v);
            }
        }
        let n = global.len();
        let mut tails = Vec::new();
        let mut heads = Vec::new();
        let mut out_mask = vec![0u64; n];
        let mut in_mask = vec![0u64; n];
        for &(a, b) in dag.edges() {
            if !(keep[a] && keep[b]) {
                continue;
            }
            let (a, b) = if reversed { (b, a) } else { (a, b) };
            let e = heads.len();
            if e < HARD_EDGE_LIMIT {
                out_mask[to_local[a]] |= 1 << e;
                in_mask[to_local[b]] |= 1 << e;
            }
            tails.push(to_local[a] as u8);
            heads.push(to_local[b] as u8);
        }
        Packed {
            global,
            to_local,
            tails,
            heads,
            out_mask,
            in_mask,
        }
    }

    fn edge_count(&self) -> usize {
        self.heads.len()
    }

    fn node_count(&self) -> usize {
        self.global.len()
    }

    fn local(&self, v: NodeIx) -> usize {
        self.to_local[v]
    }

    /// Edges whose tail is in `nodes`.
    fn leaving(&self, nodes: u128) -> u64 {
        bits128(nodes).fold(0, |acc, v| acc | self.out_mask[v])
    }

    fn entering(&self, nodes: u128) -> u64 {
        bits128(nodes).fold(0, |acc, v| acc | self.in_mask[v])
    }

    fn forward_reach(&self, from: u128, usable: u64) -> u128 {
        let mut seen = from;
        let mut frontier = from;
        while frontier != 0 {
            let mut next = 0u128;
            for e in bits64(self.leaving(frontier) & usable) {
                next |= 1u128 << self.heads[e];
            }
            frontier = next & !seen;
            seen |= frontier;
        }
        seen
    }

    fn backward_reach(&self, to: usize, usable: u64) -> u128 {
        let mut seen = 1u128 << to;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u128;
            for e in bits64(self.entering(frontier) & usable) {
                next |= 1u128 << self.tails[e];
            }
            frontier = next & !seen;
            seen |= frontier;
        }
        seen
    }
}

struct Solver<'a> {
    g: &'a Packed,
    p: f64,
    q: f64,
}

impl<'a> Solver<'a> {
    fn new(g: &'a Packed, p: Probability) -> Solver<'a> {
        Solver {
            g,
            p: p.get(),
            q: p.complement(),
        }
    }

    fn full_edges(&self) -> u64 {
        match self.g.edge_count() {
            64 => u64::MAX,
            m => (1u64 << m) - 1,
        }
    }

    fn connect(&self, from: usize, to: usize) -> f64 {
        if from == to {
            return 1.0;
        }
        let comp = 1u128 << from;
        self.connect_rec(comp, self.full_edges(), to)
    }

    fn connect_rec(&self, comp: u128, alive: u64, to: usize) -> f64 {
        let g = self.g;
        let usable = alive & !g.entering(comp);
        let reach = g.forward_reach(comp, usable);
        if reach & (1u128 << to) == 0 {
            return 0.0;
        }
        let useful = reach & g.backward_reach(to, usable);
        let alive = usable & g.leaving(useful) & g.entering(useful);
        let candidates = alive & g.leaving(comp);
        let e = candidates.trailing_zeros() as usize;
        let head = g.heads[e];
        let rest = alive & !(1u64 << e);
        let contracted = if head as usize == to {
            1.0
        } else {
            self.connect_rec(comp | (1u128 << head), rest, to)
        };
        self.p * contracted + self.q * self.connect_rec(comp, rest, to)
    }

    fn reach_all(&self, root_global: NodeIx) -> Reach {
        let n = self.g.node_count();
        let root = self.g.local(root_global);
        let mut local = Reach {
            reached: vec![0.0; n],
            missed: vec![0.0; n],
        };
        local.reached[root] = 1.0;
        let comp = 1u128 << root;
        self.reach_all_rec(
            comp,
            self.g.out_mask[root],
            self.g.in_mask[root],
            self.full_edges(),
            1.0,
            &mut local,
        );
        let mut out = Reach {
            reached: vec![0.0; self.g.to_local.len()],
            missed: vec![1.0; self.g.to_local.len()],
        };
        for (l, &v) in self.g.global.iter().enumerate() {
            out.reached[v] = local.reached[l];
            out.missed[v] = local.missed[l];
        }
        out
    }

    /// `leaving` / `entering` cache the edge sets incident to `comp`. The
    /// probability mass of each branch in which a node joins the component
    /// is credited to that node when it joins; the mass of every leaf is
    /// credited to the nodes it misses.
    fn reach_all_rec(
        &self,
        comp: u128,
        leaving: u64,
        entering: u64,
        alive: u64,
        weight: f64,
        acc: &mut Reach,
    ) {
        let candidates = alive & leaving & !entering;
        if candidates == 0 {
            let n = self.g.node_count();
            let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
            for v in bits128(all & !comp) {
                acc.missed[v] += weight;
            }
            return;
        }
        let e = candidates.trailing_zeros() as usize;
        let head = self.g.heads[e] as usize;
        let rest = alive & !(1u64 << e);
        let w_in = weight * self.p;
        acc.reached[head] += w_in;
        self.reach_all_rec(
            comp | (1u128 << head),
            leaving | self.g.out_mask[head],
            entering | self.g.in_mask[head],
            rest,
            w_in,
            acc,
        );
        self.reach_all_rec(comp, leaving, entering, rest, weight * self.q, acc);
    }
}

fn bits64(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (x != 0).then(|| {
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            b
        })
    })
}

fn bits128(mut x: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (x != 0).then(|| {
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            b
        })
    })
}
