//! Brute-force reference computations for small graphs.
//!
//! Nothing here calls into the library's algorithms: graphs are taken as
//! plain edge lists and every quantity is recomputed from first principles
//! (subset enumeration, path enumeration, exhaustive search).
#![allow(dead_code)]

use intermediacy::StContext;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A plain edge list with designated endpoints.
#[derive(Debug, Clone)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub s: usize,
    pub t: usize,
}

impl Graph {
    pub fn from_ctx(ctx: &StContext) -> Graph {
        Graph {
            n: ctx.node_count(),
            edges: ctx.dag().edges().to_vec(),
            s: ctx.source(),
            t: ctx.target(),
        }
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Nodes reachable from `from` over edges flagged in `on` (inclusive).
    pub fn forward(&self, from: usize, on: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[from] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for (e, &(a, b)) in self.edges.iter().enumerate() {
                if on[e] && seen[a] && !seen[b] {
                    seen[b] = true;
                    changed = true;
                }
            }
        }
        seen
    }

    /// Nodes reaching `to` over edges flagged in `on` (inclusive).
    pub fn backward(&self, to: usize, on: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[to] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for (e, &(a, b)) in self.edges.iter().enumerate() {
                if on[e] && seen[b] && !seen[a] {
                    seen[a] = true;
                    changed = true;
                }
            }
        }
        seen
    }

    /// Nodes on an all-active source-target path under activation `on`.
    pub fn active_nodes(&self, on: &[bool]) -> Vec<bool> {
        let f = self.forward(self.s, on);
        let b = self.backward(self.t, on);
        f.iter().zip(&b).map(|(x, y)| *x && *y).collect()
    }

    /// Every source-target path as a bitmask over edges.
    pub fn st_paths(&self) -> Vec<u64> {
        let mut out = Vec::new();
        self.paths_from(self.s, 0, &mut out);
        out
    }

    fn paths_from(&self, v: usize, used: u64, out: &mut Vec<u64>) {
        if v == self.t {
            out.push(used);
            return;
        }
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a == v {
                self.paths_from(b, used | (1 << e), out);
            }
        }
    }

    /// Nodes on the path given as an edge mask.
    pub fn path_nodes(&self, path: u64) -> Vec<usize> {
        let mut nodes = vec![self.s];
        for (e, &(_, b)) in self.edges.iter().enumerate() {
            if path & (1 << e) != 0 {
                nodes.push(b);
            }
        }
        nodes
    }

    pub fn path_through(&self, path: u64, v: usize) -> bool {
        self.path_nodes(path).contains(&v)
    }

    /// All nodes reachable from `from` in the full graph.
    pub fn reachable(&self, from: usize) -> Vec<bool> {
        self.forward(from, &vec![true; self.m()])
    }

    pub fn reaching(&self, to: usize) -> Vec<bool> {
        self.backward(to, &vec![true; self.m()])
    }
}

/// Neumaier-compensated sum.
pub fn compensated_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for x in terms {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Activation outcomes over all `2^m` edge subsets, grouped by the number of
/// active edges.
pub struct Enumeration {
    m: usize,
    /// `active[k][v]`: subsets with `k` active edges in which `v` is active
    active: Vec<Vec<u64>>,
}

impl Enumeration {
    pub fn new(g: &Graph) -> Enumeration {
        let m = g.m();
        assert!(m <= 20, "enumeration oracle limited to 20 edges");
        let mut active = vec![vec![0u64; g.n]; m + 1];
        let mut on = vec![false; m];
        for mask in 0u64..(1 << m) {
            for (e, slot) in on.iter_mut().enumerate() {
                *slot = mask & (1 << e) != 0;
            }
            let k = mask.count_ones() as usize;
            for (v, &a) in g.active_nodes(&on).iter().enumerate() {
                if a {
                    active[k][v] += 1;
                }
            }
        }
        Enumeration { m, active }
    }

    /// Probability that each node lies on an active source-target path.
    pub fn phi(&self, p: f64) -> Vec<f64> {
        let n = self.active[0].len();
        (0..n)
            .map(|v| {
                compensated_sum((0..=self.m).map(|k| {
                    self.active[k][v] as f64 * p.powi(k as i32) * (1.0 - p).powi((self.m - k) as i32)
                }))
            })
            .collect()
    }
}

/// Maximum number of pairwise edge-disjoint source-target paths through `v`,
/// by exhaustive search over path subsets. The search stops early once it
/// reaches the trivial degree bound.
pub fn max_disjoint_paths_through(g: &Graph, v: usize) -> usize {
    let paths: Vec<u64> = g.st_paths().into_iter().filter(|&p| g.path_through(p, v)).collect();
    let out_deg = |x: usize| g.edges.iter().filter(|e| e.0 == x).count();
    let in_deg = |x: usize| g.edges.iter().filter(|e| e.1 == x).count();
    let mut cap = out_deg(g.s).min(in_deg(g.t));
    if v != g.s {
        cap = cap.min(in_deg(v));
    }
    if v != g.t {
        cap = cap.min(out_deg(v));
    }

    fn search(paths: &[u64], used: u64, taken: usize, cap: usize, best: &mut usize) {
        *best = (*best).max(taken);
        if *best == cap || taken + paths.len() <= *best {
            return;
        }
        let (&first, rest) = paths.split_first().expect("nonempty when the bound allows progress");
        if first & used == 0 {
            search(rest, used | first, taken + 1, cap, best);
        }
        search(rest, used, taken, cap, best);
    }
    let mut best = 0;
    search(&paths, 0, 0, cap, &mut best);
    best
}

/// Number of source-target paths traversing each edge.
pub fn search_path_counts(g: &Graph) -> Vec<u64> {
    let mut spc = vec![0u64; g.m()];
    for path in g.st_paths() {
        for (e, c) in spc.iter_mut().enumerate() {
            if path & (1 << e) != 0 {
                *c += 1;
            }
        }
    }
    spc
}

/// Mean and standard error, per node, of the number of all-active
/// source-target paths through it, from `samples` full activation draws.
pub fn sampled_active_path_counts(g: &Graph, p: f64, samples: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let paths = g.st_paths();
    let through: Vec<Vec<usize>> = paths.iter().map(|&pm| g.path_nodes(pm)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = vec![0.0f64; g.n];
    let mut sum_sq = vec![0.0f64; g.n];
    let mut count = vec![0.0f64; g.n];
    for _ in 0..samples {
        let mut mask = 0u64;
        for e in 0..g.m() {
            if rng.random_bool(p) {
                mask |= 1 << e;
            }
        }
        count.iter_mut().for_each(|c| *c = 0.0);
        for (pm, nodes) in paths.iter().zip(&through) {
            if pm & mask == *pm {
                for &v in nodes {
                    count[v] += 1.0;
                }
            }
        }
        for v in 0..g.n {
            sum[v] += count[v];
            sum_sq[v] += count[v] * count[v];
        }
    }
    let n = samples as f64;
    let mean: Vec<f64> = sum.iter().map(|s| s / n).collect();
    let se = (0..g.n)
        .map(|v| {
            let var = (sum_sq[v] / n - mean[v] * mean[v]).max(0.0) * n / (n - 1.0);
            (var / n).sqrt()
        })
        .collect();
    (mean, se)
}

/// A series-parallel two-terminal network of unit resistors.
#[derive(Debug, Clone)]
pub enum SpNet {
    Edge,
    Series(Box<SpNet>, Box<SpNet>),
    Parallel(Box<SpNet>, Box<SpNet>),
}

impl SpNet {
    /// Resistance by series and parallel reduction.
    pub fn resistance(&self) -> f64 {
        match self {
            SpNet::Edge => 1.0,
            SpNet::Series(a, b) => a.resistance() + b.resistance(),
            SpNet::Parallel(a, b) => {
                let (x, y) = (a.resistance(), b.resistance());
                x * y / (x + y)
            }
        }
    }

    /// Random network; parallel branches are never bare edges so that the
    /// realized graph has no multi-edges.
    pub fn random<R: Rng>(depth: u32, rng: &mut R) -> SpNet {
        if depth == 0 || rng.random_bool(0.3) {
            return SpNet::Edge;
        }
        let a = Box::new(SpNet::random(depth - 1, rng));
        let b = Box::new(SpNet::random(depth - 1, rng));
        if rng.random_bool(0.5) {
            SpNet::Series(a, b)
        } else {
            let wrap = |x: Box<SpNet>| match *x {
                SpNet::Edge => Box::new(SpNet::Series(Box::new(SpNet::Edge), Box::new(SpNet::Edge))),
                other => Box::new(other),
            };
            SpNet::Parallel(wrap(a), wrap(b))
        }
    }

    /// Emits edges from terminal `from` to terminal `to`, allocating fresh
    /// node names with `fresh`.
    pub fn realize(&self, from: &str, to: &str, fresh: &mut dyn FnMut() -> String, out: &mut Vec<(String, String)>) {
        match self {
            SpNet::Edge => out.push((from.to_owned(), to.to_owned())),
            SpNet::Series(a, b) => {
                let mid = fresh();
                a.realize(from, &mid, fresh, out);
                b.realize(&mid, to, fresh, out);
            }
            SpNet::Parallel(a, b) => {
                a.realize(from, to, fresh, out);
                b.realize(from, to, fresh, out);
            }
        }
    }
}

pub mod cases;
