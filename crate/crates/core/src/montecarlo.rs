//! Monte Carlo estimation of intermediacy.
//!
//! Each replicate samples a subgraph in which every edge is active with
//! probability `p`. Sampling is lazy: a probabilistic depth-first search from
//! the source draws an edge only when its tail is first reached, so small
//! values of `p` touch only a small part of the graph. The nodes on an active
//! source-target path are then the forward-reached nodes that reach the
//! target over active edges. Every such path stays inside the forward set, so
//! the backward pass only reads activations the forward pass already drew.
//!
//! Replicate `i` draws from ChaCha stream `i` of the configured seed, and
//! per-node counts are merged by integer addition, so results do not depend
//! on how replicates are scheduled across workers.

use rand::distr::{Bernoulli, Distribution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closure::StContext;
use crate::error::{Error, Result};
use crate::graph::{EdgeIx, NodeIx};
use crate::scores::{IntermediacyScores, Method, Probability};

pub const DEFAULT_SAMPLES: u64 = 100_000;
const BATCH: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerConfig {
    p: Probability,
    samples: u64,
    seed: u64,
    workers: usize,
}

impl SamplerConfig {
    pub fn new(p: f64, samples: u64, seed: u64) -> Result<SamplerConfig> {
        if samples == 0 {
            return Err(Error::InvalidConfig("sample count must be positive".into()));
        }
        Ok(SamplerConfig {
            p: Probability::new(p)?,
            samples,
            seed,
            workers: 1,
        })
    }

    pub fn with_workers(mut self, workers: usize) -> Result<SamplerConfig> {
        if workers == 0 {
            return Err(Error::InvalidConfig("worker count must be positive".into()));
        }
        self.workers = workers;
        Ok(self)
    }

    pub fn with_p(mut self, p: f64) -> Result<SamplerConfig> {
        self.p = Probability::new(p)?;
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> SamplerConfig {
        self.seed = seed;
        self
    }

    pub fn p(&self) -> f64 {
        self.p.get()
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn workers(&self) -> usize {
        self.workers
    }
}

/// Nodes lying on at least one all-active source-target path in one sampled
/// subgraph, in increasing index order. Empty when no such path exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplicateOutcome {
    pub active_nodes: Vec<NodeIx>,
}

impl ReplicateOutcome {
    pub fn is_active(&self, v: NodeIx) -> bool {
        self.active_nodes.binary_search(&v).is_ok()
    }
}

/// Source of edge activations for one replicate. The sampler asks for each
/// edge at most once.
pub trait EdgeDraw {
    fn draw(&mut self, edge: EdgeIx) -> bool;
}

/// Independent Bernoulli draws from a random number generator.
pub struct BernoulliDraw<R> {
    rng: R,
    dist: Bernoulli,
}

impl<R: Rng> BernoulliDraw<R> {
    pub fn new(p: Probability, rng: R) -> Self {
        BernoulliDraw {
            rng,
            dist: Bernoulli::new(p.get()).expect("p in (0, 1)"),
        }
    }
}

impl<R: Rng> EdgeDraw for BernoulliDraw<R> {
    #[inline]
    fn draw(&mut self, _edge: EdgeIx) -> bool {
        self.dist.sample(&mut self.rng)
    }
}

/// Every edge active.
pub struct AllActive;

impl EdgeDraw for AllActive {
    fn draw(&mut self, _edge: EdgeIx) -> bool {
        true
    }
}

/// The random stream for replicate `index` under `seed`.
pub fn replicate_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Samples one replicate with Bernoulli(`p`) edge activations.
pub fn sample_replicate<R: Rng>(ctx: &StContext, p: Probability, rng: &mut R) -> ReplicateOutcome {
    sample_replicate_with(ctx, &mut BernoulliDraw::new(p, rng))
}

/// Samples one replicate with activations supplied by `draws`.
pub fn sample_replicate_with<D: EdgeDraw>(ctx: &StContext, draws: &mut D) -> ReplicateOutcome {
    let mut scratch = Scratch::new(ctx);
    let mut active_nodes = Vec::new();
    scratch.run(ctx, draws, |v| active_nodes.push(v));
    active_nodes.sort_unstable();
    ReplicateOutcome { active_nodes }
}

/// Reusable per-worker buffers. Stamps avoid clearing between replicates.
struct Scratch {
    stamp: u32,
    drawn: Vec<u32>,
    edge_on: Vec<bool>,
    forward: Vec<u32>,
    backward: Vec<u32>,
    stack: Vec<NodeIx>,
}

impl Scratch {
    fn new(ctx: &StContext) -> Scratch {
        Scratch {
            stamp: 0,
            drawn: vec![0; ctx.edge_count()],
            edge_on: vec![false; ctx.edge_count()],
            forward: vec![0; ctx.node_count()],
            backward: vec![0; ctx.node_count()],
            stack: Vec::new(),
        }
    }

    fn next_stamp(&mut self) -> u32 {
        if self.stamp == u32::MAX {
            self.drawn.fill(0);
            self.forward.fill(0);
            self.backward.fill(0);
            self.stamp = 0;
        }
        self.stamp += 1;
        self.stamp
    }

    /// Calls `on_active` once for every node on an active source-target path.
    fn run<D: EdgeDraw, F: FnMut(NodeIx)>(&mut self, ctx: &StContext, draws: &mut D, mut on_active: F) {
        let stamp = self.next_stamp();
        let dag = ctx.dag();
        let (s, t) = (ctx.source(), ctx.target());

        self.forward[s] = stamp;
        self.stack.push(s);
        while let Some(v) = self.stack.pop() {
            for &e in dag.out_edges(v) {
                debug_assert_ne!(self.drawn[e], stamp, "edge drawn twice");
                self.drawn[e] = stamp;
                let on = draws.draw(e);
                self.edge_on[e] = on;
                let w = dag.edge(e).1;
                if on && self.forward[w] != stamp {
                    self.forward[w] = stamp;
                    self.stack.push(w);
                }
            }
        }
        if self.forward[t] != stamp {
            return;
        }

        self.backward[t] = stamp;
        self.stack.push(t);
        while let Some(v) = self.stack.pop() {
            on_active(v);
            for &e in dag.in_edges(v) {
                let a = dag.edge(e).0;
                // tails outside the forward set were never drawn and cannot
                // be on an active path from the source
                if self.forward[a] == stamp
                    && self.edge_on[e]
                    && self.drawn[e] == stamp
                    && self.backward[a] != stamp
                {
                    self.backward[a] = stamp;
                    self.stack.push(a);
                }
            }
        }
    }
}

/// Counts, per node, the replicates `range` in which it is active.
fn count_range(ctx: &StContext, config: &SamplerConfig, scratch: &mut Scratch, range: std::ops::Range<u64>, counts: &mut [u64]) {
    let base = ChaCha8Rng::seed_from_u64(config.seed);
    let dist = Bernoulli::new(config.p()).expect("p in (0, 1)");
    for i in range {
        let mut rng = base.clone();
        rng.set_stream(i);
        let mut draws = BernoulliDraw { rng, dist };
        scratch.run(ctx, &mut draws, |v| counts[v] += 1);
    }
}

fn run_counts(ctx: &StContext, config: &SamplerConfig) -> Vec<u64> {
    let n = ctx.node_count();
    let batches = config.samples.div_ceil(BATCH);
    let work = || {
        (0..batches)
            .into_par_iter()
            .fold(
                || (Scratch::new(ctx), vec![0u64; n]),
                |(mut scratch, mut counts), b| {
                    let range = b * BATCH..((b + 1) * BATCH).min(config.samples);
                    count_range(ctx, config, &mut scratch, range, &mut counts);
                    (scratch, counts)
                },
            )
            .map(|(_, counts)| counts)
            .reduce(
                || vec![0u64; n],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    };
    match rayon::ThreadPoolBuilder::new().num_threads(config.workers).build() {
        Ok(pool) => pool.install(work),
        Err(err) => {
            log::warn!("could not build a {}-thread pool ({err}); using the global pool", config.workers);
            work()
        }
    }
}

/// Estimates intermediacy as the fraction of replicates in which each node
/// lies on an active source-target path.
pub fn estimate_intermediacy(ctx: &StContext, config: &SamplerConfig) -> IntermediacyScores {
    let counts = run_counts(ctx, config);
    let n = config.samples as f64;
    let phi: Vec<f64> = counts.iter().map(|&c| c as f64 / n).collect();
    let stderr = phi.iter().map(|&f| (f * (1.0 - f) / n).sqrt()).collect();
    IntermediacyScores {
        method: Method::MonteCarlo,
        p: config.p(),
        phi,
        stderr: Some(stderr),
        samples: Some(config.samples),
        seed: Some(config.seed),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
}

/// Probability of an active source-target path, estimated from `samples`
/// replicates.
pub fn estimate_st_probability(ctx: &StContext, p: f64, samples: u64, seed: u64) -> Result<Estimate> {
    let config = SamplerConfig::new(p, samples, seed)?;
    let scores = estimate_intermediacy(ctx, &config);
    let s = ctx.source();
    Ok(Estimate {
        value: scores.phi(s),
        stderr: scores.stderr(s).unwrap_or(0.0),
    })
}
