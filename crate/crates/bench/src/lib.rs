//! Fixed-seed inputs shared by the benchmarks.

use intermediacy::generate::{layered_dag, random_closure};
use intermediacy::{st_closure, StContext};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random closure with exactly `edges` edges.
pub fn small_closure(edges: usize, seed: u64) -> StContext {
    random_closure(edges, edges, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Layered closure with `layers * width + 2` nodes and about
/// `(layers - 1) * width * fanout + 2 * width` edges.
pub fn layered_closure(layers: usize, width: usize, fanout: usize, seed: u64) -> StContext {
    let dag = layered_dag(layers, width, fanout, &mut ChaCha8Rng::seed_from_u64(seed));
    st_closure(&dag, "s", "t").expect("layered graphs connect s to t")
}
