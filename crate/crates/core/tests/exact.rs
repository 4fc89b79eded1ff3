mod oracle;

use intermediacy::exact::exact_inactivity;
use intermediacy::generate::{chain, parallel_two_paths, random_closure};
use intermediacy::{exact_intermediacy, path_stats, reach_probability, ReliabilityQuery, StContext};
use oracle::{Enumeration, Graph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn closure(seed: u64, max_edges: usize) -> StContext {
    random_closure(max_edges / 2, max_edges, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn phi(ctx: &StContext, p: f64) -> Vec<f64> {
    exact_intermediacy(ctx, &ReliabilityQuery::new(p).unwrap()).unwrap().phi
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matches_enumeration(seed in any::<u64>(), p in 0.01f64..0.99) {
        let ctx = closure(seed, 14);
        let expected = Enumeration::new(&Graph::from_ctx(&ctx)).phi(p);
        for (v, (a, b)) in phi(&ctx, p).iter().zip(&expected).enumerate() {
            prop_assert!((a - b).abs() <= 1e-12, "node {} exact {} enumerated {}", v, a, b);
        }
    }

    #[test]
    fn factorizes_into_reach_probabilities(seed in any::<u64>(), p in 0.05f64..0.95) {
        let ctx = closure(seed, 14);
        let q = ReliabilityQuery::new(p).unwrap();
        let scores = phi(&ctx, p);
        for v in 0..ctx.node_count() {
            let into = if v == ctx.source() { 1.0 } else { reach_probability(&ctx, ctx.source(), v, &q).unwrap() };
            let out = if v == ctx.target() { 1.0 } else { reach_probability(&ctx, v, ctx.target(), &q).unwrap() };
            prop_assert!((scores[v] - into * out).abs() <= 1e-12);
        }
    }

    #[test]
    fn monotone_in_p(seed in any::<u64>()) {
        let ctx = closure(seed, 16);
        let grid: Vec<f64> = (1..20).map(|i| i as f64 / 20.0).collect();
        let by_p: Vec<Vec<f64>> = grid.iter().map(|&p| phi(&ctx, p)).collect();
        for w in by_p.windows(2) {
            for v in 0..ctx.node_count() {
                prop_assert!(w[1][v] > w[0][v]);
            }
        }
    }

    #[test]
    fn endpoints_agree_exactly(seed in any::<u64>(), p in 0.01f64..0.99) {
        let ctx = closure(seed, 20);
        let q = ReliabilityQuery::new(p).unwrap();
        let scores = phi(&ctx, p);
        let st = reach_probability(&ctx, ctx.source(), ctx.target(), &q).unwrap();
        prop_assert_eq!(scores[ctx.source()], scores[ctx.target()]);
        prop_assert!((scores[ctx.source()] - st).abs() <= 1e-12);
        for &x in &scores {
            prop_assert!(x <= scores[ctx.source()] + 1e-15);
        }
    }

    #[test]
    fn inactivity_complements_phi(seed in any::<u64>(), p in 0.01f64..0.99) {
        let ctx = closure(seed, 14);
        let q = ReliabilityQuery::new(p).unwrap();
        let scores = phi(&ctx, p);
        let miss = exact_inactivity(&ctx, &q).unwrap();
        for v in 0..ctx.node_count() {
            prop_assert!((scores[v] + miss[v] - 1.0).abs() <= 1e-12);
        }
    }
}

#[test]
fn shortest_route_wins_as_p_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let ctx = random_closure(6, 16, &mut rng);
        let ell = path_stats(&ctx).shortest_through;
        let scores = phi(&ctx, 1e-4);
        for u in 0..ctx.node_count() {
            for v in 0..ctx.node_count() {
                if ell[u] < ell[v] {
                    assert!(scores[u] > scores[v], "ell {} < {} but phi {} <= {}", ell[u], ell[v], scores[u], scores[v]);
                }
            }
        }
    }
}

#[test]
fn most_independent_routes_win_as_p_saturates() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let q = ReliabilityQuery::new(1.0 - 1e-4).unwrap();
    for _ in 0..40 {
        let ctx = random_closure(6, 16, &mut rng);
        let sigma = path_stats(&ctx).edge_independent;
        let miss = exact_inactivity(&ctx, &q).unwrap();
        for u in 0..ctx.node_count() {
            for v in 0..ctx.node_count() {
                if sigma[u] > sigma[v] {
                    assert!(miss[u] < miss[v]);
                }
            }
        }
    }
}

#[test]
fn closed_forms() {
    let q = ReliabilityQuery::new(0.5).unwrap();
    let ctx = parallel_two_paths(2);
    let st = reach_probability(&ctx, ctx.source(), ctx.target(), &q).unwrap();
    assert!((st - 0.4375).abs() < 1e-15);
    let ctx = chain(5);
    assert!((phi(&ctx, 0.5)[ctx.source()] - 0.03125).abs() < 1e-15);
    let ctx = parallel_two_paths(5);
    let p: f64 = 0.3;
    let expected = 1.0 - (1.0 - p * p).powi(5);
    assert!((phi(&ctx, p)[ctx.target()] - expected).abs() < 1e-15);
}

#[test]
fn surgery_raises_upstream_and_downstream_nodes_only() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for make in [oracle::cases::addition::<ChaCha8Rng>, oracle::cases::contraction::<ChaCha8Rng>] {
        for _ in 0..25 {
            let case = make(&mut rng);
            let before = phi(&case.before, 0.7);
            let after = phi(&case.after, 0.7);
            let score = |ctx: &StContext, scores: &[f64], id: &str| scores[ctx.require(id).unwrap()];
            for id in &case.raised {
                assert!(score(&case.after, &after, id) > score(&case.before, &before, id) + 1e-12, "{id}");
            }
            for id in &case.unchanged {
                let diff = score(&case.after, &after, id) - score(&case.before, &before, id);
                assert!(diff.abs() <= 1e-12, "{id} moved by {diff}");
            }
        }
    }
}
