use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use intermediacy::baselines::{expected_path_count, resistance_all};
use intermediacy::{estimate_intermediacy, exact_intermediacy, path_stats, ReliabilityQuery, SamplerConfig};
use intermediacy_bench::{layered_closure, small_closure};

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_intermediacy");
    for m in [12, 18, 24] {
        let ctx = small_closure(m, 1);
        let q = ReliabilityQuery::new(0.3).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(m), &ctx, |b, ctx| {
            b.iter(|| exact_intermediacy(ctx, &q).unwrap())
        });
    }
    group.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let mut group = c.benchmark_group("estimate_intermediacy");
    group.sample_size(10);
    let ctx = layered_closure(20, 250, 5, 2);
    for p in [0.05, 0.1, 0.3] {
        let config = SamplerConfig::new(p, 2_000, 7).unwrap();
        group.throughput(Throughput::Elements(config.samples()));
        group.bench_with_input(BenchmarkId::from_parameter(p), &config, |b, config| {
            b.iter(|| estimate_intermediacy(&ctx, config))
        });
    }
    group.finish();
}

fn deterministic(c: &mut Criterion) {
    let ctx = layered_closure(20, 250, 5, 3);
    c.bench_function("path_stats", |b| b.iter(|| path_stats(&ctx)));
    c.bench_function("expected_path_count", |b| b.iter(|| expected_path_count(&ctx, 0.1).unwrap()));
    let small = layered_closure(6, 30, 3, 4);
    c.bench_function("resistance_all", |b| b.iter(|| resistance_all(&small)));
}

criterion_group!(benches, exact, monte_carlo, deterministic);
criterion_main!(benches);
