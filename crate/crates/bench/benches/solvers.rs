use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use ellipk_core::{k_agm, k_gc, k_gl, k_series, QuadFamily, QuadratureRule};

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("cei1");
    for k in [0.1, 0.5, 0.9] {
        group.bench_with_input(BenchmarkId::new("series", k), &k, |b, &k| {
            b.iter(|| k_series(black_box(k), 1e-9))
        });
        group.bench_with_input(BenchmarkId::new("agm", k), &k, |b, &k| {
            b.iter(|| k_agm(black_box(k), 1e-9))
        });
        group.bench_with_input(BenchmarkId::new("gc50", k), &k, |b, &k| {
            b.iter(|| k_gc(black_box(k), 50))
        });
        group.bench_with_input(BenchmarkId::new("gl50", k), &k, |b, &k| {
            b.iter(|| k_gl(black_box(k), 50))
        });
    }
    group.finish();
}

// Rule construction without the cache: Newton roots plus weights.
fn rules(c: &mut Criterion) {
    let mut group = c.benchmark_group("rule");
    for n in [8, 50, 200] {
        group.bench_with_input(BenchmarkId::new("gauss_legendre", n), &n, |b, &n| {
            b.iter(|| QuadratureRule::new(QuadFamily::GaussLegendre, black_box(n)))
        });
    }
    group.finish();
}

criterion_group!(benches, solvers, rules);
criterion_main!(benches);
