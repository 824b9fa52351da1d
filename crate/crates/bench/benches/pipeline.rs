use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use wsweave::{build_tiling, dual_plabic_graph, generate, symmetric_weave_pipeline};
use wsweave_bench::INSTANCES;

fn label(&(k, n, ell): &(u32, u32, u32)) -> String {
    format!("{k},{n},{ell}")
}

fn bench_generate(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate");
    for inst @ &(k, n, ell) in INSTANCES {
        group.bench_with_input(BenchmarkId::from_parameter(label(inst)), inst, |b, _| {
            b.iter(|| generate(black_box(k), black_box(n), black_box(ell), None).unwrap())
        });
    }
    group.finish();
}

fn bench_dual(c: &mut Criterion) {
    let mut group = c.benchmark_group("tiling_dual");
    for inst @ &(k, n, ell) in INSTANCES {
        let d = generate(k, n, ell, None).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(label(inst)), &d, |b, d| {
            b.iter(|| dual_plabic_graph(&build_tiling(black_box(d)).unwrap()).unwrap())
        });
    }
    group.finish();
}

fn bench_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(20);
    for inst @ &(k, n, ell) in INSTANCES {
        group.bench_with_input(BenchmarkId::from_parameter(label(inst)), inst, |b, _| {
            b.iter(|| symmetric_weave_pipeline(black_box(k), black_box(n), black_box(ell), None).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_generate, bench_dual, bench_pipeline);
criterion_main!(benches);
