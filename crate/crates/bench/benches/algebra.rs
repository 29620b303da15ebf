use std::hint::black_box;

use chainloss_bench::factor_pair;
use chainloss_core::algebra::{prob_adapt, prob_compose};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn adapt(c: &mut Criterion) {
    let mut group = c.benchmark_group("prob_adapt");
    for slots in [4, 16, 64] {
        let w = factor_pair(slots, 7);
        group.bench_with_input(BenchmarkId::from_parameter(slots), &w, |b, w| {
            b.iter(|| prob_adapt(black_box(&w.f), black_box(&w.p)).unwrap())
        });
    }
    group.finish();
}

fn compose(c: &mut Criterion) {
    let mut group = c.benchmark_group("prob_compose");
    for slots in [4, 16, 64] {
        let w = factor_pair(slots, 7);
        group.bench_with_input(BenchmarkId::from_parameter(slots), &w, |b, w| {
            b.iter(|| prob_compose(black_box(&w.g), black_box(&w.f)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, adapt, compose);
criterion_main!(benches);
