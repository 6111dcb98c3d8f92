use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subset_base::search::brute_force_base_size;
use subset_base::{construct_base, find_min_l};
use subset_base_bench::{symmetric, SAMPLE};

fn witness_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_min_l");
    for (n, r) in SAMPLE
        .into_iter()
        .chain([(1_000_000, 1), (1_000_000, 500_000)])
    {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{n},{r}")),
            &(n, r),
            |b, &(n, r)| b.iter(|| find_min_l(black_box(n), black_box(r)).unwrap()),
        );
    }
    group.finish();
}

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct_base");
    group.sample_size(20);
    for (n, r) in [(18, 7), (40, 9), (120, 10), (120, 4)] {
        let spec = symmetric(n, r);
        group.bench_with_input(
            BenchmarkId::new("uniform", format!("{n},{r}")),
            &spec,
            |b, spec| b.iter(|| construct_base(black_box(spec)).unwrap()),
        );
        let at_most = spec.at_most();
        group.bench_with_input(
            BenchmarkId::new("at-most", format!("{n},{r}")),
            &at_most,
            |b, spec| b.iter(|| construct_base(black_box(spec)).unwrap()),
        );
    }
    group.finish();
}

fn exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force_base_size");
    group.sample_size(10);
    for (n, r) in [(6, 2), (8, 3), (9, 2)] {
        let spec = symmetric(n, r);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{n},{r}")),
            &spec,
            |b, spec| b.iter(|| brute_force_base_size(black_box(spec)).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, witness_search, construction, exhaustive);
criterion_main!(benches);
