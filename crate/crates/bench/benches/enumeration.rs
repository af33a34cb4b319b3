use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cocycle_bench::length_function;

fn bench_balls(c: &mut Criterion) {
    let mut group = c.benchmark_group("ball");
    for (spec, radius) in [("free:2", 7u32), ("zd:2", 20), ("heis3", 10)] {
        let lf = length_function(spec);
        let e = lf.model().identity();
        group.bench_with_input(BenchmarkId::new(spec, radius), &radius, |b, &r| {
            b.iter(|| black_box(lf.ball(&e, r).unwrap().cardinality()))
        });
    }
    group.finish();
}

fn bench_growth(c: &mut Criterion) {
    let lf = length_function("free:2");
    c.bench_function("growth_constant/free:2/r8", |b| {
        b.iter(|| black_box(lf.growth_constant(8).unwrap().a))
    });
}

fn bench_bfs_length(c: &mut Criterion) {
    c.bench_function("bfs_length/heis3/r12", |b| {
        b.iter_with_setup(
            || length_function("heis3"),
            |lf| {
                // cold cache each iteration: one full BFS out to radius 12
                let g = cocycle_core::GroupElement::Heisenberg([6, 6, 0]);
                black_box(lf.length(&g).unwrap())
            },
        )
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = bench_balls, bench_growth, bench_bfs_length
}
criterion_main!(benches);
