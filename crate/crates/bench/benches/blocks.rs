use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use cocycle_bench::{generator_power, length_function};
use cocycle_core::{cocycle_block, cocycle_vector, divergence_partial_sums, tent, ScaleParams};

fn bench_tent(c: &mut Criterion) {
    let lf = length_function("free:2");
    let params = ScaleParams::new(1);
    c.bench_function("tent/free:2/n8", |b| {
        b.iter(|| black_box(tent(&lf, &params, 8).unwrap().support_size()))
    });
}

fn bench_block(c: &mut Criterion) {
    let lf = length_function("free:2");
    let params = ScaleParams::new(1);
    let gamma = generator_power(&lf, 10);
    c.bench_function("cocycle_block/free:2/n6", |b| {
        b.iter(|| black_box(cocycle_block(&lf, &params, 6, &gamma).unwrap().norm_2n))
    });
}

fn bench_vector(c: &mut Criterion) {
    let lf = length_function("zd:2");
    let params = ScaleParams::new(1);
    let gamma = generator_power(&lf, 9);
    c.bench_function("cocycle_vector/zd:2/n_max8", |b| {
        b.iter(|| {
            black_box(
                cocycle_vector(&lf, &params, &gamma, 8)
                    .unwrap()
                    .mixed_norm_sq,
            )
        })
    });
}

fn bench_lp_norm(c: &mut Criterion) {
    let lf = length_function("free:2");
    let params = ScaleParams::new(1);
    let t = tent(&lf, &params, 8).unwrap();
    c.bench_function("lp_norm/free:2/n8/p16", |b| {
        b.iter(|| black_box(t.lp_norm(16.0).unwrap()))
    });
}

fn bench_divergence(c: &mut Criterion) {
    let params = ScaleParams::new(1);
    c.bench_function("divergence_partial_sums/k1/1e5", |b| {
        b.iter(|| {
            black_box(
                divergence_partial_sums(&params, 100_000)
                    .unwrap()
                    .rows
                    .len(),
            )
        })
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = bench_tent, bench_block, bench_vector, bench_lp_norm, bench_divergence
}
criterion_main!(benches);
