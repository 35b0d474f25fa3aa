use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use dualdelay_core::analytic::{
    binomial_upper_tail, dynamic_threshold_exact, exceedance_probability, normal_sf,
    static_threshold_exact, DynamicParams,
};

fn dynamic_params(n: u64) -> DynamicParams {
    DynamicParams {
        n_total: n,
        n_val: n,
        delay_coeff: 0.05,
        topo_k: 1.0,
        sync_c: 0.1,
        corr_c: 1.0,
        lambda_total: 10.0,
    }
}

fn thresholds(c: &mut Criterion) {
    c.bench_function("static_threshold_exact", |b| {
        b.iter(|| static_threshold_exact(black_box(5.0), black_box(0.4), black_box(0.6)))
    });
    c.bench_function("dynamic_threshold_exact_1e6", |b| {
        let p = dynamic_params(1_000_000);
        b.iter(|| dynamic_threshold_exact(black_box(&p)))
    });
}

fn tails(c: &mut Criterion) {
    c.bench_function("binomial_tail_1e6", |b| {
        b.iter(|| binomial_upper_tail(black_box(1_000_000), black_box(1e-3), black_box(1100.0)))
    });
    c.bench_function("normal_sf", |b| b.iter(|| normal_sf(black_box(7.5))));
    c.bench_function("exceedance_probability_1e4", |b| {
        let p = dynamic_params(10_000);
        b.iter(|| exceedance_probability(black_box(&p)))
    });
}

criterion_group!(benches, thresholds, tails);
criterion_main!(benches);
