use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use dualdelay_core::corruption::{mc_exceedance, CorruptionRun};
use dualdelay_core::sim::{simulate_adversarial_growth, simulate_private_race, SimConfig};
use dualdelay_core::StaticParams;

fn growth(c: &mut Criterion) {
    let cfg = SimConfig {
        horizon: 1e4,
        trials: 1,
        ..SimConfig::default()
    };
    c.bench_function("adversarial_growth_1e4s", |b| {
        b.iter(|| simulate_adversarial_growth(black_box(0.5), black_box(1.0), &cfg))
    });
}

fn race(c: &mut Criterion) {
    let params = StaticParams::new(10.0, 0.3, 0.4, 0.4).unwrap();
    let cfg = SimConfig {
        confirm_depth: 6,
        trials: 10_000,
        ..SimConfig::default()
    };
    c.bench_function("private_race_k6_1e4", |b| {
        b.iter(|| simulate_private_race(black_box(&params), &cfg))
    });
}

fn corruption(c: &mut Criterion) {
    let run = CorruptionRun {
        n_val: 10_000,
        p: 0.01,
        trials: 100_000,
        base_seed: 1,
        beta_star: 0.0892,
    };
    c.bench_function("mc_exceedance_1e5", |b| {
        b.iter(|| mc_exceedance(black_box(&run)))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = growth, race, corruption
}
criterion_main!(benches);
