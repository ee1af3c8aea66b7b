use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use specrepair::analysis::builtin_bounded_realizability;
use specrepair::automata::ltl_to_buchi;
use specrepair::counting::{count_lassos_exact, count_models_approx, CountCache};
use specrepair::repair::{evaluate_fitness, run_ga, Weights};
use specrepair::{Alphabet, BackendConfig, GaConfig, Limits};
use specrepair_bench::{arbiter, fair_arbiter, formula};

fn tableau(c: &mut Criterion) {
    let spec = arbiter();
    let phi = spec.implication();
    let alphabet = spec.alphabet().unwrap();
    let limits = Limits::default();
    c.bench_function("tableau/arbiter", |b| b.iter(|| ltl_to_buchi(black_box(&phi), &alphabet, &limits).unwrap()));
}

fn counting(c: &mut Criterion) {
    let f = formula("G (p -> X q)");
    let alphabet = Alphabet::new(["p", "q"]).unwrap();
    let limits = Limits::default();
    let mut group = c.benchmark_group("count_approx");
    for k in [20u32, 100, 500] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| count_models_approx(black_box(&f), &alphabet, k, &limits).unwrap())
        });
    }
    group.finish();
    c.bench_function("count_exact/k=6", |b| b.iter(|| count_lassos_exact(black_box(&f), &alphabet, 6).unwrap()));

    let spec = arbiter();
    let phi = spec.conjunction();
    let alphabet = spec.alphabet().unwrap();
    c.bench_function("count_approx/arbiter k=20", |b| {
        b.iter(|| count_models_approx(black_box(&phi), &alphabet, 20, &limits).unwrap())
    });
}

fn game(c: &mut Criterion) {
    let limits = Limits::default();
    let mut group = c.benchmark_group("builtin_game");
    group.sample_size(10);
    for (name, spec) in [("unrealizable", arbiter()), ("realizable", fair_arbiter())] {
        group.bench_function(name, |b| b.iter(|| builtin_bounded_realizability(black_box(&spec), 6, &limits)));
    }
    group.finish();
}

fn fitness(c: &mut Criterion) {
    let original = arbiter();
    let candidate = fair_arbiter();
    let weights = Weights { alpha: 0.7, beta: 0.1, gamma: 0.2 };
    let backend = BackendConfig::default();
    let limits = Limits::default();
    let mut group = c.benchmark_group("fitness");
    group.sample_size(10);
    group.bench_function("fair arbiter, cold cache", |b| {
        b.iter(|| {
            let cache = CountCache::new(limits);
            evaluate_fitness(&original, black_box(&candidate), weights, 20, &backend, &cache, &limits).unwrap()
        })
    });
    group.finish();
}

fn small_run(c: &mut Criterion) {
    let spec = arbiter();
    let cfg = GaConfig { seed: 1, population_size: 10, max_individuals: 30, jobs: 1, ..GaConfig::default() };
    let mut group = c.benchmark_group("repair");
    group.sample_size(10);
    group.bench_function("ga 30 individuals", |b| b.iter(|| run_ga(black_box(&spec), &cfg, None).unwrap()));
    group.finish();
}

criterion_group!(benches, tableau, counting, game, fitness, small_run);
criterion_main!(benches);
