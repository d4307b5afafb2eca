//! Compare the rayon-backed trial runner against the sequential one on the
//! data-parallel workloads: the Crimmins equivalence sweep and the
//! alternating-projection batch.
//!
//! Run with `cargo bench -p projprod` (requires the default `parallel`
//! feature so both executors are available).

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use projprod::alternating::von_neumann_limit;
use projprod::products::classify;
use projprod::random::{random_pair_with_gap, random_projection_pair, trial_rng};
use projprod::subspace::Tolerances;
use projprod::suites::{map_trials, map_trials_seq};

const SEED: u64 = 42;
const DIM: usize = 8;

fn crimmins_trial(i: u64) -> f64 {
    let tol = Tolerances::default();
    let mut rng = trial_rng(SEED, i);
    let pair = random_projection_pair(&mut rng, DIM, &tol);
    classify(&pair.product(), &tol)
        .map(|r| r.crimmins_residual)
        .unwrap_or(f64::INFINITY)
}

fn von_neumann_trial(i: u64) -> f64 {
    let tol = Tolerances::default();
    let mut rng = trial_rng(SEED, i);
    let pair = random_pair_with_gap(&mut rng, DIM, 0.99, &tol);
    von_neumann_limit(&pair, 1e-10, 10_000, &tol)
        .map(|t| t.final_residual())
        .unwrap_or(f64::INFINITY)
}

fn bench_crimmins(c: &mut Criterion) {
    let mut group = c.benchmark_group("crimmins_sweep_200");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter_batched(
            || (),
            |_| map_trials(200, crimmins_trial),
            BatchSize::SmallInput,
        )
    });
    group.bench_function("sequential", |b| {
        b.iter_batched(
            || (),
            |_| map_trials_seq(200, crimmins_trial),
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

fn bench_von_neumann(c: &mut Criterion) {
    let mut group = c.benchmark_group("von_neumann_batch_32");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter_batched(
            || (),
            |_| map_trials(32, von_neumann_trial),
            BatchSize::SmallInput,
        )
    });
    group.bench_function("sequential", |b| {
        b.iter_batched(
            || (),
            |_| map_trials_seq(32, von_neumann_trial),
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

criterion_group!(benches, bench_crimmins, bench_von_neumann);
criterion_main!(benches);
