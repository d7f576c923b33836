use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use lcs_cohomology::extensions::{cocycles_cohomologous, lemma_sweep_full, lemma_sweep_reduced, SweepMode, TwoCocycle};
use lcs_cohomology::structure::enumerate::enumerate_lcs;
use lcs_cohomology::structure::{trivial_lcs, z4_lcs};
use lcs_cohomology::{Budget, Execution, FiniteAbelianGroup};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_lcs");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 4), &exec, |b, &exec| {
            b.iter(|| enumerate_lcs(black_box(4), exec).unwrap())
        });
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let z2 = FiniteAbelianGroup::cyclic(2).unwrap();
    let a = z4_lcs();
    let t = trivial_lcs(2);
    let mut group = c.benchmark_group("lemma_sweep");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("reduced_z4", name), |b| {
            b.iter(|| lemma_sweep_reduced(&a, &z2, SweepMode::Exhaustive, exec).unwrap())
        });
        let random = SweepMode::Random { samples: 10_000, seed: 1 };
        group.bench_function(BenchmarkId::new("full_random", name), |b| {
            b.iter(|| lemma_sweep_full(&t, &z2, random, exec).unwrap())
        });
    }
    group.finish();
}

fn theta_search(c: &mut Criterion) {
    // g is not symmetric, so no θ bounds it and all 32^4 maps are tried
    let z32 = FiniteAbelianGroup::cyclic(32).unwrap();
    let a = trivial_lcs(4);
    let zero = lcs_cohomology::cochain::Cochain::zero(4, 2);
    let c1 = TwoCocycle::full(zero.clone(), zero.clone());
    let c2 = TwoCocycle::full(zero, lcs_cohomology::cochain::Cochain::from_fn(4, 2, |t| t[0]));
    let budget = Budget::default();
    let mut group = c.benchmark_group("theta_search");
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| cocycles_cohomologous(&a, &z32, &c1, &c2, false, &budget, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration, sweeps, theta_search);
criterion_main!(benches);
