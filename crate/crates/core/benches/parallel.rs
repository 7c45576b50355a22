//! Parallel vs sequential throughput on the crate's hot batch loops:
//! feature-vector extraction over eigenstate sets, sparse witness evaluation
//! over mixed-state batches, and test-state generation. Both paths produce
//! identical output; these benches measure what the `parallel` feature buys.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use wforge_core::batch;
use wforge_core::features::feature_vector_pure;
use wforge_core::rng::SeedFanout;
use wforge_core::statesets::{pauli_eigenstates, separable_test_states};
use wforge_core::witness::{evaluate, mermin_feature_subset};

fn bench_feature_vectors(c: &mut Criterion) {
    let mut group = c.benchmark_group("feature_vectors");
    for n in [3usize, 4] {
        let states = pauli_eigenstates(n);
        let set = mermin_feature_subset(n).unwrap();
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, _| {
            b.iter(|| {
                black_box(batch::map_collect_seq(&states, |psi| {
                    feature_vector_pure(psi, &set).unwrap().values
                }))
            })
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, _| {
            b.iter(|| {
                black_box(batch::map_collect(&states, |psi| {
                    feature_vector_pure(psi, &set).unwrap().values
                }))
            })
        });
    }
    group.finish();
}

fn bench_witness_batch_eval(c: &mut Criterion) {
    let mut group = c.benchmark_group("witness_batch_eval");
    let witness = wforge_core::fixtures::w5_180_terms().unwrap();
    let states = separable_test_states(5, 256, 0.1, &SeedFanout::new(3)).unwrap();

    group.bench_function("sequential", |b| {
        b.iter(|| {
            black_box(batch::map_collect_seq(&states, |rho| {
                evaluate(&witness, rho).unwrap()
            }))
        })
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| {
            black_box(batch::map_collect(&states, |rho| {
                evaluate(&witness, rho).unwrap()
            }))
        })
    });
    group.finish();
}

fn bench_test_state_generation(c: &mut Criterion) {
    let mut group = c.benchmark_group("test_state_generation");
    group.sample_size(20);
    // generation dispatches through the feature-gated path internally;
    // run `cargo bench --no-default-features` for the sequential baseline
    group.bench_function("dispatched", |b| {
        b.iter(|| black_box(separable_test_states(4, 128, 0.1, &SeedFanout::new(9)).unwrap()))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_feature_vectors,
    bench_witness_batch_eval,
    bench_test_state_generation
);
criterion_main!(benches);
