use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use dpl_bench::program;
use dpl_core::dynamics::{self, DynamicsConfig, Operation};
use dpl_core::oracle::{compare, random_argument, trial_rng};
use dpl_core::semantics::{induced_model, DEFAULT_WORLD_CAP};

fn induced(c: &mut Criterion) {
    let mut group = c.benchmark_group("induced_model");
    for symbols in [4, 6, 8, 10] {
        let ag = program(symbols, 3);
        group.bench_with_input(BenchmarkId::from_parameter(symbols), &ag, |b, ag| {
            b.iter(|| induced_model(black_box(ag), DEFAULT_WORLD_CAP).unwrap())
        });
    }
    group.finish();
}

fn commutation(c: &mut Criterion) {
    let cfg = DynamicsConfig::strict();
    let mut group = c.benchmark_group("commutation_check");
    for op in Operation::ALL {
        let ag = program(4, 5);
        let phi = random_argument(&mut trial_rng(5, op as u64), &ag, op);
        group.bench_function(op.name(), |b| {
            b.iter(|| compare(black_box(&ag), op, &phi, &cfg).unwrap())
        });
    }
    group.finish();
}

fn program_operations(c: &mut Criterion) {
    let cfg = DynamicsConfig::default();
    let ag = program(12, 9);
    let mut group = c.benchmark_group("program_operation");
    for op in Operation::ALL {
        let phi = random_argument(&mut trial_rng(9, op as u64), &ag, op);
        group.bench_function(op.name(), |b| {
            b.iter(|| dynamics::apply(black_box(&ag), op, &phi, &cfg))
        });
    }
    group.finish();
}

criterion_group!(benches, induced, commutation, program_operations);
criterion_main!(benches);
