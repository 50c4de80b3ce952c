use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use tr2dom::graph::FamilySpec;
use tr2dom::harness::par::Executor;
use tr2dom::harness::{sweep_with, Check, Corpus, SweepConfig};
use tr2dom::solvers::{branch_and_bound, SolverConfig};
use tr2dom::tree_dp::tree_gamma_tr2;

fn config() -> SweepConfig {
    SweepConfig::new(Corpus::AllConnectedGraphsUpTo(5), [Check::Bounds, Check::Characterizations, Check::PropPo])
}

fn sweep_executors(c: &mut Criterion) {
    let cfg = config();
    let mut group = c.benchmark_group("sweep_graphs_5");
    group.sample_size(10);
    let sequential = Executor::new(1);
    group.bench_function("sequential", |b| b.iter(|| black_box(sweep_with(&cfg, &sequential).unwrap())));
    let parallel = Executor::new(0);
    if parallel.is_parallel() {
        group.bench_function("parallel", |b| b.iter(|| black_box(sweep_with(&cfg, &parallel).unwrap())));
    }
    group.finish();
}

fn solvers(c: &mut Criterion) {
    let path = FamilySpec::Path(100_000).generate().unwrap();
    let mut group = c.benchmark_group("solvers");
    group.sample_size(10);
    group.bench_function("tree_dp_path_100000", |b| b.iter(|| black_box(tree_gamma_tr2(&path).unwrap().value)));
    let k2_join_k20 = FamilySpec::join(FamilySpec::Complete(2), FamilySpec::Complete(20)).generate().unwrap();
    group.bench_function("bnb_k2_join_k20", |b| {
        b.iter(|| black_box(branch_and_bound(&k2_join_k20, &SolverConfig::default()).unwrap().value))
    });
    group.finish();
}

criterion_group!(benches, sweep_executors, solvers);
criterion_main!(benches);
