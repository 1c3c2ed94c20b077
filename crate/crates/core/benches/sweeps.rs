//! Sequential vs parallel execution of the exhaustive searches.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nillat_core::group::{soundness_sweep, GroupModel};
use nillat_core::lattice::filiform::{conjugator_search, FiliformLatticeSpec};
use nillat_core::matrix::ZMatrix;
use nillat_core::par::Execution;

const STRATEGIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn conjugator(c: &mut Criterion) {
    // no conjugator exists, so the whole box is searched
    let a = FiliformLatticeSpec::three(4, 8, 1).unwrap();
    let b = FiliformLatticeSpec::three(4, 8, 2).unwrap();
    let mut group = c.benchmark_group("conjugator_search");
    for bound in [30i64, 60] {
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, bound), &bound, |bench, &bound| {
                bench.iter(|| assert!(conjugator_search(a.g(), b.g(), bound, exec).is_none()))
            });
        }
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let filiform =
        GroupModel::filiform(ZMatrix::from_i64(&[&[1, 0, 0, 0], &[2, 1, 0, 0], &[-1, 3, 1, 0], &[4, 0, 5, 1]])).unwrap();
    let models = [("filiform4", filiform), ("TStarH1", GroupModel::TStarH1)];
    let mut group = c.benchmark_group("soundness_sweep");
    group.sample_size(10);
    for (label, model) in &models {
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, label), model, |bench, model| {
                bench.iter(|| assert!(soundness_sweep(model, exec).unwrap().associative))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, conjugator, sweep);
criterion_main!(benches);
