use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use blanks::bounds::BoundName;
use blanks::expansion::is_maximal_with;
use blanks::fuzz::run_fuzz;
use blanks::generators::{gen_grid, CakeKind, FuzzConfig};
use blanks::par::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn maximality(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_maximal");
    for m in [16usize, 64, 144] {
        let a = gen_grid(m).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, m), &a, |b, a| b.iter(|| is_maximal_with(a, exec).unwrap()));
        }
    }
    group.finish();
}

fn fuzz(c: &mut Criterion) {
    let mut group = c.benchmark_group("fuzz");
    group.sample_size(10);
    let cfg = FuzzConfig { iterations: 200, ..FuzzConfig::new(7, 10, CakeKind::Rectangle) };
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| assert!(run_fuzz(&cfg, BoundName::Thm3, exec).unwrap().passed())));
    }
    group.finish();
}

criterion_group!(benches, maximality, fuzz);
criterion_main!(benches);
