use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use idlattice::exec::{map_indexed, Execution};
use idlattice::pmf::convolve_with;
use idlattice::verify::{self, Suite, VerifyConfig};
use idlattice::{families, test_id};

const STRATEGIES: [(&str, Execution); 2] =
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn bench_convolve(c: &mut Criterion) {
    let mut group = c.benchmark_group("convolve");
    for n in [1024usize, 4096] {
        let p = families::poisson(40.0, n).unwrap();
        let q = families::geometric(0.02, 0, n).unwrap();
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, _| {
                b.iter(|| convolve_with(&p, &q, exec))
            });
        }
    }
    group.finish();
}

fn bench_batch_test_id(c: &mut Criterion) {
    let laws: Vec<_> = (1..=64)
        .map(|i| families::negbin_lattice(0.3 + 0.005 * i as f64, 1 + i % 4, 1.5, 256).unwrap())
        .collect();
    let mut group = c.benchmark_group("batch_test_id");
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| map_indexed(laws.len(), exec, |i| test_id(&laws[i]).unwrap()))
        });
    }
    group.finish();
}

fn bench_sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for suite in [Suite::AtomAtZero, Suite::RoundTrip] {
        for (name, exec) in STRATEGIES {
            let cfg = VerifyConfig { execution: exec, count: Some(64), ..VerifyConfig::default() };
            group.bench_function(BenchmarkId::new(name, suite.name()), |b| {
                b.iter(|| verify::run(suite, &cfg))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_convolve, bench_batch_test_id, bench_sweeps);
criterion_main!(benches);
