use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tcn_core::algebra::{make_presentation, PresentationSpec};
use tcn_core::cuplength::{cup_exact, OracleConfig};
use tcn_core::par::Exec;
use tcn_core::tensor::{kernel_bases, DEFAULT_MAX_SLICE};

const CASES: &[(&str, u32, u32, usize)] = &[("rh4.3", 2, 4, 2), ("rh3.2", 1, 3, 3)];

fn modes() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    if Exec::Parallel.is_parallel() {
        v.push(("parallel", Exec::Parallel));
    }
    v
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("cup_exact");
    group.sample_size(10);
    for &(label, s, r, n) in CASES {
        let p = make_presentation(&PresentationSpec::milnor(s, r)).unwrap();
        for (mode, exec) in modes() {
            let cfg = OracleConfig { exec, ..OracleConfig::default() };
            group.bench_with_input(BenchmarkId::new(mode, format!("{label}/n{n}")), &cfg, |b, cfg| {
                b.iter(|| cup_exact(&p, n, cfg).unwrap().value)
            });
        }
    }
    group.finish();
}

fn kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel_bases");
    group.sample_size(10);
    for &(label, s, r, n) in CASES {
        let p = make_presentation(&PresentationSpec::milnor(s, r)).unwrap();
        for (mode, exec) in modes() {
            group.bench_function(BenchmarkId::new(mode, format!("{label}/n{n}")), |b| {
                b.iter(|| kernel_bases(&p, n, DEFAULT_MAX_SLICE, exec).unwrap().len())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, oracle, kernels);
criterion_main!(benches);
