use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use permderiv::verify::{run_suite, VerifyConfig};
use permderiv::{dk_gr, dkper, parallel, per, random, ComplexMatrix, Formula};

fn modes() -> [(&'static str, bool); 2] {
    [("sequential", true), ("parallel", false)]
}

fn ryser(c: &mut Criterion) {
    let mut group = c.benchmark_group("ryser");
    group.sample_size(10);
    for n in [16usize, 18] {
        let a = random::complex_gaussian(&mut random::rng(n as u64), n);
        for (name, seq) in modes() {
            group.bench_with_input(BenchmarkId::new(name, n), &a, |b, a| {
                parallel::set_sequential(seq);
                b.iter(|| per(black_box(a)).unwrap());
                parallel::set_sequential(false);
            });
        }
    }
    group.finish();
}

fn derivative_grids(c: &mut Criterion) {
    let mut group = c.benchmark_group("derivative_grid");
    group.sample_size(10);
    let mut rng = random::rng(3);
    let a = random::complex_gaussian(&mut rng, 8);
    let dirs: Vec<ComplexMatrix> = (0..3).map(|_| random::complex_gaussian(&mut rng, 8)).collect();
    for (name, seq) in modes() {
        group.bench_function(BenchmarkId::new("dkper_minors_n8_k3", name), |b| {
            parallel::set_sequential(seq);
            b.iter(|| dkper(black_box(&a), black_box(&dirs), Formula::Minors).unwrap());
            parallel::set_sequential(false);
        });
        group.bench_function(BenchmarkId::new("dkgr_columns_n8_r4_k3", name), |b| {
            parallel::set_sequential(seq);
            b.iter(|| dk_gr(black_box(&a), black_box(&dirs), 4, Formula::Columns).unwrap());
            parallel::set_sequential(false);
        });
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("unit_direction_sampling");
    group.sample_size(10);
    let a = random::complex_gaussian(&mut random::rng(5), 6);
    for (name, seq) in modes() {
        group.bench_function(name, |b| {
            parallel::set_sequential(seq);
            b.iter(|| {
                let draws = parallel::map_range(0..256, |draw| {
                    let mut rng = random::rng(draw as u64);
                    let dirs: Vec<ComplexMatrix> =
                        (0..2).map(|_| random::unit_direction(&mut rng, 6, draw).unwrap()).collect();
                    dkper(&a, &dirs, Formula::Minors).unwrap().norm()
                });
                draws.into_iter().fold(0.0f64, f64::max)
            });
            parallel::set_sequential(false);
        });
    }
    group.finish();
}

fn suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_suite");
    group.sample_size(10);
    let config = VerifyConfig::new(6, 4, 7);
    for (name, seq) in modes() {
        group.bench_function(name, |b| {
            parallel::set_sequential(seq);
            b.iter(|| run_suite(black_box(&config)).unwrap());
            parallel::set_sequential(false);
        });
    }
    group.finish();
}

criterion_group!(benches, ryser, derivative_grids, sampling, suite);
criterion_main!(benches);
