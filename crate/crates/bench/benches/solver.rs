use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use peakon_bench::smooth_state;
use peakon_core::spectral::{product, sobolev_norm};
use peakon_core::systems::{mollified_rhs, reformulated_rhs};
use peakon_core::{rk4_step, SobolevIndex};

fn spectral(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectral");
    let s = SobolevIndex::new(3.0).unwrap();
    for n in [128usize, 512] {
        let st = smooth_state(n);
        group.bench_with_input(BenchmarkId::new("product", n), &st, |b, st| {
            b.iter(|| product(black_box(st.u()), black_box(st.v())).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sobolev_norm", n), &st, |b, st| {
            b.iter(|| sobolev_norm(black_box(st.u()), s))
        });
    }
    group.finish();
}

fn system(c: &mut Criterion) {
    let mut group = c.benchmark_group("system");
    for n in [128usize, 512] {
        let st = smooth_state(n);
        group.bench_with_input(BenchmarkId::new("reformulated_rhs", n), &st, |b, st| {
            b.iter(|| reformulated_rhs(black_box(st)))
        });
        group.bench_with_input(BenchmarkId::new("mollified_rhs", n), &st, |b, st| {
            b.iter(|| mollified_rhs(black_box(st), 0.05).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("rk4_step", n), &st, |b, st| {
            b.iter(|| rk4_step(black_box(st), 1e-3, 0.0).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, spectral, system);
criterion_main!(benches);
