use std::hint::black_box;

use bandlimit::*;
use bandlimit_bench::unit_window;
use criterion::{criterion_group, criterion_main, Criterion};

fn sinc_kernels(c: &mut Criterion) {
    c.bench_function("sinc_derivative m=3", |b| b.iter(|| sinc_derivative(3, black_box(0.37))));
    c.bench_function("coefficient_table odd m=2 tol=1e-8", |b| {
        b.iter(|| coefficient_table(Parity::Odd, 2, black_box(1e-8)))
    });
}

fn boas(c: &mut Criterion) {
    let f = make_reference(Reference::Sin { phase: 0.0 }, 1.0).unwrap();
    c.bench_function("boas_derivative r=1 K=1e4", |b| {
        b.iter(|| boas_derivative(&f, 1, black_box(0.3), Truncation::HalfWidth(10_000)))
    });
    c.bench_function("boas_derivative r=2 tol=1e-3", |b| b.iter(|| boas_derivative(&f, 2, black_box(0.3), 1e-3)));
    c.bench_function("boas_derivative_fast r=2 tol=1e-3", |b| {
        b.iter(|| boas_derivative_fast(&f, 2, black_box(0.3), 1e-3))
    });
}

fn sampling(c: &mut Criterion) {
    let f = make_reference(Reference::Fejer, 1.0).unwrap();
    let s = UniformSamples::critical(&f, -10_000, 10_000).unwrap();
    c.bench_function("wks_eval |k|<=1e4", |b| b.iter(|| wks_eval(&s, 0, black_box(1.3), 1e-3)));
}

fn dht(c: &mut Criterion) {
    let a = unit_window(-16, 32);
    let mut g = c.benchmark_group("dht");
    g.sample_size(10);
    g.bench_function("hilbert_group t=0.5 expand=1e4", |b| b.iter(|| hilbert_group(black_box(0.5), &a, 10_000)));
    g.bench_function("dht_vt t=0.3 K=1e3 expand=1e3", |b| {
        b.iter(|| dht_vt(&a, black_box(0.3), Truncation::HalfWidth(1000), Some(1000)))
    });
    g.bench_function("dht_power r=2 tol=1e-4 expand=300", |b| b.iter(|| dht_power(&a, 2, 1e-4, Some(300))));
    g.finish();
}

fn orbits(c: &mut Criterion) {
    let rot = rotation_instance(&[0.5, 1.0, 1.5]).unwrap();
    let b = rot.bernstein(vec![0.3, -0.2, 0.5, 0.1, -0.4, 0.6]).unwrap();
    c.bench_function("orbit_reconstruct rotation K=1e4", |bch| {
        bch.iter(|| orbit_reconstruct(&b, black_box(0.7), Truncation::HalfWidth(10_000)))
    });
}

criterion_group!(benches, sinc_kernels, boas, sampling, dht, orbits);
criterion_main!(benches);
