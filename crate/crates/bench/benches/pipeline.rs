use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use icisb_bench::*;

fn groebner(c: &mut Criterion) {
    let mut g = c.benchmark_group("buchberger");
    for t in [1i64, 5] {
        let w = cubic_milnor_ideal(t);
        g.bench_function(format!("cubic_milnor_{t}"), |b| b.iter(|| groebner_basis(black_box(&w))));
    }
    let w = pair_quotient_ideal();
    g.bench_function("surface_pair_quotient", |b| b.iter(|| groebner_basis(black_box(&w))));
    g.finish();
}

fn bprime_pipeline(c: &mut Criterion) {
    let (m, w) = pair_morphism();
    c.bench_function("bprime/surface_pair", |b| b.iter(|| bprime(black_box(&m), black_box(&w))));
}

fn weyl_apply(c: &mut Criterion) {
    let mut g = c.benchmark_group("weyl_apply");
    for n in [3usize, 5, 8] {
        let w = laplacian_action(n);
        g.bench_function(format!("laplacian_{n}"), |b| b.iter(|| apply(black_box(&w))));
    }
    g.finish();
}

criterion_group!(benches, groebner, bprime_pipeline, weyl_apply);
criterion_main!(benches);
