use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use poncelet_bench::{conjugated_torsion, envelope_system, triangle_pair, triangle_support};
use poncelet_core::{conjugator_to_rotation, curve_from_support, rotation_number, verify_pair, PlaneCurve};

fn curves(c: &mut Criterion) {
    let k = curve_from_support(&triangle_support());
    c.bench_function("support_curve_sample_1024", |b| b.iter(|| black_box(k.sample(1024))));
    let (_, env) = envelope_system();
    c.bench_function("envelope_sample_1024", |b| b.iter(|| black_box(env.sample(1024))));
}

fn maps(c: &mut Criterion) {
    let f = conjugated_torsion(5);
    c.bench_function("rotation_number_10k", |b| b.iter(|| rotation_number(black_box(f.map()), 10_000).unwrap()));
    c.bench_function("conjugator", |b| b.iter(|| conjugator_to_rotation(black_box(&f)).unwrap()));
}

fn polygons(c: &mut Criterion) {
    let cfg = triangle_pair();
    c.bench_function("triangle_polygon", |b| b.iter(|| black_box(cfg.polygon(black_box(0.3)))));
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    g.bench_function("triangle_16_probes", |b| b.iter(|| verify_pair(&cfg, 16, 1e-7).unwrap()));
    g.finish();
}

criterion_group!(benches, curves, maps, polygons);
criterion_main!(benches);
