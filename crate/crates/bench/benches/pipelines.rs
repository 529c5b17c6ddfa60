//! End-to-end pipeline benchmarks: Groebner bases, resolutions, Ext by both
//! engines, and the isomorphism-driven verification checks.

use criterion::{criterion_group, criterion_main, Criterion};
use homlab_core::fpmodule::{resolution, FPModule};
use homlab_core::homology::{ext_module, hom_module};
use homlab_core::oracle::{lin_ext, realize};
use homlab_core::ring::{PolyRing, QuotientRing};
use homlab_core::theorems::standard_artinian_rings;
use std::hint::black_box;
use std::sync::Arc;

fn fat_point() -> Arc<QuotientRing> {
    standard_artinian_rings()[0].clone()
}

fn cusp() -> Arc<QuotientRing> {
    let poly = Arc::new(PolyRing::new(5, &["x", "y"], &[2, 3]));
    QuotientRing::new(poly.clone(), vec![poly.parse("y^2 - x^3").unwrap()])
}

fn bench_groebner(c: &mut Criterion) {
    let poly = Arc::new(PolyRing::new(101, &["x", "y", "z"], &[1, 1, 1]));
    let gens: Vec<_> = ["x^2*y - z^3", "y^3 - x*z^2", "x^4 - y*z^3"]
        .iter()
        .map(|s| poly.parse(s).unwrap())
        .collect();
    c.bench_function("groebner_three_vars", |b| {
        b.iter(|| {
            let ring = QuotientRing::new(poly.clone(), black_box(gens.clone()));
            black_box(ring.hilbert_function(6))
        })
    });
}

fn bench_resolution(c: &mut Criterion) {
    let ring = fat_point();
    let k = FPModule::residue_field(&ring);
    c.bench_function("resolution_residue_field_len6", |b| {
        b.iter(|| {
            let r = resolution(black_box(&k), 6);
            black_box((0..=6).map(|i| r.betti(i)).sum::<usize>())
        })
    });
}

fn bench_ext_engines(c: &mut Criterion) {
    let ring = fat_point();
    let k = FPModule::residue_field(&ring);
    let m = FPModule::maximal_ideal(&ring);
    c.bench_function("ext_presentation_engine", |b| {
        b.iter(|| black_box(ext_module(&m, &k, 3).length()))
    });
    let a = realize(&m);
    let bb = realize(&k);
    c.bench_function("ext_linear_oracle", |b| {
        b.iter(|| black_box(lin_ext(&a, &bb, 3, &ring)))
    });
}

fn bench_hom_over_curve(c: &mut Criterion) {
    let ring = cusp();
    let m = FPModule::maximal_ideal(&ring);
    c.bench_function("end_of_maximal_ideal_cusp", |b| {
        b.iter(|| black_box(hom_module(&m, &m).mu()))
    });
}

criterion_group!(
    benches,
    bench_groebner,
    bench_resolution,
    bench_ext_engines,
    bench_hom_over_curve
);
criterion_main!(benches);
