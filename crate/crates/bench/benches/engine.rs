use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use qdual_core::params::hermitian_exists;
use qdual_core::unitarity::{intertwiner_det, unitarity_scan_with, ScanOptions};
use qdual_core::weights::{freudenthal_multiplicity, weight_table};
use qdual_core::weyl::{longest_word, orbit};
use qdual_core::{ComplexWeight, ParamPair, QParam, RootSystem, Weight};

fn weights(c: &mut Criterion) {
    let e6 = RootSystem::parse("E6").unwrap();
    let mu = Weight::from_ints(&[1, 0, 0, 0, 0, 1]);
    // Cloning drops the table cache, so each iteration builds from scratch.
    c.bench_function("freudenthal E6 (1,0,0,0,0,1) at 0", |b| {
        b.iter_batched(
            || e6.clone(),
            |rs| freudenthal_multiplicity(&rs, black_box(&mu), &Weight::zero(6)).unwrap(),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("freudenthal E6 cached lookup", |b| {
        b.iter(|| freudenthal_multiplicity(&e6, black_box(&mu), &Weight::zero(6)).unwrap())
    });
    let b4 = RootSystem::parse("B4").unwrap();
    let nu = Weight::from_ints(&[2, 1, 0, 1]);
    c.bench_function("weight table B4 (2,1,0,1)", |b| {
        b.iter_batched(
            || b4.clone(),
            |rs| weight_table(&rs, black_box(&nu)).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn weyl(c: &mut Criterion) {
    let f4 = RootSystem::parse("F4").unwrap();
    let x = Weight::from_ints(&[1, 2, 3, 4]);
    c.bench_function("orbit F4 regular", |b| b.iter(|| orbit(&f4, black_box(&x)).unwrap()));
}

fn unitarity(c: &mut Criterion) {
    let q = QParam::new(qdual_core::number::ratio(1, 2)).unwrap();
    let b2 = RootSystem::parse("B2").unwrap();
    let p = ParamPair::new(
        Weight::from_ints(&[1, 0]),
        ComplexWeight::real(Weight::new(vec![
            qdual_core::number::ratio(1, 2),
            qdual_core::number::ratio(1, 3),
        ])),
    );
    let w0 = longest_word(&b2);
    let mu = Weight::from_ints(&[3, 2]);
    c.bench_function("intertwiner det B2 longest word", |b| {
        b.iter(|| intertwiner_det(&b2, &q, black_box(&mu), &p, &w0).unwrap())
    });
    c.bench_function("hermitian B2", |b| b.iter(|| hermitian_exists(&b2, black_box(&p)).unwrap()));
    let opts = ScanOptions {
        cutoff: 6,
        steps: 32,
        jobs: Some(1),
    };
    let spherical = ParamPair::new(
        Weight::zero(2),
        ComplexWeight::real(Weight::new(vec![
            qdual_core::number::ratio(1, 2),
            qdual_core::number::ratio(1, 2),
        ])),
    );
    c.bench_function("scan B2 spherical cutoff 6", |b| {
        b.iter(|| unitarity_scan_with(&b2, &q, black_box(&spherical), &opts).unwrap())
    });
}

criterion_group!(benches, weights, weyl, unitarity);
criterion_main!(benches);
