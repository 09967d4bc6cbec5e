//! Side-by-side benches of the data-parallel inner loops and their
//! sequential fallback. With the default `parallel` feature both variants
//! run from one binary via the runtime override; building with
//! `--no-default-features` benches the always-sequential build.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use linf_ramsey::baton::Baton;
use linf_ramsey::colouring::{
    periodic_colouring_for_baton, verify_colouring, ForbiddenSpace, PeriodicColouring,
};
use linf_ramsey::density::{exact_density_line, Pattern};
use linf_ramsey::exec::force_sequential;
use linf_ramsey::geometry::{enumerate_baton_copies, GridSet};

fn proper_colouring() -> (PeriodicColouring, ForbiddenSpace) {
    // A real pipeline colouring: proper, so the verifier scans the whole
    // window (8^3 anchors, two offset layers each).
    let (colouring, _) = periodic_colouring_for_baton(&Baton::unit(2), 6, 3, 0, 100).unwrap();
    (colouring, ForbiddenSpace::Baton(Baton::unit(2)))
}

fn bench_verify(c: &mut Criterion) {
    let (colouring, forbidden) = proper_colouring();
    let mut group = c.benchmark_group("verify_colouring_window");
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(verify_colouring(&colouring, &forbidden).unwrap()))
    });
    group.bench_function("sequential", |b| {
        let _guard = force_sequential();
        b.iter(|| black_box(verify_colouring(&colouring, &forbidden).unwrap()))
    });
    group.finish();
}

fn bench_density(c: &mut Criterion) {
    let pattern = Pattern::line(&[0, 3, 7, 10, 14]).unwrap();
    let mut group = c.benchmark_group("exact_density_line_16384_states");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(exact_density_line(&pattern).unwrap()))
    });
    group.bench_function("sequential", |b| {
        let _guard = force_sequential();
        b.iter(|| black_box(exact_density_line(&pattern).unwrap()))
    });
    group.finish();
}

fn bench_copy_enumeration(c: &mut Criterion) {
    let set = GridSet::full_box(vec![6, 6, 6]);
    let baton = Baton::unit(3);
    let mut group = c.benchmark_group("enumerate_baton_copies_6x6x6");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(enumerate_baton_copies(&set, &baton).unwrap().len()))
    });
    group.bench_function("sequential", |b| {
        let _guard = force_sequential();
        b.iter(|| black_box(enumerate_baton_copies(&set, &baton).unwrap().len()))
    });
    group.finish();
}

criterion_group!(benches, bench_verify, bench_density, bench_copy_enumeration);
criterion_main!(benches);
