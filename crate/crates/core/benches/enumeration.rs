//! Compares the sequential and parallel drivers on the three enumeration
//! kernels that dominate real runs: the exhaustive axiom check, window
//! certificate verification, and the lattice defeat procedure.
//!
//! Run `cargo bench -p coarse-core`; with `--no-default-features` the
//! parallel strategy degrades to sequential and both series coincide.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use coarse_core::{
    certify_lattice_envelope, check_pseudometric_axioms, defeat_lattice, verify_certificate,
    BoundProfile, CheckOptions, Entourage, Pseudometric, PseudometricFamily, Rational, Window,
};

fn options(parallel: bool) -> CheckOptions {
    let opts = CheckOptions::with_budget(1_000_000_000);
    if parallel {
        opts
    } else {
        opts.sequential()
    }
}

fn strategies() -> [(&'static str, bool); 2] {
    [("sequential", false), ("parallel", true)]
}

fn bench_axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("axioms/latticeF0-12x12");
    let window = Window::lattice_box(12, 12);
    for (name, parallel) in strategies() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &parallel, |b, &p| {
            b.iter(|| {
                check_pseudometric_axioms(&Pseudometric::LatticeF0, &window, &options(p)).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify/envelope-30x30");
    group.sample_size(20);
    let stripes = BoundProfile::uniform(Rational::from(3u64)).unwrap();
    let entourage = Entourage::lattice_envelope(3, stripes.clone()).unwrap();
    let certificate = certify_lattice_envelope(3, &stripes).unwrap();
    let family = PseudometricFamily::lattice(30);
    let window = Window::lattice_box(30, 30);
    for (name, parallel) in strategies() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &parallel, |b, &p| {
            b.iter(|| {
                verify_certificate(&entourage, &certificate, &family, &window, &options(p))
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn bench_defeat(c: &mut Criterion) {
    let mut group = c.benchmark_group("defeat/lattice-10-candidates");
    group.sample_size(10);
    let candidates: Vec<_> = (1..=10u64)
        .map(|m| {
            let stripes = BoundProfile::uniform(Rational::from(m)).unwrap();
            (
                Entourage::lattice_envelope(m, stripes.clone()).unwrap(),
                certify_lattice_envelope(m, &stripes).unwrap(),
            )
        })
        .collect();
    let window = Window::lattice_box(20, 20);
    for (name, parallel) in strategies() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &parallel, |b, &p| {
            b.iter(|| defeat_lattice(&candidates, &window, &options(p)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_axioms, bench_verify, bench_defeat);
criterion_main!(benches);
