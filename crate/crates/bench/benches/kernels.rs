use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superharm::harmonic::{decompose_hk, hk};
use superharm::repr::check_irreducible;
use superharm::sphereint::{berezin_sphere_oracle, pizzetti};
use superharm::{SuperPolynomial, Superspace};

fn product(c: &mut Criterion) {
    let ss = Superspace::new(3, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = SuperPolynomial::random(ss.spec(), &mut rng, 4, 12);
    let g = SuperPolynomial::random(ss.spec(), &mut rng, 4, 12);
    c.bench_function("product 3|4 degree 4", |b| {
        b.iter(|| black_box(&f) * black_box(&g))
    });
}

fn harmonics(c: &mut Criterion) {
    let mut group = c.benchmark_group("harmonics");
    for (m, n, k) in [(3, 1, 4), (2, 2, 4), (4, 2, 4)] {
        let ss = Superspace::new(m, n);
        let id = format!("{m}|{}, k={k}", 2 * n);
        group.bench_with_input(BenchmarkId::new("kernel", &id), &k, |b, &k| {
            b.iter(|| hk(&ss, k))
        });
        group.bench_with_input(BenchmarkId::new("components", &id), &k, |b, &k| {
            b.iter(|| decompose_hk(&ss, k))
        });
    }
    group.finish();
}

fn integration(c: &mut Criterion) {
    let ss = Superspace::new(4, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = SuperPolynomial::random(ss.spec(), &mut rng, 6, 20);
    let mut group = c.benchmark_group("integration 4|4");
    group.bench_function("pizzetti", |b| b.iter(|| pizzetti(black_box(&f), &ss)));
    group.bench_function("berezin oracle", |b| {
        b.iter(|| berezin_sphere_oracle(black_box(&f), &ss))
    });
    group.finish();
}

fn irreducibility(c: &mut Criterion) {
    let mut group = c.benchmark_group("irreducibility");
    group.sample_size(10);
    for (m, n, k) in [(2, 1, 2), (3, 1, 4), (2, 2, 3)] {
        let ss = Superspace::new(m, n);
        group.bench_function(format!("{m}|{} k={k}", 2 * n), |b| {
            b.iter(|| check_irreducible(&ss, k, 1))
        });
    }
    group.finish();
}

criterion_group!(benches, product, harmonics, integration, irreducibility);
criterion_main!(benches);
