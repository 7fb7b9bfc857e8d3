use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use drinfeld_core::drinfeld::{
    default_extension_degree, expand_phi, oracle_interpolate, verify_substitution,
};
use drinfeld_core::rng::stream;

fn expand(c: &mut Criterion) {
    let mut group = c.benchmark_group("expand_phi");
    group.sample_size(10);
    for q in [5u64, 9, 16, 27] {
        group.bench_with_input(BenchmarkId::from_parameter(q), &q, |b, &q| {
            b.iter(|| expand_phi(q).unwrap())
        });
    }
    group.finish();
}

fn substitution(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_substitution");
    group.sample_size(10);
    for q in [5u64, 9, 16] {
        let phi = expand_phi(q).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(q), &phi, |b, phi| {
            b.iter(|| verify_substitution(phi).unwrap())
        });
    }
    group.finish();
}

fn interpolation(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_interpolate");
    group.sample_size(10);
    for q in [3u64, 5, 8] {
        let phi = expand_phi(q).unwrap();
        let k = default_extension_degree(q);
        group.bench_with_input(BenchmarkId::from_parameter(q), &phi, |b, phi| {
            b.iter(|| oracle_interpolate(phi, k, &mut stream(0, q, 1, 0)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, expand, substitution, interpolation);
criterion_main!(benches);
