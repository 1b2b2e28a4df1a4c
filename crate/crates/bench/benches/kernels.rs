use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use pucodes::analysis::{min_distance_numeric, FlatCodebook, DEFAULT_PAIR_BUDGET};
use pucodes::codebook::{clifford_codebook, clifford_t_codebook};
use pucodes::pu::DEFAULT_QUANTUM;
use pucodes::{canonicalize, geodesic_midpoint, haar_unitary, RandomStream};
use pucodes_bench::haar_classes;

fn bench_core(c: &mut Criterion) {
    for n in [2usize, 4] {
        let mut rng = RandomStream::new(1, 0);
        c.bench_function(&format!("haar_unitary n={n}"), |b| {
            b.iter(|| haar_unitary(black_box(n), &mut rng))
        });
        let u = haar_classes(n, 1, 2).remove(0);
        let rotated = u.rep().scale_phase(0.7).into_matrix();
        c.bench_function(&format!("canonicalize n={n}"), |b| {
            b.iter(|| canonicalize(black_box(&rotated), DEFAULT_QUANTUM))
        });
        let pair = haar_classes(n, 2, 3);
        c.bench_function(&format!("geodesic_midpoint n={n}"), |b| {
            b.iter(|| geodesic_midpoint(black_box(&pair[0]), black_box(&pair[1])))
        });
    }
}

fn bench_codebooks(c: &mut Criterion) {
    let mut group = c.benchmark_group("codebooks");
    group.sample_size(10);
    group.bench_function("clifford m=2 closure", |b| b.iter(|| clifford_codebook(2)));
    group.bench_function("clifford_t l=6 normal form", |b| {
        b.iter(|| clifford_t_codebook(6))
    });
    let ct3 = clifford_t_codebook(3).unwrap();
    group.bench_function("min distance clifford_t l=3", |b| {
        b.iter(|| min_distance_numeric(black_box(&ct3), DEFAULT_PAIR_BUDGET))
    });
    group.finish();

    let ct4 = FlatCodebook::new(&clifford_t_codebook(4).unwrap()).unwrap();
    let mut rng = RandomStream::new(4, 0);
    c.bench_function("nearest codeword clifford_t l=4", |b| {
        b.iter_batched(
            || haar_unitary(2, &mut rng),
            |q| ct4.nearest(q.matrix()),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, bench_core, bench_codebooks);
criterion_main!(benches);
