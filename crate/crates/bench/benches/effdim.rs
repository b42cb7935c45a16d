use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use effdim_core::oracle::default_max_len;
use effdim_core::suite::{cycle_quiver, standard_suite, DEFAULT_SEED};
use effdim_core::{
    build_path_rep, build_truncated_rep, effdim_truncated, exhaustive_lower_bound_f2, lemma3_entry,
    verify_path_rep, verify_truncated, Quiver,
};

fn dimension(c: &mut Criterion) {
    let suite = standard_suite(DEFAULT_SEED);
    c.bench_function("effdim_truncated/suite", |b| {
        b.iter(|| {
            suite
                .iter()
                .map(|q| effdim_truncated(black_box(q), 4).unwrap())
                .sum::<usize>()
        })
    });
}

fn construction(c: &mut Criterion) {
    let suite = standard_suite(DEFAULT_SEED);
    c.bench_function("build_truncated_rep/suite_n4", |b| {
        b.iter(|| {
            for q in &suite {
                black_box(build_truncated_rep(q, 4).unwrap());
            }
        })
    });
    c.bench_function("lemma3_entry/len12", |b| {
        let word: Vec<usize> = (0..12).map(|i| i % 3).collect();
        b.iter(|| lemma3_entry(black_box(&word)))
    });
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_truncated/cycle");
    for n in [3usize, 5, 7] {
        let q = cycle_quiver(4);
        let rep = build_truncated_rep(&q, n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| verify_truncated(&rep, &q, n).unwrap())
        });
    }
    group.finish();

    let two_loops = Quiver::from_edges(1, &[(0, 0), (0, 0)]).unwrap();
    let rep = build_path_rep(&two_loops);
    c.bench_function("verify_path_rep/two_loops_len8", |b| {
        b.iter(|| verify_path_rep(&rep, &two_loops, 8).unwrap())
    });

    let theta = Quiver::from_edges(3, &[(0, 1), (1, 2), (2, 0), (0, 2)]).unwrap();
    let rep = build_path_rep(&theta);
    let len = default_max_len(&theta);
    c.bench_function("verify_path_rep/chorded_triangle", |b| {
        b.iter(|| verify_path_rep(&rep, &theta, len).unwrap())
    });

    let a3 = Quiver::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    c.bench_function("exhaustive_lower_bound_f2/a3_dim3", |b| {
        b.iter(|| exhaustive_lower_bound_f2(&a3, 2, 3).unwrap())
    });
}

criterion_group!(benches, dimension, construction, verification);
criterion_main!(benches);
