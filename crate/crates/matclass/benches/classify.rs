//! Training and evaluation throughput on the default synthetic dataset.
//!
//! Benchmark ids carry the compile mode, so runs with and without the
//! `parallel` feature land in distinct criterion groups:
//!
//! ```text
//! cargo bench -p matclass                          # parallel (default)
//! cargo bench -p matclass --no-default-features    # sequential
//! ```

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use matclass::c45::{self, TreeParams};
use matclass::data::stratified_split;
use matclass::eval::evaluate_classifier;
use matclass::naive_bayes;
use matclass::synthgen::{default_spec, generate};

fn mode() -> &'static str {
    if cfg!(feature = "parallel") {
        "parallel"
    } else {
        "sequential"
    }
}

fn bench_classifiers(c: &mut Criterion) {
    let spec = default_spec();
    let dataset = generate(&spec, 2431, 7).expect("generate");
    let (train, test) = stratified_split(&dataset, 0.75, 7).expect("split");

    let mut group = c.benchmark_group("matclass");

    group.bench_function(BenchmarkId::new("generate_2431", mode()), |b| {
        b.iter(|| black_box(generate(&spec, 2431, 7).unwrap()))
    });

    group.bench_function(BenchmarkId::new("nb_train", mode()), |b| {
        b.iter(|| black_box(naive_bayes::train(&train, 1.0, 1e-6).unwrap()))
    });

    group.bench_function(BenchmarkId::new("c45_build", mode()), |b| {
        b.iter(|| black_box(c45::build(&train, TreeParams::default()).unwrap()))
    });

    let nb_model = naive_bayes::train(&train, 1.0, 1e-6).expect("train nb");
    group.bench_function(BenchmarkId::new("nb_evaluate", mode()), |b| {
        b.iter(|| black_box(evaluate_classifier(&nb_model, &test).unwrap()))
    });

    let tree = c45::build(&train, TreeParams::default()).expect("build tree");
    group.bench_function(BenchmarkId::new("c45_evaluate", mode()), |b| {
        b.iter(|| black_box(evaluate_classifier(&tree, &test).unwrap()))
    });

    group.finish();
}

criterion_group!(benches, bench_classifiers);
criterion_main!(benches);
