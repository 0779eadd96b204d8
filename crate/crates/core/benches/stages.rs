//! Criterion benches for the pipeline stages, comparing the default rayon
//! thread pool against a single-threaded pool running the same code. With
//! the `parallel` feature disabled both groups measure the sequential path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cuspidal::basis::{compute_basis, Mode};
use cuspidal::chars::char_trivial;
use cuspidal::cohomology::{relations_matrix, ModularContext};
use cuspidal::hecke::{HeckeEngine, KernelElement};
use cuspidal::polyaction::HomPoly;
use cuspidal::BigRat;

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let full = rayon::ThreadPoolBuilder::new().build().unwrap();
    vec![("threads_1", single), ("threads_all", full)]
}

fn ctx(level: u64, weight: u32) -> ModularContext<BigRat> {
    ModularContext::new(level, weight, char_trivial(level)).unwrap()
}

fn bench_relations_nullspace(c: &mut Criterion) {
    let mut group = c.benchmark_group("relations_nullspace");
    group.sample_size(10);
    for (name, pool) in pools() {
        for &(level, weight) in &[(25u64, 4u32), (40, 4)] {
            let context = ctx(level, weight);
            group.bench_with_input(
                BenchmarkId::new(name, format!("N{level}k{weight}")),
                &context,
                |b, context| {
                    b.iter(|| {
                        pool.install(|| {
                            let rel = relations_matrix(context);
                            std::hint::black_box(rel.nullspace().rows())
                        })
                    })
                },
            );
        }
    }
    group.finish();
}

fn bench_hecke_columns(c: &mut Criterion) {
    let mut group = c.benchmark_group("hecke_columns");
    group.sample_size(10);
    let context = ctx(25, 4);
    let ke = KernelElement {
        poly: HomPoly::monomial(4, 1),
        coset: 3,
    };
    for (name, pool) in pools() {
        group.bench_function(name, |b| {
            b.iter(|| {
                pool.install(|| {
                    let engine = HeckeEngine::with_caching(&context, false);
                    std::hint::black_box(engine.column_matrix(10, &ke))
                })
            })
        });
    }
    group.finish();
}

fn bench_full_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("full_pipeline");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, "N25k4"), |b| {
            let context = ctx(25, 4);
            b.iter(|| pool.install(|| std::hint::black_box(compute_basis(&context, 10, Mode::Probe).unwrap())))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_relations_nullspace, bench_hecke_columns, bench_full_pipeline);
criterion_main!(benches);
