//! Benchmarks comparing the data-parallel paths against their sequential
//! fallbacks: the finite-field enumerator at different worker counts and a
//! batch verification sweep over the catalog.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use doex::catalog;
use doex::dext::synth_relations;
use doex::enumerate;
use doex::ncgb::{self, complete};

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_gf3");
    group.sample_size(10);
    for workers in [1usize, 2, 8] {
        group.bench_with_input(
            BenchmarkId::from_parameter(workers),
            &workers,
            |b, &workers| {
                b.iter(|| {
                    enumerate::enumerate_csolutions(3, (2, 0), (2, 0), workers).unwrap()
                })
            },
        );
    }
    group.finish();
}

fn verify_one(name: char) {
    let (field, pa) = catalog::default_specializations(name).unwrap().remove(0);
    let d = catalog::instantiate(name, &pa, &field).unwrap();
    let rs = complete(&synth_relations(&d), 8, &field).unwrap();
    let dims = rs.graded_dims(8, ncgb::full_alphabet()).unwrap();
    assert_eq!(dims.0[8], 165);
}

fn bench_catalog_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("catalog_hilbert_sweep");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| {
            for &name in &catalog::FAMILY_NAMES {
                verify_one(name);
            }
        })
    });
    #[cfg(feature = "parallel")]
    group.bench_function("rayon", |b| {
        use rayon::prelude::*;
        b.iter(|| {
            catalog::FAMILY_NAMES.par_iter().for_each(|&name| verify_one(name));
        })
    });
    group.finish();
}

criterion_group!(benches, bench_enumeration, bench_catalog_sweep);
criterion_main!(benches);
