use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use nobler::algebra::TruncatedAlgebra;
use nobler::field::FiniteField;
use nobler::greenring::cg_table_with;
use nobler::hopf::HopfStructure;
use nobler::par::Parallelism;

fn bench_cg_table(c: &mut Criterion) {
    let field = Arc::new(FiniteField::new(2, 1).unwrap());
    let alg = TruncatedAlgebra::new(field, vec![3]).unwrap();
    let h = HopfStructure::primitive(alg, "G0");

    let mut group = c.benchmark_group("cg_table_x8_f2");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| cg_table_with(&h, 8, Parallelism::Sequential).unwrap())
    });
    group.bench_function("rayon", |b| {
        b.iter(|| cg_table_with(&h, 8, Parallelism::Rayon).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_cg_table);
criterion_main!(benches);
