use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use holorec::batch::{run_batch, BatchOptions, Parallelism};
use holorec::corpus::builtin_corpus;

fn batch(c: &mut Criterion) {
    let corpus = builtin_corpus();
    let mut group = c.benchmark_group("builtin_corpus");
    group.sample_size(10);
    for (name, parallelism) in [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)] {
        let options = BatchOptions { parallelism, ..Default::default() };
        group.bench_function(name, |b| b.iter(|| run_batch(black_box(&corpus), &options).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, batch);
criterion_main!(benches);
