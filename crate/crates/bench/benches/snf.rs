use bridgelen::{snf, IntMatrix, OnlineSnfState};
use bridgelen_bench::random_matrix;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("snf/batch");
    for n in [3, 6, 12] {
        let a = IntMatrix::from_rows(&random_matrix(n, n, n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| snf(black_box(a)))
        });
    }
    group.finish();
}

fn online(c: &mut Criterion) {
    let stream = random_matrix(16, 3, 7);
    c.bench_function("snf/online_stream_3d", |b| {
        b.iter(|| {
            let mut state = OnlineSnfState::new(3);
            for v in &stream {
                state.add(black_box(v));
            }
            state.is_complete()
        })
    });
}

criterion_group!(benches, batch, online);
criterion_main!(benches);
