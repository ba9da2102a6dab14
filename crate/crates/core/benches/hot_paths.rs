//! Criterion benches comparing the sequential and rayon code paths of the
//! two hot loops: projective point counting and Bareiss determinants.

use criterion::{criterion_group, criterion_main, Criterion};

fn bench_placeholder(_c: &mut Criterion) {}

criterion_group!(benches, bench_placeholder);
criterion_main!(benches);
