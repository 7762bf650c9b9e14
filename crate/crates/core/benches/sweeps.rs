use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use circhyp::components::CirculantOf;
use circhyp::funceq::residual_matrix_of;
use circhyp::samples::{random_points, standard_pairs, DEFAULT_SEED};
use circhyp::sweep;
use circhyp::{Circulant, Order, ScalarFunction};

fn residual_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("residual_sweep");
    group.sample_size(20);
    for &(n, pairs) in &[(4usize, 40usize), (8, 400), (16, 2000)] {
        let family = CirculantOf::new(ScalarFunction::exp(), Order::new(n).unwrap());
        let samples = standard_pairs(DEFAULT_SEED, pairs);
        let id = format!("n{n}_pairs{pairs}");
        group.bench_with_input(BenchmarkId::new("seq", &id), &samples, |b, s| {
            b.iter(|| sweep::max_over_seq(s, |&(x, y)| residual_matrix_of(&family, 1, x, y).one_norm()))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("par", &id), &samples, |b, s| {
            b.iter(|| sweep::max_over_par(s, |&(x, y)| residual_matrix_of(&family, 1, x, y).one_norm()))
        });
    }
    group.finish();
}

fn eigenvalues(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigenvalues");
    for log in [3u32, 5, 6, 8] {
        let n = 1usize << log;
        let a = Circulant::from_row(random_points(7, n, 1.0)).unwrap();
        group.bench_with_input(BenchmarkId::new("radix2", n), &a, |b, a| b.iter(|| black_box(a.eigenvalues())));
        group.bench_with_input(BenchmarkId::new("direct", n), &a, |b, a| {
            b.iter(|| black_box(a.eigenvalues_direct()))
        });
    }
    group.finish();
}

criterion_group!(benches, residual_sweep, eigenvalues);
criterion_main!(benches);
