use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use superh_bench::CELLS;
use superh_core::diffops::{check_sl2, nabla2};
use superh_core::harmonic::{harmonic_basis, harmonic_pieces, shared_basis};
use superh_core::integration::{pizzetti, supersphere_integral_phi};

fn harmonics(c: &mut Criterion) {
    let mut g = c.benchmark_group("harmonic_basis");
    for (m, n, k) in CELLS {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{m},{n},{k}")), &(m, n, k), |b, &(m, n, k)| {
            b.iter(|| harmonic_basis(black_box(m), n, k).dim())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("harmonic_pieces");
    for (m, n, k) in CELLS {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{m},{n},{k}")), &(m, n, k), |b, &(m, n, k)| {
            b.iter(|| harmonic_pieces(black_box(m), n, k).unwrap().len())
        });
    }
    g.finish();
}

fn operators(c: &mut Criterion) {
    let (m, n, k) = (3, 2, 4);
    let basis = shared_basis(m, n, k);
    let polys: Vec<_> = (0..basis.len()).map(|i| basis.element(i)).collect();
    let lap = nabla2(m, n);
    c.bench_function("laplacian on P_4(3|4)", |b| b.iter(|| polys.iter().map(|p| lap.apply(p).len()).sum::<usize>()));
    c.bench_function("sl2 relations (2|2), k <= 4", |b| b.iter(|| check_sl2(black_box(2), 1, 4).passed()));
}

fn integrals(c: &mut Criterion) {
    let (m, n, k) = (3, 1, 6);
    let basis = shared_basis(m, n, k);
    let polys: Vec<_> = (0..basis.len()).map(|i| basis.element(i)).collect();
    c.bench_function("pizzetti, P_6(3|2)", |b| b.iter(|| polys.iter().filter(|p| !pizzetti(p, m, n).unwrap().is_zero()).count()));
    c.bench_function("phi form, P_6(3|2)", |b| {
        b.iter(|| polys.iter().filter(|p| !supersphere_integral_phi(p, m, n).unwrap().is_zero()).count())
    });
}

criterion_group!(benches, harmonics, operators, integrals);
criterion_main!(benches);
