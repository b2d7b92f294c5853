use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dimer_bench::weighted_suite;
use dimer_core::dimer::{partition_oracle, BoundaryCondition};
use dimer_core::kasteleyn;
use dimer_core::pfaffian::{self, SkewMatrix};
use dimer_core::rational::frac;
use std::hint::black_box;

fn partition(c: &mut Criterion) {
    let mut group = c.benchmark_group("partition");
    for (name, g, w) in weighted_suite() {
        group.bench_with_input(BenchmarkId::new("oracle", name), &(&g, &w), |b, (g, w)| {
            b.iter(|| partition_oracle(g, w, None))
        });
        group.bench_with_input(BenchmarkId::new("pfaffian", name), &(&g, &w), |b, (g, w)| {
            b.iter(|| {
                BoundaryCondition::all(g)
                    .iter()
                    .map(|bc| kasteleyn::partition_z_bc(g, w, bc).unwrap())
                    .sum::<dimer_core::Rational>()
            })
        });
    }
    group.finish();
}

fn pfaffians(c: &mut Criterion) {
    let mut group = c.benchmark_group("pf");
    for n in [8usize, 16, 32] {
        let upper: Vec<_> = (0..n * (n - 1) / 2).map(|k| frac((k % 7) as i64 - 3, (k % 4) as i64 + 1)).collect();
        let m = SkewMatrix::from_upper(n, &upper);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| pfaffian::pf(black_box(m))));
    }
    group.finish();
}

criterion_group!(benches, partition, pfaffians);
criterion_main!(benches);
