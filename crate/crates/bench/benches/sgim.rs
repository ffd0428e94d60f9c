use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use specperiod::gegenbauer::{build_sgim, SGGNodes};

fn sgim_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("sgim_construction");
    for degree in [8usize, 16, 30] {
        for alpha in [-0.1, 0.5] {
            let sgg = SGGNodes::on_interval(alpha, degree, 0.0, 1.0).unwrap();
            group.bench_with_input(
                BenchmarkId::new(format!("alpha_{alpha}"), degree),
                &sgg,
                |b, sgg| b.iter(|| build_sgim(sgg, None).unwrap()),
            );
        }
    }
    group.finish();
}

criterion_group!(benches, sgim_construction);
criterion_main!(benches);
