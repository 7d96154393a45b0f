use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use lwik::oracle::{taylor_series, w_branch_m1, w_principal};
use lwik::c64;
use lwik_bench::oracle_points;

fn principal(c: &mut Criterion) {
    let mut g = c.benchmark_group("w_principal");
    for (name, z) in oracle_points() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &z, |b, &z| {
            b.iter(|| w_principal(black_box(z)))
        });
    }
    g.finish();
}

fn branch_m1(c: &mut Criterion) {
    c.bench_function("w_branch_m1/-0.2", |b| b.iter(|| w_branch_m1(black_box(-0.2))));
}

fn taylor(c: &mut Criterion) {
    c.bench_function("taylor_series/20", |b| {
        b.iter(|| taylor_series(black_box(c64(0.05, 0.02)), 20))
    });
}

criterion_group!(benches, principal, branch_m1, taylor);
criterion_main!(benches);
