use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use rangepb_bench::{dp_sized, oracle_sized};
use rangepb_core::{brute_force, fptas_max, solve_exact, solve_scaled, Epsilon, Rule};

fn bench_exact_dp(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_dp");
    for &(projects, voters) in &[(10usize, 20usize), (20, 50), (40, 100)] {
        let instance = dp_sized(projects, voters, 7);
        for rule in Rule::ALL {
            group.bench_with_input(
                BenchmarkId::new(rule.name(), format!("m{projects}_n{voters}")),
                &instance,
                |b, instance| b.iter(|| solve_exact(rule, black_box(instance)).unwrap()),
            );
        }
    }
    group.finish();
}

fn bench_fptas_vs_exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("cost_rule");
    let instance = dp_sized(20, 50, 11);
    group.bench_function("exact", |b| {
        b.iter(|| solve_exact(Rule::Cost, black_box(&instance)).unwrap())
    });
    for (num, den) in [(1u64, 10u64), (1, 2), (9, 10)] {
        let eps = Epsilon::new(num, den).unwrap();
        group.bench_function(format!("fptas_{num}_{den}"), |b| {
            b.iter(|| fptas_max(Rule::Cost, black_box(&instance), eps).unwrap())
        });
    }
    group.bench_function("scaled", |b| {
        b.iter(|| solve_scaled(Rule::Cost, black_box(&instance)).unwrap())
    });
    group.finish();
}

fn bench_brute_force(c: &mut Criterion) {
    let instance = oracle_sized(3);
    c.bench_function("brute_force_m8", |b| {
        b.iter(|| brute_force(Rule::Distance, black_box(&instance)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_exact_dp,
    bench_fptas_vs_exact,
    bench_brute_force
);
criterion_main!(benches);
