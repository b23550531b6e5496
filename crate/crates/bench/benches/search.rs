use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use cubefree_bench::scattered_set;
use cubefree_core::constructions::residue_construction;
use cubefree_core::search::{
    branch_and_bound_max, brute_force_max, chain_dp_max_pairfree_interval,
    graph_dp_max_pairfree_cyclic,
};
use cubefree_core::{find_cube, Ambient, Problem, SearchConfig};

fn cube_detection(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_cube");
    for n in [30u64, 60, 120] {
        let free = residue_construction(n, 3).unwrap();
        group.bench_with_input(BenchmarkId::new("residue_d3", n), &free, |b, set| {
            b.iter(|| find_cube(black_box(set), 3))
        });
        let dense = scattered_set(n, 0.6, 7);
        group.bench_with_input(BenchmarkId::new("scattered_d3", n), &dense, |b, set| {
            b.iter(|| find_cube(black_box(set), 3))
        });
    }
    let free = residue_construction(60, 5).unwrap();
    group.bench_function("residue_d5/60", |b| {
        b.iter(|| find_cube(black_box(&free), 5))
    });
    group.finish();
}

fn exact_search(c: &mut Criterion) {
    let cfg = SearchConfig::default();
    let mut group = c.benchmark_group("exact_max");
    group.sample_size(10);
    for n in [9u64, 12, 15] {
        let p = Problem::cube_free(Ambient::cyclic(n).unwrap(), 3).unwrap();
        group.bench_with_input(BenchmarkId::new("bnb_cube3", n), &p, |b, p| {
            b.iter(|| branch_and_bound_max(p, &cfg).unwrap())
        });
    }
    let p = Problem::cube_free(Ambient::cyclic(12).unwrap(), 3).unwrap();
    group.bench_function("brute_cube3/12", |b| {
        b.iter(|| brute_force_max(&p, &cfg).unwrap())
    });
    let p = Problem::diagonal_free(Ambient::cyclic(25).unwrap(), 5).unwrap();
    group.bench_function("bnb_diag5/25", |b| {
        b.iter(|| branch_and_bound_max(&p, &cfg).unwrap())
    });
    group.finish();
}

fn pair_free_dp(c: &mut Criterion) {
    let mut group = c.benchmark_group("pair_free_dp");
    for n in [10_000u64, 100_000, 1_000_000] {
        let p = Problem::pair_free(Ambient::interval(n).unwrap(), 2).unwrap();
        group.bench_with_input(BenchmarkId::new("chain", n), &p, |b, p| {
            b.iter(|| chain_dp_max_pairfree_interval(p).unwrap())
        });
        let p = Problem::pair_free(Ambient::cyclic(n).unwrap(), 2).unwrap();
        group.bench_with_input(BenchmarkId::new("functional_graph", n), &p, |b, p| {
            b.iter(|| graph_dp_max_pairfree_cyclic(p).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, cube_detection, exact_search, pair_free_dp);
criterion_main!(benches);
