use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use congestcut::dist::bfs_tree;
use congestcut::graph::generators::cycle;
use congestcut::layering::layer_count;
use congestcut::sampling::layering_experiment;
use congestcut::{approx_edge_connectivity, layering_mincut, matula_mincut, min_cut_exact, ApproxConfig, BitBudget, LayeringConfig, MatulaConfig};
use congestcut_bench::{random_graph, workloads};

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_cut_exact");
    for n in [16, 64, 128] {
        let g = random_graph(n, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| min_cut_exact(black_box(g))));
    }
    group.finish();
}

fn simulator(c: &mut Criterion) {
    let mut group = c.benchmark_group("bfs_tree");
    for n in [64, 256, 1024] {
        let g = cycle(n, 1);
        let budget = BitBudget::default_for(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| bfs_tree(g, 0, budget)));
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let g = cycle(64, 4);
    c.bench_function("layering_experiment/cycle64x4", |b| {
        let mut seed = 0;
        b.iter(|| {
            seed += 1;
            layering_experiment(&g, 0.19, layer_count(64), seed)
        })
    });
    let g = cycle(16, 8);
    let cfg = ApproxConfig::for_graph(&g);
    c.bench_function("approx_edge_connectivity/cycle16x8", |b| b.iter(|| approx_edge_connectivity(&g, 3, &cfg)));
}

fn mincut(c: &mut Criterion) {
    let mut group = c.benchmark_group("mincut");
    group.sample_size(10);
    for (name, g) in workloads() {
        let lcfg = LayeringConfig::new(&g, 0.5);
        group.bench_with_input(BenchmarkId::new("layering", name), &g, |b, g| b.iter(|| layering_mincut(g, &lcfg, 1)));
        let mcfg = MatulaConfig::new(&g, 0.5);
        group.bench_with_input(BenchmarkId::new("matula", name), &g, |b, g| b.iter(|| matula_mincut(g, &mcfg, 1)));
    }
    group.finish();
}

criterion_group!(benches, oracle, simulator, sampling, mincut);
criterion_main!(benches);
