//! Fixed workloads shared by the benchmarks.

use congestcut::graph::generators::{cycle, dumbbell, random_connected};
use congestcut::lowerbound::{gen_weighted_cut_instance, Disjointness};
use congestcut::{rng, Multigraph};

/// Named graphs, smallest first.
pub fn workloads() -> Vec<(&'static str, Multigraph)> {
    vec![
        ("dumbbell5", dumbbell(5)),
        ("cycle16", cycle(16, 1)),
        ("h16x4", gen_weighted_cut_instance(16, 4, 1, &Disjointness::new([1, 2], [2, 3])).expect("valid parameters")),
    ]
}

/// Connected random multigraph on `n` nodes with `2n` extra edges.
pub fn random_graph(n: usize, seed: u64) -> Multigraph {
    random_connected(n, 2 * n, 8, &mut rng::stream(seed, &[]))
}
