//! Small named graphs used by examples, tests and benchmarks.

use super::Multigraph;

/// `n`-cycle whose edges all have weight `mult`. Edge `i` joins `i` and `i+1 mod n`.
pub fn cycle(n: usize, mult: u64) -> Multigraph {
    assert!(n >= 3 && mult >= 1);
    Multigraph::new(n, (0..n).map(|i| (i, (i + 1) % n, mult))).expect("valid cycle")
}

pub fn complete(n: usize) -> Multigraph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v, 1)));
    Multigraph::new(n, edges).expect("valid clique")
}

/// Path `0 - 1 - ... - len` with the given edge weights.
pub fn path(weights: &[u64]) -> Multigraph {
    Multigraph::new(
        weights.len() + 1,
        weights.iter().enumerate().map(|(i, &w)| (i, i + 1, w)),
    )
    .expect("valid path")
}

/// Star with center 0 and leaves `1..n`.
pub fn star(n: usize) -> Multigraph {
    Multigraph::new(n, (1..n).map(|v| (0, v, 1))).expect("valid star")
}

/// Two unit cliques `K_s` on `0..s` and `s..2s`, joined by a unit bridge `(s-1, s)`.
pub fn dumbbell(s: usize) -> Multigraph {
    assert!(s >= 2);
    let clique = |off: usize| (0..s).flat_map(move |u| (u + 1..s).map(move |v| (u + off, v + off, 1)));
    let edges = clique(0).chain(clique(s)).chain([(s - 1, s, 1)]);
    Multigraph::new(2 * s, edges).expect("valid dumbbell")
}

/// Edge id of the bridge in [`dumbbell`].
pub fn dumbbell_bridge(s: usize) -> usize {
    s * (s - 1)
}

/// Random multigraph on `n` nodes: `extra` edges with endpoints drawn
/// uniformly, weights in `1..=max_weight`. Parallel edges are common and
/// the result may be disconnected.
pub fn random_multigraph(n: usize, extra: usize, max_weight: u64, rng: &mut impl rand::Rng) -> Multigraph {
    assert!(n >= 2 && max_weight >= 1);
    let edges: Vec<_> = (0..extra)
        .map(|_| {
            let u = rng.random_range(0..n);
            let mut v = rng.random_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            (u, v, rng.random_range(1..=max_weight))
        })
        .collect();
    Multigraph::new(n, edges).expect("valid random multigraph")
}

/// Connected random multigraph: a random spanning tree plus `extra` random edges.
pub fn random_connected(n: usize, extra: usize, max_weight: u64, rng: &mut impl rand::Rng) -> Multigraph {
    let tree = (1..n).map(|v| (rng.random_range(0..v), v, rng.random_range(1..=max_weight)));
    let tree: Vec<_> = tree.collect();
    let more = random_multigraph(n, extra, max_weight, rng);
    let edges = tree.into_iter().chain(more.edges().iter().map(|e| (e.u, e.v, e.weight)));
    Multigraph::new(n, edges).expect("valid random multigraph")
}
