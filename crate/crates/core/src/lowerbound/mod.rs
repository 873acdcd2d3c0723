//! Lower-bound graph families: the path-bundle graph `H(n, k)`, its
//! set-disjointness weightings, the simple clique blow-up, and the
//! dissemination graphs, plus the sampled-diameter experiment.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{diameter, sample_edges, Multigraph};
use crate::rng::{self, tag};

/// Edge lists of the three parts of `H(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HParts {
    /// `(i, i+k)`: the `k` paths.
    pub paths: Vec<(usize, usize)>,
    /// `(i, i + k 2^s)` for `i ≡ 0 mod k 2^s`: shortcuts along path 0.
    pub shortcuts: Vec<(usize, usize)>,
    /// `(hk, hk + x)` for `0 < x < k`: one star per group.
    pub stars: Vec<(usize, usize)>,
}

fn check_hk(n: usize, k: usize) -> Result<usize> {
    if k == 0 || !n.is_multiple_of(k) {
        return Err(Error::InvalidParams(format!("k = {k} must divide n = {n}")));
    }
    let l = n / k;
    if l < 2 {
        return Err(Error::InvalidParams(format!("path length n/k = {l} must be at least 2")));
    }
    Ok(l)
}

/// The three edge sets of `H(n, k)`. Shortcut exponents start at `s = 1`,
/// or at `s = 0` when `from_zero` is set (which duplicates path-0 edges).
pub fn h_parts(n: usize, k: usize, from_zero: bool) -> Result<HParts> {
    check_hk(n, k)?;
    let paths = (0..n.saturating_sub(k)).map(|i| (i, i + k)).collect();
    let mut shortcuts = Vec::new();
    let mut span = if from_zero { k } else { 2 * k };
    while span < n {
        shortcuts.extend((0..n - span).step_by(span).map(|i| (i, i + span)));
        span *= 2;
    }
    let stars = (0..n).step_by(k).flat_map(|c| (1..k).map(move |x| (c, c + x))).collect();
    Ok(HParts { paths, shortcuts, stars })
}

/// Unit-weight `H(n, k)`: paths, then shortcuts, then stars.
pub fn gen_base_h(n: usize, k: usize) -> Result<Multigraph> {
    gen_base_h_with(n, k, false)
}

pub fn gen_base_h_with(n: usize, k: usize, from_zero: bool) -> Result<Multigraph> {
    let p = h_parts(n, k, from_zero)?;
    Multigraph::unit(n, p.paths.into_iter().chain(p.shortcuts).chain(p.stars))
}

/// A set-disjointness input over the universe `1..k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disjointness {
    pub x: BTreeSet<usize>,
    pub y: BTreeSet<usize>,
}

impl Disjointness {
    pub fn new(x: impl IntoIterator<Item = usize>, y: impl IntoIterator<Item = usize>) -> Self {
        Disjointness {
            x: x.into_iter().collect(),
            y: y.into_iter().collect(),
        }
    }

    /// Checks the universe and the `|X ∩ Y| <= 1` promise; returns the
    /// common element if there is one.
    pub fn validate(&self, k: usize) -> Result<Option<usize>> {
        if let Some(&bad) = self.x.iter().chain(&self.y).find(|&&e| e == 0 || e >= k) {
            return Err(Error::InvalidParams(format!("element {bad} outside the universe 1..{k}")));
        }
        let common: Vec<usize> = self.x.intersection(&self.y).copied().collect();
        match common.len() {
            0 => Ok(None),
            1 => Ok(Some(common[0])),
            c => Err(Error::InvalidPromise(c)),
        }
    }
}

/// Weighted `H(n, k)` encoding `X` and `Y`: path edges weigh `αℓ+1`, the
/// first-group star edge `(0, x)` is heavy iff `x ∉ X`, the last-group
/// star edge `(n-k, n-k+y)` is heavy iff `y ∉ Y`, everything else weighs 1.
pub fn gen_weighted_cut_instance(n: usize, k: usize, alpha: u64, sets: &Disjointness) -> Result<Multigraph> {
    let l = check_hk(n, k)?;
    if alpha == 0 {
        return Err(Error::InvalidParams("alpha must be at least 1".into()));
    }
    sets.validate(k)?;
    let heavy = alpha * l as u64 + 1;
    let p = h_parts(n, k, false)?;
    let last = n - k;
    let star_weight = |(c, j): (usize, usize)| {
        let x = j - c;
        let is_heavy = (c == 0 && !sets.x.contains(&x)) || (c == last && !sets.y.contains(&x));
        (c, j, if is_heavy { heavy } else { 1 })
    };
    let edges = p
        .paths
        .into_iter()
        .map(|(i, j)| (i, j, heavy))
        .chain(p.shortcuts.into_iter().map(|(i, j)| (i, j, 1)))
        .chain(p.stars.into_iter().map(star_weight));
    Multigraph::new(n, edges)
}

/// Nodes of path `z` in `H(n, k)`.
pub fn path_nodes(n: usize, k: usize, z: usize) -> Vec<usize> {
    (z..n).step_by(k).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleParams {
    pub k: usize,
    pub l: usize,
    pub alpha: usize,
    pub lambda: usize,
}

impl SimpleParams {
    pub fn clique_size(&self) -> usize {
        self.alpha * self.lambda + 1
    }

    /// Interior columns that get vertical single edges: every
    /// `max(1, floor(2ℓ/λ))` columns, at most `λ - 2` of them.
    pub fn interior_columns(&self) -> Vec<usize> {
        let step = (2 * self.l / self.lambda).max(1);
        (1..self.l.saturating_sub(1))
            .filter(|h| h % step == 0)
            .take(self.lambda.saturating_sub(2))
            .collect()
    }
}

/// Simple unit-weight blow-up of the weighted instance: every node becomes
/// a clique `K_{αλ+1}`, heavy relations become complete bipartite joins and
/// unit relations single edges between the lowest ids of the two cliques.
/// Besides the first and last column, only the columns from
/// [`SimpleParams::interior_columns`] are joined vertically.
pub fn gen_simple_cut_instance(params: &SimpleParams, sets: &Disjointness) -> Result<Multigraph> {
    let SimpleParams { k, l, alpha, lambda } = *params;
    if lambda < 2 || alpha == 0 || k < 2 || l < 2 {
        return Err(Error::InvalidParams(format!("need k, ℓ, λ >= 2 and α >= 1, got {params:?}")));
    }
    sets.validate(k)?;
    let n = k * l;
    let s = params.clique_size();
    let mut edges = Vec::new();
    for c in 0..n {
        let base = c * s;
        edges.extend((0..s).flat_map(|a| (a + 1..s).map(move |b| (base + a, base + b))));
    }
    let join = |edges: &mut Vec<(usize, usize)>, a: usize, b: usize| {
        edges.extend((0..s).flat_map(|x| (0..s).map(move |y| (a * s + x, b * s + y))));
    };
    let single = |edges: &mut Vec<(usize, usize)>, a: usize, b: usize| edges.push((a * s, b * s));

    let p = h_parts(n, k, false)?;
    for (i, j) in p.paths {
        join(&mut edges, i, j);
    }
    for (i, j) in p.shortcuts {
        single(&mut edges, i, j);
    }
    let last = n - k;
    for x in 1..k {
        if sets.x.contains(&x) {
            single(&mut edges, 0, x);
        } else {
            join(&mut edges, 0, x);
        }
        if sets.y.contains(&x) {
            single(&mut edges, last, last + x);
        } else {
            join(&mut edges, last, last + x);
        }
    }
    for h in params.interior_columns() {
        for x in 1..k {
            single(&mut edges, h * k, h * k + x);
        }
    }
    Multigraph::unit(n * s, edges)
}

/// Node ids of the cliques on path `z` in the simple instance.
pub fn simple_path_nodes(params: &SimpleParams, z: usize) -> Vec<usize> {
    let s = params.clique_size();
    path_nodes(params.k * params.l, params.k, z)
        .into_iter()
        .flat_map(|c| c * s..(c + 1) * s)
        .collect()
}

/// Largest total weight between `{0..=h}` and `{h+k+1..n-1}` over all `h`.
pub fn verify_family(g: &Multigraph, k: usize) -> u64 {
    let n = g.n();
    let mut diff = vec![0i128; n + 1];
    for e in g.edges() {
        let (i, j) = (e.u.min(e.v), e.u.max(e.v));
        // The edge crosses exactly for h in [i, j - k - 1].
        if j > i + k {
            diff[i] += e.weight as i128;
            diff[j - k] -= e.weight as i128;
        }
    }
    let mut acc = 0i128;
    let mut best = 0i128;
    for d in diff.iter().take(n) {
        acc += d;
        best = best.max(acc);
    }
    best as u64
}

/// Two graphs on `0..n`: `H` is a weight-`λ` path plus unit shortcuts
/// `(i, i + 2^s)`, `s >= 1`, `i ≡ 0 mod 2^s`; `H'` is the `λ`-th power of the
/// unit path plus the shortcuts it does not already contain.
pub fn gen_dissemination_graphs(n: usize, lambda: u64) -> Result<(Multigraph, Multigraph)> {
    if n < 4 || lambda == 0 {
        return Err(Error::InvalidParams(format!("need n >= 4 and λ >= 1, got n = {n}, λ = {lambda}")));
    }
    let mut shortcuts = Vec::new();
    let mut span = 2;
    while span < n {
        shortcuts.extend((0..n - span).step_by(span).map(|i| (i, i + span)));
        span *= 2;
    }
    let h = Multigraph::new(
        n,
        (0..n - 1)
            .map(|i| (i, i + 1, lambda))
            .chain(shortcuts.iter().map(|&(i, j)| (i, j, 1))),
    )?;
    let reach = lambda as usize;
    let power = (0..n).flat_map(|i| (i + 1..=(i + reach).min(n - 1)).map(move |j| (i, j)));
    let extra = shortcuts.iter().copied().filter(|&(i, j)| j - i > reach);
    let h_prime = Multigraph::unit(n, power.chain(extra))?;
    Ok((h, h_prime))
}

/// Hop diameter of the sampled subgraph in each trial (`None` when disconnected).
pub fn sampled_diameter_experiment(g: &Multigraph, p: f64, trials: u32, seed: u64) -> Result<Vec<Option<usize>>> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    (0..trials)
        .map(|t| {
            let s = sample_edges(g, p, &mut rng::stream(seed, &[tag::TRIAL, t as u64]))?;
            Ok(diameter(g, Some(&s.support())))
        })
        .collect()
}

/// Metadata written next to a generated graph file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub family: String,
    pub params: serde_json::Value,
    pub expected_lambda: Option<u64>,
    pub expected_min_cut_members: Option<Vec<usize>>,
}
