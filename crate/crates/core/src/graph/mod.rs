//! Weighted undirected multigraphs, cuts and the centralized utilities every
//! distributed routine is checked against.
//!
//! A weight-`w` edge stands for `w` parallel unit edges. Sampling routines
//! work on that unit expansion lazily, without materializing the copies.

mod dsu;
pub mod generators;
mod mincut;
mod sample;
mod subset;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dsu::DisjointSets;
pub use mincut::{min_cut_bruteforce, min_cut_exact, BRUTEFORCE_LIMIT};
pub use sample::{sample_edges, UnitSample};
pub use subset::EdgeSubset;

/// Default exponent `c` in the weight cap `w <= n^c`.
pub const DEFAULT_WEIGHT_EXPONENT: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: u64,
}

impl Edge {
    /// The endpoint opposite to `x`.
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected multigraph on nodes `0..n` with dense edge ids `0..m`.
///
/// Weights coming from user input are at least 1. [`Multigraph::reweighted`]
/// may assign weight 0 to an edge; such an edge stays a communication link
/// but carries no weight in any cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl Multigraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, u64)>) -> Result<Self> {
        let edges: Vec<Edge> = edges
            .into_iter()
            .map(|(u, v, weight)| Edge { u, v, weight })
            .collect();
        for (id, e) in edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {id} ({}, {}) references a node outside 0..{n}",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidGraph(format!("edge {id} is a self-loop at {}", e.u)));
            }
            if e.weight == 0 {
                return Err(Error::InvalidGraph(format!("edge {id} has weight 0")));
            }
        }
        Ok(Self::build(n, edges))
    }

    /// Unit-weight graph from an edge list.
    pub fn unit(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(n, edges.into_iter().map(|(u, v)| (u, v, 1)))
    }

    fn build(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            adj[e.u].push((id, e.v));
            adj[e.v].push((id, e.u));
        }
        Multigraph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    pub fn weight(&self, id: usize) -> u64 {
        self.edges[id].weight
    }

    pub fn weights(&self) -> Vec<u64> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    /// Incident `(edge id, neighbor)` pairs of `v`, one per parallel edge.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn weighted_degree(&self, v: usize) -> u64 {
        self.adj[v].iter().map(|&(e, _)| self.edges[e].weight).sum()
    }

    pub fn min_weighted_degree(&self) -> u64 {
        (0..self.n).map(|v| self.weighted_degree(v)).min().unwrap_or(0)
    }

    /// Number of unit edges in the multigraph expansion.
    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    /// Same topology, new weights. Zero is allowed and marks a link-only edge.
    pub fn reweighted(&self, weights: &[u64]) -> Result<Self> {
        if weights.len() != self.m() {
            return Err(Error::InvalidParameter(format!(
                "expected {} weights, got {}",
                self.m(),
                weights.len()
            )));
        }
        let edges = self
            .edges
            .iter()
            .zip(weights)
            .map(|(e, &weight)| Edge { weight, ..*e })
            .collect();
        Ok(Self::build(self.n, edges))
    }

    /// Checks `w <= n^exponent` for every edge.
    pub fn check_weight_cap(&self, exponent: u32) -> Result<()> {
        let cap = (self.n.max(1) as u64).saturating_pow(exponent);
        match self.edges.iter().position(|e| e.weight > cap) {
            Some(id) => Err(Error::InvalidGraph(format!(
                "edge {id} has weight {} above the cap n^{exponent} = {cap}",
                self.edges[id].weight
            ))),
            None => Ok(()),
        }
    }

    /// Parses the text format: a header line `n m`, then `m` lines `u v w`.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header `n m`".into(),
        })?;
        let nums = parse_fields(hline, header, 2)?;
        let (n, m) = (nums[0] as usize, nums[1] as usize);
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let f = parse_fields(line, l, 3)?;
            edges.push((f[0] as usize, f[1] as usize, f[2]));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Self::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.m());
        for e in &self.edges {
            let _ = writeln!(s, "{} {} {}", e.u, e.v, e.weight);
        }
        s
    }

    /// Every edge id.
    pub fn all_edges(&self) -> EdgeSubset {
        EdgeSubset::full(self.m())
    }

    /// Edges of positive weight.
    pub fn weighted_edges(&self) -> EdgeSubset {
        EdgeSubset::from_ids(
            self.m(),
            self.edges.iter().enumerate().filter(|(_, e)| e.weight > 0).map(|(i, _)| i),
        )
    }
}

fn parse_fields(line: usize, text: &str, want: usize) -> Result<Vec<u64>> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != want {
        return Err(Error::Parse {
            line,
            msg: format!("expected {want} integers, found {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<u64>().map_err(|e| Error::Parse {
                line,
                msg: format!("`{f}`: {e}"),
            })
        })
        .collect()
}

/// A cut `(C, V \ C)` given by its member side and crossing weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub members: Vec<usize>,
    pub weight: u64,
}

impl Cut {
    /// Builds the cut of `members`, recomputing its weight.
    pub fn new(g: &Multigraph, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        let weight = cut_weight(g, &members)?;
        Ok(Cut { members, weight })
    }

    pub fn side(&self, n: usize) -> Vec<bool> {
        let mut side = vec![false; n];
        for &v in &self.members {
            side[v] = true;
        }
        side
    }

    /// True when both cuts split the nodes the same way, whichever side is listed.
    pub fn same_partition(&self, other: &Cut, n: usize) -> bool {
        if self.members == other.members {
            return true;
        }
        let complement: Vec<usize> = {
            let side = other.side(n);
            (0..n).filter(|&v| !side[v]).collect()
        };
        self.members == complement
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cut serializes")
    }
}

/// Total weight of edges with exactly one endpoint in `members`.
pub fn cut_weight(g: &Multigraph, members: &[usize]) -> Result<u64> {
    let mut side = vec![false; g.n()];
    let mut count = 0;
    for &v in members {
        if v >= g.n() {
            return Err(Error::InvalidCut);
        }
        if !side[v] {
            side[v] = true;
            count += 1;
        }
    }
    if count == 0 || count == g.n() {
        return Err(Error::InvalidCut);
    }
    Ok(crossing_weight(g, &side))
}

pub(crate) fn crossing_weight(g: &Multigraph, side: &[bool]) -> u64 {
    g.edges()
        .iter()
        .filter(|e| side[e.u] != side[e.v])
        .map(|e| e.weight)
        .sum()
}

/// Component labels of `(V, sub)`: each node gets the minimum id in its component.
pub fn components(g: &Multigraph, sub: &EdgeSubset) -> Vec<usize> {
    let mut dsu = DisjointSets::new(g.n());
    for id in sub.iter() {
        let e = g.edge(id);
        dsu.union(e.u, e.v);
    }
    dsu.min_labels()
}

pub fn component_count(labels: &[usize]) -> usize {
    labels.iter().enumerate().filter(|&(v, &l)| v == l).count()
}

/// Groups nodes by label; groups are ordered by their minimum node.
pub fn component_groups(labels: &[usize]) -> Vec<Vec<usize>> {
    let mut index = vec![usize::MAX; labels.len()];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (v, &l) in labels.iter().enumerate() {
        if index[l] == usize::MAX {
            index[l] = groups.len();
            groups.push(Vec::new());
        }
        groups[index[l]].push(v);
    }
    groups
}

/// Result of contracting an edge set.
#[derive(Clone, Debug)]
pub struct Contraction {
    /// Quotient multigraph on the supernodes.
    pub graph: Multigraph,
    /// Supernode of each original node.
    pub node_map: Vec<usize>,
    /// Original id of each quotient edge.
    pub edge_origin: Vec<usize>,
}

/// Contracts every edge of `contracted`. Supernodes are numbered in order of
/// their smallest member; surviving edges keep their weights.
pub fn contract(g: &Multigraph, contracted: &EdgeSubset) -> Contraction {
    let labels = components(g, contracted);
    let mut node_map = vec![usize::MAX; g.n()];
    let mut next = 0;
    for v in 0..g.n() {
        if labels[v] == v {
            node_map[v] = next;
            next += 1;
        }
    }
    for v in 0..g.n() {
        node_map[v] = node_map[labels[v]];
    }
    let mut edges = Vec::new();
    let mut edge_origin = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        let (a, b) = (node_map[e.u], node_map[e.v]);
        if a != b {
            edges.push(Edge { u: a, v: b, weight: e.weight });
            edge_origin.push(id);
        }
    }
    Contraction {
        graph: Multigraph::build(next, edges),
        node_map,
        edge_origin,
    }
}

/// Hop eccentricities via BFS over `sub`; `None` entries are unreachable.
fn bfs_hops(g: &Multigraph, sub: Option<&EdgeSubset>, source: usize, dist: &mut [usize]) {
    dist.fill(usize::MAX);
    dist[source] = 0;
    let mut queue = std::collections::VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        for &(e, y) in g.incident(x) {
            if sub.is_some_and(|s| !s.contains(e)) || dist[y] != usize::MAX {
                continue;
            }
            dist[y] = dist[x] + 1;
            queue.push_back(y);
        }
    }
}

/// Hop distances from `source` over `sub` (all edges when `None`).
pub fn hop_distances(g: &Multigraph, sub: Option<&EdgeSubset>, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![0; g.n()];
    bfs_hops(g, sub, source, &mut dist);
    dist.into_iter().map(|d| (d != usize::MAX).then_some(d)).collect()
}

/// Unweighted diameter of `(V, sub)`; `None` means infinite (disconnected).
pub fn diameter(g: &Multigraph, sub: Option<&EdgeSubset>) -> Option<usize> {
    let mut dist = vec![0; g.n()];
    let mut best = 0;
    for s in 0..g.n() {
        bfs_hops(g, sub, s, &mut dist);
        for &d in &dist {
            if d == usize::MAX {
                return None;
            }
            best = best.max(d);
        }
    }
    Some(best)
}

pub fn is_connected(g: &Multigraph, sub: &EdgeSubset) -> bool {
    g.n() <= 1 || component_count(&components(g, sub)) == 1
}
