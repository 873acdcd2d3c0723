//! Random edge sampling with layers, connectivity thresholds and a coarse
//! edge-connectivity estimate.

use std::collections::HashSet;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::dist::{Measured, Net};
use crate::error::{Error, Result};
use crate::graph::{component_count, component_groups, sample_edges, Cut, DisjointSets, EdgeSubset, Multigraph};
use crate::rng::{self, tag};
use crate::sim::BitBudget;

/// `log2 n`, floored at 1 so that tiny graphs still get positive constants.
pub fn log2n(n: usize) -> f64 {
    (n.max(2) as f64).log2()
}

pub fn ceil_log2n(n: usize) -> u64 {
    log2n(n).ceil() as u64
}

/// Probability that at least one of `w` unit copies survives `p`-sampling.
pub fn any_copy(p: f64, w: u64) -> f64 {
    if p >= 1.0 {
        return if w > 0 { 1.0 } else { 0.0 };
    }
    -((w as f64) * (-p).ln_1p()).exp_m1()
}

/// Which layer each sampled unit copy landed in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerAssignment {
    pub layers: u32,
    /// Sorted layers (`1..=layers`) of the sampled copies of each edge.
    pub copies: Vec<Vec<u32>>,
}

impl LayerAssignment {
    /// Earliest layer holding a copy of each edge.
    pub fn first_layer(&self) -> Vec<Option<u32>> {
        self.copies.iter().map(|c| c.first().copied()).collect()
    }

    /// `S_i`: edges with a copy in layer `i`.
    pub fn layer(&self, i: u32) -> EdgeSubset {
        EdgeSubset::from_ids(
            self.copies.len(),
            self.copies.iter().enumerate().filter(|(_, c)| c.contains(&i)).map(|(e, _)| e),
        )
    }

    /// `S_1 ∪ ... ∪ S_i`.
    pub fn prefix(&self, i: u32) -> EdgeSubset {
        EdgeSubset::from_ids(
            self.copies.len(),
            self.copies.iter().enumerate().filter(|(_, c)| c.first().is_some_and(|&f| f <= i)).map(|(e, _)| e),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayeringOutcome {
    pub p: f64,
    pub assignment: LayerAssignment,
    /// `M_i` for `i = 1..=L`: component count of the prefix graph `G_i`.
    pub prefix_components: Vec<usize>,
    /// Cuts around the components of `G_1 .. G_{L-1}`, deduplicated.
    pub family: Vec<Cut>,
    pub final_connected: bool,
}

/// Prefix-graph component labels for layers `1..=L`, built incrementally.
pub(crate) fn prefix_labels(g: &Multigraph, assignment: &LayerAssignment) -> Vec<Vec<usize>> {
    let first = assignment.first_layer();
    let mut by_layer: Vec<Vec<usize>> = vec![Vec::new(); assignment.layers as usize + 1];
    for (e, f) in first.iter().enumerate() {
        if let Some(f) = f {
            by_layer[*f as usize].push(e);
        }
    }
    let mut dsu = DisjointSets::new(g.n());
    let mut out = Vec::with_capacity(assignment.layers as usize);
    let mut labels: Option<Vec<usize>> = None;
    for edges in by_layer.iter().skip(1) {
        let mut changed = false;
        for &e in edges {
            let x = g.edge(e);
            changed |= dsu.union(x.u, x.v);
        }
        if changed || labels.is_none() {
            labels = Some(dsu.min_labels());
        }
        out.push(labels.clone().expect("set above"));
    }
    out
}

/// Samples unit edges at `p` and gives each sampled copy a uniform layer in `1..=L`.
pub fn assign_layers(g: &Multigraph, p: f64, layers: u32, seed: u64) -> Result<LayerAssignment> {
    if layers < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 layers, got {layers}")));
    }
    let sample = sample_edges(g, p, &mut rng::stream(seed, &[tag::SAMPLE]))?;
    let mut r = rng::stream(seed, &[tag::LAYER]);
    let copies = sample
        .counts
        .iter()
        .map(|&c| {
            let mut ls: Vec<u32> = (0..c).map(|_| r.random_range(1..=layers)).collect();
            ls.sort_unstable();
            ls
        })
        .collect();
    Ok(LayerAssignment { layers, copies })
}

/// One random layering experiment.
pub fn layering_experiment(g: &Multigraph, p: f64, layers: u32, seed: u64) -> Result<LayeringOutcome> {
    let assignment = assign_layers(g, p, layers, seed)?;
    let labels = prefix_labels(g, &assignment);
    let prefix_components: Vec<usize> = labels.iter().map(|l| component_count(l)).collect();
    let mut seen = HashSet::new();
    let mut family = Vec::new();
    for l in labels.iter().take(layers as usize - 1) {
        for members in component_groups(l) {
            if members.len() < g.n() && seen.insert(members.clone()) {
                family.push(Cut::new(g, members)?);
            }
        }
    }
    Ok(LayeringOutcome {
        p,
        final_connected: *prefix_components.last().expect("L >= 2") == 1,
        assignment,
        prefix_components,
        family,
    })
}

/// Fraction of `trials` independent layering experiments whose full sample is connected.
pub fn connectivity_rate(g: &Multigraph, p: f64, layers: u32, trials: u32, seed: u64) -> Result<f64> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let mut connected = 0;
    for t in 0..trials {
        let out = layering_experiment(g, p, layers, rng::derive(seed, &[tag::TRIAL, t as u64]))?;
        connected += out.final_connected as u32;
    }
    Ok(connected as f64 / trials as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxConfig {
    /// Trials per level are `c * ceil(log2 n)`.
    pub trials_factor: u64,
    pub budget: BitBudget,
}

impl ApproxConfig {
    pub fn for_graph(g: &Multigraph) -> Self {
        ApproxConfig {
            trials_factor: 4,
            budget: BitBudget::default_for(g.n()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxOutcome {
    pub lambda_tilde: u64,
    /// Largest level whose sampled graphs were connected in 9/10 of the trials.
    pub level: u32,
    /// True when no level qualified.
    pub fallback: bool,
    pub trials_per_level: u64,
    /// Connected trials per level `1..=levels`.
    pub connected: Vec<u64>,
    pub instances: u64,
}

/// Estimates `λ` by sampling at `p = 2^-i` for growing `i` and testing
/// connectivity of all samples in one pipelined distributed run.
///
/// Level `i*` is the deepest level connected in at least 9/10 of its
/// trials; the estimate is `2^i* * 2 ceil(log2 n)`.
pub fn approx_edge_connectivity(g: &Multigraph, seed: u64, cfg: &ApproxConfig) -> Result<Measured<ApproxOutcome>> {
    let mut net = Net::new(g, cfg.budget, seed);
    let out = net.approx_edge_connectivity(seed, cfg)?;
    Ok(net.finish(out))
}

impl Net<'_> {
    pub fn approx_edge_connectivity(&mut self, seed: u64, cfg: &ApproxConfig) -> Result<ApproxOutcome> {
        let g = self.g;
        let n = g.n();
        if n < 2 {
            return Err(Error::InvalidParameter("edge connectivity needs n >= 2".into()));
        }
        let log_n = ceil_log2n(n);
        let min_deg = g.min_weighted_degree().max(1);
        let levels = log_n.max((min_deg as f64).log2().ceil() as u64 + 1) as u32;
        let trials = cfg.trials_factor.max(1) * log_n;

        // Both endpoints of an edge see the same coin: the draws are handed out as shared input.
        let mut instances = Vec::with_capacity(levels as usize * trials as usize);
        for i in 1..=levels {
            let p = 0.5f64.powi(i as i32);
            for j in 0..trials {
                let mut r = rng::stream(seed, &[tag::APPROX, i as u64, j]);
                let kept = (0..g.m()).filter(|&e| r.random_bool(any_copy(p, g.weight(e))));
                instances.push(EdgeSubset::from_ids(g.m(), kept));
            }
        }
        let flags = self.test_connectivity(&instances)?;
        let connected: Vec<u64> = flags
            .chunks(trials as usize)
            .map(|c| c.iter().filter(|&&f| f).count() as u64)
            .collect();
        let best = (1..=levels)
            .rev()
            .find(|&i| 10 * connected[i as usize - 1] >= 9 * trials);
        let level = best.unwrap_or(0);
        Ok(ApproxOutcome {
            lambda_tilde: (1u64 << level) * 2 * log_n,
            level,
            fallback: best.is_none(),
            trials_per_level: trials,
            connected,
            instances: instances.len() as u64,
        })
    }
}

#[cfg(test)]
mod tests;
