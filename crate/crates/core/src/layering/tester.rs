use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::dist::{exchange_uniform, flood, Extreme, FloodPlan, Init, Measured, Net};
use crate::error::{Error, Result};
use crate::graph::{EdgeSubset, Multigraph};
use crate::rng::{self, tag};
use crate::sampling::log2n;
use crate::sim::{width_for, BitBudget};

/// Default `c` in the experiment count `ceil(c log2 n / δ²)`.
pub const EXPERIMENT_FACTOR: f64 = 8.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutTestVerdict {
    pub pass: Vec<bool>,
    pub kappa: f64,
    pub delta: f64,
    pub experiments: u64,
    /// Component id (min node id) of each node in `(V, sub)`.
    pub component: Vec<usize>,
    /// Experiments in which each node's component boundary was hit.
    pub hits: Vec<u64>,
}

impl CutTestVerdict {
    /// Whether the component containing `v` passed.
    pub fn passes(&self, v: usize) -> bool {
        self.pass[v]
    }
}

pub fn experiments(n: usize, delta: f64, factor: f64) -> u64 {
    (factor * log2n(n) / (delta * delta)).ceil() as u64
}

/// Sampling probability for one of `w` parallel unit edges against threshold `κ`:
/// each copy is kept with probability `1 - 2^(-1/κ)`.
pub fn hit_probability(kappa: f64, w: u64) -> f64 {
    -(-(w as f64) / kappa * std::f64::consts::LN_2).exp_m1()
}

impl Net<'_> {
    /// Tests every component of `(V, sub)` against threshold `kappa`.
    ///
    /// Each experiment adds a random set `E_j` of edges outside `sub` and
    /// floods both the min and the max component id over `sub ∪ E_j`; a
    /// component is hit when either flood brings in a foreign id.
    pub fn cut_tester(&mut self, sub: &EdgeSubset, kappa: f64, delta: f64, seed: u64, factor: f64) -> Result<CutTestVerdict> {
        if !(delta > 0.0 && delta < 0.25) {
            return Err(Error::InvalidParameter(format!("delta must lie in (0, 1/4), got {delta}")));
        }
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::InvalidParameter(format!("kappa must be positive, got {kappa}")));
        }
        let g = self.g;
        let n = g.n();
        let width = width_for(n as u64);
        let x = experiments(n, delta, factor);

        let cid: Vec<u64> = self.label_components(std::slice::from_ref(sub), false)?[0]
            .label_min
            .iter()
            .map(|&l| l as u64)
            .collect();
        let mine: Vec<Vec<u64>> = cid.iter().map(|&c| vec![c]).collect();
        let heard = exchange_uniform(self, width, &mine)?;
        let neighbor_cid: Vec<Vec<u64>> = heard.into_iter().map(|ports| ports.into_iter().map(|p| p[0]).collect()).collect();

        let outside: Vec<(usize, f64)> = (0..g.m())
            .filter(|&e| !sub.contains(e) && g.weight(e) > 0)
            .map(|e| (e, hit_probability(kappa, g.weight(e))))
            .collect();
        let edge_sets: Vec<EdgeSubset> = (0..x)
            .map(|j| {
                let mut r = rng::stream(seed, &[tag::TESTER, j]);
                let mut s = sub.clone();
                for &(e, q) in &outside {
                    if r.random_bool(q) {
                        s.insert(e);
                    }
                }
                s
            })
            .collect();
        let k = x as usize;
        let instances = (0..k).map(|j| (j, Extreme::Min)).chain((0..k).map(|j| (j, Extreme::Max))).collect();
        let plan = FloodPlan {
            edge_sets,
            instances,
            init: Init::PerNode(cid.clone()),
            width,
            neutral: None,
        };
        let labels = flood(self, plan, Some(neighbor_cid))?;
        self.charge_labeling(2 * x);

        let hits: Vec<u64> = (0..n)
            .map(|v| (0..k).filter(|&j| labels[v][j] != cid[v] || labels[v][k + j] != cid[v]).count() as u64)
            .collect();
        Ok(CutTestVerdict {
            pass: hits.iter().map(|&h| 2 * h <= x).collect(),
            kappa,
            delta,
            experiments: x,
            component: cid.into_iter().map(|c| c as usize).collect(),
            hits,
        })
    }
}

/// Distributed cut tester: components of `(V, sub)` with boundary weight at
/// most `κ/(1+δ)` pass and those with at least `κ(1+δ)` fail, w.h.p.
pub fn cut_tester(g: &Multigraph, sub: &EdgeSubset, kappa: f64, delta: f64, seed: u64, budget: BitBudget) -> Result<Measured<CutTestVerdict>> {
    let mut net = Net::new(g, budget, seed);
    let v = net.cut_tester(sub, kappa, delta, seed, EXPERIMENT_FACTOR)?;
    Ok(net.finish(v))
}
