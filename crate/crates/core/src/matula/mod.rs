//! `(2+ε)`-approximate minimum cut by repeated sparse certificates and
//! contraction, wrapped in a sweep over connectivity guesses.

use serde::{Deserialize, Serialize};

use crate::dist::{Measured, Net};
use crate::error::{Error, Result};
use crate::graph::{component_count, component_groups, crossing_weight, sample_edges, Cut, EdgeSubset, Multigraph};
use crate::layering::EXPERIMENT_FACTOR;
use crate::rng::{self, tag};
use crate::sampling::{log2n, ApproxConfig, ApproxOutcome};
use crate::sim::{BitBudget, CostLedger, RunStats};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatulaConfig {
    pub epsilon: f64,
    /// Lowest guess is `λ̃ / (spread log2 n)`.
    pub spread: f64,
    pub experiment_factor: f64,
    pub approx: ApproxConfig,
    pub budget: BitBudget,
}

impl MatulaConfig {
    pub fn new(g: &Multigraph, epsilon: f64) -> Self {
        MatulaConfig {
            epsilon,
            spread: 8.0,
            experiment_factor: EXPERIMENT_FACTOR,
            approx: ApproxConfig::for_graph(g),
            budget: BitBudget::default_for(g.n()),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(Error::InvalidParameter(format!("epsilon must lie in (0, 1], got {}", self.epsilon)));
        }
        Ok(())
    }
}

/// Certificate parameter `ceil(λ̂ (1 + ε/5))`.
pub fn certificate_k(lambda: f64, epsilon: f64) -> u64 {
    (lambda * (1.0 + epsilon / 5.0) - 1e-9).ceil().max(1.0) as u64
}

/// Final tester threshold `λ̂ (2 + ε/3)`.
pub fn final_threshold(lambda: f64, epsilon: f64) -> f64 {
    lambda * (2.0 + epsilon / 3.0)
}

/// Hard cap on contraction rounds: `ceil(ln n / ln(1/(1-ε/10))) + 1`.
pub fn iteration_cap(n: usize, epsilon: f64) -> u64 {
    ((n.max(2) as f64).ln() / (1.0 / (1.0 - epsilon / 10.0)).ln()).ceil() as u64 + 1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoreOutcome {
    pub lambda: f64,
    pub k: u64,
    pub iterations: u64,
    /// `|E*|` in unit copies, per iteration.
    pub certificate_sizes: Vec<u64>,
    /// Components of `(V, E_c)` entering each iteration, then of the final `H`.
    pub eta: Vec<usize>,
    /// Labels (min id) of the final `H = (V, E \ E*)`.
    pub h_labels: Vec<usize>,
    /// Members of the passing component with the smallest id.
    pub members: Option<Vec<usize>>,
}

impl CoreOutcome {
    /// Smallest boundary weight among the components of the final `H`, in `g`.
    pub fn min_component_weight(&self, g: &Multigraph) -> Option<u64> {
        let groups = component_groups(&self.h_labels);
        if groups.len() < 2 {
            return None;
        }
        groups
            .iter()
            .map(|c| {
                let mut side = vec![false; g.n()];
                for &v in c {
                    side[v] = true;
                }
                crossing_weight(g, &side)
            })
            .min()
    }
}

impl Net<'_> {
    /// Contract-and-certify loop at guess `λ̂`, then one cut test on the
    /// components of `H`.
    pub fn matula_core(&mut self, lambda: f64, epsilon: f64, seed: u64, experiment_factor: f64) -> Result<CoreOutcome> {
        let g = self.g;
        let n = g.n();
        let k = certificate_k(lambda, epsilon);
        let cap = iteration_cap(n, epsilon);
        let shrink = 1.0 - epsilon / 10.0;

        let mut contracted = EdgeSubset::empty(g.m());
        let mut eta = vec![n];
        let mut sizes = Vec::new();
        let mut iterations = 0;
        let h_labels = loop {
            let cert = self.certificate(&contracted, k)?;
            sizes.push(cert.size());
            let h = EdgeSubset::from_ids(
                g.m(),
                (0..g.m()).filter(|&e| g.weight(e) > 0 && (contracted.contains(e) || cert.copies[e] < g.weight(e))),
            );
            let labels = self.label_components(std::slice::from_ref(&h), false)?.remove(0).label_min;
            let eta_new = component_count(&labels);
            let eta_old = *eta.last().expect("seeded with n");
            eta.push(eta_new);
            iterations += 1;
            assert!(iterations <= cap, "contraction loop exceeded {cap} rounds");
            if eta_new >= 2 && (eta_new as f64) <= eta_old as f64 * shrink {
                contracted = h;
            } else {
                break labels;
            }
        };

        let mut out = CoreOutcome {
            lambda,
            k,
            iterations,
            certificate_sizes: sizes,
            eta,
            h_labels,
            members: None,
        };
        if component_count(&out.h_labels) < 2 {
            return Ok(out);
        }
        let h = EdgeSubset::from_ids(
            g.m(),
            (0..g.m()).filter(|&e| {
                let x = g.edge(e);
                out.h_labels[x.u] == out.h_labels[x.v]
            }),
        );
        let verdict = self.cut_tester(&h, final_threshold(lambda, epsilon), epsilon / 20.0, seed, experiment_factor)?;
        if let Some(c) = (0..n).filter(|&v| verdict.pass[v]).map(|v| verdict.component[v]).min() {
            out.members = Some((0..n).filter(|&v| verdict.component[v] == c).collect());
        }
        Ok(out)
    }
}

/// Runs the core loop alone on `g` at guess `λ̂`.
pub fn matula_core(g: &Multigraph, lambda: f64, epsilon: f64, seed: u64, budget: BitBudget) -> Result<Measured<CoreOutcome>> {
    if lambda < 1.0 || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!("need λ̂ >= 1 and ε > 0, got {lambda}, {epsilon}")));
    }
    let mut net = Net::new(g, budget, seed);
    let out = net.matula_core(lambda, epsilon, rng::derive(seed, &[tag::MATULA]), EXPERIMENT_FACTOR)?;
    Ok(net.finish(out))
}

/// Presampling probability `min(1, 100 log2 n / (ε² λ))`.
pub fn presample_probability(n: usize, lambda: f64, epsilon: f64) -> f64 {
    (100.0 * log2n(n) / (epsilon * epsilon * lambda)).min(1.0)
}

/// Keeps each unit edge with probability `min(1, 100 log2 n / (ε² λ))`.
///
/// The result has `g`'s topology with the sampled copy counts as weights;
/// an edge that lost every copy stays as a weight-0 communication link.
pub fn karger_presample(g: &Multigraph, lambda: f64, epsilon: f64, seed: u64) -> Result<(Multigraph, f64)> {
    let p = presample_probability(g.n(), lambda, epsilon);
    let sample = sample_edges(g, p, &mut rng::stream(seed, &[tag::PRESAMPLE]))?;
    Ok((g.reweighted(&sample.counts)?, p))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GuessRecord {
    pub lambda_hat: f64,
    pub p: f64,
    pub iterations: u64,
    pub certificate_sizes: Vec<u64>,
    /// Weight in the original graph of the cut this guess produced.
    pub cut_weight: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatulaResult {
    pub epsilon: f64,
    pub lambda_tilde: u64,
    pub approx: ApproxOutcome,
    pub guesses: Vec<GuessRecord>,
    /// Index into `guesses` of the returned cut.
    pub best: usize,
    pub cut: Cut,
    pub measured: RunStats,
    pub ledger: CostLedger,
}

/// Guesses `lo (1+ε/10)^i` covering `[max(1, λ̃/(spread log2 n)), 2λ̃]`.
pub fn guess_schedule(n: usize, lambda_tilde: u64, cfg: &MatulaConfig) -> Vec<f64> {
    let lo = (lambda_tilde as f64 / (cfg.spread * log2n(n))).max(1.0);
    let hi = 2.0 * lambda_tilde as f64;
    let step = 1.0 + cfg.epsilon / 10.0;
    let mut out = vec![lo];
    while *out.last().expect("nonempty") * step <= hi * (1.0 + 1e-12) {
        out.push(out.last().expect("nonempty") * step);
    }
    out
}

/// Full pipeline: estimate `λ`, then for every guess presample, run the
/// core loop and re-weigh its cut in `g`. Returns the lightest cut.
pub fn matula_mincut(g: &Multigraph, cfg: &MatulaConfig, seed: u64) -> Result<MatulaResult> {
    cfg.validate()?;
    let n = g.n();
    let mut net = Net::new(g, cfg.budget, seed);
    let approx = net.approx_edge_connectivity(rng::derive(seed, &[tag::APPROX]), &cfg.approx)?;
    let mut measured = net.stats.clone();
    let mut ledger = net.ledger.clone();

    let mut guesses = Vec::new();
    let mut best: Option<(usize, Cut)> = None;
    for (i, lambda_hat) in guess_schedule(n, approx.lambda_tilde, cfg).into_iter().enumerate() {
        let gseed = rng::derive(seed, &[tag::GUESS, i as u64]);
        let (sampled, p) = karger_presample(g, lambda_hat, cfg.epsilon, gseed)?;
        let mut sub = Net::new(&sampled, cfg.budget, gseed);
        let core = sub.matula_core(lambda_hat * p, cfg.epsilon, rng::derive(gseed, &[tag::MATULA]), cfg.experiment_factor)?;
        measured.merge(&sub.stats);
        ledger.extend(sub.ledger);
        let cut = core.members.map(|m| Cut::new(g, m)).transpose()?;
        guesses.push(GuessRecord {
            lambda_hat,
            p,
            iterations: core.iterations,
            certificate_sizes: core.certificate_sizes,
            cut_weight: cut.as_ref().map(|c| c.weight),
        });
        if let Some(cut) = cut {
            if best.as_ref().is_none_or(|(_, b)| cut.weight < b.weight) {
                best = Some((i, cut));
            }
        }
    }
    let (best, cut) = best.ok_or(Error::NoCutFound)?;
    Ok(MatulaResult {
        epsilon: cfg.epsilon,
        lambda_tilde: approx.lambda_tilde,
        approx,
        guesses,
        best,
        cut,
        measured,
        ledger,
    })
}

#[cfg(test)]
mod tests;
