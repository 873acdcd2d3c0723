//! Min-cut approximation by random layering: sample, layer, and test every
//! component of every prefix graph against a threshold tied to the guess.

mod tester;

use serde::{Deserialize, Serialize};

pub use tester::{cut_tester, experiments, hit_probability, CutTestVerdict, EXPERIMENT_FACTOR};

use crate::dist::{Measured, Net};
use crate::error::{Error, Result};
use crate::graph::{Cut, Multigraph};
use crate::rng::{self, tag};
use crate::sampling::{assign_layers, log2n, prefix_labels, ApproxConfig, ApproxOutcome};
use crate::sim::{width_for, BitBudget, CostLedger, RunStats};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayeringConfig {
    pub epsilon: f64,
    /// Tester slack `δ`.
    pub delta: f64,
    /// Guesses range over `λ̃ 2^i` for `|i| <= ceil(c₁ log2 log2 n)`.
    pub guess_factor: f64,
    pub experiment_factor: f64,
    pub approx: ApproxConfig,
    pub budget: BitBudget,
}

impl LayeringConfig {
    pub fn new(g: &Multigraph, epsilon: f64) -> Self {
        LayeringConfig {
            epsilon,
            delta: 0.125,
            guess_factor: 2.0,
            experiment_factor: tester::EXPERIMENT_FACTOR,
            approx: ApproxConfig::for_graph(g),
            budget: BitBudget::default_for(g.n()),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!("epsilon must lie in (0, 1), got {}", self.epsilon)));
        }
        Ok(())
    }
}

/// Sampling probability for guess `λ'`: `min(1, ε log2 n / (2λ'))`.
pub fn epoch_probability(n: usize, lambda: f64, epsilon: f64) -> f64 {
    (epsilon * log2n(n) / (2.0 * lambda)).min(1.0)
}

/// `L = ceil(20 log2 n)`.
pub fn layer_count(n: usize) -> u32 {
    (20.0 * log2n(n)).ceil() as u32
}

/// `κ = 50 λ' / ε`.
pub fn threshold(lambda: f64, epsilon: f64) -> f64 {
    50.0 * lambda / epsilon
}

/// Epochs per guess: `ceil(n^ε log2 n)`.
pub fn epoch_count(n: usize, epsilon: f64) -> u64 {
    ((n as f64).powf(epsilon) * log2n(n)).ceil() as u64
}

/// Selection key; the smallest passing tuple wins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CandidateTuple {
    pub guess: u64,
    pub epoch: u64,
    pub layer: u32,
    pub component: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpochOutcome {
    /// Winning `(layer, component id, members)` when something passed.
    pub found: Option<(u32, usize, Vec<usize>)>,
    /// Prefix graphs actually tested.
    pub tests: u64,
    pub layers: u32,
    pub p: f64,
}

impl Net<'_> {
    /// One epoch for guess `λ'`: layer a fresh sample, then test the prefix
    /// graphs `G_1 .. G_{L-1}` in order and stop at the first layer where a
    /// component passes. A prefix graph whose partition equals the last
    /// tested one is skipped, and the scan ends once the prefix is connected.
    pub fn epoch(&mut self, lambda: f64, cfg: &LayeringConfig, seed: u64) -> Result<EpochOutcome> {
        let g = self.g;
        let n = g.n();
        let p = epoch_probability(n, lambda, cfg.epsilon);
        let layers = layer_count(n);
        let assignment = assign_layers(g, p, layers, seed)?;
        let labels = prefix_labels(g, &assignment);
        let kappa = threshold(lambda, cfg.epsilon);
        let mut tests = 0;
        let mut last: Option<&Vec<usize>> = None;
        for i in 1..layers {
            let l = &labels[i as usize - 1];
            if l.iter().all(|&x| x == 0) {
                break;
            }
            if last == Some(l) {
                continue;
            }
            last = Some(l);
            tests += 1;
            let sub = assignment.prefix(i);
            let verdict = self.cut_tester(&sub, kappa, cfg.delta, rng::derive(seed, &[tag::TESTER, i as u64]), cfg.experiment_factor)?;
            let winner = (0..n).filter(|&v| verdict.pass[v]).map(|v| verdict.component[v]).min();
            if let Some(c) = winner {
                let members = (0..n).filter(|&v| verdict.component[v] == c).collect();
                return Ok(EpochOutcome { found: Some((i, c, members)), tests, layers, p });
            }
        }
        Ok(EpochOutcome { found: None, tests, layers, p })
    }
}

/// One epoch at guess `λ'`, returning the passing cut with the smallest
/// `(layer, component)` if any.
pub fn collect_family_and_test(g: &Multigraph, lambda: f64, epsilon: f64, seed: u64, budget: BitBudget) -> Result<Measured<Option<Cut>>> {
    let mut cfg = LayeringConfig::new(g, epsilon);
    cfg.budget = budget;
    cfg.validate()?;
    let mut net = Net::new(g, budget, seed);
    let out = net.epoch(lambda, &cfg, seed)?;
    let cut = match out.found {
        Some((_, _, members)) => Some(Cut::new(g, members)?),
        None => None,
    };
    Ok(net.finish(cut))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LayeringResult {
    pub epsilon: f64,
    pub lambda_tilde: u64,
    pub approx: ApproxOutcome,
    /// The winning guess `λ'`.
    pub guess: f64,
    pub tuple: CandidateTuple,
    pub cut: Cut,
    pub guesses: Vec<f64>,
    pub epochs_per_guess: u64,
    pub epochs_run: u64,
    pub tests_run: u64,
    /// Component-labeling instances billed in the single pipelined charge.
    pub labeling_instances: u64,
    pub diameter: u64,
    pub measured: RunStats,
    pub ledger: CostLedger,
}

/// Guess exponents `i` for `λ' = λ̃ 2^i`: `|i| <= ceil(c₁ log2 log2 n)`,
/// extended downward to the smallest `i` whose threshold `κ(1+δ)` still reaches 1.
pub fn guess_exponents(n: usize, lambda_tilde: u64, cfg: &LayeringConfig) -> std::ops::RangeInclusive<i64> {
    let hi = (cfg.guess_factor * log2n(n).log2()).ceil().max(0.0) as i64;
    let floor = cfg.epsilon / (50.0 * lambda_tilde as f64 * (1.0 + cfg.delta));
    let lowest = floor.log2().ceil() as i64;
    lowest.min(-hi)..=hi
}

/// Full pipeline: estimate `λ`, scan guesses and epochs in tuple order,
/// then agree on the winner over a BFS tree.
pub fn layering_mincut(g: &Multigraph, cfg: &LayeringConfig, seed: u64) -> Result<LayeringResult> {
    cfg.validate()?;
    let n = g.n();
    let mut net = Net::new(g, cfg.budget, seed);
    net.pool_labeling();
    let approx = net.approx_edge_connectivity(rng::derive(seed, &[tag::APPROX]), &cfg.approx)?;
    let lambda_tilde = approx.lambda_tilde;
    let guesses: Vec<f64> = guess_exponents(n, lambda_tilde, cfg)
        .map(|i| lambda_tilde as f64 * 2f64.powi(i as i32))
        .collect();
    let epochs = epoch_count(n, cfg.epsilon);

    let mut epochs_run = 0;
    let mut tests_run = 0;
    let mut win = None;
    'scan: for (gi, &lambda) in guesses.iter().enumerate() {
        for ep in 0..epochs {
            let out = net.epoch(lambda, cfg, rng::derive(seed, &[tag::EPOCH, gi as u64, ep]))?;
            epochs_run += 1;
            tests_run += out.tests;
            if let Some((layer, component, members)) = out.found {
                let tuple = CandidateTuple { guess: gi as u64, epoch: ep, layer, component };
                win = Some((tuple, lambda, members, out.layers));
                break 'scan;
            }
        }
    }
    let labeling_instances = net.settle_pool();
    let Some((tuple, guess, members, layers)) = win else {
        return Err(Error::NoCutFound);
    };

    // Agree on the winning tuple: every member of the passing component
    // offers it, the root takes the minimum and broadcasts it back.
    let widths = [
        width_for(guesses.len() as u64),
        width_for(epochs),
        width_for(layers as u64 + 1),
        width_for(n as u64),
    ];
    let total: u32 = widths.iter().sum();
    assert!(total < 64, "candidate tuple does not fit in one word");
    let pack = |t: &CandidateTuple| {
        let fields = [t.guess, t.epoch, t.layer as u64, t.component as u64];
        fields.iter().zip(widths).fold(0u64, |acc, (&f, w)| (acc << w) | f)
    };
    let none = (1u64 << total) - 1;
    let mut offers = vec![none; n];
    for &v in &members {
        offers[v] = pack(&tuple);
    }
    let tree = net.bfs(0)?;
    let best = net.convergecast_min(&tree, &offers, total)?;
    let heard = net.broadcast(&tree, best, total)?;
    debug_assert!(heard.iter().all(|&h| h == Some(pack(&tuple)) || !tree.spans()));

    let cut = Cut::new(g, members)?;
    let diameter = net.d();
    let measured = net.stats.clone();
    let ledger = net.ledger.clone();
    Ok(LayeringResult {
        epsilon: cfg.epsilon,
        lambda_tilde,
        approx,
        guess,
        tuple,
        cut,
        guesses,
        epochs_per_guess: epochs,
        epochs_run,
        tests_run,
        labeling_instances,
        diameter,
        measured,
        ledger,
    })
}

#[cfg(test)]
mod tests;
