use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use super::{EdgeSubset, Multigraph};
use crate::error::{Error, Result};

/// A sample of the unit expansion: how many of the `w(e)` copies of each edge were kept.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitSample {
    pub counts: Vec<u64>,
}

impl UnitSample {
    /// Edge ids with at least one sampled copy.
    pub fn support(&self) -> EdgeSubset {
        EdgeSubset::from_ids(
            self.counts.len(),
            self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i),
        )
    }

    /// Number of sampled unit edges.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// Draws how many of `w` unit copies survive independent `p`-sampling.
pub(crate) fn binomial(w: u64, p: f64, rng: &mut impl rand::Rng) -> u64 {
    if w == 0 || p <= 0.0 {
        0
    } else if p >= 1.0 {
        w
    } else if w == 1 {
        rng.random_bool(p) as u64
    } else {
        Binomial::new(w, p).expect("valid binomial").sample(rng)
    }
}

/// Keeps every unit edge of `g` independently with probability `p`.
pub fn sample_edges(g: &Multigraph, p: f64, rng: &mut impl rand::Rng) -> Result<UnitSample> {
    check_probability(p)?;
    let counts = g.edges().iter().map(|e| binomial(e.weight, p, rng)).collect();
    Ok(UnitSample { counts })
}
