//! Synchronous CONGEST simulation and distributed minimum-cut approximation.
//!
//! The crate is organized bottom-up: [`graph`] holds the multigraph type and
//! centralized oracles, [`sim`] the round-based simulator, [`dist`] the
//! distributed building blocks, [`sampling`] the edge-sampling experiments
//! and connectivity estimate, and [`layering`] and [`matula`] the two
//! min-cut algorithms. [`lowerbound`] generates the hard instances and
//! [`suite`] runs the acceptance battery.

pub mod dist;
pub mod error;
pub mod graph;
pub mod layering;
pub mod lowerbound;
pub mod matula;
pub mod rng;
pub mod sampling;
pub mod sim;
pub mod suite;

pub use dist::Measured;
pub use error::{Error, Result};
pub use graph::{cut_weight, min_cut_bruteforce, min_cut_exact, Cut, EdgeSubset, Multigraph};
pub use layering::{layering_mincut, LayeringConfig, LayeringResult};
pub use matula::{matula_mincut, MatulaConfig, MatulaResult};
pub use sampling::{approx_edge_connectivity, ApproxConfig, ApproxOutcome};
pub use sim::{BitBudget, BudgetMode, CostLedger, RunStats};
