//! Closed-form round charges for black-box primitives, kept apart from
//! measured rounds.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Iterated base-2 logarithm: how many times `log2` is applied before the value drops to 1 or below.
pub fn log_star(n: u64) -> u64 {
    let mut x = n as f64;
    let mut k = 0;
    while x > 1.0 {
        x = x.log2();
        k += 1;
    }
    k
}

pub fn ceil_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}

/// Primitives the ledger knows how to charge.
pub const PRIMITIVES: &[&str] = &[
    "thurimella_multi",
    "connectivity_extra",
    "bfs",
    "convergecast",
    "broadcast",
    "mst",
    "certificate",
];

fn param(params: &BTreeMap<String, u64>, primitive: &str, key: &str) -> Result<u64> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| Error::InvalidParameter(format!("{primitive} needs parameter {key}")))
}

/// Rounds charged for one call of `primitive`.
///
/// * `thurimella_multi(D, n, k)`: `D + k * ceil(sqrt n) * log* n`
/// * `connectivity_extra(D)`, `convergecast(D)`, `broadcast(D)`: `D`
/// * `bfs(D)`: `D + 1`
/// * `mst(D, n)`: `D + ceil(sqrt n) * log* n`
/// * `certificate(D, n, k)`: `k * (D + ceil(sqrt n) * log* n)`, one MST per iteration
pub fn ledger_charge(primitive: &str, params: &BTreeMap<String, u64>) -> Result<u64> {
    let p = |key| param(params, primitive, key);
    let spread = |n: u64| ceil_sqrt(n) * log_star(n);
    Ok(match primitive {
        "thurimella_multi" => p("D")? + p("k")? * spread(p("n")?),
        "connectivity_extra" | "convergecast" | "broadcast" => p("D")?,
        "bfs" => p("D")? + 1,
        "mst" => p("D")? + spread(p("n")?),
        "certificate" => p("k")? * (p("D")? + spread(p("n")?)),
        other => return Err(Error::UnknownPrimitive(other.to_string())),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub primitive: String,
    pub params: BTreeMap<String, u64>,
    pub rounds: u64,
}

/// Charged rounds, one entry per primitive invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostLedger {
    pub entries: Vec<LedgerEntry>,
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Charges `primitive` and records the entry.
    pub fn charge(&mut self, primitive: &str, params: &[(&str, u64)]) -> Result<u64> {
        let params: BTreeMap<String, u64> = params.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        let rounds = ledger_charge(primitive, &params)?;
        self.entries.push(LedgerEntry {
            primitive: primitive.to_string(),
            params,
            rounds,
        });
        Ok(rounds)
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.rounds).sum()
    }

    pub fn extend(&mut self, other: CostLedger) {
        self.entries.extend(other.entries);
    }

    /// Entries for one primitive.
    pub fn of<'a>(&'a self, primitive: &'a str) -> impl Iterator<Item = &'a LedgerEntry> + 'a {
        self.entries.iter().filter(move |e| e.primitive == primitive)
    }
}
