//! Versioned experiment reports and their JSON / CSV renderings.

use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// One report per command invocation. `records` are flat rows (the CSV
/// body); `details` carries the full per-run results in JSON only.
#[derive(Debug, Serialize)]
pub struct ExperimentReport<R> {
    pub schema_version: u32,
    pub command: String,
    pub params: Value,
    pub seeds: Vec<u64>,
    pub records: Vec<R>,
    pub aggregate: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<Value>,
}

impl<R: Serialize> ExperimentReport<R> {
    pub fn new(command: &str, params: Value) -> Self {
        ExperimentReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            params,
            seeds: Vec::new(),
            records: Vec::new(),
            aggregate: Value::Null,
            details: Vec::new(),
        }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                for r in &self.records {
                    w.serialize(r)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}

/// Row of an algorithm run: the frozen CSV columns.
#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub seed: u64,
    pub cut_weight: u64,
    pub oracle_weight: Option<u64>,
    pub ratio: Option<f64>,
    pub measured_rounds: u64,
    pub ledger_rounds: u64,
}

impl RunRecord {
    pub fn new(seed: u64, cut_weight: u64, oracle_weight: Option<u64>, measured_rounds: u64, ledger_rounds: u64) -> Self {
        let ratio = oracle_weight.filter(|&o| o > 0).map(|o| cut_weight as f64 / o as f64);
        RunRecord { seed, cut_weight, oracle_weight, ratio, measured_rounds, ledger_rounds }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ApproxRecord {
    pub seed: u64,
    pub lambda_tilde: u64,
    pub oracle_weight: Option<u64>,
    pub ratio: Option<f64>,
    pub measured_rounds: u64,
    pub ledger_rounds: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RateRecord {
    pub p: f64,
    pub layers: u32,
    pub trials: u32,
    pub connected_rate: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiameterRecord {
    pub trial: u32,
    pub connected: bool,
    pub diameter: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LedgerRecord {
    pub seed: u64,
    pub ledger_rounds: u64,
    pub entries: usize,
}

/// Summary statistics over the ratio column.
pub fn ratio_summary(records: &[RunRecord], failures: usize) -> Value {
    let mut ratios: Vec<f64> = records.iter().filter_map(|r| r.ratio).collect();
    ratios.sort_by(f64::total_cmp);
    let mean = (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64);
    serde_json::json!({
        "runs": records.len() + failures,
        "no_cut_found": failures,
        "min_ratio": ratios.first(),
        "median_ratio": ratios.get(ratios.len() / 2),
        "max_ratio": ratios.last(),
        "mean_ratio": mean,
    })
}
