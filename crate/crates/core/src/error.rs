use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid cut: member set must be a nonempty proper subset of the nodes")]
    InvalidCut,
    #[error("brute-force enumeration limited to {limit} nodes, got {n}")]
    SizeLimit { n: usize, limit: usize },
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("set-disjointness promise violated: |X ∩ Y| = {0} > 1")]
    InvalidPromise(usize),
    #[error("budget violation on edge {edge} in round {round}: {bits} bits > {budget}")]
    BudgetViolation {
        edge: usize,
        round: u64,
        bits: u64,
        budget: u64,
    },
    #[error("round cap {0} exceeded before all nodes halted")]
    RoundCapExceeded(u64),
    #[error("unknown ledger primitive `{0}`")]
    UnknownPrimitive(String),
    #[error("no candidate cut passed the tester")]
    NoCutFound,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
