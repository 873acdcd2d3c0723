//! `congestcut` command-line front end.

mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use congestcut::graph::generators;
use congestcut::graph::{diameter, DEFAULT_WEIGHT_EXPONENT};
use congestcut::layering::layer_count;
use congestcut::lowerbound::{self, Disjointness, Sidecar, SimpleParams};
use congestcut::rng;
use congestcut::sampling::connectivity_rate;
use congestcut::sim::default_bits;
use congestcut::suite;
use congestcut::{
    approx_edge_connectivity, layering_mincut, matula_mincut, min_cut_exact, ApproxConfig, BitBudget, BudgetMode, CostLedger, Error,
    LayeringConfig, MatulaConfig, Multigraph,
};

use report::{ApproxRecord, DiameterRecord, ExperimentReport, Format, LedgerRecord, RateRecord, RunRecord};

#[derive(Parser)]
#[command(name = "congestcut", version, about = "CONGEST simulator and distributed min-cut experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Root seed; required by every randomized command.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of runs (consecutive seeds) or trials.
    #[arg(long, global = true)]
    trials: Option<u32>,
    #[arg(long, global = true, default_value_t = 0.5)]
    epsilon: f64,
    /// Per-round bit budget; defaults to 8 * ceil(log2 n).
    #[arg(long, global = true)]
    budget_bits: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::PerEdge)]
    budget_mode: ModeArg,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    out: Format,
    /// Write the report here instead of standard output.
    #[arg(short = 'o', long, global = true)]
    output: Option<PathBuf>,
    /// Report only the charged round ledger of each run.
    #[arg(long, global = true)]
    ledger_only: bool,
    /// Reject input graphs with a weight above n^e.
    #[arg(long, global = true, default_value_t = DEFAULT_WEIGHT_EXPONENT)]
    weight_exponent: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    PerEdge,
    PerWeight,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph file (and a JSON sidecar next to it when writing to a file).
    Gen(GenArgs),
    /// Exact minimum cut of a graph file.
    Exact { graph: PathBuf },
    /// Distributed edge-connectivity estimate.
    ApproxConn { graph: PathBuf },
    /// Layering min-cut algorithm.
    Layering { graph: PathBuf },
    /// Certificate-contraction (2+ε) min-cut algorithm.
    Matula { graph: PathBuf },
    /// Connectivity rate of layered samples for a sweep of probabilities.
    SampleExp {
        graph: PathBuf,
        /// Comma-separated sampling probabilities.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        /// Number of layers; defaults to ceil(20 log2 n).
        #[arg(long)]
        layers: Option<u32>,
    },
    /// Hop diameters of sampled subgraphs.
    DiamExp {
        graph: PathBuf,
        #[arg(long)]
        p: f64,
    },
    /// Check that a graph belongs to the path-bundle family for `k`.
    LbVerify {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Run the acceptance battery.
    Suite {
        /// Run only these criteria (comma-separated ids).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Cycle,
    Complete,
    Star,
    Dumbbell,
    Random,
    HBase,
    HWeighted,
    HSimple,
    DissH,
    DissHPrime,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Path length of the simple instance.
    #[arg(long)]
    l: Option<usize>,
    #[arg(long, default_value_t = 1)]
    mult: u64,
    #[arg(long, default_value_t = 1)]
    alpha: u64,
    #[arg(long)]
    lambda: Option<u64>,
    /// Clique size of each dumbbell half.
    #[arg(long, default_value_t = 5)]
    size: usize,
    #[arg(long, value_delimiter = ',')]
    x: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    y: Vec<usize>,
    /// Extra random edges beyond a spanning tree.
    #[arg(long, default_value_t = 0)]
    extra: usize,
    #[arg(long, default_value_t = 1)]
    max_weight: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::NoCutFound) => 3,
        Some(Error::BudgetViolation { .. }) => 4,
        Some(
            Error::InvalidParameter(_)
            | Error::InvalidParams(_)
            | Error::InvalidPromise(_)
            | Error::InvalidProbability(_)
            | Error::SizeLimit { .. },
        ) => 2,
        _ => 1,
    }
}

/// Exits with a usage error (code 2) naming the missing flag.
fn need<T: Copy>(value: Option<T>, flag: &str) -> T {
    value.unwrap_or_else(|| {
        Cli::command()
            .error(ErrorKind::MissingRequiredArgument, format!("this command requires {flag}"))
            .exit()
    })
}

impl Common {
    fn budget(&self, n: usize) -> BitBudget {
        let bits = self.budget_bits.unwrap_or_else(|| default_bits(n));
        match self.budget_mode {
            ModeArg::PerEdge => BitBudget { mode: BudgetMode::PerEdge, bits },
            ModeArg::PerWeight => BitBudget { mode: BudgetMode::PerWeight, bits },
        }
    }

    fn seeds(&self) -> Vec<u64> {
        let seed = need(self.seed, "--seed");
        (0..self.trials.unwrap_or(1) as u64).map(|i| seed.wrapping_add(i)).collect()
    }

    fn emit<R: serde::Serialize>(&self, report: &ExperimentReport<R>) -> Result<()> {
        self.write_with(|out| report.write(self.out, out))
    }

    fn write_with(&self, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
        match &self.output {
            Some(path) => {
                let mut file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
                f(&mut file)
            }
            None => f(&mut std::io::stdout().lock()),
        }
    }
}

fn load(path: &Path, common: &Common) -> Result<Multigraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let g = Multigraph::parse(&text)?;
    g.check_weight_cap(common.weight_exponent)?;
    Ok(g)
}

fn dispatch(cli: &Cli) -> Result<ExitCode> {
    let c = &cli.common;
    match &cli.command {
        Command::Gen(args) => gen(args, c),
        Command::Exact { graph } => {
            let g = load(graph, c)?;
            let cut = min_cut_exact(&g)?;
            c.write_with(|out| Ok(writeln!(out, "{}", cut.to_json())?))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ApproxConn { graph } => approx(&load(graph, c)?, c),
        Command::Layering { graph } => algorithm(&load(graph, c)?, c, Algo::Layering),
        Command::Matula { graph } => algorithm(&load(graph, c)?, c, Algo::Matula),
        Command::SampleExp { graph, p, layers } => sample_exp(&load(graph, c)?, c, p, *layers),
        Command::DiamExp { graph, p } => diam_exp(&load(graph, c)?, c, *p),
        Command::LbVerify { graph, k } => lb_verify(&load(graph, c)?, c, *k),
        Command::Suite { only } => run_suite(c, only),
    }
}

fn gen(a: &GenArgs, c: &Common) -> Result<ExitCode> {
    let n = || need(a.n, "--n");
    let k = || need(a.k, "--k");
    let lambda = || need(a.lambda, "--lambda");
    let sets = || Disjointness::new(a.x.iter().copied(), a.y.iter().copied());
    let mut expected = (None, None);
    let (name, params, g) = match a.family {
        Family::Cycle => {
            expected.0 = Some(2 * a.mult);
            ("cycle", json!({"n": n(), "mult": a.mult}), generators::cycle(n(), a.mult))
        }
        Family::Complete => {
            expected.0 = Some(n() as u64 - 1);
            ("complete", json!({"n": n()}), generators::complete(n()))
        }
        Family::Star => {
            expected = (Some(1), Some(vec![1]));
            ("star", json!({"n": n()}), generators::star(n()))
        }
        Family::Dumbbell => {
            expected = (Some(1), Some((0..a.size).collect()));
            ("dumbbell", json!({"size": a.size}), generators::dumbbell(a.size))
        }
        Family::Random => {
            let mut r = rng::stream(need(c.seed, "--seed"), &[]);
            let params = json!({"n": n(), "extra": a.extra, "max_weight": a.max_weight, "seed": c.seed});
            ("random", params, generators::random_connected(n(), a.extra, a.max_weight, &mut r))
        }
        Family::HBase => ("h-base", json!({"n": n(), "k": k()}), lowerbound::gen_base_h(n(), k())?),
        Family::HWeighted => {
            let s = sets();
            let g = lowerbound::gen_weighted_cut_instance(n(), k(), a.alpha, &s)?;
            if let Some(z) = s.validate(k())? {
                expected = (Some((n() / k()) as u64), Some(lowerbound::path_nodes(n(), k(), z)));
            }
            ("h-weighted", json!({"n": n(), "k": k(), "alpha": a.alpha, "x": s.x, "y": s.y}), g)
        }
        Family::HSimple => {
            let s = sets();
            let p = SimpleParams { k: k(), l: need(a.l, "--l"), alpha: a.alpha as usize, lambda: lambda() as usize };
            let g = lowerbound::gen_simple_cut_instance(&p, &s)?;
            ("h-simple", json!({"k": p.k, "l": p.l, "alpha": p.alpha, "lambda": p.lambda, "x": s.x, "y": s.y}), g)
        }
        Family::DissH | Family::DissHPrime => {
            let (h, hp) = lowerbound::gen_dissemination_graphs(n(), lambda())?;
            match a.family {
                Family::DissH => ("diss-h", json!({"n": n(), "lambda": lambda()}), h),
                _ => ("diss-h-prime", json!({"n": n(), "lambda": lambda()}), hp),
            }
        }
    };
    match &c.output {
        Some(path) => {
            fs::write(path, g.to_text()).with_context(|| format!("writing {}", path.display()))?;
            let sidecar = Sidecar {
                family: name.to_string(),
                params,
                expected_lambda: expected.0,
                expected_min_cut_members: expected.1,
            };
            let side = path.with_extension("json");
            fs::write(&side, serde_json::to_string_pretty(&sidecar)? + "\n").with_context(|| format!("writing {}", side.display()))?;
        }
        None => print!("{}", g.to_text()),
    }
    Ok(ExitCode::SUCCESS)
}

fn oracle(g: &Multigraph, c: &Common) -> Result<Option<u64>> {
    Ok(if c.ledger_only { None } else { Some(min_cut_exact(g)?.weight) })
}

fn ledger_report(command: &str, params: Value, runs: Vec<(u64, CostLedger)>) -> ExperimentReport<LedgerRecord> {
    let mut r = ExperimentReport::new(command, params);
    for (seed, ledger) in runs {
        r.seeds.push(seed);
        r.records.push(LedgerRecord { seed, ledger_rounds: ledger.total(), entries: ledger.entries.len() });
        r.details.push(json!({"seed": seed, "ledger": ledger}));
    }
    r
}

fn approx(g: &Multigraph, c: &Common) -> Result<ExitCode> {
    let mut cfg = ApproxConfig::for_graph(g);
    cfg.budget = c.budget(g.n());
    let params = json!({"n": g.n(), "m": g.m(), "trials_factor": cfg.trials_factor, "budget": cfg.budget});
    let runs = c
        .seeds()
        .into_iter()
        .map(|s| Ok((s, approx_edge_connectivity(g, s, &cfg)?)))
        .collect::<Result<Vec<_>>>()?;
    if c.ledger_only {
        c.emit(&ledger_report("approx-conn", params, runs.into_iter().map(|(s, m)| (s, m.ledger)).collect()))?;
        return Ok(ExitCode::SUCCESS);
    }
    let lambda = oracle(g, c)?;
    let mut report = ExperimentReport::new("approx-conn", params);
    for (seed, m) in runs {
        let lt = m.value.lambda_tilde;
        report.seeds.push(seed);
        report.records.push(ApproxRecord {
            seed,
            lambda_tilde: lt,
            oracle_weight: lambda,
            ratio: lambda.filter(|&l| l > 0).map(|l| lt as f64 / l as f64),
            measured_rounds: m.stats.rounds,
            ledger_rounds: m.ledger.total(),
        });
        report.details.push(serde_json::to_value(&m.value)?);
    }
    report.aggregate = json!({"runs": report.records.len()});
    c.emit(&report)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Clone, Copy)]
enum Algo {
    Layering,
    Matula,
}

fn algorithm(g: &Multigraph, c: &Common, algo: Algo) -> Result<ExitCode> {
    let budget = c.budget(g.n());
    let (name, params) = match algo {
        Algo::Layering => ("layering", json!({"n": g.n(), "m": g.m(), "epsilon": c.epsilon, "budget": budget})),
        Algo::Matula => ("matula", json!({"n": g.n(), "m": g.m(), "epsilon": c.epsilon, "budget": budget})),
    };
    let seeds = c.seeds();
    let single = seeds.len() == 1;
    let oracle_weight = oracle(g, c)?;
    let mut report = ExperimentReport::new(name, params.clone());
    let mut ledgers = Vec::new();
    let mut failures = 0;
    for seed in seeds {
        let run = match algo {
            Algo::Layering => {
                let mut cfg = LayeringConfig::new(g, c.epsilon);
                cfg.budget = budget;
                cfg.approx.budget = budget;
                layering_mincut(g, &cfg, seed).map(|r| {
                    let detail = json!({
                        "epsilon": r.epsilon,
                        "lambda_tilde": r.lambda_tilde,
                        "guess": r.guess,
                        "epoch": r.tuple.epoch,
                        "layer": r.tuple.layer,
                        "cut_weight": r.cut.weight,
                        "members": r.cut.members,
                        "measured_rounds": r.measured.rounds,
                        "ledger_rounds": r.ledger.total(),
                    });
                    (r.cut.weight, r.measured.rounds, r.ledger, detail)
                })
            }
            Algo::Matula => {
                let mut cfg = MatulaConfig::new(g, c.epsilon);
                cfg.budget = budget;
                cfg.approx.budget = budget;
                matula_mincut(g, &cfg, seed).map(|r| {
                    let best = &r.guesses[r.best];
                    let detail = json!({
                        "epsilon": r.epsilon,
                        "lambda_tilde": r.lambda_tilde,
                        "guess": best.lambda_hat,
                        "cut_weight": r.cut.weight,
                        "members": r.cut.members,
                        "iterations": best.iterations,
                        "certificate_sizes": best.certificate_sizes,
                        "measured_rounds": r.measured.rounds,
                        "ledger_rounds": r.ledger.total(),
                    });
                    (r.cut.weight, r.measured.rounds, r.ledger, detail)
                })
            }
        };
        match run {
            Ok((weight, rounds, ledger, detail)) => {
                report.seeds.push(seed);
                report.records.push(RunRecord::new(seed, weight, oracle_weight, rounds, ledger.total()));
                report.details.push(detail);
                ledgers.push((seed, ledger));
            }
            Err(Error::NoCutFound) if !single => {
                eprintln!("seed {seed}: no cut found");
                failures += 1;
            }
            Err(e) => return Err(e.into()),
        }
    }
    if report.records.is_empty() {
        return Err(Error::NoCutFound.into());
    }
    if c.ledger_only {
        c.emit(&ledger_report(name, params, ledgers))?;
    } else {
        report.aggregate = report::ratio_summary(&report.records, failures);
        c.emit(&report)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn sample_exp(g: &Multigraph, c: &Common, ps: &[f64], layers: Option<u32>) -> Result<ExitCode> {
    let seed = need(c.seed, "--seed");
    let trials = c.trials.unwrap_or(100);
    let layers = layers.unwrap_or_else(|| layer_count(g.n()));
    let mut report = ExperimentReport::new("sample-exp", json!({"n": g.n(), "m": g.m(), "layers": layers, "trials": trials}));
    report.seeds.push(seed);
    for (i, &p) in ps.iter().enumerate() {
        let rate = connectivity_rate(g, p, layers, trials, rng::derive(seed, &[i as u64]))?;
        report.records.push(RateRecord { p, layers, trials, connected_rate: rate });
    }
    report.aggregate = json!({"points": report.records.len()});
    c.emit(&report)?;
    Ok(ExitCode::SUCCESS)
}

fn diam_exp(g: &Multigraph, c: &Common, p: f64) -> Result<ExitCode> {
    let seed = need(c.seed, "--seed");
    let trials = c.trials.unwrap_or(50);
    let diam = lowerbound::sampled_diameter_experiment(g, p, trials, seed)?;
    let mut report = ExperimentReport::new("diam-exp", json!({"n": g.n(), "m": g.m(), "p": p, "trials": trials}));
    report.seeds.push(seed);
    report.records = diam
        .iter()
        .enumerate()
        .map(|(t, &d)| DiameterRecord { trial: t as u32, connected: d.is_some(), diameter: d })
        .collect();
    let disconnected = diam.iter().filter(|d| d.is_none()).count();
    let max = diam.iter().flatten().max();
    report.aggregate = json!({
        "trials": trials,
        "disconnected": disconnected,
        "max_diameter": max,
        "base_diameter": diameter(g, None),
    });
    c.emit(&report)?;
    Ok(ExitCode::SUCCESS)
}

fn lb_verify(g: &Multigraph, c: &Common, k: usize) -> Result<ExitCode> {
    if k == 0 || !g.n().is_multiple_of(k) {
        return Err(Error::InvalidParams(format!("k = {k} must divide n = {}", g.n())).into());
    }
    let observed = lowerbound::verify_family(g, k);
    let bound = ((g.n() / k) as f64).log2();
    let holds = observed as f64 <= bound;
    let out = json!({"k": k, "c_observed": observed, "bound": bound, "holds": holds});
    c.write_with(|w| Ok(writeln!(w, "{out}")?))?;
    Ok(if holds { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run_suite(c: &Common, only: &[u8]) -> Result<ExitCode> {
    let mut outcomes = Vec::new();
    for &(id, ..) in suite::CRITERIA {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let o = suite::run_criterion(id).expect("listed criterion");
        eprintln!("{o}");
        outcomes.push(o);
    }
    let all = outcomes.iter().all(|o| o.pass);
    if c.output.is_some() {
        let report = json!({"schema_version": report::SCHEMA_VERSION, "command": "suite", "pass": all, "criteria": outcomes});
        c.write_with(|w| Ok(writeln!(w, "{}", serde_json::to_string_pretty(&report)?)?))?;
    }
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
