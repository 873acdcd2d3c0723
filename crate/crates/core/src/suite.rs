//! The acceptance battery: twelve seeded checks over the simulator, the
//! oracles, both min-cut algorithms and the lower-bound generators. Each
//! check reports pass/fail with a one-line summary of what it measured.

use std::time::{Duration, Instant};

use rand::Rng as _;
use serde::Serialize;

use crate::dist::{ledger_diameter, sparse_certificate};
use crate::error::{Error, Result};
use crate::graph::generators::{cycle, dumbbell, dumbbell_bridge, random_connected, random_multigraph, star};
use crate::graph::{contract, crossing_weight, min_cut_bruteforce, min_cut_exact, EdgeSubset, Multigraph};
use crate::layering::{cut_tester, epoch_probability, layer_count, layering_mincut, LayeringConfig};
use crate::lowerbound::{gen_base_h, gen_dissemination_graphs, gen_weighted_cut_instance, path_nodes, sampled_diameter_experiment, verify_family, Disjointness};
use crate::matula::{matula_mincut, MatulaConfig};
use crate::rng;
use crate::sampling::{approx_edge_connectivity, connectivity_rate, layering_experiment, log2n, ApproxConfig};
use crate::sim::{ledger::ceil_sqrt, log_star, run_sync, BitBudget, BitString, Ctx, Delivered, NodeProgram, Outbox, Packet, SimConfig};
use crate::Cut;

/// Root seed of every randomized check.
pub const SUITE_SEED: u64 = 0x5EED_C0DE;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
}

impl std::fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<28} {:>8.2}s  {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms as f64 / 1000.0,
            self.detail
        )
    }
}

type Check = fn() -> Result<(bool, String)>;

/// `(id, name, time limit, check)` for every criterion, in order.
pub const CRITERIA: &[(u8, &str, u64, Check)] = &[
    (1, "oracle cross-validation", 30, oracle_cross_validation),
    (2, "sampling threshold", 120, sampling_threshold),
    (3, "approx edge connectivity", 300, approx_connectivity),
    (4, "cut tester error rates", 120, tester_rates),
    (5, "epoch family success", 600, epoch_family),
    (6, "layering end to end", 600, layering_end_to_end),
    (7, "matula end to end", 600, matula_end_to_end),
    (8, "certificate properties", 300, certificate_properties),
    (9, "lower-bound invariants", 120, lowerbound_invariants),
    (10, "ledger sanity", 600, ledger_sanity),
    (11, "budget enforcement", 600, budget_enforcement),
    (12, "sampled diameter", 120, sampled_diameter),
];

/// Runs criterion `id` (1-based). Errors inside a check count as failures.
pub fn run_criterion(id: u8) -> Option<CriterionOutcome> {
    let &(id, name, limit, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let res = check();
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit);
    let (pass, mut detail) = match res {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    if elapsed > limit {
        detail.push_str(&format!("; over the {}s time limit", limit.as_secs()));
    }
    Some(CriterionOutcome {
        id,
        name,
        pass: pass && elapsed <= limit,
        detail,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.as_millis(),
    })
}

pub fn run_all() -> Vec<CriterionOutcome> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.0)).collect()
}

fn seed_for(criterion: u64) -> u64 {
    rng::derive(SUITE_SEED, &[criterion])
}

/// The weighted intersecting instance on `H(16, 4)` with common element 2.
pub fn h_instance(alpha: u64) -> Multigraph {
    gen_weighted_cut_instance(16, 4, alpha, &Disjointness::new([1, 2], [2, 3])).expect("fixed parameters are valid")
}

fn oracle_cross_validation() -> Result<(bool, String)> {
    let mut r = rng::stream(seed_for(1), &[]);
    let mut mismatches = 0;
    for _ in 0..200 {
        let n = r.random_range(2..=12);
        let extra = r.random_range(0..=2 * n);
        let g = random_multigraph(n, extra, 8, &mut r);
        if min_cut_exact(&g)?.weight != min_cut_bruteforce(&g)?.weight {
            mismatches += 1;
        }
    }
    Ok((mismatches == 0, format!("{mismatches} mismatches over 200 graphs")))
}

fn sampling_threshold() -> Result<(bool, String)> {
    let n = 64;
    let layers = layer_count(n);
    let mut ok = true;
    let mut parts = Vec::new();
    for lambda in [8u64, 16] {
        let g = cycle(n, lambda / 2);
        let high = (20.0 * log2n(n) / lambda as f64).min(1.0);
        let above = connectivity_rate(&g, high, layers, 100, seed_for(2) ^ lambda)?;
        let below = connectivity_rate(&g, 1.0 / lambda as f64, layers, 200, seed_for(2) ^ (lambda << 8))?;
        ok &= above >= 0.95 && below <= 0.85;
        parts.push(format!("λ={lambda}: {above:.2} at p={high:.3}, {below:.2} at p=1/λ"));
    }
    Ok((ok, parts.join("; ")))
}

/// The five graphs with known `λ` used for the connectivity estimate.
pub fn approx_graphs() -> Vec<(&'static str, Multigraph)> {
    vec![
        ("K2 w=32", Multigraph::new(2, [(0, 1, 32)]).expect("valid")),
        ("star16", star(16)),
        ("cycle16x8", cycle(16, 8)),
        ("dumbbell5", dumbbell(5)),
        ("H(16,4) α=1", h_instance(1)),
    ]
}

fn approx_connectivity() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (i, (name, g)) in approx_graphs().into_iter().enumerate() {
        let lambda = min_cut_exact(&g)?.weight as f64;
        let upper = 8.0 * lambda * log2n(g.n());
        let cfg = ApproxConfig::for_graph(&g);
        let mut good = 0;
        for s in 0..20 {
            let lt = approx_edge_connectivity(&g, rng::derive(seed_for(3), &[i as u64, s]), &cfg)?.value.lambda_tilde as f64;
            good += (lt >= lambda / 2.0 && lt <= upper) as u32;
        }
        ok &= good >= 18;
        parts.push(format!("{name}: {good}/20"));
    }
    Ok((ok, parts.join(", ")))
}

fn tester_rates() -> Result<(bool, String)> {
    let g = dumbbell(5);
    let sub = g.all_edges().difference(&EdgeSubset::from_ids(g.m(), [dumbbell_bridge(5)]));
    let budget = BitBudget::default_for(g.n());
    let (mut false_fail, mut false_pass) = (0, 0);
    for s in 0..100 {
        let low = cut_tester(&g, &sub, 10.0, 0.125, rng::derive(seed_for(4), &[0, s]), budget)?.value;
        false_fail += !low.pass.iter().all(|&p| p) as u32;
        let high = cut_tester(&g, &sub, 0.8, 0.125, rng::derive(seed_for(4), &[1, s]), budget)?.value;
        false_pass += high.pass.iter().any(|&p| p) as u32;
    }
    Ok((
        false_fail <= 5 && false_pass <= 5,
        format!("false-fail {false_fail}/100 at κ=10, false-pass {false_pass}/100 at κ=0.8"),
    ))
}

fn epoch_family() -> Result<(bool, String)> {
    let (n, lambda, eps) = (64, 8.0, 0.5);
    let g = cycle(n, 4);
    let p = epoch_probability(n, lambda, eps);
    let bound = 80.0 * lambda / eps;
    let mut hits = 0;
    for e in 0..400 {
        let out = layering_experiment(&g, p, layer_count(n), rng::derive(seed_for(5), &[e]))?;
        hits += out.family.iter().any(|c| c.weight as f64 <= bound) as u32;
    }
    let rate = hits as f64 / 400.0;
    let need = (n as f64).powf(-eps) / 4.0;
    Ok((rate >= need, format!("success {rate:.3} (need ≥ {need:.4}) at p={p:.4}")))
}

/// A returned cut is valid when its members form a proper subset and its
/// reported weight matches a recount in `g`.
fn valid_cut(g: &Multigraph, cut: &Cut) -> bool {
    !cut.members.is_empty() && cut.members.len() < g.n() && crate::cut_weight(g, &cut.members).ok() == Some(cut.weight)
}

fn layering_end_to_end() -> Result<(bool, String)> {
    let eps = 0.5;
    let mut ok = true;
    let mut parts = Vec::new();
    let graphs = [("dumbbell", dumbbell(5)), ("cycle16", cycle(16, 1)), ("H(16,4) α=1", h_instance(1))];
    for (i, (name, g)) in graphs.iter().enumerate() {
        let lambda = min_cut_exact(g)?.weight as f64;
        let bound = 100.0 * 1.125 * 2.0 * lambda / eps;
        let cfg = LayeringConfig::new(g, eps);
        let mut weights = Vec::new();
        let mut good = 0;
        for s in 0..10 {
            match layering_mincut(g, &cfg, rng::derive(seed_for(6), &[i as u64, s])) {
                Ok(r) => {
                    good += (valid_cut(g, &r.cut) && r.cut.weight as f64 <= bound) as u32;
                    weights.push(r.cut.weight);
                }
                Err(Error::NoCutFound) => {}
                Err(e) => return Err(e),
            }
        }
        weights.sort_unstable();
        let median = weights.get(weights.len() / 2).map(|&w| w as f64 / lambda);
        ok &= good >= 9;
        if i == 0 {
            ok &= median == Some(1.0);
        }
        parts.push(format!("{name}: {good}/10 median ratio {}", median.map_or("-".into(), |m| format!("{m:.2}"))));
    }
    Ok((ok, parts.join(", ")))
}

fn matula_end_to_end() -> Result<(bool, String)> {
    let eps = 0.5;
    let mut ok = true;
    let mut parts = Vec::new();
    let graphs = [("cycle16", cycle(16, 1)), ("dumbbell", dumbbell(5)), ("H(16,4) α=3", h_instance(3))];
    for (i, (name, g)) in graphs.iter().enumerate() {
        let oracle = min_cut_exact(g)?;
        let bound = (2.0 + eps) * oracle.weight as f64;
        let cfg = MatulaConfig::new(g, eps);
        let (mut good, mut exact) = (0, 0);
        for s in 0..10 {
            match matula_mincut(g, &cfg, rng::derive(seed_for(7), &[i as u64, s])) {
                Ok(r) => {
                    let within = valid_cut(g, &r.cut) && r.cut.weight as f64 <= bound;
                    good += within as u32;
                    exact += (within && r.cut.same_partition(&oracle, g.n())) as u32;
                }
                Err(Error::NoCutFound) => {}
                Err(e) => return Err(e),
            }
        }
        ok &= good >= 9;
        if i == 2 {
            // Any cut within the bound is the path cut, so the two counts agree.
            ok &= exact == good;
            parts.push(format!("{name}: {good}/10, {exact} equal the oracle members"));
        } else {
            parts.push(format!("{name}: {good}/10"));
        }
    }
    Ok((ok, parts.join(", ")))
}

/// Checks sparsity, cut coverage and the connectivity floor of one
/// certificate by enumerating every cut of `g`. Returns a reason on failure.
pub fn check_certificate(g: &Multigraph, base: &EdgeSubset, k: u64, budget: BitBudget) -> Result<Option<String>> {
    let cert = sparse_certificate(g, base, k, budget)?.value;
    let quotient = contract(g, base).graph.n();
    if cert.size() > k * quotient as u64 {
        return Ok(Some(format!("|E*| = {} > k|V'| = {}", cert.size(), k * quotient as u64)));
    }
    if cert.copies.iter().enumerate().any(|(e, &c)| base.contains(e) && c > 0) {
        return Ok(Some("E* meets E_c".into()));
    }
    let outside: Vec<u64> = (0..g.m()).map(|e| if base.contains(e) { 0 } else { g.weight(e) }).collect();
    // E_c is contracted: its edges can never be cut.
    let solid = g.total_weight() + 1;
    let inside: Vec<u64> = (0..g.m()).map(|e| if base.contains(e) { solid } else { cert.copies[e] }).collect();
    let outside_g = g.reweighted(&outside)?;
    let cert_g = g.reweighted(&cert.copies)?;
    let kept = g.reweighted(&inside)?;
    let n = g.n();
    let mut side = vec![false; n];
    for mask in 1u64..(1 << (n - 1)) {
        for (v, s) in side.iter_mut().enumerate().skip(1) {
            *s = mask >> (v - 1) & 1 == 1;
        }
        // Cuts that separate an E_c edge do not survive contraction.
        if base.iter().any(|e| side[g.edge(e).u] != side[g.edge(e).v]) {
            continue;
        }
        let full = crossing_weight(&outside_g, &side);
        let covered = crossing_weight(&cert_g, &side);
        if covered < full.min(k) {
            return Ok(Some(format!("cut {mask:#b} keeps {covered} of {full} copies, k = {k}")));
        }
    }
    let lambda = min_cut_exact(g)?.weight;
    let kept_lambda = min_cut_exact(&kept)?.weight;
    if kept_lambda < lambda.min(k) {
        return Ok(Some(format!("λ(E* ∪ E_c) = {kept_lambda} < min(k, λ) = {}", lambda.min(k))));
    }
    Ok(None)
}

fn certificate_properties() -> Result<(bool, String)> {
    let mut r = rng::stream(seed_for(8), &[]);
    let mut failures = Vec::new();
    for t in 0..100 {
        let n = r.random_range(3..=10);
        let extra = r.random_range(0..=2 * n);
        let g = random_connected(n, extra, 4, &mut r);
        let base = EdgeSubset::from_ids(g.m(), (0..g.m()).filter(|_| r.random_bool(0.25)));
        let k = r.random_range(1..=5);
        if let Some(why) = check_certificate(&g, &base, k, BitBudget::default_for(n))? {
            failures.push(format!("graph {t}: {why}"));
        }
    }
    let detail = match failures.first() {
        None => "100/100 certificates hold".to_string(),
        Some(f) => format!("{} failures, first: {f}", failures.len()),
    };
    Ok((failures.is_empty(), detail))
}

fn subsets(k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << (k - 1))
        .map(|mask| (1..k).filter(|&x| mask >> (x - 1) & 1 == 1).collect())
        .collect()
}

fn lowerbound_invariants() -> Result<(bool, String)> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for (n, k) in [(8, 2), (16, 4), (32, 4), (64, 8), (48, 4), (64, 4), (18, 3)] {
        let l = n / k;
        let bound = (l as f64).log2();
        let base = gen_base_h(n, k)?;
        checked += 1;
        if verify_family(&base, k) as f64 > bound {
            failures.push(format!("H({n},{k}) scan {}", verify_family(&base, k)));
        }
        // Exhaust all promise-respecting inputs on the smaller ones.
        if n > 32 {
            continue;
        }
        for alpha in 1..=3u64 {
            for x in subsets(k) {
                for y in subsets(k) {
                    let sets = Disjointness::new(x.iter().copied(), y.iter().copied());
                    let common = match sets.validate(k) {
                        Ok(c) => c,
                        Err(Error::InvalidPromise(_)) => continue,
                        Err(e) => return Err(e),
                    };
                    let g = gen_weighted_cut_instance(n, k, alpha, &sets)?;
                    checked += 1;
                    let scan = verify_family(&g, k);
                    let cut = min_cut_exact(&g)?;
                    let tag = format!("H({n},{k}) α={alpha} X={x:?} Y={y:?}");
                    if scan as f64 > bound {
                        failures.push(format!("{tag}: scan {scan}"));
                    }
                    match common {
                        Some(z) => {
                            let path = Cut::new(&g, path_nodes(n, k, z))?;
                            if cut.weight != l as u64 || path.weight != l as u64 {
                                failures.push(format!("{tag}: min cut {} path cut {}", cut.weight, path.weight));
                            }
                        }
                        None if cut.weight < alpha * l as u64 + 1 => {
                            failures.push(format!("{tag}: disjoint min cut {}", cut.weight));
                        }
                        None => {}
                    }
                }
            }
        }
    }
    let detail = match failures.first() {
        None => format!("{checked} instances hold"),
        Some(f) => format!("{} of {checked} fail, first: {f}", failures.len()),
    };
    Ok((failures.is_empty(), detail))
}

/// Recomputes a layering run's ledger total from its diameter, pooled
/// labeling instance count and the number of each other primitive call.
fn ledger_sanity() -> Result<(bool, String)> {
    let g = cycle(16, 1);
    let r = layering_mincut(&g, &LayeringConfig::new(&g, 0.5), seed_for(10))?;
    let (n, d, k) = (g.n() as u64, ledger_diameter(&g), r.labeling_instances);
    let count = |p: &str| r.ledger.of(p).count() as u64;
    let known = ["thurimella_multi", "connectivity_extra", "bfs", "convergecast", "broadcast"];
    let stray = r.ledger.entries.iter().filter(|e| !known.contains(&e.primitive.as_str())).count();
    let expected = d
        + k * ceil_sqrt(n) * log_star(n)
        + count("connectivity_extra") * d
        + count("bfs") * (d + 1)
        + (count("convergecast") + count("broadcast")) * d;
    let total = r.ledger.total();
    let ok = stray == 0 && count("thurimella_multi") == 1 && r.diameter == d && total == expected;
    Ok((
        ok,
        format!(
            "ledger {total}, recomputed {expected} (D={d}, {k} labeling instances, {} bfs, {} convergecast, {} broadcast)",
            count("bfs"),
            count("convergecast"),
            count("broadcast")
        ),
    ))
}

/// Sends one bit more than its port allows, once.
struct Overspend {
    done: bool,
}

impl NodeProgram for Overspend {
    type Input = ();
    type Output = ();

    fn init(_: &mut Ctx<'_>, _: ()) -> Self {
        Overspend { done: false }
    }

    fn step(&mut self, ctx: &mut Ctx<'_>, _: &[Delivered], out: &mut Outbox) {
        if !self.done && !ctx.ports.is_empty() {
            let mut bits = BitString::new();
            let mut left = ctx.port_budget(0) + 1;
            while left > 0 {
                let w = left.min(64) as u32;
                bits.push(0, w);
                left -= w as u64;
            }
            out.send(0, Packet::new(0, bits));
        }
        self.done = true;
    }

    fn halted(&self) -> bool {
        self.done
    }

    fn output(self) {}
}

fn budget_enforcement() -> Result<(bool, String)> {
    let g = cycle(8, 1);
    let budget = BitBudget::default_for(g.n());
    let caught = matches!(
        run_sync::<Overspend>(&g, vec![(); g.n()], &SimConfig::new(budget, 10, 0)),
        Err(Error::BudgetViolation { .. })
    );
    let mut worst = Vec::new();
    let seed = seed_for(11);
    for (name, g) in approx_graphs() {
        let b = BitBudget::default_for(g.n());
        let m = approx_edge_connectivity(&g, seed, &ApproxConfig::for_graph(&g))?;
        worst.push((format!("approx {name}"), m.stats.max_bits_per_edge_round, b.bits));
        let l = layering_mincut(&g, &LayeringConfig::new(&g, 0.5), seed)?;
        worst.push((format!("layering {name}"), l.measured.max_bits_per_edge_round, b.bits));
        let mt = matula_mincut(&g, &MatulaConfig::new(&g, 0.5), seed)?;
        worst.push((format!("matula {name}"), mt.measured.max_bits_per_edge_round, b.bits));
        let c = sparse_certificate(&g, &EdgeSubset::empty(g.m()), 3, b)?;
        worst.push((format!("certificate {name}"), c.stats.max_bits_per_edge_round, b.bits));
    }
    let over: Vec<_> = worst.iter().filter(|(_, used, cap)| used > cap).collect();
    let peak = worst.iter().map(|w| w.1).max().unwrap_or(0);
    Ok((
        caught && over.is_empty(),
        format!(
            "over-budget program {}; {} algorithm runs, peak {peak} bits/edge/round, {} over budget",
            if caught { "rejected" } else { "NOT rejected" },
            worst.len(),
            over.len()
        ),
    ))
}

fn sampled_diameter() -> Result<(bool, String)> {
    let (n, lambda) = (256usize, 4u64);
    let (_, h_prime) = gen_dissemination_graphs(n, lambda)?;
    let p = 1.0 / (4.0 * log2n(n));
    let diam = sampled_diameter_experiment(&h_prime, p, 50, seed_for(12))?;
    let far = n / (32 * lambda as usize);
    let hits = diam.iter().filter(|d| d.is_none_or(|d| d >= far)).count();
    let disconnected = diam.iter().filter(|d| d.is_none()).count();
    Ok((
        hits * 5 >= 50,
        format!("{hits}/50 trials reach diameter ≥ {far} or disconnect ({disconnected} disconnected)"),
    ))
}
