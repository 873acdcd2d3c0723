//! Lock-step synchronous execution of per-node programs over a [`Multigraph`].
//!
//! A packet carries a small `tag` naming the logical channel (which pipelined
//! instance it belongs to) and a payload [`BitString`]. Only payload bits are
//! charged against the [`BitBudget`].

mod bits;
pub mod ledger;

use std::io::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::rng::{self, tag, Rng};

pub use bits::{width_for, BitReader, BitString};
pub use ledger::{ledger_charge, log_star, CostLedger, LedgerEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BudgetMode {
    /// `B` bits per direction per round on every link.
    PerEdge,
    /// `B * w(e)` bits per direction per round on link `e`.
    PerWeight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitBudget {
    pub mode: BudgetMode,
    pub bits: u64,
}

impl BitBudget {
    pub fn per_edge(bits: u64) -> Self {
        BitBudget { mode: BudgetMode::PerEdge, bits }
    }

    pub fn per_weight(bits: u64) -> Self {
        BitBudget { mode: BudgetMode::PerWeight, bits }
    }

    /// `PerEdge(max(1, ceil(log2 n)) * 8)`.
    pub fn default_for(n: usize) -> Self {
        Self::per_edge(default_bits(n))
    }

    /// Bits allowed over a link of weight `w` in one round and one direction.
    pub fn limit(&self, weight: u64) -> u64 {
        match self.mode {
            BudgetMode::PerEdge => self.bits,
            BudgetMode::PerWeight => self.bits.saturating_mul(weight),
        }
    }
}

pub fn default_bits(n: usize) -> u64 {
    (width_for(n as u64) as u64).max(1) * 8
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimConfig {
    pub budget: BitBudget,
    pub round_cap: u64,
    pub seed: u64,
}

impl SimConfig {
    pub fn new(budget: BitBudget, round_cap: u64, seed: u64) -> Self {
        SimConfig { budget, round_cap, seed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Packet {
    pub tag: u32,
    pub bits: BitString,
}

impl Packet {
    pub fn new(tag: u32, bits: BitString) -> Self {
        Packet { tag, bits }
    }
}

/// One incident link as seen from a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Port {
    pub edge: usize,
    pub neighbor: usize,
    pub weight: u64,
}

/// What a node knows about itself when it runs.
pub struct Ctx<'a> {
    pub id: usize,
    pub n: usize,
    pub ports: &'a [Port],
    /// Current round; 0 during `init`.
    pub round: u64,
    pub budget: BitBudget,
    pub rng: &'a mut Rng,
}

impl Ctx<'_> {
    /// Payload bits this node may put on `port` this round.
    pub fn port_budget(&self, port: usize) -> u64 {
        self.budget.limit(self.ports[port].weight)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Delivered {
    pub port: usize,
    pub packet: Packet,
}

#[derive(Debug, Default)]
pub struct Outbox {
    sent: Vec<(usize, Packet)>,
}

impl Outbox {
    pub fn send(&mut self, port: usize, packet: Packet) {
        self.sent.push((port, packet));
    }

    pub fn is_empty(&self) -> bool {
        self.sent.is_empty()
    }
}

/// A synchronous per-node state machine.
///
/// `step` runs in every round where the node is not halted or has mail; a
/// halted node that receives a packet is stepped again. All randomness must
/// come from `ctx.rng`.
pub trait NodeProgram: Sized {
    type Input;
    type Output;

    fn init(ctx: &mut Ctx<'_>, input: Self::Input) -> Self;
    fn step(&mut self, ctx: &mut Ctx<'_>, inbox: &[Delivered], out: &mut Outbox);
    fn halted(&self) -> bool;
    fn output(self) -> Self::Output;
}

#[derive(Clone, Debug)]
pub struct SimResult<O> {
    pub outputs: Vec<O>,
    pub rounds_used: u64,
    pub max_bits_per_edge_round: u64,
    pub packets: u64,
    pub ledger: CostLedger,
}

/// Aggregated measurements of several simulator runs executed back to back.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunStats {
    pub rounds: u64,
    pub max_bits_per_edge_round: u64,
    pub packets: u64,
    pub phases: u64,
}

impl RunStats {
    pub fn absorb<O>(&mut self, r: &SimResult<O>) {
        self.rounds += r.rounds_used;
        self.max_bits_per_edge_round = self.max_bits_per_edge_round.max(r.max_bits_per_edge_round);
        self.packets += r.packets;
        self.phases += 1;
    }

    pub fn merge(&mut self, other: &RunStats) {
        self.rounds += other.rounds;
        self.max_bits_per_edge_round = self.max_bits_per_edge_round.max(other.max_bits_per_edge_round);
        self.packets += other.packets;
        self.phases += other.phases;
    }
}

/// Port tables for all nodes plus, for each port, the matching port at the far end.
pub(crate) struct Topology {
    pub ports: Vec<Vec<Port>>,
    pub reverse: Vec<Vec<usize>>,
}

impl Topology {
    pub fn new(g: &Multigraph) -> Self {
        let ports: Vec<Vec<Port>> = (0..g.n())
            .map(|v| {
                g.incident(v)
                    .iter()
                    .map(|&(edge, neighbor)| Port {
                        edge,
                        neighbor,
                        weight: g.weight(edge),
                    })
                    .collect()
            })
            .collect();
        let mut slot = vec![[usize::MAX; 2]; g.m()];
        for (v, ps) in ports.iter().enumerate() {
            for (i, p) in ps.iter().enumerate() {
                let side = (g.edge(p.edge).u != v) as usize;
                slot[p.edge][side] = i;
            }
        }
        let reverse = ports
            .iter()
            .enumerate()
            .map(|(v, ps)| {
                ps.iter()
                    .map(|p| {
                        let side = (g.edge(p.edge).u != v) as usize;
                        slot[p.edge][1 - side]
                    })
                    .collect()
            })
            .collect();
        Topology { ports, reverse }
    }
}

/// Hook for observing a run: called after each node step with the inbox it consumed.
pub trait Observer<P> {
    fn stepped(&mut self, round: u64, node: usize, inbox: &[Delivered], state: &P);
}

struct NoObserver;

impl<P> Observer<P> for NoObserver {
    fn stepped(&mut self, _: u64, _: usize, _: &[Delivered], _: &P) {}
}

/// Runs `P` on every node of `g` until quiescence: all nodes halted and no
/// packet in flight. Packets sent in round `r` arrive in round `r + 1`.
pub fn run_sync<P: NodeProgram>(g: &Multigraph, inputs: Vec<P::Input>, cfg: &SimConfig) -> Result<SimResult<P::Output>> {
    run_sync_observed::<P>(g, inputs, cfg, &mut NoObserver)
}

pub fn run_sync_observed<P: NodeProgram>(
    g: &Multigraph,
    inputs: Vec<P::Input>,
    cfg: &SimConfig,
    observer: &mut impl Observer<P>,
) -> Result<SimResult<P::Output>> {
    if cfg.round_cap == 0 {
        return Err(Error::InvalidParameter("round cap must be at least 1".into()));
    }
    if cfg.budget.bits == 0 {
        return Err(Error::InvalidParameter("bit budget must be at least 1".into()));
    }
    let n = g.n();
    assert_eq!(inputs.len(), n, "one input per node");
    let topo = Topology::new(g);
    let trace = std::env::var("CONGESTCUT_TRACE").is_ok_and(|v| v == "1");

    let mut rngs: Vec<Rng> = (0..n).map(|v| rng::stream(cfg.seed, &[tag::NODE, v as u64])).collect();
    let mut states: Vec<P> = inputs
        .into_iter()
        .enumerate()
        .map(|(v, input)| {
            let mut ctx = Ctx {
                id: v,
                n,
                ports: &topo.ports[v],
                round: 0,
                budget: cfg.budget,
                rng: &mut rngs[v],
            };
            P::init(&mut ctx, input)
        })
        .collect();

    let mut inbox: Vec<Vec<Delivered>> = vec![Vec::new(); n];
    let mut next: Vec<Vec<Delivered>> = vec![Vec::new(); n];
    let mut out = Outbox::default();
    let mut port_bits: Vec<u64> = Vec::new();
    let mut in_flight = 0usize;
    let mut rounds_used = 0;
    let mut max_bits = 0;
    let mut packets = 0;

    let mut round = 1;
    loop {
        let active = in_flight > 0 || states.iter().any(|s| !s.halted());
        if !active {
            break;
        }
        if round > cfg.round_cap {
            return Err(Error::RoundCapExceeded(cfg.round_cap));
        }
        in_flight = 0;
        for v in 0..n {
            if states[v].halted() && inbox[v].is_empty() {
                continue;
            }
            let mut ctx = Ctx {
                id: v,
                n,
                ports: &topo.ports[v],
                round,
                budget: cfg.budget,
                rng: &mut rngs[v],
            };
            states[v].step(&mut ctx, &inbox[v], &mut out);
            observer.stepped(round, v, &inbox[v], &states[v]);
            inbox[v].clear();

            if out.sent.is_empty() {
                continue;
            }
            port_bits.clear();
            port_bits.resize(topo.ports[v].len(), 0);
            for (port, packet) in &out.sent {
                port_bits[*port] += packet.bits.len();
            }
            for (port, &bits) in port_bits.iter().enumerate() {
                if bits == 0 {
                    continue;
                }
                let p = topo.ports[v][port];
                let budget = cfg.budget.limit(p.weight);
                if trace {
                    let _ = writeln!(
                        std::io::stderr(),
                        r#"{{"round":{round},"edge":{},"bits":{bits}}}"#,
                        p.edge
                    );
                }
                if bits > budget {
                    return Err(Error::BudgetViolation {
                        edge: p.edge,
                        round,
                        bits,
                        budget,
                    });
                }
                max_bits = max_bits.max(bits);
            }
            for (port, packet) in out.sent.drain(..) {
                let to = topo.ports[v][port].neighbor;
                next[to].push(Delivered {
                    port: topo.reverse[v][port],
                    packet,
                });
                in_flight += 1;
                packets += 1;
            }
        }
        rounds_used = round;
        std::mem::swap(&mut inbox, &mut next);
        for b in &mut inbox {
            b.sort_by_key(|d| d.port);
        }
        round += 1;
    }

    Ok(SimResult {
        outputs: states.into_iter().map(P::output).collect(),
        rounds_used,
        max_bits_per_edge_round: max_bits,
        packets,
        ledger: CostLedger::new(),
    })
}

/// Re-executes node `v` alone from its input, feeding the recorded inboxes
/// of rounds `1..=upto`. `inboxes[r - 1]` is the inbox of round `r`; `None`
/// means the node was not stepped in that round.
pub fn replay_node<P: NodeProgram>(
    g: &Multigraph,
    v: usize,
    input: P::Input,
    cfg: &SimConfig,
    inboxes: &[Option<Vec<Delivered>>],
    upto: u64,
) -> P {
    let topo = Topology::new(g);
    let mut rng = rng::stream(cfg.seed, &[tag::NODE, v as u64]);
    let mut ctx = Ctx {
        id: v,
        n: g.n(),
        ports: &topo.ports[v],
        round: 0,
        budget: cfg.budget,
        rng: &mut rng,
    };
    let mut state = P::init(&mut ctx, input);
    let mut out = Outbox::default();
    for (i, inbox) in inboxes.iter().take(upto as usize).enumerate() {
        if let Some(inbox) = inbox {
            ctx.round = i as u64 + 1;
            state.step(&mut ctx, inbox, &mut out);
            out.sent.clear();
        }
    }
    state
}

#[cfg(test)]
mod tests;
