use rand::Rng as _;

use super::*;
use crate::graph::generators::{cycle, random_connected};
use crate::graph::Multigraph;
use proptest::prelude::*;

/// Sends its id on every port in round 1 and halts; records what arrives.
#[derive(Debug)]
struct SendIdOnce {
    id: usize,
    sent: bool,
    heard: Vec<(u64, u64)>,
}

impl NodeProgram for SendIdOnce {
    type Input = ();
    type Output = Vec<(u64, u64)>;

    fn init(ctx: &mut Ctx<'_>, _: ()) -> Self {
        SendIdOnce { id: ctx.id, sent: false, heard: Vec::new() }
    }

    fn step(&mut self, ctx: &mut Ctx<'_>, inbox: &[Delivered], out: &mut Outbox) {
        for d in inbox {
            self.heard.push((ctx.round, d.packet.bits.reader().read(64)));
        }
        if !self.sent {
            for port in 0..ctx.ports.len() {
                out.send(port, Packet::new(0, BitString::new().with(self.id as u64, 64)));
            }
            self.sent = true;
        }
    }

    fn halted(&self) -> bool {
        self.sent
    }

    fn output(self) -> Self::Output {
        self.heard
    }
}

/// Sends `bits` payload bits over port 0 in round 1.
struct Blast(u64);

impl NodeProgram for Blast {
    type Input = u64;
    type Output = ();

    fn init(_: &mut Ctx<'_>, bits: u64) -> Self {
        Blast(bits)
    }

    fn step(&mut self, _: &mut Ctx<'_>, _: &[Delivered], out: &mut Outbox) {
        let mut s = BitString::new();
        let mut left = self.0;
        while left > 0 {
            let w = left.min(64) as u32;
            s.push(0, w);
            left -= w as u64;
        }
        if !s.is_empty() {
            out.send(0, Packet::new(0, s));
        }
        self.0 = 0;
    }

    fn halted(&self) -> bool {
        self.0 == 0
    }

    fn output(self) {}
}

/// Random chatter for a fixed number of rounds, bounded by the port budget.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Chatter {
    rounds: u64,
    digest: u64,
    done: bool,
}

impl NodeProgram for Chatter {
    type Input = u64;
    type Output = u64;

    fn init(ctx: &mut Ctx<'_>, rounds: u64) -> Self {
        Chatter { rounds, digest: ctx.rng.random(), done: false }
    }

    fn step(&mut self, ctx: &mut Ctx<'_>, inbox: &[Delivered], out: &mut Outbox) {
        for d in inbox {
            let mut r = d.packet.bits.reader();
            let mut x = d.port as u64;
            while r.remaining() > 0 {
                let w = r.remaining().min(64);
                x = x.rotate_left(7) ^ r.read(w);
            }
            self.digest = self.digest.wrapping_mul(0x100_0000_01b3) ^ x ^ d.packet.tag as u64;
        }
        if ctx.round > self.rounds {
            self.done = true;
            return;
        }
        for port in 0..ctx.ports.len() {
            if ctx.rng.random_bool(0.5) {
                let w = ctx.rng.random_range(1..=ctx.port_budget(port).min(64)) as u32;
                let v = if w == 64 { self.digest } else { self.digest & ((1 << w) - 1) };
                out.send(port, Packet::new(ctx.rng.random_range(0..4), BitString::new().with(v, w)));
            }
        }
    }

    fn halted(&self) -> bool {
        self.done
    }

    fn output(self) -> u64 {
        self.digest
    }
}

#[test]
fn send_id_once_on_a_four_cycle() {
    let g = cycle(4, 1);
    let cfg = SimConfig::new(BitBudget::per_edge(64), 10, 0);
    let r = run_sync::<SendIdOnce>(&g, vec![(); 4], &cfg).unwrap();
    assert_eq!(r.rounds_used, 2);
    assert_eq!(r.packets, 8);
    assert_eq!(r.max_bits_per_edge_round, 64);
    for (v, heard) in r.outputs.iter().enumerate() {
        let mut ids: Vec<u64> = heard.iter().map(|&(round, id)| {
            assert_eq!(round, 2);
            id
        }).collect();
        ids.sort();
        let mut expect = vec![((v + 1) % 4) as u64, ((v + 3) % 4) as u64];
        expect.sort();
        assert_eq!(ids, expect);
    }
}

#[test]
fn per_edge_violation_in_round_one() {
    let g = Multigraph::unit(2, [(0, 1)]).unwrap();
    let cfg = SimConfig::new(BitBudget::per_edge(16), 10, 0);
    let err = run_sync::<Blast>(&g, vec![32, 0], &cfg).unwrap_err();
    assert_eq!(err, Error::BudgetViolation { edge: 0, round: 1, bits: 32, budget: 16 });
}

#[test]
fn per_weight_threshold() {
    let g = Multigraph::new(2, [(0, 1, 8)]).unwrap();
    let cfg = SimConfig::new(BitBudget::per_weight(4), 10, 0);
    let ok = run_sync::<Blast>(&g, vec![32, 0], &cfg).unwrap();
    assert_eq!(ok.max_bits_per_edge_round, 32);
    let err = run_sync::<Blast>(&g, vec![33, 0], &cfg).unwrap_err();
    assert!(matches!(err, Error::BudgetViolation { bits: 33, budget: 32, round: 1, .. }));
}

#[test]
fn round_cap() {
    let g = cycle(5, 1);
    let cfg = SimConfig::new(BitBudget::per_edge(16), 3, 0);
    assert_eq!(
        run_sync::<Chatter>(&g, vec![10; 5], &cfg).unwrap_err(),
        Error::RoundCapExceeded(3)
    );
    assert!(run_sync::<Chatter>(&g, vec![1; 5], &SimConfig::new(BitBudget::per_edge(16), 0, 0)).is_err());
}

#[test]
fn default_budget() {
    assert_eq!(BitBudget::default_for(16).bits, 32);
    assert_eq!(BitBudget::default_for(17).bits, 40);
    assert_eq!(BitBudget::default_for(1).bits, 8);
}

struct Recorder {
    node: usize,
    inboxes: Vec<Option<Vec<Delivered>>>,
    states: Vec<(u64, Chatter)>,
}

impl Observer<Chatter> for Recorder {
    fn stepped(&mut self, round: u64, node: usize, inbox: &[Delivered], state: &Chatter) {
        if node != self.node {
            return;
        }
        while self.inboxes.len() < round as usize {
            self.inboxes.push(None);
        }
        self.inboxes[round as usize - 1] = Some(inbox.to_vec());
        self.states.push((round, state.clone()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn deterministic_and_within_budget(seed: u64, n in 3usize..12, bits in 1u64..80, rounds in 1u64..8) {
        let g = random_connected(n, n, 3, &mut rng::stream(seed, &[]));
        let cfg = SimConfig::new(BitBudget::per_edge(bits), 100, seed);
        let a = run_sync::<Chatter>(&g, vec![rounds; n], &cfg).unwrap();
        let b = run_sync::<Chatter>(&g, vec![rounds; n], &cfg).unwrap();
        prop_assert_eq!(&a.outputs, &b.outputs);
        prop_assert_eq!(a.rounds_used, b.rounds_used);
        prop_assert_eq!(a.packets, b.packets);
        prop_assert!(a.max_bits_per_edge_round <= bits);
    }

    #[test]
    fn state_depends_only_on_received_messages(seed: u64, n in 3usize..9, node_pick: usize) {
        let g = random_connected(n, n, 2, &mut rng::stream(seed, &[]));
        let cfg = SimConfig::new(BitBudget::per_edge(24), 100, seed);
        let node = node_pick % n;
        let mut rec = Recorder { node, inboxes: Vec::new(), states: Vec::new() };
        run_sync_observed::<Chatter>(&g, vec![5; n], &cfg, &mut rec).unwrap();
        for (round, state) in &rec.states {
            let replayed: Chatter = replay_node(&g, node, 5, &cfg, &rec.inboxes, *round);
            prop_assert_eq!(&replayed, state);
        }
    }
}
