//! Cross-module properties on small random graphs.

use congestcut::dist::sparse_certificate;
use congestcut::graph::generators::{cycle, dumbbell, random_connected};
use congestcut::graph::{contract, min_cut_exact, EdgeSubset};
use congestcut::lowerbound::{gen_weighted_cut_instance, Disjointness};
use congestcut::matula::matula_core;
use congestcut::suite::check_certificate;
use congestcut::{layering_mincut, matula_mincut, rng, BitBudget, LayeringConfig, MatulaConfig, Multigraph};
use rand::Rng;

#[test]
fn certificates_hold_on_named_graphs() {
    for g in [cycle(8, 1), cycle(6, 3), dumbbell(4)] {
        let b = BitBudget::default_for(g.n());
        for k in 1..=4 {
            assert_eq!(check_certificate(&g, &EdgeSubset::empty(g.m()), k, b).unwrap(), None, "k = {k}");
        }
    }
}

/// Contracting every unit copy left outside a `k`-certificate keeps all
/// cuts of weight at most `k`, so the quotient's connectivity is unchanged
/// whenever `λ <= k`.
#[test]
fn contraction_outside_certificate_keeps_small_cuts() {
    let mut r = rng::stream(11, &[]);
    for _ in 0..60 {
        let n = r.random_range(3..=10);
        let extra = r.random_range(0..=2 * n);
        let g = random_connected(n, extra, 3, &mut r);
        let lambda = min_cut_exact(&g).unwrap().weight;
        let k = r.random_range(1..=4);
        let cert = sparse_certificate(&g, &EdgeSubset::empty(g.m()), k, BitBudget::default_for(n)).unwrap().value;
        let rest = EdgeSubset::from_ids(g.m(), (0..g.m()).filter(|&e| cert.copies[e] < g.weight(e)));
        let q = contract(&g, &rest).graph;
        if lambda <= k {
            assert!(q.n() >= 2, "a cut of weight {lambda} <= k = {k} was contracted away");
            assert_eq!(min_cut_exact(&q).unwrap().weight, lambda);
        } else if q.n() >= 2 {
            assert!(min_cut_exact(&q).unwrap().weight >= lambda);
        }
    }
}

/// When the contraction loop stalls, some component of `H` has a light boundary.
#[test]
fn matula_exit_dichotomy() {
    let eps = 0.5;
    let mut r = rng::stream(12, &[]);
    for t in 0..40 {
        let n = r.random_range(4..=10);
        let extra = r.random_range(0..=2 * n);
        let g = random_connected(n, extra, 3, &mut r);
        let lambda = min_cut_exact(&g).unwrap().weight as f64;
        let out = matula_core(&g, lambda, eps, t, BitBudget::default_for(n)).unwrap().value;
        let eta = &out.eta;
        let (old, new) = (eta[eta.len() - 2] as f64, eta[eta.len() - 1] as f64);
        let shrunk = new <= old * (1.0 - eps / 10.0);
        let bound = 2.0 * lambda * (1.0 + eps / 10.0) * (1.0 + eps / 5.0) / (1.0 - eps / 10.0);
        let light = out.min_component_weight(&g).is_some_and(|w| w as f64 <= bound);
        assert!(shrunk || light, "graph {t}: eta {eta:?}, min component {:?}", out.min_component_weight(&g));
    }
}

#[test]
fn algorithms_are_deterministic_per_seed() {
    let g = dumbbell(4);
    let a = layering_mincut(&g, &LayeringConfig::new(&g, 0.5), 9).unwrap();
    let b = layering_mincut(&g, &LayeringConfig::new(&g, 0.5), 9).unwrap();
    assert_eq!((a.cut, a.tuple, a.ledger), (b.cut, b.tuple, b.ledger));
    let a = matula_mincut(&g, &MatulaConfig::new(&g, 0.5), 9).unwrap();
    let b = matula_mincut(&g, &MatulaConfig::new(&g, 0.5), 9).unwrap();
    assert_eq!((a.cut, a.ledger), (b.cut, b.ledger));
}

#[test]
fn generated_instances_survive_the_text_format() {
    let g = gen_weighted_cut_instance(16, 4, 2, &Disjointness::new([3], [3])).unwrap();
    let back = Multigraph::parse(&g.to_text()).unwrap();
    assert_eq!(back.edges(), g.edges());
    assert_eq!(min_cut_exact(&back).unwrap().weight, 4);
}

#[test]
fn matula_finds_the_path_cut() {
    let g = gen_weighted_cut_instance(16, 4, 3, &Disjointness::new([1, 3], [3])).unwrap();
    let r = matula_mincut(&g, &MatulaConfig::new(&g, 0.5), 4).unwrap();
    assert_eq!(r.cut.weight, 4);
    let side = r.cut.side(16);
    let path: Vec<usize> = (3..16).step_by(4).collect();
    assert!(path.iter().all(|&v| side[v] == side[3]));
    assert!((0..16).filter(|v| !path.contains(v)).all(|v| side[v] != side[3]));
}
