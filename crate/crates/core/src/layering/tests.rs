use super::*;
use crate::graph::generators::*;
use crate::graph::EdgeSubset;

fn no_bridge(s: usize) -> (Multigraph, EdgeSubset) {
    let g = dumbbell(s);
    let mut sub = g.all_edges();
    sub.remove(dumbbell_bridge(s));
    (g, sub)
}

#[test]
fn whole_graph_always_passes() {
    let g = cycle(6, 1);
    let v = cut_tester(&g, &g.all_edges(), 1.0, 0.125, 1, BitBudget::default_for(6)).unwrap().value;
    assert!(v.pass.iter().all(|&p| p));
    assert!(v.hits.iter().all(|&h| h == 0));
}

#[test]
fn hit_probability_formula() {
    assert!((hit_probability(1.0, 1) - 0.5).abs() < 1e-12);
    assert!((hit_probability(10.0, 1) - (1.0 - 2f64.powf(-0.1))).abs() < 1e-12);
    assert_eq!(experiments(16, 0.125, 8.0), 2048);
}

#[test]
fn rejects_bad_delta() {
    let g = cycle(4, 1);
    let b = BitBudget::default_for(4);
    assert!(matches!(cut_tester(&g, &g.all_edges(), 1.0, 0.25, 0, b), Err(Error::InvalidParameter(_))));
    assert!(matches!(cut_tester(&g, &g.all_edges(), 0.0, 0.1, 0, b), Err(Error::InvalidParameter(_))));
}

#[test]
fn verdicts_are_component_consistent() {
    let (g, sub) = no_bridge(5);
    for seed in 0..5 {
        let v = cut_tester(&g, &sub, 1.0, 0.125, seed, BitBudget::default_for(10)).unwrap().value;
        for a in 0..10 {
            for b in 0..10 {
                if v.component[a] == v.component[b] {
                    assert_eq!(v.pass[a], v.pass[b]);
                    assert_eq!(v.hits[a], v.hits[b]);
                }
            }
        }
    }
}

#[test]
fn dumbbell_separates_thresholds() {
    let (g, sub) = no_bridge(5);
    let b = BitBudget::default_for(10);
    for seed in 0..10 {
        let low = cut_tester(&g, &sub, 10.0, 0.125, seed, b).unwrap().value;
        assert!(low.pass.iter().all(|&p| p));
        let high = cut_tester(&g, &sub, 0.8, 0.125, seed, b).unwrap().value;
        assert!(high.pass.iter().all(|&p| !p));
        assert!(low.experiments == high.experiments);
    }
}

#[test]
fn k2_single_edge_epoch() {
    let g = Multigraph::unit(2, [(0, 1)]).unwrap();
    let cut = collect_family_and_test(&g, 1.0, 0.5, 1, BitBudget::default_for(2)).unwrap().value.unwrap();
    assert_eq!(cut.members, vec![0]);
    assert_eq!(cut.weight, 1);
}

#[test]
fn huge_guess_isolates_singletons() {
    // p is tiny, so G_1 has no edges and singletons of weight 2 face κ >= 2(1+δ).
    let g = cycle(8, 1);
    let out = collect_family_and_test(&g, 1e6, 0.5, 4, BitBudget::default_for(8)).unwrap().value.unwrap();
    assert_eq!(out.members, vec![0]);
}

#[test]
fn guess_range_reaches_down_to_unit_threshold() {
    let g = dumbbell(5);
    let cfg = LayeringConfig::new(&g, 0.5);
    let r = guess_exponents(10, 8, &cfg);
    let lowest = 8.0 * 2f64.powi(*r.start() as i32);
    assert!(threshold(lowest, 0.5) * 1.125 >= 1.0);
    assert!(threshold(lowest / 2.0, 0.5) * 1.125 < 1.0);
    assert_eq!(*r.end(), 4);
}

#[test]
fn dumbbell_end_to_end() {
    let g = dumbbell(5);
    let cfg = LayeringConfig::new(&g, 0.5);
    let r = layering_mincut(&g, &cfg, 11).unwrap();
    assert!(r.cut.weight as f64 <= 100.0 * 1.125 * 2.0 * 1.0 / 0.5);
    assert!(r.measured.max_bits_per_edge_round <= cfg.budget.bits);
}
