use super::*;
use crate::graph::components;
use crate::graph::generators::*;

#[test]
fn zero_probability_gives_singletons() {
    let g = cycle(6, 2);
    let out = layering_experiment(&g, 0.0, 4, 1).unwrap();
    assert_eq!(out.prefix_components, vec![6; 4]);
    let mut members: Vec<Vec<usize>> = out.family.iter().map(|c| c.members.clone()).collect();
    members.sort();
    assert_eq!(members, (0..6).map(|v| vec![v]).collect::<Vec<_>>());
    assert!(!out.final_connected);
}

#[test]
fn full_probability_connects() {
    let g = dumbbell(5);
    assert!(layering_experiment(&g, 1.0, 10, 3).unwrap().final_connected);
    let c8 = cycle(8, 1);
    let p = (20.0 * log2n(8) / 2.0).min(1.0);
    assert!(layering_experiment(&c8, p, 60, 5).unwrap().final_connected);
}

#[test]
fn rejects_bad_inputs() {
    let g = cycle(4, 1);
    assert_eq!(layering_experiment(&g, 1.2, 4, 0).unwrap_err(), Error::InvalidProbability(1.2));
    assert!(matches!(layering_experiment(&g, 0.5, 1, 0), Err(Error::InvalidParameter(_))));
}

#[test]
fn outcome_invariants() {
    let g = cycle(12, 4);
    for seed in 0..20 {
        let out = layering_experiment(&g, 0.2, 8, seed).unwrap();
        assert!(out.prefix_components.windows(2).all(|w| w[1] <= w[0]));
        for i in 1..8 {
            assert!(out.assignment.prefix(i).is_subset(&out.assignment.prefix(i + 1)));
            let s_i = out.assignment.layer(i + 1);
            assert_eq!(out.assignment.prefix(i).union(&s_i), out.assignment.prefix(i + 1));
        }
        assert!(out.family.len() <= 12 * 7);
        // Each family member is a component of some prefix graph G_1..G_{L-1}.
        for cut in &out.family {
            let found = (1..8).any(|i| {
                let l = components(&g, &out.assignment.prefix(i));
                let c = l[cut.members[0]];
                let comp: Vec<usize> = (0..12).filter(|&v| l[v] == c).collect();
                comp == cut.members
            });
            assert!(found);
        }
        assert_eq!(out.final_connected, out.prefix_components[7] == 1);
        assert_eq!(layering_experiment(&g, 0.2, 8, seed).unwrap(), out);
    }
}

#[test]
fn capped_probability_always_connects() {
    let g = cycle(16, 6);
    let p = (20.0 * (16f64).ln() / 12.0).min(1.0);
    assert_eq!(connectivity_rate(&g, p, 80, 100, 1).unwrap(), 1.0);
}

#[test]
fn below_threshold_often_disconnects() {
    let g = cycle(16, 6);
    let rate = connectivity_rate(&g, 1.0 / 12.0, 80, 200, 2).unwrap();
    assert!(rate <= 0.85, "rate {rate}");
}

#[test]
fn any_copy_matches_closed_form() {
    assert_eq!(any_copy(1.0, 3), 1.0);
    assert_eq!(any_copy(0.0, 3), 0.0);
    assert!((any_copy(0.5, 2) - 0.75).abs() < 1e-12);
}

#[test]
fn approx_on_heavy_k2() {
    let g = Multigraph::new(2, [(0, 1, 32)]).unwrap();
    for seed in 0..20 {
        let out = approx_edge_connectivity(&g, seed, &ApproxConfig::for_graph(&g)).unwrap();
        let lt = out.value.lambda_tilde;
        assert!((16..=128).contains(&lt), "seed {seed}: {lt}");
        assert!(lt.is_power_of_two());
    }
}

#[test]
fn approx_on_star_and_multicycle() {
    let s = star(16);
    for seed in 0..20 {
        let lt = approx_edge_connectivity(&s, seed, &ApproxConfig::for_graph(&s)).unwrap().value.lambda_tilde;
        assert!((1..=8 * 4).contains(&lt), "star seed {seed}: {lt}");
    }
    let c = cycle(16, 8);
    for seed in 0..20 {
        let lt = approx_edge_connectivity(&c, seed, &ApproxConfig::for_graph(&c)).unwrap().value.lambda_tilde;
        assert!((8..=16 * 4 * 4).contains(&lt), "cycle seed {seed}: {lt}");
    }
}

#[test]
fn approx_ledger_is_one_pipelined_charge() {
    let g = cycle(16, 8);
    let out = approx_edge_connectivity(&g, 3, &ApproxConfig::for_graph(&g)).unwrap();
    let thur: Vec<_> = out.ledger.of("thurimella_multi").collect();
    assert_eq!(thur.len(), 1);
    assert_eq!(thur[0].params["k"], out.value.instances);
    assert_eq!(out.ledger.of("connectivity_extra").count(), 1);
}
