use super::*;
use crate::graph::generators::*;
use crate::graph::min_cut_exact;

#[test]
fn constants() {
    assert_eq!(certificate_k(2.0, 0.5), 3);
    assert_eq!(certificate_k(1.0, 0.5), 2);
    assert!((final_threshold(2.0, 0.5) - 2.0 * (2.0 + 1.0 / 6.0)).abs() < 1e-12);
    assert_eq!(presample_probability(16, 128.0, 1.0), 1.0);
    assert!((presample_probability(16, 8192.0, 1.0) - 400.0 / 8192.0).abs() < 1e-12);
}

#[test]
fn eight_cycle_core() {
    let g = cycle(8, 1);
    let out = matula_core(&g, 2.0, 0.5, 1, BitBudget::default_for(8)).unwrap().value;
    assert_eq!(out.k, 3);
    assert!(out.h_labels.iter().enumerate().all(|(v, &l)| v == l));
    let members = out.members.expect("a singleton passes");
    assert_eq!(crate::graph::cut_weight(&g, &members).unwrap(), 2);
}

#[test]
fn dumbbell_core() {
    let g = dumbbell(5);
    let out = matula_core(&g, 1.0, 0.5, 2, BitBudget::default_for(10)).unwrap().value;
    let members = out.members.expect("bridge side passes");
    assert_eq!(crate::graph::cut_weight(&g, &members).unwrap(), 1);
}

#[test]
fn huge_guess_certifies_everything() {
    let g = cycle(6, 1);
    let out = matula_core(&g, 50.0, 0.5, 3, BitBudget::default_for(6)).unwrap().value;
    assert_eq!(out.certificate_sizes[0], 6);
    assert_eq!(out.eta[1], 6);
    let w = crate::graph::cut_weight(&g, out.members.as_ref().unwrap()).unwrap() as f64;
    assert!(w <= final_threshold(50.0, 0.5) * (1.0 + 0.5 / 20.0));
}

#[test]
fn capped_presample_is_identity() {
    let g = cycle(16, 64);
    let (s, p) = karger_presample(&g, 128.0, 1.0, 9).unwrap();
    assert_eq!(p, 1.0);
    assert_eq!(s, g);
}

#[test]
fn presample_preserves_connectivity_scale() {
    let g = cycle(16, 4096);
    for seed in 0..10 {
        let (s, p) = karger_presample(&g, 8192.0, 1.0, seed).unwrap();
        let ratio = min_cut_exact(&s).unwrap().weight as f64 / (8192.0 * p);
        assert!((2.0 / 3.0..=4.0 / 3.0).contains(&ratio), "seed {seed}: {ratio}");
    }
}

#[test]
fn guess_schedule_spans_range() {
    let g = cycle(16, 1);
    let cfg = MatulaConfig::new(&g, 0.5);
    let s = guess_schedule(16, 64, &cfg);
    assert_eq!(s[0], 2.0);
    assert!(*s.last().unwrap() <= 128.0 && *s.last().unwrap() * 1.05 > 128.0);
    assert!(s.windows(2).all(|w| (w[1] / w[0] - 1.05).abs() < 1e-9));
}

#[test]
fn sixteen_cycle_end_to_end() {
    let g = cycle(16, 1);
    let r = matula_mincut(&g, &MatulaConfig::new(&g, 0.5), 7).unwrap();
    assert_eq!(r.cut.weight, 2);
}
