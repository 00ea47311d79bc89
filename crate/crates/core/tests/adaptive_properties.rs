mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use qtherm::{
    adaptive_error_rate, adaptive_pe, adaptive_pe_exact, bayes_update, fidelity_bloch, AdaptiveOptions,
    BeliefState, BlochVector, Outcome, PriorPair, Projector,
};

use common::{planar_bloch, pure_planar_bloch};

/// Minimum error over all measurements on `n` copies of two pure states.
fn helstrom_many_copy(r1: &BlochVector, r2: &BlochVector, priors: PriorPair, n: usize) -> f64 {
    let overlap = fidelity_bloch(r1, r2).unwrap().powi(2 * n as i32);
    0.5 * (1.0 - (1.0 - 4.0 * priors.pi1() * priors.pi2() * overlap).max(0.0).sqrt())
}

fn outcome() -> impl Strategy<Value = Outcome> {
    prop_oneof![Just(Outcome::Positive), Just(Outcome::Negative)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn greedy_adaptive_is_optimal_for_pure_states(
        r1 in pure_planar_bloch(),
        r2 in pure_planar_bloch(),
        pi1 in 0.05..=0.95f64,
        n in 1usize..=5,
    ) {
        let priors = PriorPair::with_first(pi1).unwrap();
        let pe = adaptive_pe(&r1, &r2, priors, n, &AdaptiveOptions::default()).unwrap();
        let bound = helstrom_many_copy(&r1, &r2, priors, n);
        prop_assert!((pe - bound).abs() <= 1e-9, "adaptive {pe} vs Helstrom {bound}");
    }

    #[test]
    fn adaptive_respects_the_fuchs_bound(r1 in planar_bloch(), r2 in planar_bloch(), n in 1usize..=6) {
        let pe = adaptive_pe(&r1, &r2, PriorPair::EQUAL, n, &AdaptiveOptions::default()).unwrap();
        let f = fidelity_bloch(&r1, &r2).unwrap();
        let bound = 0.5 * (1.0 - (1.0 - f.powi(2 * n as i32)).max(0.0).sqrt());
        prop_assert!(pe >= bound - 1e-12);
    }

    #[test]
    fn outcome_tree_probabilities_are_consistent(
        r1 in planar_bloch(),
        r2 in planar_bloch(),
        pi1 in 0.0..=1.0f64,
        n in 1usize..=7,
    ) {
        let priors = PriorPair::with_first(pi1).unwrap();
        let (pe, tree) = adaptive_pe_exact(&r1, &r2, priors, n, &AdaptiveOptions::default()).unwrap();
        for h in 0..2 {
            let total: f64 = tree.leaves().map(|leaf| leaf.path_prob[h]).sum();
            prop_assert!((total - 1.0).abs() <= 1e-10);
        }
        for node in &tree.nodes {
            prop_assert!((node.priors.pi1() + node.priors.pi2() - 1.0).abs() <= 1e-12);
        }
        prop_assert!(pe <= pi1.min(1.0 - pi1) + 1e-12);
        let value = adaptive_pe(&r1, &r2, priors, n, &AdaptiveOptions::default()).unwrap();
        prop_assert!((pe - value).abs() <= 1e-12);
    }

    #[test]
    fn posterior_ignores_measurement_order(
        steps in prop::collection::vec((0.0..PI, outcome()), 1..12),
        rotate in 0usize..12,
        r1 in planar_bloch(),
        r2 in planar_bloch(),
    ) {
        // Shrink toward the centre so no outcome is impossible.
        let shrink = |r: BlochVector| BlochVector::new(0.9 * r.sx(), 0.0, 0.9 * r.sz()).unwrap();
        let (r1, r2) = (shrink(r1), shrink(r2));
        let run = |order: &[(f64, Outcome)]| {
            order.iter().fold(BeliefState::new(PriorPair::EQUAL), |b, &(theta, o)| {
                bayes_update(&b, &r1, &r2, &Projector::new(theta), o).unwrap()
            })
        };
        let forward = run(&steps);
        let mut shuffled = steps.clone();
        shuffled.rotate_left(rotate % steps.len());
        shuffled.reverse();
        let other = run(&shuffled);
        prop_assert!((forward.priors().pi1() - other.priors().pi1()).abs() <= 1e-12);
    }
}

#[test]
fn coalesced_recursion_matches_near_the_depth_cap() {
    let (h, d) = (BlochVector::GROUND, BlochVector::PLUS_X);
    let plain = adaptive_pe(&h, &d, PriorPair::EQUAL, 14, &AdaptiveOptions::default()).unwrap();
    let merged = adaptive_pe(&h, &d, PriorPair::EQUAL, 14, &AdaptiveOptions { coalesce: true, ..Default::default() }).unwrap();
    assert!((plain - merged).abs() <= 1e-10);
    assert!((plain - helstrom_many_copy(&h, &d, PriorPair::EQUAL, 14)).abs() <= 1e-9);
}

#[test]
fn sampled_error_rate_matches_exact_value() {
    let r1 = BlochVector::new(0.6, 0.0, -0.5).unwrap();
    let r2 = BlochVector::new(0.1, 0.0, 0.4).unwrap();
    let priors = PriorPair::with_first(0.4).unwrap();
    let opts = AdaptiveOptions::default();
    let exact = adaptive_pe(&r1, &r2, priors, 4, &opts).unwrap();
    let mc = adaptive_error_rate(&r1, &r2, priors, 4, 20_000, 7, &opts).unwrap();
    let sigma = (exact * (1.0 - exact) / mc.trials as f64).sqrt();
    assert!((mc.rate - exact).abs() <= 3.0 * sigma, "{} vs {exact}", mc.rate);
    assert_eq!(mc, adaptive_error_rate(&r1, &r2, priors, 4, 20_000, 7, &opts).unwrap());
}
