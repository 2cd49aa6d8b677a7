//! Property tests for the invariants that tie the modules together.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treemax::{
    bound_full_space, bound_on_set, entropy_weight, extremizer_g0, integrate_over,
    maximize_hardy_integral, sample_admissible, sandwich_set, super_level, symmetrization_rhs,
    AdmissibleTriple, LeafFunction, MonotoneMap, NodeSet, SetBoundQuery, StepFunction, Tree,
};

/// Canonical step function with continuous breakpoints.
fn arb_step(max_pieces: usize) -> impl Strategy<Value = StepFunction> {
    (1..=max_pieces).prop_flat_map(move |n| {
        (
            prop::collection::vec(0.01f64..0.99, n - 1),
            prop::collection::vec(0.0f64..8.0, n),
        )
            .prop_filter_map("needs a usable grid", |(mut inner, vals)| {
                inner.sort_by(|a, b| a.partial_cmp(b).unwrap());
                inner.dedup_by(|a, b| (*a - *b).abs() < 1e-4);
                let mut bp = Vec::with_capacity(inner.len() + 2);
                bp.push(0.0);
                bp.extend(inner.iter().copied());
                bp.push(1.0);
                let vals = vals[..bp.len() - 1].to_vec();
                StepFunction::new(bp, vals).ok()
            })
    })
}

/// Step function on the dyadic grid k/1024: every width arithmetic below is
/// exact in f64, so equality assertions can be literal.
fn arb_dyadic_step(max_pieces: usize) -> impl Strategy<Value = StepFunction> {
    (2..=max_pieces).prop_flat_map(move |n| {
        (
            prop::collection::btree_set(1u32..1024, n - 1),
            prop::collection::vec(0.0f64..8.0, n),
        )
            .prop_map(|(inner, vals)| {
                let mut bp = Vec::with_capacity(inner.len() + 2);
                bp.push(0.0);
                bp.extend(inner.iter().map(|&k| k as f64 / 1024.0));
                bp.push(1.0);
                let vals = vals[..bp.len() - 1].to_vec();
                StepFunction::new(bp, vals).expect("dyadic grid is valid")
            })
    })
}

fn arb_decreasing(max_pieces: usize) -> impl Strategy<Value = StepFunction> {
    arb_step(max_pieces).prop_map(|g| g.rearrangement())
}

fn arb_triple() -> impl Strategy<Value = AdmissibleTriple> {
    (0.0f64..2.0, 0.05f64..2.0, 0.05f64..3.0)
        .prop_map(|(m2, df, dm)| AdmissibleTriple::new(m2 + df + dm, m2 + df, m2).unwrap())
}

fn arb_leaf_fn(arity: u32, depth: u32) -> impl Strategy<Value = LeafFunction> {
    let tree = Tree::uniform(arity, depth).unwrap();
    prop::collection::vec(0.0f64..8.0, tree.leaf_count() as usize)
        .prop_map(move |values| LeafFunction::new(tree, values).unwrap())
}

/// Quadrature of -∫ log(t) g(t) dt with the weight integrated analytically
/// on at least 10^6 cells aligned to the pieces.
fn aligned_log_quadrature(g: &StepFunction) -> f64 {
    let mut total = 0.0;
    for (&v, w) in g.values().iter().zip(g.breakpoints().windows(2)) {
        let cells = ((w[1] - w[0]) * 1_000_000.0).ceil().max(1.0) as usize;
        let dt = (w[1] - w[0]) / cells as f64;
        for c in 0..cells {
            let a = w[0] + c as f64 * dt;
            let b = if c + 1 == cells { w[1] } else { a + dt };
            total += v * (entropy_weight(b).unwrap() - entropy_weight(a).unwrap());
        }
    }
    total
}

proptest! {
    #[test]
    fn rearrangement_is_idempotent(g in arb_step(12)) {
        let once = g.rearrangement();
        prop_assert_eq!(once.rearrangement(), once);
    }

    #[test]
    fn rearrangement_is_equimeasurable_on_the_dyadic_grid(g in arb_dyadic_step(12)) {
        let r = g.rearrangement();
        for &lambda in g.values() {
            prop_assert_eq!(g.distribution(lambda), r.distribution(lambda));
            // Slightly below each value the super-level set picks the piece up.
            let below = lambda * (1.0 - 1e-12) - 1e-300;
            prop_assert_eq!(g.distribution(below), r.distribution(below));
        }
    }

    #[test]
    fn rearrangement_preserves_the_integral(g in arb_step(12)) {
        let r = g.rearrangement();
        let (a, b) = (g.integral(), r.integral());
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
    }

    #[test]
    fn hardy_average_dominates_decreasing_functions(g in arb_decreasing(12)) {
        let mut prev = f64::INFINITY;
        for &t in &g.breakpoints()[1..] {
            let hardy = g.hardy_eval(t).unwrap();
            prop_assert!(hardy >= g.eval(t).unwrap() - 1e-12);
            prop_assert!(hardy <= prev + 1e-12, "running average must decrease");
            prev = hardy;
        }
    }

    #[test]
    fn stieltjes_form_matches_log_quadrature(g in arb_step(12)) {
        let direct = g.hardy_integral();
        let quad = aligned_log_quadrature(&g);
        prop_assert!((direct - quad).abs() <= 1e-6, "{} vs {}", direct, quad);
    }

    #[test]
    fn hardy_integral_is_positively_homogeneous(g in arb_step(10), alpha in 0.0f64..5.0) {
        let scaled = StepFunction::new(
            g.breakpoints().to_vec(),
            g.values().iter().map(|v| alpha * v).collect(),
        ).unwrap();
        let lhs = scaled.hardy_integral();
        let rhs = alpha * g.hardy_integral();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }

    #[test]
    fn entropy_weight_is_midpoint_concave(x in 0.0f64..=1.0, y in 0.0f64..=1.0) {
        let mid = entropy_weight(0.5 * (x + y)).unwrap();
        let avg = 0.5 * (entropy_weight(x).unwrap() + entropy_weight(y).unwrap());
        prop_assert!(mid >= avg - 1e-15);
    }

    #[test]
    fn l1_distance_is_symmetric_and_separates(g in arb_dyadic_step(10), h in arb_dyadic_step(10)) {
        let d = g.l1_distance(&h);
        prop_assert_eq!(d, h.l1_distance(&g));
        prop_assert_eq!(d == 0.0, g == h);
        prop_assert_eq!(g.l1_distance(&g), 0.0);
    }

    #[test]
    fn decreasing_functions_gain_from_the_running_average(g in arb_decreasing(12)) {
        prop_assert!(g.hardy_integral() >= g.integral() - 1e-12);
    }

    #[test]
    fn sampled_class_members_never_beat_the_bound(
        triple in arb_triple(),
        pieces in 2usize..48,
        seed in any::<u64>(),
    ) {
        let bound = bound_full_space(&triple);
        if let Ok(g) = sample_admissible(&triple, pieces, seed) {
            prop_assert!(g.is_admissible(&triple, 1e-9));
            prop_assert!(g.hardy_integral() <= bound + 1e-9);
        }
    }

    #[test]
    fn full_space_bound_is_monotone_in_the_envelope(
        triple in arb_triple(),
        bump in 0.01f64..2.0,
    ) {
        let b = bound_full_space(&triple);
        let wider = AdmissibleTriple::new(triple.sup() + bump, triple.integral(), triple.inf()).unwrap();
        prop_assert!(bound_full_space(&wider) >= b - 1e-12);
        let lower = AdmissibleTriple::new(triple.sup(), triple.integral(), triple.inf() * 0.5).unwrap();
        prop_assert!(bound_full_space(&lower) >= b - 1e-12);
    }

    #[test]
    fn symmetrization_at_full_measure_is_the_functional(g in arb_decreasing(12)) {
        let lhs = symmetrization_rhs(&g, MonotoneMap::Identity, MonotoneMap::One, 1.0).unwrap();
        prop_assert!((lhs - g.hardy_integral()).abs() <= 1e-9);
    }

    #[test]
    fn set_bound_at_full_measure_matches_the_full_space_bound(
        f in 0.05f64..4.0,
        extra in 0.0f64..4.0,
    ) {
        let m = f + extra;
        let q = SetBoundQuery::new(f, m, 1.0).unwrap();
        let t = AdmissibleTriple::new(m, f, 0.0).unwrap();
        let (a, b) = (bound_on_set(&q), bound_full_space(&t));
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn tree_hardy_domination_on_the_grid(phi in arb_leaf_fn(2, 6)) {
        let n = phi.tree().leaf_count() as usize;
        let maximal_sorted = phi.maximal_function().rearrangement();
        let rearranged = phi.rearrangement();
        for r in 0..n {
            let t = (r + 1) as f64 / n as f64;
            let lhs = maximal_sorted.eval(t).unwrap();
            let rhs = rearranged.hardy_eval(t).unwrap();
            prop_assert!(lhs <= rhs + 1e-9, "t={}: {} > {}", t, lhs, rhs);
        }
    }

    #[test]
    fn maximal_function_sits_between_mean_and_max(phi in arb_leaf_fn(2, 5)) {
        let maximal = phi.maximal_function();
        let floor = phi.integral();
        let ceil = phi.max_value();
        for &v in maximal.values() {
            prop_assert!(v >= floor - 1e-12 * (1.0 + floor.abs()));
            prop_assert!(v <= ceil * (1.0 + 1e-12) + 1e-300);
        }
    }

    #[test]
    fn conditioning_is_monotone_and_exact_on_binary_trees(phi in arb_leaf_fn(2, 5)) {
        let depth = phi.tree().depth();
        let target = phi.maximal_function();
        let mass = phi.integral();
        let mut prev: Option<LeafFunction> = None;
        for level in 0..=depth {
            let cond = phi.condition_on_level(level).unwrap();
            prop_assert_eq!(cond.integral(), mass);
            prop_assert!(cond.max_value() <= phi.max_value());
            let m = cond.maximal_function();
            if let Some(p) = &prev {
                for (now, before) in m.values().iter().zip(p.values()) {
                    prop_assert!(now >= before);
                }
            }
            prev = Some(m);
        }
        let at_depth = prev.unwrap();
        prop_assert_eq!(at_depth.values(), target.values());
    }

    #[test]
    fn sandwich_set_is_optimal_among_equal_measure_sets(
        phi in arb_leaf_fn(2, 5),
        members in 1u64..=32,
        seed in any::<u64>(),
    ) {
        let w = phi.maximal_function();
        let tree = w.tree();
        let k = members as f64 / tree.leaf_count() as f64;
        let sandwich = sandwich_set(&w, k).unwrap();
        let on_d = integrate_over(&w, &sandwich.set).unwrap();

        // Blend identity against the two level sets.
        let v1 = super_level(&w, sandwich.threshold, true);
        let v2 = super_level(&w, sandwich.threshold, false);
        prop_assert!(v1.member_count() <= members && members <= v2.member_count());
        let claim = sandwich.blend * integrate_over(&w, &v1).unwrap()
            + (1.0 - sandwich.blend) * integrate_over(&w, &v2).unwrap();
        prop_assert!((on_d - claim).abs() <= 1e-12 * (1.0 + on_d.abs()));

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = tree.leaf_count();
        for _ in 0..5 {
            let mut idx: Vec<u64> = (0..n).collect();
            for i in 0..members as usize {
                let j = rng.random_range(i..idx.len());
                idx.swap(i, j);
            }
            let competitor = NodeSet::from_indices(tree, &idx[..members as usize]).unwrap();
            let on_k = integrate_over(&w, &competitor).unwrap();
            prop_assert!(on_k <= on_d + 1e-12, "{} > {}", on_k, on_d);
        }
    }

    #[test]
    fn set_bound_dominates_all_sets(phi in arb_leaf_fn(2, 5), seed in any::<u64>()) {
        let maximal = phi.maximal_function();
        let tree = phi.tree();
        let n = tree.leaf_count();
        let m = phi.max_value();
        let f = phi.integral().min(m);
        prop_assume!(f > 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for denom in [8u64, 4, 2, 1] {
            let members = (n / denom).max(1);
            let k = members as f64 / n as f64;
            let bound = bound_on_set(&SetBoundQuery::new(f, m, k).unwrap());
            let top = NodeSet::top_leaves(&maximal, members);
            prop_assert!(integrate_over(&maximal, &top).unwrap() <= bound + 1e-9);
            let mut idx: Vec<u64> = (0..n).collect();
            for i in 0..members as usize {
                let j = rng.random_range(i..idx.len());
                idx.swap(i, j);
            }
            let random = NodeSet::from_indices(tree, &idx[..members as usize]).unwrap();
            prop_assert!(integrate_over(&maximal, &random).unwrap() <= bound + 1e-9);
        }
    }

    #[test]
    fn full_space_bound_dominates_every_function(phi in arb_leaf_fn(2, 5)) {
        let (f, lo, hi) = (phi.integral(), phi.min_value(), phi.max_value());
        prop_assume!(f > lo && hi > f);
        let triple = AdmissibleTriple::new(hi, f, lo).unwrap();
        let total = phi.maximal_function().integral();
        prop_assert!(total <= bound_full_space(&triple) + 1e-9);
    }

    #[test]
    fn leaf_rearrangement_is_equimeasurable(phi in arb_leaf_fn(2, 5)) {
        let r = phi.rearrangement();
        let tree = phi.tree();
        for &lambda in phi.values() {
            let count = phi.values().iter().filter(|&&v| v > lambda).count();
            let expected = count as f64 * tree.leaf_measure();
            prop_assert_eq!(r.distribution(lambda), expected);
        }
    }
}

/// The attainment direction: traces that close most of the gap are close to
/// the extremizer in L1. Thresholds are the calibrated rendering of the
/// convergence statement, checked along real optimizer runs.
#[test]
fn near_optimal_records_localize_at_the_extremizer() {
    let triple = AdmissibleTriple::new(2.0, 1.0, 0.0).unwrap();
    for seed in [1u64, 9, 77] {
        let trace = maximize_hardy_integral(&triple, 48, 60_000, seed).unwrap();
        for rec in &trace.records {
            if rec.gap <= 1e-3 {
                assert!(
                    rec.distance_to_extremizer <= 0.05,
                    "seed {seed}: gap {} but distance {}",
                    rec.gap,
                    rec.distance_to_extremizer
                );
            }
            if rec.gap <= 1e-5 {
                assert!(rec.distance_to_extremizer <= 0.01);
            }
        }
    }
}

/// Hand-built family: blending the extremizer toward another class member
/// shrinks both the gap and the distance together.
#[test]
fn perturbation_family_keeps_gap_and_distance_coupled() {
    let triple = AdmissibleTriple::new(2.0, 1.0, 0.0).unwrap();
    let g0 = extremizer_g0(&triple);
    let bound = bound_full_space(&triple);
    let other = sample_admissible(&triple, 24, 5).unwrap();
    for i in 0..=20 {
        let eps = i as f64 / 20.0;
        let blended = blend(&g0, &other, eps);
        assert!(blended.is_admissible(&triple, 1e-9));
        let gap = bound - blended.hardy_integral();
        assert!(gap >= -1e-9);
        if gap <= 1e-5 {
            assert!(blended.l1_distance(&g0) <= 0.01);
        }
    }
}

/// Convex combination on the merged grid; stays in the class because both
/// endpoints share the constraints.
fn blend(a: &StepFunction, b: &StepFunction, lambda: f64) -> StepFunction {
    let mut bp: Vec<f64> = a
        .breakpoints()
        .iter()
        .chain(b.breakpoints())
        .copied()
        .collect();
    bp.sort_by(|x, y| x.partial_cmp(y).unwrap());
    bp.dedup();
    let values = bp
        .windows(2)
        .map(|w| {
            let t = w[1];
            (1.0 - lambda) * a.eval(t).unwrap() + lambda * b.eval(t).unwrap()
        })
        .collect();
    StepFunction::new(bp, values).unwrap()
}
