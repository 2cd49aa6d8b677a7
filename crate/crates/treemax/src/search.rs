//! Randomized verification: sampling the admissible class, locally
//! maximizing the running-average functional, and auditing every bound the
//! library claims.

use crate::bellman::{bound_full_space, bound_on_set, symmetrization_rhs, MonotoneMap, SetBoundQuery};
use crate::error::{Error, Result};
use crate::stepfn::{extremizer_g0, AdmissibleTriple, StepFunction};
use crate::tree::{
    integrate_over, sandwich_set, select_subfamily, super_level, LeafFunction, NodeId, NodeSet,
    Tree,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const SAMPLE_RETRIES: u32 = 64;

/// Draws a decreasing step function with endpoints pinned to the triple and
/// integral repaired to `f`. Deterministic for a fixed seed.
///
/// The repair blends the raw draw toward one of the two extreme admissible
/// staircases on the same grid (all-high or all-low interior); the blend
/// parameter solves the integral constraint in closed form and convexity
/// keeps monotonicity and the endpoints.
pub fn sample_admissible(
    triple: &AdmissibleTriple,
    pieces: usize,
    seed: u64,
) -> Result<StepFunction> {
    if pieces < 2 {
        return Err(Error::Domain(format!("sample_admissible: pieces={pieces} must be >= 2")));
    }
    let knee = triple.knee();
    if knee >= 1.0 {
        return Err(Error::Constraint(
            "sample_admissible: M1 = f leaves no decreasing step function with both endpoints".into(),
        ));
    }
    if pieces == 2 {
        // Endpoints and the integral pin the breakpoint: the only 2-piece
        // member of the class is the extremizer itself.
        return Ok(extremizer_g0(triple));
    }

    if knee <= 1e-6 {
        return Err(Error::Constraint(format!(
            "sample_admissible: knee {knee} is below the grid resolution"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (m1, f, m2) = (triple.sup(), triple.integral(), triple.inf());
    for _ in 0..SAMPLE_RETRIES {
        // Two breakpoints are anchored to the two sides of the knee so the
        // integral repair below always has room; the rest are free.
        let mut inner = Vec::with_capacity(pieces - 1);
        inner.push(rng.random_range(0.25 * knee..0.97 * knee));
        inner.push(rng.random_range(knee + 0.03 * (1.0 - knee)..knee + 0.97 * (1.0 - knee)));
        for _ in 0..pieces - 3 {
            inner.push(rng.random_range(1e-6..1.0 - 1e-6));
        }
        inner.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut bp = Vec::with_capacity(pieces + 1);
        bp.push(0.0);
        bp.extend(inner);
        bp.push(1.0);
        if bp.windows(2).any(|w| w[1] - w[0] < 1e-9) {
            continue;
        }
        debug_assert!(bp[1] < knee && knee < bp[pieces - 1]);

        let mut vals = Vec::with_capacity(pieces);
        vals.push(m1);
        let mut interior: Vec<f64> = (0..pieces - 2).map(|_| rng.random_range(m2..m1)).collect();
        interior.sort_by(|a, b| b.partial_cmp(a).unwrap());
        vals.extend(interior);
        vals.push(m2);

        let widths: Vec<f64> = bp.windows(2).map(|w| w[1] - w[0]).collect();
        let raw: f64 = vals.iter().zip(&widths).map(|(v, w)| v * w).sum();

        // Extreme staircases on this grid share the endpoints: the low one
        // drops to M2 right after the first piece, the high one holds M1
        // until the last piece.
        let low = m2 + (m1 - m2) * bp[1];
        let high = m2 + (m1 - m2) * bp[pieces - 1];
        if raw > f {
            let lambda = (raw - f) / (raw - low);
            for (i, v) in vals.iter_mut().enumerate() {
                let e = if i == 0 { m1 } else { m2 };
                *v = (1.0 - lambda) * *v + lambda * e;
            }
        } else if raw < f {
            let lambda = (f - raw) / (high - raw);
            for (i, v) in vals.iter_mut().enumerate() {
                let e = if i == pieces - 1 { m2 } else { m1 };
                *v = (1.0 - lambda) * *v + lambda * e;
            }
        }

        let g = StepFunction::new(bp, vals)?;
        if g.is_admissible(triple, 1e-9) {
            return Ok(g);
        }
    }
    Err(Error::SamplingFailed {
        retries: SAMPLE_RETRIES,
        reason: format!(
            "no admissible draw for triple ({}, {}, {}) with {pieces} pieces",
            m1, f, m2
        ),
    })
}

/// One progress record of the maximization: best value so far, its gap to
/// the sharp bound and its L1 distance to the extremizer.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TraceRecord {
    pub iteration: u64,
    pub value: f64,
    pub gap: f64,
    pub distance_to_extremizer: f64,
}

/// Outcome of [`maximize_hardy_integral`].
#[derive(Debug, Clone)]
pub struct SearchTrace {
    pub records: Vec<TraceRecord>,
    pub best: StepFunction,
    pub seed: u64,
}

impl SearchTrace {
    pub fn final_record(&self) -> &TraceRecord {
        self.records.last().expect("trace has at least the initial record")
    }
}

struct ClimbState {
    bp: Vec<f64>,
    vals: Vec<f64>,
}

impl ClimbState {
    fn width(&self, i: usize) -> f64 {
        self.bp[i + 1] - self.bp[i]
    }

    fn hardy_integral(&self) -> f64 {
        use crate::stepfn::entropy_weight;
        self.vals
            .iter()
            .zip(self.bp.windows(2))
            .map(|(&v, w)| {
                v * (entropy_weight(w[1]).unwrap() - entropy_weight(w[0]).unwrap())
            })
            .sum()
    }

    fn to_step_function(&self) -> StepFunction {
        StepFunction::new(self.bp.clone(), self.vals.clone()).expect("climb state stays valid")
    }
}

/// Hill-climbs the running-average functional over the decreasing class of
/// `triple`, staying inside the class at every iterate. Moves are pairwise
/// mass transfers between interior pieces and breakpoint jitter with a
/// value repair; both preserve the endpoints, monotonicity and the
/// integral.
pub fn maximize_hardy_integral(
    triple: &AdmissibleTriple,
    pieces: usize,
    budget: u64,
    seed: u64,
) -> Result<SearchTrace> {
    if pieces < 2 {
        return Err(Error::Domain(format!("maximize: pieces={pieces} must be >= 2")));
    }
    if budget < 1 {
        return Err(Error::Domain("maximize: budget must be >= 1".into()));
    }
    let bound = bound_full_space(triple);
    let g0 = extremizer_g0(triple);

    let start = sample_admissible(triple, pieces, seed)?;
    let mut state = ClimbState {
        bp: start.breakpoints().to_vec(),
        vals: start.values().to_vec(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x5eed));

    let mut best_value = state.hardy_integral();
    let mut best = state.to_step_function();
    let mut records = vec![TraceRecord {
        iteration: 0,
        value: best_value,
        gap: bound - best_value,
        distance_to_extremizer: best.l1_distance(&g0),
    }];

    let n = state.vals.len();
    if n > 2 {
        for iteration in 1..=budget {
            let improved = if n > 3 && rng.random_bool(0.5) {
                propose_transfer(&mut state, &mut rng, best_value)
            } else {
                propose_jitter(&mut state, &mut rng, best_value)
            };
            if let Some(value) = improved {
                debug_assert!(value <= bound + 1e-9);
                best_value = value;
                best = state.to_step_function();
                records.push(TraceRecord {
                    iteration,
                    value,
                    gap: bound - value,
                    distance_to_extremizer: best.l1_distance(&g0),
                });
            }
        }
    }

    debug_assert!(best.is_admissible(triple, 1e-9));
    Ok(SearchTrace { records, best, seed })
}

/// Move mass from a later interior piece to an earlier one. Headroom against
/// the two neighbors keeps the state decreasing; the transfer itself keeps
/// the integral. Returns the new value when it improves.
fn propose_transfer(state: &mut ClimbState, rng: &mut ChaCha8Rng, current: f64) -> Option<f64> {
    let n = state.vals.len();
    let mut i = rng.random_range(1..n - 1);
    let mut j = rng.random_range(1..n - 1);
    if i == j {
        return None;
    }
    if i > j {
        std::mem::swap(&mut i, &mut j);
    }
    let ceil_room = (state.vals[i - 1] - state.vals[i]) * state.width(i);
    let floor_room = (state.vals[j] - state.vals[j + 1]) * state.width(j);
    let cap = ceil_room.min(floor_room);
    if cap <= 0.0 {
        return None;
    }
    // Snap to the full transfer often: vertices of the class carry the
    // optimum on a fixed grid.
    let mass = if rng.random_bool(0.5) { cap } else { cap * rng.random::<f64>() };
    let (old_i, old_j) = (state.vals[i], state.vals[j]);
    state.vals[i] += mass / state.width(i);
    state.vals[j] -= mass / state.width(j);
    // Guard the invariants against rounding at the boundary.
    state.vals[i] = state.vals[i].min(state.vals[i - 1]);
    state.vals[j] = state.vals[j].max(state.vals[j + 1]);

    let value = state.hardy_integral();
    if value > current {
        Some(value)
    } else {
        state.vals[i] = old_i;
        state.vals[j] = old_j;
        None
    }
}

/// Move one interior breakpoint and absorb the integral change into the
/// piece left of it. Rejected when the repaired value would break
/// monotonicity.
fn propose_jitter(state: &mut ClimbState, rng: &mut ChaCha8Rng, current: f64) -> Option<f64> {
    let n = state.vals.len();
    let b = rng.random_range(1..n);
    let (lo, hi) = (state.bp[b - 1], state.bp[b + 1]);
    if hi - lo < 4e-9 {
        return None;
    }
    let old_t = state.bp[b];
    let t = if rng.random_bool(0.5) {
        // Local move, biased small.
        let span = hi - lo;
        let step = span * rng.random::<f64>().powi(3) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        old_t + step
    } else {
        rng.random_range(lo + 1e-9..hi - 1e-9)
    };
    if t <= lo + 1e-10 || t >= hi - 1e-10 || t == old_t {
        return None;
    }

    // Mass gained by piece b-1 at the expense of piece b.
    let delta = (t - old_t) * (state.vals[b - 1] - state.vals[b]);
    state.bp[b] = t;

    // Repair on the left piece when it is interior, otherwise on the right.
    let p = if b > 1 { b - 1 } else { b };
    if p >= n - 1 {
        state.bp[b] = old_t;
        return None;
    }
    let old_v = state.vals[p];
    let repaired = old_v - delta / state.width(p);
    let (floor, ceil) = (state.vals[p + 1], state.vals[p - 1]);
    if repaired < floor || repaired > ceil {
        state.bp[b] = old_t;
        return None;
    }
    state.vals[p] = repaired;

    let value = state.hardy_integral();
    if value > current {
        Some(value)
    } else {
        state.vals[p] = old_v;
        state.bp[b] = old_t;
        None
    }
}

/// What to run and at which scale.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditConfig {
    /// Trees as (arity, depth) pairs.
    pub trees: Vec<(u32, u32)>,
    /// Random leaf functions per tree.
    pub leaf_samples: usize,
    /// Random admissible triples for the step-function suites.
    pub triples: usize,
    /// Sampled step functions per triple.
    pub step_samples_per_triple: usize,
    /// Upper bound on sampled piece counts.
    pub max_pieces: usize,
    /// Random equal-measure competitor sets per sandwich instance.
    pub equal_measure_checks: usize,
    pub seed: u64,
}

impl AuditConfig {
    /// Desk-scale default: the sizes the acceptance suite runs at.
    pub fn default_preset(seed: u64) -> Self {
        Self {
            trees: vec![(2, 10), (3, 5)],
            leaf_samples: 200,
            triples: 20,
            step_samples_per_triple: 500,
            max_pieces: 64,
            equal_measure_checks: 100,
            seed,
        }
    }

    pub fn quick(seed: u64) -> Self {
        Self {
            trees: vec![(2, 6), (3, 3)],
            leaf_samples: 40,
            triples: 6,
            step_samples_per_triple: 50,
            max_pieces: 32,
            equal_measure_checks: 20,
            seed,
        }
    }
}

/// Per-suite outcome. `worst_margin` is the smallest slack observed across
/// the suite's checks (a negative slack is a violation); `seed` reproduces
/// the suite in isolation.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u64,
    pub violations: u64,
    pub worst_margin: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub seed: u64,
    pub complete: bool,
    pub skipped: Vec<String>,
    pub suites: Vec<SuiteReport>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.violations == 0)
    }

    pub fn total_violations(&self) -> u64 {
        self.suites.iter().map(|s| s.violations).sum()
    }
}

struct SuiteAcc {
    cases: u64,
    violations: u64,
    worst: f64,
}

impl SuiteAcc {
    fn new() -> Self {
        Self { cases: 0, violations: 0, worst: f64::INFINITY }
    }

    /// One case with possibly several slack values; the case fails when any
    /// slack is negative.
    fn case<I: IntoIterator<Item = f64>>(&mut self, slacks: I) {
        self.cases += 1;
        let mut bad = false;
        for s in slacks {
            if s < self.worst {
                self.worst = s;
            }
            bad |= s < 0.0;
        }
        if bad {
            self.violations += 1;
        }
    }

    fn report(self, suite: &str, seed: u64) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            cases: self.cases,
            violations: self.violations,
            worst_margin: if self.cases == 0 { 0.0 } else { self.worst },
            seed,
        }
    }
}

fn random_triple(rng: &mut ChaCha8Rng) -> AdmissibleTriple {
    let m2 = rng.random_range(0.0..2.0);
    let f = m2 + rng.random_range(0.05..2.0);
    let m1 = f + rng.random_range(0.05..3.0);
    AdmissibleTriple::new(m1, f, m2).expect("constructed admissible")
}

fn random_leaf_function(tree: Tree, rng: &mut ChaCha8Rng) -> LeafFunction {
    let n = tree.leaf_count() as usize;
    let scale = rng.random_range(0.5..8.0);
    let style = rng.random_range(0..4u8);
    let mut values: Vec<f64> = match style {
        0 => (0..n).map(|_| rng.random_range(0.0..scale)).collect(),
        1 => {
            // Sparse spikes over a low plateau.
            let low = rng.random_range(0.0..scale / 4.0);
            let p = rng.random_range(0.02..0.3);
            (0..n)
                .map(|_| if rng.random_bool(p) { scale } else { low })
                .collect()
        }
        2 => (0..n).map(|_| scale * rng.random::<f64>().powi(3)).collect(),
        _ => {
            // Piecewise constant on the blocks of a random level.
            let level = rng.random_range(0..=tree.depth());
            let block = tree.node_size(level).unwrap() as usize;
            let mut v = Vec::with_capacity(n);
            while v.len() < n {
                let x = rng.random_range(0.0..scale);
                v.extend(std::iter::repeat_n(x, block));
            }
            v
        }
    };
    if values.iter().all(|&v| v == 0.0) {
        values[0] = scale;
    }
    LeafFunction::new(tree, values).expect("random values are valid")
}

fn random_node_set(tree: Tree, members: u64, rng: &mut ChaCha8Rng) -> NodeSet {
    let n = tree.leaf_count();
    let mut idx: Vec<u64> = (0..n).collect();
    let members = members.min(n) as usize;
    for i in 0..members {
        let j = rng.random_range(i..idx.len());
        idx.swap(i, j);
    }
    NodeSet::from_indices(tree, &idx[..members]).expect("indices in range")
}

fn suite_seed(master: u64, tag: u64) -> u64 {
    master ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Runs every invariant suite at the configured scale and returns a
/// machine-readable report. Identical configs produce byte-identical
/// reports.
pub fn audit_bounds(config: &AuditConfig) -> AuditReport {
    let mut skipped = Vec::new();
    let mut trees = Vec::new();
    for &(arity, depth) in &config.trees {
        match Tree::uniform(arity, depth) {
            Ok(t) => trees.push(t),
            Err(e) => skipped.push(format!("tree ({arity},{depth}): {e}")),
        }
    }

    let mut suites = Vec::new();

    // Suite 1: sampled step functions never beat the sharp bound.
    {
        let seed = suite_seed(config.seed, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut acc = SuiteAcc::new();
        for _ in 0..config.triples {
            let triple = random_triple(&mut rng);
            let bound = bound_full_space(&triple);
            for _ in 0..config.step_samples_per_triple {
                let pieces = rng.random_range(2..=config.max_pieces.max(2));
                let sample_seed = rng.random::<u64>();
                if let Ok(g) = sample_admissible(&triple, pieces, sample_seed) {
                    acc.case([bound - g.hardy_integral() + 1e-9]);
                }
            }
        }
        suites.push(acc.report("upper_bound_step_functions", seed));
    }

    // Suite 2: the rearranged maximal function sits below the running
    // average of the rearranged function, at every grid point.
    {
        let seed = suite_seed(config.seed, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut acc = SuiteAcc::new();
        for &tree in &trees {
            for _ in 0..config.leaf_samples {
                let phi = random_leaf_function(tree, &mut rng);
                let mut sorted_phi = phi.values().to_vec();
                sorted_phi.sort_by(|a, b| b.partial_cmp(a).unwrap());
                let mut sorted_max = phi.maximal_function().values().to_vec();
                sorted_max.sort_by(|a, b| b.partial_cmp(a).unwrap());
                // Prefix means of the sorted values are the running averages
                // of the rearrangement at the grid points.
                let mut prefix = 0.0;
                let mut worst = f64::INFINITY;
                for (r, (&p, &m)) in sorted_phi.iter().zip(&sorted_max).enumerate() {
                    prefix += p;
                    let hardy = prefix / (r + 1) as f64;
                    worst = worst.min(hardy - m + 1e-9);
                }
                acc.case([worst]);
            }
        }
        suites.push(acc.report("hardy_domination", seed));
    }

    // Suite 3: integrals of the maximal function over sets obey the
    // two-branch bound, for adversarial and random sets.
    {
        let seed = suite_seed(config.seed, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut acc = SuiteAcc::new();
        for &tree in &trees {
            let n = tree.leaf_count();
            for _ in 0..config.leaf_samples {
                let phi = random_leaf_function(tree, &mut rng);
                let maximal = phi.maximal_function();
                let m = phi.max_value();
                // Odd arities can round the tree-order integral a hair past
                // the maximum for near-constant functions.
                let f = phi.integral().min(m);
                if f <= 0.0 {
                    continue;
                }
                for denom in [8u64, 4, 2, 1] {
                    let members = (n / denom).max(1);
                    let k = members as f64 / n as f64;
                    let query = SetBoundQuery::new(f, m, k).expect("valid query");
                    let bound = bound_on_set(&query);
                    let top = NodeSet::top_leaves(&maximal, members);
                    let rand_set = random_node_set(tree, members, &mut rng);
                    let s1 = bound - integrate_over(&maximal, &top).unwrap() + 1e-9;
                    let s2 = bound - integrate_over(&maximal, &rand_set).unwrap() + 1e-9;
                    acc.case([s1, s2]);
                }
            }
        }
        suites.push(acc.report("set_bound_domination", seed));
    }

    // Suite 4: the full-space integral obeys the three-parameter bound.
    {
        let seed = suite_seed(config.seed, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut acc = SuiteAcc::new();
        for &tree in &trees {
            for _ in 0..config.leaf_samples {
                let phi = random_leaf_function(tree, &mut rng);
                let (f, lo, hi) = (phi.integral(), phi.min_value(), phi.max_value());
                // Constants have no room between infimum and mean; skip them.
                if !(f > lo && hi > f) {
                    continue;
                }
                let triple = AdmissibleTriple::new(hi, f, lo).expect("max >= mean > min");
                let slack = bound_full_space(&triple) - phi.maximal_function().integral() + 1e-9;
                acc.case([slack]);
            }
        }
        suites.push(acc.report("full_space_domination", seed));
    }

    // Suite 5: threshold contract, sandwich optimality, the blend identity,
    // and subfamily measure accuracy.
    {
        let seed = suite_seed(config.seed, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut acc = SuiteAcc::new();
        for &tree in &trees {
            let n = tree.leaf_count();
            for _ in 0..config.leaf_samples {
                let phi = random_leaf_function(tree, &mut rng);
                let w = phi.maximal_function();
                let members = rng.random_range(1..=n);
                let k = members as f64 / n as f64;
                let sandwich = sandwich_set(&w, k).unwrap();
                let v1 = super_level(&w, sandwich.threshold, true);
                let v2 = super_level(&w, sandwich.threshold, false);

                // Threshold contract in leaf counts, which the measures are
                // exact multiples of.
                let mut slacks = vec![
                    (members as f64 - v1.member_count() as f64) * tree.leaf_measure(),
                    (v2.member_count() as f64 - members as f64) * tree.leaf_measure(),
                ];

                let on_d = integrate_over(&w, &sandwich.set).unwrap();
                let claim = sandwich.blend * integrate_over(&w, &v1).unwrap()
                    + (1.0 - sandwich.blend) * integrate_over(&w, &v2).unwrap();
                slacks.push(1e-12 * on_d.abs().max(1.0) - (on_d - claim).abs());

                for _ in 0..config.equal_measure_checks {
                    let competitor = random_node_set(tree, sandwich.set.member_count(), &mut rng);
                    slacks.push(on_d - integrate_over(&w, &competitor).unwrap() + 1e-12);
                }

                let level = rng.random_range(0..=tree.depth());
                let index = rng.random_range(0..(tree.arity() as u64).pow(level));
                let node = NodeId { level, index };
                let alpha = rng.random_range(0.05..0.95);
                let sub = select_subfamily(tree, node, alpha).unwrap();
                let node_measure = tree.node_size(level).unwrap() as f64 * tree.leaf_measure();
                let err = (sub.measure() - (1.0 - alpha) * node_measure).abs();
                slacks.push(tree.leaf_measure() - err);

                acc.case(slacks);
            }
        }
        suites.push(acc.report("threshold_sandwich_claim", seed));
    }

    // Suite 6: conditioning on deeper levels only raises the maximal
    // function, reaches it at full depth, and never moves mass.
    {
        let seed = suite_seed(config.seed, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut acc = SuiteAcc::new();
        for &tree in &trees {
            // Mass is preserved bit-exactly for power-of-two arity; other
            // arities round once per block average.
            let exact = tree.arity().is_power_of_two();
            for _ in 0..config.leaf_samples {
                let phi = random_leaf_function(tree, &mut rng);
                let mass = phi.integral();
                let target = phi.maximal_function();
                let mut slacks = Vec::new();
                let mut prev = phi.condition_on_level(0).unwrap().maximal_function();
                for level in 1..=tree.depth() {
                    let cond = phi.condition_on_level(level).unwrap();
                    let mass_err = (cond.integral() - mass).abs();
                    let mass_tol = if exact { 0.0 } else { 1e-12 * mass.abs().max(1.0) };
                    slacks.push(mass_tol - mass_err);
                    let cur = cond.maximal_function();
                    let tol = if exact { 0.0 } else { 1e-12 };
                    let monotone = cur
                        .values()
                        .iter()
                        .zip(prev.values())
                        .map(|(now, before)| now - before + tol)
                        .fold(f64::INFINITY, f64::min);
                    slacks.push(monotone);
                    prev = cur;
                }
                let equal_at_depth = prev
                    .values()
                    .iter()
                    .zip(target.values())
                    .map(|(a, b)| -(a - b).abs())
                    .fold(f64::INFINITY, f64::min);
                slacks.push(equal_at_depth);
                acc.case(slacks);
            }
        }
        suites.push(acc.report("monotone_conditioning", seed));
    }

    // Suite 7: the k = 1 set bound agrees with the full-space bound, and
    // the exact symmetrization path agrees with the piecewise functional.
    {
        let seed = suite_seed(config.seed, 7);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut acc = SuiteAcc::new();
        for i in 0..50 {
            let f = 0.1 + 0.15 * i as f64;
            let m = f * (1.0 + (i % 7) as f64);
            let q = SetBoundQuery::new(f, m, 1.0).expect("valid");
            let t = AdmissibleTriple::new(m, f, 0.0).expect("valid");
            let diff = (bound_on_set(&q) - bound_full_space(&t)).abs();
            acc.case([1e-12 * bound_full_space(&t).abs().max(1.0) - diff]);
        }
        for _ in 0..100 {
            let triple = random_triple(&mut rng);
            let pieces = rng.random_range(2..=config.max_pieces.max(2));
            let sample_seed = rng.random::<u64>();
            if let Ok(g) = sample_admissible(&triple, pieces, sample_seed) {
                let via_symmetrization =
                    symmetrization_rhs(&g, MonotoneMap::Identity, MonotoneMap::One, 1.0).unwrap();
                let diff = (via_symmetrization - g.hardy_integral()).abs();
                acc.case([1e-9 - diff]);
            }
        }
        suites.push(acc.report("consistency", seed));
    }

    AuditReport {
        seed: config.seed,
        complete: skipped.is_empty(),
        skipped,
        suites,
    }
}
