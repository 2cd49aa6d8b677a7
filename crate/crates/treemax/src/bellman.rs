//! Closed-form sharp bounds and the symmetrized right-hand side they come
//! from.
//!
//! `bound_full_space` is the sharp value of `sup ∫_X Mφ` over functions with
//! prescribed sup, integral and essential infimum; `bound_on_set` is the
//! two-branch sharp value of `sup ∫_K Mφ` over functions with prescribed sup
//! and integral and sets of prescribed measure. `symmetrization_rhs`
//! evaluates the rearranged form `∫_0^k G1(Hardy g)·G2(g)` that both bounds
//! reduce to.

use crate::error::{Error, Result};
use crate::stepfn::{entropy_weight, AdmissibleTriple, StepFunction};

/// Query for the two-branch bound: integral `f`, sup norm `M`, set measure `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SetBoundQuery {
    f: f64,
    m: f64,
    k: f64,
}

impl SetBoundQuery {
    pub fn new(f: f64, m: f64, k: f64) -> Result<Self> {
        if !(f.is_finite() && m.is_finite() && k.is_finite()) {
            return Err(Error::Constraint(format!(
                "query must be finite, got (f={f}, M={m}, k={k})"
            )));
        }
        if !(f > 0.0 && f <= m) {
            return Err(Error::Constraint(format!("need 0 < f <= M, got f = {f}, M = {m}")));
        }
        if !(k > 0.0 && k <= 1.0) {
            return Err(Error::Constraint(format!("need k in (0,1], got k = {k}")));
        }
        Ok(Self { f, m, k })
    }

    pub fn integral(&self) -> f64 {
        self.f
    }

    pub fn sup(&self) -> f64 {
        self.m
    }

    pub fn set_measure(&self) -> f64 {
        self.k
    }
}

/// A named increasing map `[0,∞) -> [0,∞)`.
///
/// The registry is closed so the monotonicity hypothesis of the
/// symmetrization principle holds by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MonotoneMap {
    /// `x ↦ x`
    Identity,
    /// `x ↦ 1`
    One,
    /// `x ↦ x^p` with `p >= 1`
    Power(f64),
    /// `x ↦ log(1 + x)`
    Log1p,
}

impl MonotoneMap {
    pub fn power(p: f64) -> Result<Self> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::Constraint(format!("power exponent must be >= 1, got {p}")));
        }
        Ok(Self::Power(p))
    }

    pub fn eval(&self, x: f64) -> f64 {
        debug_assert!(x >= 0.0, "monotone maps are defined on [0,∞)");
        match self {
            Self::Identity => x,
            Self::One => 1.0,
            Self::Power(p) => x.powf(*p),
            Self::Log1p => x.ln_1p(),
        }
    }
}

/// Sharp value of `sup ∫_X Mφ` over the class with sup `M1`, integral `f`
/// and essential infimum `M2`:
///
/// `f + (f - M2) log((M1 - M2)/(f - M2))`.
///
/// Equals `f` when `M1 = f` and is attained by the two-valued extremizer.
pub fn bound_full_space(triple: &AdmissibleTriple) -> f64 {
    let (m1, f, m2) = (triple.sup(), triple.integral(), triple.inf());
    f + (f - m2) * ((m1 - m2) / (f - m2)).ln()
}

/// Sharp value of `sup ∫_K Mφ` over functions with integral `f`, sup `M`
/// and sets of measure `k`:
///
/// `kM` for `k <= f/M`, and `f + f log(Mk/f)` for `f/M < k <= 1`.
///
/// Continuous at the branch point and nondecreasing in `k` and `M`.
pub fn bound_on_set(query: &SetBoundQuery) -> f64 {
    let (f, m, k) = (query.integral(), query.sup(), query.set_measure());
    if k * m <= f {
        k * m
    } else {
        f + f * (m * k / f).ln()
    }
}

/// `∫_0^k G1((1/t)∫_0^t g) · G2(g(t)) dt` for decreasing `g`.
///
/// With `G1` the identity and `G2` constant one the integral has a
/// piecewise-analytic value and is evaluated exactly; any other pair goes
/// through adaptive quadrature to 1e-8 absolute.
pub fn symmetrization_rhs(
    g: &StepFunction,
    g1: MonotoneMap,
    g2: MonotoneMap,
    k: f64,
) -> Result<f64> {
    if !g.values().windows(2).all(|w| w[0] >= w[1]) {
        return Err(Error::Domain("symmetrization_rhs: g must be decreasing".into()));
    }
    if !(k > 0.0 && k <= 1.0) {
        return Err(Error::Domain(format!("symmetrization_rhs: k={k} outside (0,1]")));
    }

    if g1 == MonotoneMap::Identity && g2 == MonotoneMap::One {
        // ∫_0^k (1/t)∫_0^t g dt = log(k)·∫_0^k g + Σ_i v_i (h(b_i∧k) - h(a_i))
        // by parts, with the boundary term vanishing at k = 1.
        let mut stieltjes = 0.0;
        let mut mass = 0.0;
        for (&v, w) in g.values().iter().zip(g.breakpoints().windows(2)) {
            if w[0] >= k {
                break;
            }
            let b = w[1].min(k);
            stieltjes += v * (entropy_weight(b)? - entropy_weight(w[0])?);
            mass += v * (b - w[0]);
        }
        let boundary = if k == 1.0 { 0.0 } else { k.ln() * mass };
        return Ok(boundary + stieltjes);
    }

    // General registry pair: on each piece the integrand is
    // G1(v + C/t)·G2(v) with C = ∫_0^a g - a·v, smooth away from 0 and
    // constant on the first piece.
    let pieces: usize = g
        .breakpoints()
        .windows(2)
        .filter(|w| w[0] < k)
        .count()
        .max(1);
    let tol = 1e-8 / pieces as f64;
    let mut total = 0.0;
    let mut prefix_mass = 0.0;
    for (&v, w) in g.values().iter().zip(g.breakpoints().windows(2)) {
        if w[0] >= k {
            break;
        }
        let (a, b) = (w[0], w[1].min(k));
        let g2_v = g2.eval(v);
        if a == 0.0 {
            // Hardy average of the first piece is the piece value itself.
            total += g1.eval(v) * g2_v * (b - a);
        } else {
            let c = prefix_mass - a * v;
            let f = |t: f64| g1.eval(v + c / t) * g2_v;
            total += adaptive_simpson(&f, a, b, tol);
        }
        prefix_mass += v * (w[1].min(k) - a);
        if w[1] >= k {
            break;
        }
    }
    Ok(total)
}

/// Adaptive Simpson quadrature with the usual Richardson acceptance test.
fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stepfn::extremizer_g0;

    fn triple(m1: f64, f: f64, m2: f64) -> AdmissibleTriple {
        AdmissibleTriple::new(m1, f, m2).unwrap()
    }

    #[test]
    fn bound_full_space_matches_functional_of_extremizer() {
        // The oracle: the bound must equal the functional at the extremizer.
        for (m1, f, m2) in [(2.0, 1.0, 0.0), (3.0, 2.0, 1.0), (5.0, 1.5, 0.25), (1.0, 1.0, 0.0)] {
            let t = triple(m1, f, m2);
            let bound = bound_full_space(&t);
            let attained = extremizer_g0(&t).hardy_integral();
            assert!(
                (bound - attained).abs() <= 1e-12 * bound.abs().max(1.0),
                "({m1},{f},{m2}): bound {bound} vs attained {attained}"
            );
            assert!(bound >= f - 1e-15);
        }
        assert!((bound_full_space(&triple(2.0, 1.0, 0.0)) - (1.0 + std::f64::consts::LN_2)).abs() < 1e-15);
        assert_eq!(bound_full_space(&triple(1.0, 1.0, 0.0)), 1.0);
        assert!((bound_full_space(&triple(3.0, 2.0, 1.0)) - (2.0 + std::f64::consts::LN_2)).abs() < 1e-15);
    }

    #[test]
    fn bound_on_set_branches_and_continuity() {
        let q = SetBoundQuery::new(1.0, 2.0, 0.25).unwrap();
        assert_eq!(bound_on_set(&q), 0.5);

        let at_knee = SetBoundQuery::new(1.0, 2.0, 0.5).unwrap();
        assert!((bound_on_set(&at_knee) - 1.0).abs() < 1e-15);
        // Both branch formulas agree at k = f/M.
        let second_branch = 1.0 + 1.0 * (2.0f64 * 0.5 / 1.0).ln();
        assert!((bound_on_set(&at_knee) - second_branch).abs() < 1e-15);

        let full = SetBoundQuery::new(1.0, 2.0, 1.0).unwrap();
        let t1 = bound_full_space(&triple(2.0, 1.0, 0.0));
        assert!((bound_on_set(&full) - t1).abs() < 1e-15);
    }

    #[test]
    fn bound_on_set_monotone_in_k_and_m() {
        let mut prev = 0.0;
        for i in 1..=100 {
            let k = i as f64 / 100.0;
            let b = bound_on_set(&SetBoundQuery::new(1.0, 3.0, k).unwrap());
            assert!(b >= prev - 1e-15, "not nondecreasing in k at {k}");
            prev = b;
        }
        let mut prev = 0.0;
        for i in 0..50 {
            let m = 1.0 + i as f64 / 10.0;
            let b = bound_on_set(&SetBoundQuery::new(1.0, m, 0.7).unwrap());
            assert!(b >= prev - 1e-15, "not nondecreasing in M at {m}");
            prev = b;
        }
    }

    #[test]
    fn query_constructor_enforces_constraints() {
        assert!(SetBoundQuery::new(1.0, 0.9, 0.5).is_err()); // f > M
        assert!(SetBoundQuery::new(0.0, 1.0, 0.5).is_err()); // f = 0
        assert!(SetBoundQuery::new(1.0, 2.0, 0.0).is_err()); // k = 0
        assert!(SetBoundQuery::new(1.0, 2.0, 1.1).is_err()); // k > 1
    }

    #[test]
    fn symmetrization_identity_one_reduces_to_the_functional() {
        let g0 = extremizer_g0(&triple(2.0, 1.0, 0.0));
        let full = symmetrization_rhs(&g0, MonotoneMap::Identity, MonotoneMap::One, 1.0).unwrap();
        assert!((full - g0.hardy_integral()).abs() < 1e-12);

        let half = symmetrization_rhs(&g0, MonotoneMap::Identity, MonotoneMap::One, 0.5).unwrap();
        assert!((half - 1.0).abs() < 1e-12, "plateau Hardy average integrates to {half}");

        let c = StepFunction::constant(0.8).unwrap();
        for k in [0.1, 0.37, 1.0] {
            let v = symmetrization_rhs(&c, MonotoneMap::Identity, MonotoneMap::One, k).unwrap();
            assert!((v - 0.8 * k).abs() < 1e-12);
        }
    }

    #[test]
    fn symmetrization_general_pair_matches_midpoint_oracle() {
        let g = StepFunction::new(vec![0.0, 0.2, 0.55, 1.0], vec![3.0, 1.5, 0.5]).unwrap();
        let cases = [
            (MonotoneMap::Identity, MonotoneMap::Identity, 1.0),
            (MonotoneMap::Power(2.0), MonotoneMap::One, 0.8),
            (MonotoneMap::Log1p, MonotoneMap::Identity, 0.55),
            (MonotoneMap::Identity, MonotoneMap::One, 0.37),
        ];
        for (g1, g2, k) in cases {
            let fast = symmetrization_rhs(&g, g1, g2, k).unwrap();
            // Midpoint-rule oracle straight from the definition.
            let n = 2_000_000usize;
            let dt = k / n as f64;
            let oracle: f64 = (0..n)
                .map(|i| {
                    let t = (i as f64 + 0.5) * dt;
                    g1.eval(g.hardy_eval(t).unwrap()) * g2.eval(g.eval(t).unwrap()) * dt
                })
                .sum();
            assert!(
                (fast - oracle).abs() < 1e-6,
                "({g1:?},{g2:?},k={k}): {fast} vs oracle {oracle}"
            );
        }
    }

    #[test]
    fn symmetrization_rejects_bad_input() {
        let inc = StepFunction::new(vec![0.0, 0.5, 1.0], vec![1.0, 2.0]).unwrap();
        assert!(symmetrization_rhs(&inc, MonotoneMap::Identity, MonotoneMap::One, 1.0).is_err());
        let g = StepFunction::constant(1.0).unwrap();
        assert!(symmetrization_rhs(&g, MonotoneMap::Identity, MonotoneMap::One, 0.0).is_err());
        assert!(symmetrization_rhs(&g, MonotoneMap::Identity, MonotoneMap::One, 1.5).is_err());
    }

    #[test]
    fn monotone_map_registry() {
        assert_eq!(MonotoneMap::Identity.eval(2.5), 2.5);
        assert_eq!(MonotoneMap::One.eval(7.0), 1.0);
        assert_eq!(MonotoneMap::power(2.0).unwrap().eval(3.0), 9.0);
        assert!((MonotoneMap::Log1p.eval(std::f64::consts::E - 1.0) - 1.0).abs() < 1e-15);
        assert!(MonotoneMap::power(0.5).is_err());
        for map in [MonotoneMap::Identity, MonotoneMap::One, MonotoneMap::Power(1.5), MonotoneMap::Log1p] {
            let mut prev = map.eval(0.0);
            assert!(prev.is_finite());
            for i in 1..=40 {
                let x = i as f64 / 4.0;
                let y = map.eval(x);
                assert!(y >= prev, "{map:?} not nondecreasing at {x}");
                prev = y;
            }
        }
    }
}
