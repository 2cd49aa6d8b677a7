//! Piecewise-constant functions on (0,1] and the weighted functional they
//! feed into.
//!
//! A [`StepFunction`] is left continuous: piece `i` carries value `v_i` on
//! `(t_{i-1}, t_i]`. The value of the first piece stands for the value at 0,
//! so the decreasing admissible class can be represented without a separate
//! endpoint. All constructors canonicalize by merging adjacent equal values,
//! which makes equality structural.

use crate::error::{Error, Result};
use crate::num::neumaier_sum;
use serde::{Deserialize, Serialize};

/// Increasing weight `h(t) = t - t·log t` on `[0,1]`, with `h(0) = 0`.
///
/// `h` is strictly increasing and strictly concave with `h'(t) = -log t`, so
/// the weighted functional of a step function collapses to a finite sum of
/// `h` differences.
pub fn entropy_weight(t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("entropy_weight: t={t} outside [0,1]")));
    }
    if t == 0.0 {
        Ok(0.0)
    } else {
        Ok(t - t * t.ln())
    }
}

/// Constraint triple `(M1, f, M2)` with `M1 >= f > M2 >= 0`.
///
/// Plays two roles: the class of functions with sup `M1`, integral `f` and
/// essential infimum `M2`, and the argument of the sharp bound formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibleTriple {
    m1: f64,
    f: f64,
    m2: f64,
}

impl AdmissibleTriple {
    pub fn new(m1: f64, f: f64, m2: f64) -> Result<Self> {
        if !(m1.is_finite() && f.is_finite() && m2.is_finite()) {
            return Err(Error::Constraint(format!(
                "triple must be finite, got ({m1}, {f}, {m2})"
            )));
        }
        if m2 < 0.0 {
            return Err(Error::Constraint(format!("M2 = {m2} must be >= 0")));
        }
        if f <= m2 {
            return Err(Error::Constraint(format!("need f > M2, got f = {f}, M2 = {m2}")));
        }
        if m1 < f {
            return Err(Error::Constraint(format!("need M1 >= f, got M1 = {m1}, f = {f}")));
        }
        Ok(Self { m1, f, m2 })
    }

    pub fn sup(&self) -> f64 {
        self.m1
    }

    pub fn integral(&self) -> f64 {
        self.f
    }

    pub fn inf(&self) -> f64 {
        self.m2
    }

    /// Knee position `c = (f - M2) / (M1 - M2)` of the extremizer, in `(0, 1]`.
    pub fn knee(&self) -> f64 {
        (self.f - self.m2) / (self.m1 - self.m2)
    }
}

/// Why a function failed the admissibility check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdmissibilityFailure {
    NotDecreasing,
    FirstValueNotSup,
    LastValueNotInf,
    IntegralMismatch,
}

impl std::fmt::Display for AdmissibilityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::NotDecreasing => "not decreasing",
            Self::FirstValueNotSup => "first value differs from M1",
            Self::LastValueNotInf => "last value differs from M2",
            Self::IntegralMismatch => "integral differs from f",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Deserialize)]
struct RawStepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

/// Piecewise-constant, left-continuous function on `(0,1]`.
///
/// Breakpoints satisfy `0 = t_0 < t_1 < ... < t_n = 1`; `values[i]` is the
/// constant on `(t_i, t_{i+1}]` and all values are nonnegative. The stored
/// form is canonical: no two adjacent pieces share a value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStepFunction")]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl TryFrom<RawStepFunction> for StepFunction {
    type Error = Error;

    fn try_from(raw: RawStepFunction) -> Result<Self> {
        let sf = StepFunction::new(raw.breakpoints.clone(), raw.values.clone())?;
        // The wire format must already be canonical; merging on input would
        // let two distinct documents decode to the same object.
        if sf.values.len() != raw.values.len() {
            return Err(Error::InvalidRepr(
                "step function has adjacent equal values; canonical form required".into(),
            ));
        }
        Ok(sf)
    }
}

impl StepFunction {
    /// Validates the invariants and merges adjacent equal values.
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidRepr("need at least two breakpoints".into()));
        }
        if values.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidRepr(format!(
                "{} breakpoints require {} values, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                values.len()
            )));
        }
        if breakpoints[0] != 0.0 {
            return Err(Error::InvalidRepr(format!(
                "first breakpoint must be 0, got {}",
                breakpoints[0]
            )));
        }
        if *breakpoints.last().unwrap() != 1.0 {
            return Err(Error::InvalidRepr(format!(
                "last breakpoint must be 1, got {}",
                breakpoints.last().unwrap()
            )));
        }
        for &t in &breakpoints {
            if !t.is_finite() {
                return Err(Error::InvalidRepr(format!("breakpoints must be finite, got {t}")));
            }
        }
        for w in breakpoints.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidRepr(format!(
                    "breakpoints must be strictly increasing, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        for &v in &values {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidRepr(format!(
                    "values must be finite and nonnegative, got {v}"
                )));
            }
        }

        // Merge adjacent equal values into the canonical form.
        let mut bp = Vec::with_capacity(breakpoints.len());
        let mut vals = Vec::with_capacity(values.len());
        bp.push(0.0);
        for (i, &v) in values.iter().enumerate() {
            if vals.last() == Some(&v) {
                *bp.last_mut().unwrap() = breakpoints[i + 1];
            } else {
                vals.push(v);
                bp.push(breakpoints[i + 1]);
            }
        }
        Ok(Self { breakpoints: bp, values: vals })
    }

    /// Constant function on (0,1].
    pub fn constant(value: f64) -> Result<Self> {
        Self::new(vec![0.0, 1.0], vec![value])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn piece_count(&self) -> usize {
        self.values.len()
    }

    /// Value at `t` in `(0,1]` under the left-continuous convention.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::Domain(format!("eval: t={t} outside (0,1]")));
        }
        // First breakpoint strictly above or equal to t bounds the piece.
        let i = self.breakpoints[1..].partition_point(|&b| b < t);
        Ok(self.values[i])
    }

    /// `∫_0^1 g(t) dt` as the exact sum of piece areas.
    pub fn integral(&self) -> f64 {
        neumaier_sum(
            self.values
                .iter()
                .zip(self.breakpoints.windows(2))
                .map(|(&v, w)| v * (w[1] - w[0])),
        )
    }

    /// Measure of the super-level set `{t : g(t) > lambda}`.
    pub fn distribution(&self, lambda: f64) -> f64 {
        neumaier_sum(
            self.values
                .iter()
                .zip(self.breakpoints.windows(2))
                .filter(|(&v, _)| v > lambda)
                .map(|(_, w)| w[1] - w[0]),
        )
    }

    /// Decreasing rearrangement: the unique decreasing, left-continuous
    /// function on (0,1] equimeasurable with `self`.
    pub fn rearrangement(&self) -> StepFunction {
        // A canonical decreasing function is its own rearrangement; taking
        // this path keeps idempotence exact.
        if self.is_decreasing() {
            return self.clone();
        }
        let mut pieces: Vec<(f64, f64)> = self
            .values
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(&v, w)| (v, w[1] - w[0]))
            .collect();
        // Sort by value descending; ties keep original order, which does not
        // affect the function (equal values merge anyway).
        pieces.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());

        let mut bp = Vec::with_capacity(pieces.len() + 1);
        let mut vals = Vec::with_capacity(pieces.len());
        bp.push(0.0);
        let mut acc = 0.0f64;
        let n = pieces.len();
        for (i, &(v, w)) in pieces.iter().enumerate() {
            acc = if i + 1 == n { 1.0 } else { (acc + w).min(1.0) };
            if vals.last() == Some(&v) {
                *bp.last_mut().unwrap() = acc;
            } else if acc > *bp.last().unwrap() {
                vals.push(v);
                bp.push(acc);
            }
            // else: the width collapsed below one ulp of the running sum
            // and the piece is absorbed into its neighbor.
        }
        StepFunction { breakpoints: bp, values: vals }
    }

    /// Whether the values are decreasing (canonical form makes this strict).
    pub fn is_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] > w[1])
    }

    /// Running average `(1/t) ∫_0^t g(u) du` for `t` in `(0,1]`.
    pub fn hardy_eval(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::Domain(format!("hardy_eval: t={t} outside (0,1]")));
        }
        let mut acc = 0.0f64;
        for (&v, w) in self.values.iter().zip(self.breakpoints.windows(2)) {
            if t <= w[1] {
                acc += v * (t - w[0]);
                break;
            }
            acc += v * (w[1] - w[0]);
        }
        Ok(acc / t)
    }

    /// Integral of the running average: `∫_0^1 (1/t ∫_0^t g) dt`, which
    /// integration by parts turns into `-∫_0^1 g(t) log t dt`. Evaluated
    /// exactly as the Riemann–Stieltjes sum `Σ v_i (h(t_i) - h(t_{i-1}))`
    /// against the weight [`entropy_weight`].
    pub fn hardy_integral(&self) -> f64 {
        neumaier_sum(self.values.iter().zip(self.breakpoints.windows(2)).map(|(&v, w)| {
            let ha = entropy_weight(w[0]).expect("breakpoint in [0,1]");
            let hb = entropy_weight(w[1]).expect("breakpoint in [0,1]");
            v * (hb - ha)
        }))
    }

    /// L1 distance `∫_0^1 |g - g'|` on the merged breakpoint grid.
    pub fn l1_distance(&self, other: &StepFunction) -> f64 {
        let mut total = 0.0f64;
        let mut comp = 0.0f64;
        let mut add = |x: f64| {
            let t = total + x;
            if total.abs() >= x.abs() {
                comp += (total - t) + x;
            } else {
                comp += (x - t) + total;
            }
            total = t;
        };

        let (mut i, mut j) = (0usize, 0usize);
        let mut prev = 0.0f64;
        while i < self.values.len() && j < other.values.len() {
            let end = self.breakpoints[i + 1].min(other.breakpoints[j + 1]);
            add((self.values[i] - other.values[j]).abs() * (end - prev));
            if self.breakpoints[i + 1] <= end {
                i += 1;
            }
            if other.breakpoints[j + 1] <= end {
                j += 1;
            }
            prev = end;
        }
        total + comp
    }

    /// Membership check for the decreasing class with endpoints `M1`, `M2`
    /// and integral `f`; reports the first failed clause.
    pub fn check_admissible(
        &self,
        triple: &AdmissibleTriple,
        tol: f64,
    ) -> std::result::Result<(), AdmissibilityFailure> {
        if !self.values.windows(2).all(|w| w[0] >= w[1]) {
            return Err(AdmissibilityFailure::NotDecreasing);
        }
        if (self.values[0] - triple.sup()).abs() > tol {
            return Err(AdmissibilityFailure::FirstValueNotSup);
        }
        if (self.values[self.values.len() - 1] - triple.inf()).abs() > tol {
            return Err(AdmissibilityFailure::LastValueNotInf);
        }
        if (self.integral() - triple.integral()).abs() > tol {
            return Err(AdmissibilityFailure::IntegralMismatch);
        }
        Ok(())
    }

    pub fn is_admissible(&self, triple: &AdmissibleTriple, tol: f64) -> bool {
        self.check_admissible(triple, tol).is_ok()
    }
}

/// The two-valued extremizer: `M1` on `(0, c]` and `M2` on `(c, 1]` with
/// `c = (f - M2)/(M1 - M2)`. It is the unique maximizer of the weighted
/// functional over the decreasing class of `triple`.
pub fn extremizer_g0(triple: &AdmissibleTriple) -> StepFunction {
    let c = triple.knee();
    if c >= 1.0 {
        // M1 == f: the class pins the function near the constant f.
        return StepFunction::constant(triple.sup()).expect("constant is valid");
    }
    StepFunction::new(vec![0.0, c, 1.0], vec![triple.sup(), triple.inf()])
        .expect("extremizer breakpoints are valid")
}
