//! Tracing pseudo-orbits and the shadowing profile.

use serde::Serialize;

use crate::action::GroupAction;
use crate::chain::ladder::ThresholdLadder;
use crate::dynamics::pseudo_orbit::{PseudoOrbit, PseudoOrbitSearch, SearchEnd};
use crate::error::{Error, Result};
use crate::group::CayleyBall;
use crate::scalar::{self, Scalar};

/// Best tracing point of a pseudo-orbit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceResult {
    pub tracer: usize,
    /// `max_g d(Φ_g(tracer), f(g))`.
    #[serde(with = "scalar::serde_text")]
    pub radius: Scalar,
    /// The tracer is the only point with tracing radius below this value
    /// (the runner-up radius); absent on a tie or a one-point space.
    #[serde(with = "scalar::serde_text_opt")]
    pub unique_at: Option<Scalar>,
    /// Exactly one point traces within ε.
    pub unique: bool,
}

/// `max_g d(Φ_g(x), f(g))`.
pub fn tracing_radius(action: &GroupAction, ball: &CayleyBall, f: &PseudoOrbit, x: usize) -> Scalar {
    let space = action.space();
    ball.elements()
        .iter()
        .enumerate()
        .map(|(g, e)| space.d(e.apply(x), f.point(g)))
        .max()
        .unwrap_or_default()
}

/// Minimum-radius tracer (ties to the smallest index) if its radius is `< ε`.
pub fn trace_search(action: &GroupAction, ball: &CayleyBall, f: &PseudoOrbit, epsilon: Scalar) -> Option<TraceResult> {
    let radii: Vec<Scalar> = (0..action.space().len()).map(|x| tracing_radius(action, ball, f, x)).collect();
    let (tracer, radius) = radii
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)))
        .map(|(i, r)| (i, *r))?;
    if radius >= epsilon {
        return None;
    }
    let runner_up = radii.iter().enumerate().filter(|(i, _)| *i != tracer).map(|(_, r)| *r).min();
    let unique_at = runner_up.filter(|r| *r > radius);
    let unique = runner_up.is_none_or(|r| r >= epsilon);
    Some(TraceResult { tracer, radius, unique_at, unique })
}

/// Largest ladder δ such that every δ-pseudo-orbit on the ball is ε-traced.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShadowingProfile {
    #[serde(with = "scalar::serde_text")]
    pub epsilon: Scalar,
    pub horizon: usize,
    #[serde(with = "scalar::serde_text")]
    pub delta: Scalar,
    /// The ball did not saturate, so the verdict concerns `G_k` only.
    pub horizon_limited: bool,
    /// False if some probe ran out of budget; `delta` is then a verified
    /// lower bound.
    pub exact: bool,
    /// An untraced pseudo-orbit at the next ladder value, when one was found.
    pub counterexample: Option<PseudoOrbit>,
    #[serde(with = "scalar::serde_text")]
    pub counterexample_delta: Scalar,
    pub nodes: u64,
}

enum Probe {
    AllTraced,
    Untraced(PseudoOrbit),
    Unknown,
}

fn probe(action: &GroupAction, ball: &CayleyBall, delta: Scalar, epsilon: Scalar, budget: Option<u64>, nodes: &mut u64) -> Probe {
    if delta <= Scalar::default() {
        return Probe::AllTraced;
    }
    let search = PseudoOrbitSearch::new(action, ball, delta).with_budget(budget).untraced_only(action, epsilon);
    let (found, stats) = search.first();
    *nodes += stats.nodes;
    match (found, stats.end) {
        (Some(f), _) => Probe::Untraced(f),
        (None, SearchEnd::BudgetExceeded) => Probe::Unknown,
        (None, _) => Probe::AllTraced,
    }
}

/// Binary search over `ladder` for the largest δ at which every δ-pseudo-orbit
/// on `G_k` is ε-traced. 0 (no pseudo-orbits at all) always qualifies.
pub fn shadowing_profile(
    action: &GroupAction,
    k: usize,
    epsilon: Scalar,
    ladder: &ThresholdLadder,
    budget: Option<u64>,
) -> Result<ShadowingProfile> {
    shadowing_profile_on(action, &action.cayley_ball(k), epsilon, ladder, budget)
}

/// As [`shadowing_profile`] on a precomputed ball.
pub fn shadowing_profile_on(
    action: &GroupAction,
    ball: &CayleyBall,
    epsilon: Scalar,
    ladder: &ThresholdLadder,
    budget: Option<u64>,
) -> Result<ShadowingProfile> {
    if !scalar::is_positive(&epsilon) {
        return Err(Error::InvalidParameter("epsilon must be positive".into()));
    }
    let values = ladder.values();
    let mut nodes = 0;
    let mut exact = true;
    // Invariant: values[lo] works; values[hi] fails (hi = len means unknown).
    let (mut lo, mut hi) = (0usize, values.len());
    let mut counterexample = None;
    let mut counterexample_delta = Scalar::default();
    match probe(action, ball, values[values.len() - 1], epsilon, budget, &mut nodes) {
        Probe::AllTraced => lo = values.len() - 1,
        Probe::Untraced(f) => {
            hi = values.len() - 1;
            counterexample = Some(f);
            counterexample_delta = values[hi];
        }
        Probe::Unknown => {
            hi = values.len() - 1;
            exact = false;
        }
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        match probe(action, ball, values[mid], epsilon, budget, &mut nodes) {
            Probe::AllTraced => lo = mid,
            Probe::Untraced(f) => {
                hi = mid;
                counterexample = Some(f);
                counterexample_delta = values[mid];
            }
            Probe::Unknown => {
                hi = mid;
                exact = false;
                counterexample = None;
            }
        }
    }
    if hi < values.len() && counterexample_delta != values[hi] {
        counterexample = None;
    }
    Ok(ShadowingProfile {
        epsilon,
        horizon: ball.radius(),
        delta: values[lo],
        horizon_limited: !ball.is_saturated(),
        exact,
        counterexample,
        counterexample_delta: if hi < values.len() { values[hi] } else { values[lo] },
        nodes,
    })
}
