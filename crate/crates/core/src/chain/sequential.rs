//! Sequential pseudo-orbits (one generator per step) and sequential tracing.
//!
//! A window is a walk `x_{-L}, …, x_L` in the δ-step graph. It is ε-traced by
//! `x` if `d(x, x_0) < ε` and, for each `i ≠ 0`, some non-identity `g_i` in the
//! ball has `d(Φ_{g_i} x, x_i) < ε`. The choices of `g_i` are independent, so
//! the tracers of a window are `B_ε(x_0) ∩ ⋂_{i≠0} R(x_i)` with
//! `R(p) = {x : ∃ g ≠ e, d(Φ_g x, p) < ε}`, and a window is untraced iff that
//! intersection is empty.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::GroupAction;
use crate::chain::ladder::ThresholdLadder;
use crate::chain::step_graph::StepGraph;
use crate::error::{Error, Result};
use crate::group::{CayleyBall, Semantics};
use crate::pointset::PointSet;
use crate::scalar::{self, Scalar};

/// A walk of length `2L` with the smallest generator label witnessing each step.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpoWindow {
    /// `x_{-L}, …, x_L`.
    pub points: Vec<usize>,
    /// Generator index for each step `x_i → x_{i+1}`.
    pub generators: Vec<usize>,
}

impl SpoWindow {
    pub fn from_points(graph: &StepGraph, points: Vec<usize>) -> Option<Self> {
        let generators = points
            .windows(2)
            .map(|w| graph.witnesses(w[0], w[1]).first().copied())
            .collect::<Option<Vec<_>>>()?;
        Some(SpoWindow { points, generators })
    }

    /// Half-length `L`.
    pub fn half_length(&self) -> usize {
        self.points.len() / 2
    }

    pub fn center(&self) -> usize {
        self.points[self.half_length()]
    }

    /// `max_i d(Φ_{s_i}(x_i), x_{i+1})`.
    pub fn defect(&self, action: &GroupAction) -> Scalar {
        let space = action.space();
        self.points
            .windows(2)
            .zip(&self.generators)
            .map(|(w, &s)| space.d(action.generator_map(s).apply(w[0]), w[1]))
            .max()
            .unwrap_or_default()
    }
}

/// Calls `visit` on every window of half-length `l`, in lexicographic order
/// of the point sequence.
pub fn for_each_spo_window(graph: &StepGraph, l: usize, mut visit: impl FnMut(&SpoWindow)) {
    let len = 2 * l + 1;
    let mut points = Vec::with_capacity(len);
    fn walk(graph: &StepGraph, len: usize, points: &mut Vec<usize>, visit: &mut impl FnMut(&SpoWindow)) {
        if points.len() == len {
            let w = SpoWindow::from_points(graph, points.clone()).expect("walk follows edges");
            visit(&w);
            return;
        }
        let next: Vec<usize> = match points.last() {
            None => (0..graph.len()).collect(),
            Some(&v) => graph.successors(v).to_vec(),
        };
        for w in next {
            points.push(w);
            walk(graph, len, points, visit);
            points.pop();
        }
    }
    walk(graph, len, &mut points, &mut visit);
}

/// All windows of half-length `l` (walks of length `2l`) in the δ-step graph.
pub fn spo_windows(action: &GroupAction, delta: Scalar, l: usize) -> Result<Vec<SpoWindow>> {
    if !scalar::is_positive(&delta) || l == 0 {
        return Err(Error::InvalidParameter("delta must be positive and the window length at least 1".into()));
    }
    let graph = StepGraph::new(action, delta);
    let mut out = Vec::new();
    for_each_spo_window(&graph, l, |w| out.push(w.clone()));
    Ok(out)
}

/// A tracing point with one group element (ball index) per window position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequentialTrace {
    pub tracer: usize,
    pub elements: Vec<usize>,
}

/// Per-point data shared by all sequential-tracing checks at one ε.
pub struct TracingSets<'a> {
    ball: &'a CayleyBall,
    allowed: Vec<bool>,
    near: Vec<PointSet>,
    /// `R(p)` for every point.
    reach: Vec<PointSet>,
}

impl<'a> TracingSets<'a> {
    pub fn new(action: &GroupAction, ball: &'a CayleyBall, epsilon: Scalar, semantics: Semantics) -> Self {
        let space = action.space();
        let n = space.len();
        let allowed = action.non_identity_mask(ball, semantics);
        let near = space.open_balls(&epsilon);
        let mut reach = vec![PointSet::empty(n); n];
        for (g, e) in ball.elements().iter().enumerate() {
            if !allowed[g] {
                continue;
            }
            for x in 0..n {
                for p in near[e.apply(x)].iter() {
                    reach[p].insert(x);
                }
            }
        }
        TracingSets { ball, allowed, near, reach }
    }

    pub fn reach(&self, p: usize) -> &PointSet {
        &self.reach[p]
    }

    /// First tracer in point order, with the first admissible element per
    /// position in ball order.
    pub fn trace(&self, window: &SpoWindow) -> Option<SequentialTrace> {
        let c = window.half_length();
        let mut candidates = self.near[window.points[c]].clone();
        for (i, &p) in window.points.iter().enumerate() {
            if i != c {
                candidates.intersect_with(&self.reach[p]);
            }
        }
        let x = candidates.first()?;
        let elements = window
            .points
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                if i == c {
                    return 0;
                }
                (0..self.ball.len())
                    .find(|&g| self.allowed[g] && self.near[p].contains(self.ball.get(g).apply(x)))
                    .expect("x lies in R(p)")
            })
            .collect();
        Some(SequentialTrace { tracer: x, elements })
    }
}

/// Sequential tracing of one window within `ε` using elements of `ball`.
pub fn sequentially_traced(
    action: &GroupAction,
    ball: &CayleyBall,
    window: &SpoWindow,
    epsilon: Scalar,
    semantics: Semantics,
) -> Option<SequentialTrace> {
    TracingSets::new(action, ball, epsilon, semantics).trace(window)
}

/// How much an SSP verdict can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// Every window was accounted for.
    Exact,
    /// Some probe ran out of budget and counted as failing: the value is a
    /// certified lower bound.
    LowerBound,
    /// Some probe was decided by random sampling: the value is not certified.
    Sampled,
}

/// Limits for [`ssp_profile`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SspOptions {
    /// Cap on search states per probe.
    pub budget: Option<u64>,
    /// Fall back to sampling this many random windows (seeded) when the
    /// budget runs out.
    pub seed: Option<u64>,
    pub samples: usize,
}

enum SspProbe {
    Holds,
    Fails(SpoWindow),
    Unknown,
}

type Layer = HashMap<(usize, PointSet), Option<(usize, PointSet)>>;

/// Exhaustive check at one δ: is every window of half-length `l` traced?
fn ssp_probe(graph: &StepGraph, sets: &TracingSets<'_>, l: usize, budget: Option<u64>, states: &mut u64) -> SspProbe {
    let n = graph.len();
    for x0 in 0..n {
        let forward = match layers(graph, sets, x0, l, true, budget, states) {
            Some(f) => f,
            None => return SspProbe::Unknown,
        };
        let backward = match layers(graph, sets, x0, l, false, budget, states) {
            Some(b) => b,
            None => return SspProbe::Unknown,
        };
        let (last_f, last_b) = (&forward[l], &backward[l]);
        let mut fs: Vec<&(usize, PointSet)> = last_f.keys().collect();
        let mut bs: Vec<&(usize, PointSet)> = last_b.keys().collect();
        fs.sort();
        bs.sort();
        for f in &fs {
            if let Some(b) = bs.iter().find(|b| !f.1.intersects(&b.1)) {
                let mut points = unwind(&backward, b);
                points.pop();
                points.extend(unwind(&forward, f).into_iter().rev());
                return SspProbe::Fails(SpoWindow::from_points(graph, points).expect("walk follows edges"));
            }
        }
    }
    SspProbe::Holds
}

/// Breadth-first layers of `(vertex, candidate tracers)` states from `x0`,
/// forward along edges or backward against them. `None` if the budget ran out.
fn layers(
    graph: &StepGraph,
    sets: &TracingSets<'_>,
    x0: usize,
    l: usize,
    forward: bool,
    budget: Option<u64>,
    states: &mut u64,
) -> Option<Vec<Layer>> {
    let n = graph.len();
    let start = if forward { sets.near[x0].clone() } else { PointSet::full(n) };
    let mut out: Vec<Layer> = vec![HashMap::from([((x0, start), None)])];
    for _ in 0..l {
        let mut next: Layer = HashMap::new();
        let mut keys: Vec<&(usize, PointSet)> = out.last().expect("nonempty").keys().collect();
        keys.sort();
        for key in keys {
            let (v, t) = key;
            let steps = if forward { graph.successors(*v) } else { graph.predecessors(*v) };
            for w in steps.iter() {
                let nt = t.intersection(sets.reach(w));
                next.entry((w, nt)).or_insert_with(|| Some(key.clone()));
            }
        }
        *states += next.len() as u64;
        if budget.is_some_and(|b| *states > b) {
            return None;
        }
        out.push(next);
    }
    Some(out)
}

/// Vertices from the last layer back to `x0` (last layer first).
fn unwind(layers: &[Layer], key: &(usize, PointSet)) -> Vec<usize> {
    let mut points = Vec::with_capacity(layers.len());
    let mut cur = key.clone();
    for layer in layers.iter().rev() {
        points.push(cur.0);
        match &layer[&cur] {
            Some(parent) => cur = parent.clone(),
            None => break,
        }
    }
    points
}

fn sample_probe(graph: &StepGraph, sets: &TracingSets<'_>, l: usize, seed: u64, samples: usize) -> SspProbe {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let mut points = vec![rng.random_range(0..graph.len())];
        for _ in 0..2 * l {
            let succ = graph.successors(*points.last().expect("nonempty")).to_vec();
            points.push(succ[rng.random_range(0..succ.len())]);
        }
        let w = SpoWindow::from_points(graph, points).expect("walk follows edges");
        if sets.trace(&w).is_none() {
            return SspProbe::Fails(w);
        }
    }
    SspProbe::Holds
}

/// Largest ladder δ at which every δ-SPO window of half-length `L` is
/// ε-sequentially traced by elements of `G_k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SspProfile {
    #[serde(with = "scalar::serde_text")]
    pub epsilon: Scalar,
    pub window: usize,
    pub horizon: usize,
    #[serde(with = "scalar::serde_text")]
    pub delta: Scalar,
    pub horizon_limited: bool,
    pub certificate: Certificate,
    pub counterexample: Option<SpoWindow>,
    #[serde(with = "scalar::serde_text_opt")]
    pub counterexample_delta: Option<Scalar>,
    pub states: u64,
}

pub fn ssp_profile(
    action: &GroupAction,
    epsilon: Scalar,
    l: usize,
    k: usize,
    semantics: Semantics,
    ladder: &ThresholdLadder,
    options: SspOptions,
) -> Result<SspProfile> {
    if !scalar::is_positive(&epsilon) || l == 0 {
        return Err(Error::InvalidParameter("epsilon must be positive and the window length at least 1".into()));
    }
    let ball = action.cayley_ball(k);
    let sets = TracingSets::new(action, &ball, epsilon, semantics);
    let values = ladder.values();
    let mut states = 0;
    let mut certificate = Certificate::Exact;
    let mut run = |delta: Scalar, certificate: &mut Certificate| -> SspProbe {
        if delta <= Scalar::default() {
            return SspProbe::Holds;
        }
        let graph = StepGraph::new(action, delta);
        let mut probe_states = 0;
        let outcome = ssp_probe(&graph, &sets, l, options.budget, &mut probe_states);
        states += probe_states;
        match outcome {
            SspProbe::Unknown => match options.seed {
                Some(seed) => {
                    *certificate = Certificate::Sampled;
                    sample_probe(&graph, &sets, l, seed, options.samples.max(1))
                }
                None => {
                    if *certificate == Certificate::Exact {
                        *certificate = Certificate::LowerBound;
                    }
                    SspProbe::Unknown
                }
            },
            other => other,
        }
    };
    let (mut lo, mut hi) = (0usize, values.len());
    let mut counterexample = None;
    let mut counterexample_delta = None;
    let top = values.len() - 1;
    let mut mid = top;
    loop {
        match run(values[mid], &mut certificate) {
            SspProbe::Holds => lo = mid,
            SspProbe::Fails(w) => {
                hi = mid;
                counterexample = Some(w);
                counterexample_delta = Some(values[mid]);
            }
            SspProbe::Unknown => {
                hi = mid;
                counterexample = None;
                counterexample_delta = None;
            }
        }
        if hi - lo <= 1 {
            break;
        }
        mid = (lo + hi) / 2;
    }
    Ok(SspProfile {
        epsilon,
        window: l,
        horizon: ball.radius(),
        delta: values[lo],
        horizon_limited: !ball.is_saturated(),
        certificate,
        counterexample,
        counterexample_delta,
        states,
    })
}
