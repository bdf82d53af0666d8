//! The pseudo-orbit relation `R_δ`, the weak-chain relation `WR_δ` and the
//! chain recurrent set.

use serde::Serialize;

use crate::action::GroupAction;
use crate::chain::ladder::ThresholdLadder;
use crate::chain::step_graph::StepGraph;
use crate::dynamics::pseudo_orbit::{Anchor, PseudoOrbit, PseudoOrbitSearch, SearchEnd};
use crate::error::{Error, Result};
use crate::group::{CayleyBall, Semantics};
use crate::pointset::PointSet;
use crate::scalar::{self, Scalar};

/// How `x WR_δ x` is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeakMode {
    /// `x WR_δ x` iff `x` lies on a cycle of the step graph.
    #[default]
    CycleMembership,
    /// Every point is weakly related to itself.
    Reflexive,
}

/// Verdict of [`weak_related`] with shortest chains both ways.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeakRelation {
    pub related: bool,
    pub forward: Option<Vec<usize>>,
    pub backward: Option<Vec<usize>>,
}

/// Mutual reachability in the δ-step graph.
pub fn weak_related(graph: &StepGraph, x: usize, y: usize, mode: WeakMode) -> WeakRelation {
    if x == y && mode == WeakMode::Reflexive {
        return WeakRelation { related: true, forward: Some(vec![x]), backward: Some(vec![x]) };
    }
    let forward = graph.shortest_chain(x, y);
    let backward = graph.shortest_chain(y, x);
    WeakRelation { related: forward.is_some() && backward.is_some(), forward, backward }
}

/// Whether every pair of points is weakly related.
pub fn is_weak_chain_transitive(graph: &StepGraph, mode: WeakMode) -> bool {
    let reach = graph.closure();
    let n = graph.len();
    (0..n).all(|x| (0..n).all(|y| (x == y && mode == WeakMode::Reflexive) || reach[x].contains(y)))
}

/// Outcome of a bounded existence search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    /// The node budget ran out before a decision.
    Unknown,
}

impl Verdict {
    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

/// Evaluates `x R_δ y` on one ball: some δ-pseudo-orbit on the ball takes the
/// value `x` at `h` and `y` at `h'` for distinct group elements `h, h'`.
pub struct ChainSearch<'a> {
    action: &'a GroupAction,
    ball: &'a CayleyBall,
    semantics: Semantics,
    kernel: bool,
    budget: Option<u64>,
}

/// Proof that `x R_δ y`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainWitness {
    pub h: usize,
    pub h_prime: usize,
    pub orbit: PseudoOrbit,
}

impl<'a> ChainSearch<'a> {
    pub fn new(action: &'a GroupAction, ball: &'a CayleyBall, semantics: Semantics, budget: Option<u64>) -> Self {
        let kernel = action.kernel_nontrivial(semantics);
        ChainSearch { action, ball, semantics, kernel, budget }
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    /// Anchor pairs `(h, h')` to try, in canonical order. On a saturated ball
    /// a pseudo-orbit can be translated (`f ↦ f(· a)`), so `h = e` suffices.
    fn anchor_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.ball.len();
        if self.ball.is_saturated() {
            (1..m).map(|h| (0, h)).collect()
        } else {
            (0..m).flat_map(|h| (0..m).filter(move |&k| k != h).map(move |k| (h, k))).collect()
        }
    }

    pub fn related(&self, delta: Scalar, x: usize, y: usize) -> Result<(Verdict, Option<ChainWitness>)> {
        if !scalar::is_positive(&delta) {
            return Err(Error::InvalidParameter("delta must be positive".into()));
        }
        self.action.space().check_index(x)?;
        self.action.space().check_index(y)?;
        // A nontrivial kernel supplies distinct elements acting identically,
        // so the exact orbit through x witnesses x R x.
        if x == y && self.kernel {
            let orbit = PseudoOrbit::exact(self.ball, x);
            return Ok((Verdict::Yes, Some(ChainWitness { h: 0, h_prime: 0, orbit })));
        }
        // Exact orbits first: they are the common case and need no search.
        for (h, k) in self.anchor_pairs() {
            let (eh, ek) = (self.ball.get(h), self.ball.get(k));
            // f(g) = Φ_g Φ_h⁻¹ x is exact with f(h) = x.
            if let Some(z) = (0..self.action.space().len()).find(|&z| eh.apply(z) == x) {
                if ek.apply(z) == y {
                    let orbit = PseudoOrbit::exact(self.ball, z);
                    return Ok((Verdict::Yes, Some(ChainWitness { h, h_prime: k, orbit })));
                }
            }
        }
        let mut unknown = false;
        for (h, k) in self.anchor_pairs() {
            let mut search = PseudoOrbitSearch::new(self.action, self.ball, delta).with_budget(self.budget);
            search.anchor(Anchor { element: h, point: x })?;
            search.anchor(Anchor { element: k, point: y })?;
            let (found, stats) = search.first();
            if let Some(orbit) = found {
                return Ok((Verdict::Yes, Some(ChainWitness { h, h_prime: k, orbit })));
            }
            if stats.end == SearchEnd::BudgetExceeded {
                unknown = true;
            }
        }
        Ok((if unknown { Verdict::Unknown } else { Verdict::No }, None))
    }
}

/// `x R_δ y` on `G_k`.
pub fn chain_related(
    action: &GroupAction,
    k: usize,
    delta: Scalar,
    x: usize,
    y: usize,
    semantics: Semantics,
    budget: Option<u64>,
) -> Result<Verdict> {
    let ball = action.cayley_ball(k);
    Ok(ChainSearch::new(action, &ball, semantics, budget).related(delta, x, y)?.0)
}

/// Chain recurrent points at one δ.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainRecurrence {
    #[serde(with = "scalar::serde_text")]
    pub delta: Scalar,
    pub points: Vec<usize>,
    /// Points whose verdict ran out of budget (counted as not recurrent).
    pub unknown: Vec<usize>,
}

/// `CR_δ = {x : x R_δ x}` on `G_k`.
pub fn chain_recurrent_set(
    action: &GroupAction,
    k: usize,
    delta: Scalar,
    semantics: Semantics,
    budget: Option<u64>,
) -> Result<ChainRecurrence> {
    let ball = action.cayley_ball(k);
    chain_recurrent_set_on(&ChainSearch::new(action, &ball, semantics, budget), delta)
}

pub fn chain_recurrent_set_on(search: &ChainSearch<'_>, delta: Scalar) -> Result<ChainRecurrence> {
    let mut points = Vec::new();
    let mut unknown = Vec::new();
    for x in 0..search.action.space().len() {
        match search.related(delta, x, x)?.0 {
            Verdict::Yes => points.push(x),
            Verdict::Unknown => unknown.push(x),
            Verdict::No => {}
        }
    }
    Ok(ChainRecurrence { delta, points, unknown })
}

/// `CR_δ` at every ladder probe and their intersection.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrCore {
    pub horizon: usize,
    pub horizon_limited: bool,
    pub core: Vec<usize>,
    pub profile: Vec<ChainRecurrence>,
    /// False if some verdict ran out of budget.
    pub exact: bool,
}

pub fn cr_core(
    action: &GroupAction,
    k: usize,
    semantics: Semantics,
    ladder: &ThresholdLadder,
    budget: Option<u64>,
) -> Result<CrCore> {
    let ball = action.cayley_ball(k);
    let search = ChainSearch::new(action, &ball, semantics, budget);
    let n = action.space().len();
    let mut core = PointSet::full(n);
    let mut profile = Vec::new();
    for delta in ladder.probes() {
        let cr = chain_recurrent_set_on(&search, delta)?;
        core.intersect_with(&PointSet::from_indices(n, cr.points.iter().copied()));
        profile.push(cr);
    }
    let exact = profile.iter().all(|p| p.unknown.is_empty());
    Ok(CrCore { horizon: ball.radius(), horizon_limited: !ball.is_saturated(), core: core.to_vec(), profile, exact })
}

/// Result of [`is_isolated_cr`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsolationReport {
    pub core: Vec<usize>,
    #[serde(with = "scalar::serde_text")]
    pub gamma: Scalar,
    pub neighborhood: Vec<usize>,
    /// `∩_g Φ_g(U)` over the whole realized group.
    pub invariant_part: Vec<usize>,
    pub isolated: bool,
    pub note: Option<String>,
}

/// Takes `U` = γ-neighborhood of the chain recurrent core (γ the finest ladder
/// probe) and compares `∩_g Φ_g(U)` with the core.
pub fn is_isolated_cr(action: &GroupAction, k: usize, semantics: Semantics, budget: Option<u64>) -> Result<IsolationReport> {
    let ladder = ThresholdLadder::for_action(action);
    let core = cr_core(action, k, semantics, &ladder, budget)?;
    let space = action.space();
    let n = space.len();
    let gamma = ladder.finest_probe();
    let mut neighborhood = PointSet::empty(n);
    for &x in &core.core {
        neighborhood.union_with(&space.open_ball(x, &gamma));
    }
    let group = action.group();
    let mut invariant = neighborhood.clone();
    for g in group.elements() {
        invariant.intersect_with(&PointSet::from_indices(n, neighborhood.iter().map(|p| g.apply(p))));
    }
    let note = if core.core.is_empty() {
        Some("chain recurrent core is empty; isolation holds vacuously".to_string())
    } else if group.len() == 1 {
        Some("the realized group has no non-identity element".to_string())
    } else {
        None
    };
    Ok(IsolationReport {
        isolated: invariant.to_vec() == core.core,
        core: core.core,
        gamma,
        neighborhood: neighborhood.to_vec(),
        invariant_part: invariant.to_vec(),
        note,
    })
}
