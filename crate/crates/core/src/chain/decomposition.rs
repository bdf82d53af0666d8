//! Weak-chain classes and the spectral decomposition.

use petgraph::algo::tarjan_scc;
use serde::Serialize;

use crate::action::GroupAction;
use crate::chain::ladder::ThresholdLadder;
use crate::chain::relation::WeakMode;
use crate::chain::sequential::{ssp_profile, Certificate, SspOptions, SspProfile};
use crate::chain::step_graph::StepGraph;
use crate::dynamics::recurrence::is_transitive;
use crate::error::{Error, Result};
use crate::group::Semantics;
use crate::pointset::PointSet;
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassReport {
    pub points: Vec<usize>,
    /// The class lies on a cycle of the step graph (always true in
    /// reflexive mode).
    pub recurrent: bool,
    /// Every generator maps the class into itself.
    pub invariant: bool,
    /// The restricted action is transitive at the class scale; false for
    /// non-invariant classes.
    pub transitive: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    #[serde(with = "scalar::serde_text")]
    pub delta: Scalar,
    #[serde(with = "scalar::serde_text")]
    pub transitivity_scale: Scalar,
    pub mode: WeakMode,
    pub classes: Vec<ClassReport>,
}

impl Decomposition {
    pub fn class_of(&self, x: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.points.contains(&x))
    }

    pub fn is_partition_of(&self, n: usize) -> bool {
        let mut seen = vec![0usize; n];
        for c in &self.classes {
            for &x in &c.points {
                if x >= n {
                    return false;
                }
                seen[x] += 1;
            }
        }
        seen.iter().all(|&c| c == 1)
    }
}

/// Strongly connected components of the δ-step graph as point classes,
/// sorted by smallest member.
pub fn weak_chain_components(graph: &StepGraph) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = tarjan_scc(&graph.to_digraph())
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|i| i.index()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    classes.sort();
    classes
}

fn is_invariant(action: &GroupAction, class: &PointSet) -> bool {
    action.maps().iter().all(|m| class.iter().all(|x| class.contains(m.apply(x))))
}

/// Classes of the weak-chain relation at δ, with invariance and transitivity
/// (at scale `epsilon`) of each restricted action.
pub fn weak_chain_classes(
    action: &GroupAction,
    delta: Scalar,
    epsilon: Scalar,
    mode: WeakMode,
    semantics: Semantics,
) -> Result<Decomposition> {
    if !scalar::is_positive(&delta) || !scalar::is_positive(&epsilon) {
        return Err(Error::InvalidParameter("delta and epsilon must be positive".into()));
    }
    let graph = StepGraph::new(action, delta);
    let n = action.space().len();
    let mut classes = Vec::new();
    for points in weak_chain_components(&graph) {
        let set = PointSet::from_indices(n, points.iter().copied());
        let recurrent = mode == WeakMode::Reflexive || points.len() > 1 || graph.has_edge(points[0], points[0]);
        let invariant = is_invariant(action, &set);
        let transitive = invariant && is_transitive(&action.restrict(&set)?, epsilon, semantics)?;
        classes.push(ClassReport { points, recurrent, invariant, transitive });
    }
    Ok(Decomposition { delta, transitivity_scale: epsilon, mode, classes })
}

/// Weak-chain classes at δ checked against the spectral decomposition
/// statement, with the sequential shadowing hypothesis evaluated at ε.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralReport {
    pub decomposition: Decomposition,
    pub ssp: SspProfile,
    /// `ssp.delta ≥ δ` with an exact certificate.
    pub hypothesis_established: bool,
    pub disjoint_cover: bool,
    pub all_invariant: bool,
    pub all_transitive: bool,
}

impl SpectralReport {
    /// Hypothesis established and every conclusion holds.
    pub fn verified(&self) -> bool {
        self.hypothesis_established && self.disjoint_cover && self.all_invariant && self.all_transitive
    }
}

#[allow(clippy::too_many_arguments)]
pub fn spectral_decomposition(
    action: &GroupAction,
    delta: Scalar,
    epsilon: Scalar,
    l: usize,
    k: usize,
    semantics: Semantics,
    mode: WeakMode,
    options: SspOptions,
) -> Result<SpectralReport> {
    let ladder = ThresholdLadder::for_action(action);
    let ssp = ssp_profile(action, epsilon, l, k, semantics, &ladder, options)?;
    let decomposition = weak_chain_classes(action, delta, epsilon, mode, semantics)?;
    let n = action.space().len();
    Ok(SpectralReport {
        hypothesis_established: ssp.delta >= delta && ssp.certificate == Certificate::Exact,
        disjoint_cover: decomposition.is_partition_of(n),
        all_invariant: decomposition.classes.iter().all(|c| c.invariant),
        all_transitive: decomposition.classes.iter().all(|c| c.transitive),
        decomposition,
        ssp,
    })
}
