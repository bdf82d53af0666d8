//! Non-wandering points, transitivity, and fixed and periodic points.
//!
//! These quantify over every group element, so they run on the whole
//! realized group, which is always finite here.

use serde::Serialize;

use crate::action::GroupAction;
use crate::chain::ladder::ThresholdLadder;
use crate::error::{Error, Result};
use crate::group::Semantics;
use crate::pointset::PointSet;
use crate::scalar::{self, Scalar};

/// `{x : ∃ g ≠ e with Φ_g(U_ε(x)) ∩ U_ε(x) ≠ ∅}`.
pub fn nonwandering_set(action: &GroupAction, epsilon: Scalar, semantics: Semantics) -> Result<PointSet> {
    if !scalar::is_positive(&epsilon) {
        return Err(Error::InvalidParameter("epsilon must be positive".into()));
    }
    let space = action.space();
    let group = action.group();
    let allowed = action.non_identity_mask(&group, semantics);
    let balls = space.open_balls(&epsilon);
    Ok(PointSet::from_indices(
        space.len(),
        (0..space.len()).filter(|&x| {
            group
                .elements()
                .iter()
                .zip(&allowed)
                .filter(|(_, a)| **a)
                .any(|(g, _)| balls[x].iter().any(|p| balls[x].contains(g.apply(p))))
        }),
    ))
}

/// Intersection of [`nonwandering_set`] over all ladder probes; equals the
/// points returned exactly to themselves by some non-identity element.
pub fn nonwandering_core(action: &GroupAction, semantics: Semantics) -> Result<PointSet> {
    let ladder = ThresholdLadder::for_action(action);
    let mut core = PointSet::full(action.space().len());
    for eps in ladder.probes() {
        core.intersect_with(&nonwandering_set(action, eps, semantics)?);
    }
    Ok(core)
}

/// For every ordered pair of ε-balls `U, V`, some non-identity `g` has
/// `Φ_g(U) ∩ V ≠ ∅`.
pub fn is_transitive(action: &GroupAction, epsilon: Scalar, semantics: Semantics) -> Result<bool> {
    if !scalar::is_positive(&epsilon) {
        return Err(Error::InvalidParameter("epsilon must be positive".into()));
    }
    let space = action.space();
    let n = space.len();
    let group = action.group();
    let allowed = action.non_identity_mask(&group, semantics);
    let balls = space.open_balls(&epsilon);
    // reach[p] = points Φ_g(p) over allowed g.
    let reach: Vec<PointSet> = (0..n)
        .map(|p| {
            PointSet::from_indices(
                n,
                group.elements().iter().zip(&allowed).filter(|(_, a)| **a).map(|(g, _)| g.apply(p)),
            )
        })
        .collect();
    Ok((0..n).all(|x| {
        let mut image = PointSet::empty(n);
        for p in balls[x].iter() {
            image.union_with(&reach[p]);
        }
        (0..n).all(|y| image.intersects(&balls[y]))
    }))
}

/// Points fixed by every element of the `m`-th power action
/// (equivalently by every generator of it).
pub fn fixed_set(action: &GroupAction, m: i32) -> Result<PointSet> {
    let power = action.power_action(m)?;
    let n = action.space().len();
    Ok(PointSet::from_indices(n, (0..n).filter(|&x| power.maps().iter().all(|g| g.apply(x) == x))))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicPoint {
    pub point: usize,
    pub orbit_size: usize,
    /// Smallest `m` in the range with the point in `F(Φ^m)`.
    pub first_period: Option<i32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicReport {
    /// `(m, F(Φ^m))` for every `m` in the range.
    pub fixed_sets: Vec<(i32, Vec<usize>)>,
    pub points: Vec<PeriodicPoint>,
}

/// `F(Φ^m)` for each `m` in `range` (0 skipped), plus orbit sizes.
pub fn fixed_sets_and_periodic(action: &GroupAction, range: impl IntoIterator<Item = i32>) -> Result<PeriodicReport> {
    let n = action.space().len();
    let mut fixed_sets = Vec::new();
    for m in range.into_iter().filter(|&m| m != 0) {
        fixed_sets.push((m, fixed_set(action, m)?.to_vec()));
    }
    let group = action.group();
    let points = (0..n)
        .map(|x| {
            let orbit = PointSet::from_indices(n, group.elements().iter().map(|g| g.apply(x)));
            let first_period = fixed_sets
                .iter()
                .filter(|(m, _)| *m > 0)
                .find(|(_, f)| f.contains(&x))
                .map(|(m, _)| *m);
            PeriodicPoint { point: x, orbit_size: orbit.count(), first_period }
        })
        .collect();
    Ok(PeriodicReport { fixed_sets, points })
}
