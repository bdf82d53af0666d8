//! Moving pseudo-orbits through a locally isometric covering map.

use std::collections::VecDeque;

use crate::action::{CoveringMap, GroupAction};
use crate::dynamics::pseudo_orbit::{pseudo_orbit_defect, PseudoOrbit};
use crate::error::{Error, Result};
use crate::group::CayleyBall;
use crate::scalar::{self, Scalar};

/// Base and cover actions over one shared realized group, with index-aligned
/// Cayley balls of radius `k`.
#[derive(Clone, Debug)]
pub struct CoveringTransport {
    pi: CoveringMap,
    base: GroupAction,
    cover: GroupAction,
    base_ball: CayleyBall,
    cover_ball: CayleyBall,
}

impl CoveringTransport {
    pub fn new(pi: &CoveringMap, base: &GroupAction, cover: &GroupAction, k: usize) -> Result<Self> {
        let report = crate::action::validate_cover(pi, base, cover)?;
        if !report.is_valid() {
            return Err(Error::InvalidParameter(format!("not a covering map: {report:?}")));
        }
        let (base, cover) = pi.joint_actions(base, cover)?;
        let base_ball = base.cayley_ball(k);
        let cover_ball = cover.cayley_ball(k);
        debug_assert_eq!(base_ball.len(), cover_ball.len());
        Ok(CoveringTransport { pi: pi.clone(), base, cover, base_ball, cover_ball })
    }

    pub fn base(&self) -> &GroupAction {
        &self.base
    }

    pub fn cover(&self) -> &GroupAction {
        &self.cover
    }

    pub fn base_ball(&self) -> &CayleyBall {
        &self.base_ball
    }

    pub fn cover_ball(&self) -> &CayleyBall {
        &self.cover_ball
    }

    pub fn covering_map(&self) -> &CoveringMap {
        &self.pi
    }

    /// `π ∘ f`.
    pub fn project(&self, f: &PseudoOrbit) -> Result<PseudoOrbit> {
        if f.len() != self.cover_ball.len() {
            return Err(Error::IncompleteAssignment { expected: self.cover_ball.len(), got: f.len() });
        }
        Ok(f.map_points(|y| self.pi.project_point(y)))
    }

    /// Lifts a δ-pseudo-orbit of the base, δ < delta0. `t(e)` is `start` or
    /// the smallest preimage of `f(e)`; along a breadth-first spanning tree of
    /// the ball, `t(s g)` is the unique preimage of `f(s g)` within delta0 of
    /// `Ψ_s(t(g))`. Fails with `LiftObstructed` if a non-tree edge then
    /// violates the δ bound (a loop in the ball with nontrivial monodromy).
    pub fn lift(&self, f: &PseudoOrbit, delta: Scalar, start: Option<usize>) -> Result<PseudoOrbit> {
        let delta0 = self.pi.delta0();
        if delta >= delta0 {
            return Err(Error::DeltaTooLarge { delta, delta0 });
        }
        let defect = pseudo_orbit_defect(&self.base, &self.base_ball, f)?;
        if defect >= delta {
            return Err(Error::InvalidParameter(format!(
                "input has defect {}, not below delta = {}",
                scalar::format(&defect),
                scalar::format(&delta)
            )));
        }
        let space = self.cover.space();
        let preimages = |x: usize| (0..space.len()).filter(move |&y| self.pi.project_point(y) == x);
        let ball = &self.cover_ball;
        let e = ball.identity();
        let root = match start {
            Some(y) => {
                space.check_index(y)?;
                if self.pi.project_point(y) != f.point(e) {
                    return Err(Error::InvalidParameter(format!("{} does not lie over f(e)", space.id(y))));
                }
                y
            }
            None => preimages(f.point(e)).next().ok_or_else(|| Error::InvalidParameter("f(e) has no preimage".into()))?,
        };
        let mut t = vec![usize::MAX; ball.len()];
        t[e] = root;
        let mut queue = VecDeque::from([e]);
        while let Some(g) = queue.pop_front() {
            for s in 0..self.cover.generators().len() {
                let Some(h) = ball.left_mul(g, s) else { continue };
                if t[h] != usize::MAX {
                    continue;
                }
                let anchor = self.cover.generator_map(s).apply(t[g]);
                t[h] = preimages(f.point(h))
                    .find(|&y| space.d(anchor, y) < delta0)
                    .ok_or_else(|| Error::LiftObstructed(format!("no preimage near the image of element {h}")))?;
                queue.push_back(h);
            }
        }
        let lifted = PseudoOrbit::new(ball, t)?;
        let defect = pseudo_orbit_defect(&self.cover, ball, &lifted)?;
        if defect >= delta {
            return Err(Error::LiftObstructed(format!(
                "lifted defect {} is not below {}",
                scalar::format(&defect),
                scalar::format(&delta)
            )));
        }
        Ok(lifted)
    }
}
