//! Pseudo-orbits over Cayley balls and their exhaustive enumeration.
//!
//! Enumeration is a constraint search: one variable per ball element, domain
//! the point set, and one binary constraint `d(Φ_s f(g), f(sg)) < δ` per
//! Cayley edge inside the ball. Variables are assigned in ball order with
//! values in point order, maintaining arc consistency after every choice.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::group::CayleyBall;
use crate::pointset::PointSet;
use crate::scalar::{self, Scalar};

/// A map from the elements of a Cayley ball (by ball index) to points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PseudoOrbit {
    horizon: usize,
    points: Vec<usize>,
}

impl PseudoOrbit {
    pub fn new(ball: &CayleyBall, points: Vec<usize>) -> Result<Self> {
        if points.len() != ball.len() {
            return Err(Error::IncompleteAssignment { expected: ball.len(), got: points.len() });
        }
        Ok(PseudoOrbit { horizon: ball.radius(), points })
    }

    /// The exact orbit `g ↦ Φ_g(x)`.
    pub fn exact(ball: &CayleyBall, x: usize) -> Self {
        PseudoOrbit { horizon: ball.radius(), points: ball.elements().iter().map(|g| g.apply(x)).collect() }
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    #[inline]
    pub fn point(&self, g: usize) -> usize {
        self.points[g]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Composes with a point map (used to move pseudo-orbits between spaces).
    pub fn map_points(&self, f: impl Fn(usize) -> usize) -> Self {
        PseudoOrbit { horizon: self.horizon, points: self.points.iter().map(|&p| f(p)).collect() }
    }
}

/// Largest edge defect `d(Φ_s f(g), f(sg))` over Cayley edges inside the ball;
/// 0 when the ball has no edges. `f` is a δ-pseudo-orbit iff this is `< δ`.
pub fn pseudo_orbit_defect(action: &GroupAction, ball: &CayleyBall, f: &PseudoOrbit) -> Result<Scalar> {
    if f.len() != ball.len() {
        return Err(Error::IncompleteAssignment { expected: ball.len(), got: f.len() });
    }
    for &p in f.points() {
        action.space().check_index(p)?;
    }
    let space = action.space();
    Ok(ball
        .edges()
        .map(|(g, s, h)| space.d(action.generator_map(s).apply(f.point(g)), f.point(h)))
        .max()
        .unwrap_or_default())
}

/// A required value `f(element) = point`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Anchor {
    pub element: usize,
    pub point: usize,
}

/// How an enumeration ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchEnd {
    /// Every solution was visited.
    Exhausted,
    /// The visitor asked to stop.
    Stopped,
    /// The node budget ran out first.
    BudgetExceeded,
}

/// Counters from a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchStats {
    pub end: SearchEnd,
    pub nodes: u64,
}

/// Constraint model of the δ-pseudo-orbits on one Cayley ball.
pub struct PseudoOrbitSearch<'a> {
    ball: &'a CayleyBall,
    n: usize,
    /// `forward[s][p]` = open δ-ball around `Φ_s(p)`.
    forward: Vec<Vec<PointSet>>,
    /// Outgoing `(s, sg)` and incoming `(s, g')` edges per element, self-loops excluded.
    out_edges: Vec<Vec<(usize, usize)>>,
    in_edges: Vec<Vec<(usize, usize)>>,
    initial: Vec<PointSet>,
    budget: Option<u64>,
    /// `tubes[g][x]` = open ε-ball around `Φ_g(x)`; set by [`Self::untraced_only`].
    tubes: Option<Vec<Vec<PointSet>>>,
}

impl<'a> PseudoOrbitSearch<'a> {
    pub fn new(action: &GroupAction, ball: &'a CayleyBall, delta: Scalar) -> Self {
        let space = action.space();
        let n = space.len();
        let near = space.open_balls(&delta);
        let forward: Vec<Vec<PointSet>> = action
            .maps()
            .iter()
            .map(|m| (0..n).map(|p| near[m.apply(p)].clone()).collect())
            .collect();
        let mut out_edges = vec![Vec::new(); ball.len()];
        let mut in_edges = vec![Vec::new(); ball.len()];
        let mut initial = vec![PointSet::full(n); ball.len()];
        for (g, s, h) in ball.edges() {
            if g == h {
                // Unary constraint d(Φ_s p, p) < δ.
                for p in 0..n {
                    if !forward[s][p].contains(p) {
                        initial[g].remove(p);
                    }
                }
            } else {
                out_edges[g].push((s, h));
                in_edges[h].push((s, g));
            }
        }
        PseudoOrbitSearch { ball, n, forward, out_edges, in_edges, initial, budget: None, tubes: None }
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    /// Restricts the search to pseudo-orbits that no point ε-traces; whole
    /// subtrees are skipped as soon as one point is certain to trace every
    /// completion.
    pub fn untraced_only(mut self, action: &GroupAction, epsilon: Scalar) -> Self {
        let balls = action.space().open_balls(&epsilon);
        self.tubes = Some(
            self.ball
                .elements()
                .iter()
                .map(|g| (0..self.n).map(|x| balls[g.apply(x)].clone()).collect())
                .collect(),
        );
        self
    }

    pub fn anchor(&mut self, anchor: Anchor) -> Result<()> {
        if anchor.point >= self.n {
            return Err(Error::PointOutOfRange { index: anchor.point, len: self.n });
        }
        let keep = self.initial[anchor.element].contains(anchor.point);
        self.initial[anchor.element] = PointSet::empty(self.n);
        if keep {
            self.initial[anchor.element].insert(anchor.point);
        }
        Ok(())
    }

    /// Calls `visit` on every solution in canonical order until it breaks.
    pub fn run(&self, mut visit: impl FnMut(&PseudoOrbit) -> ControlFlow<()>) -> SearchStats {
        let mut domains = self.initial.clone();
        let mut nodes = 0u64;
        let all: Vec<usize> = (0..domains.len()).collect();
        if !self.propagate(&mut domains, all) {
            return SearchStats { end: SearchEnd::Exhausted, nodes };
        }
        let end = self.descend(0, domains, &mut nodes, &mut visit);
        SearchStats { end, nodes }
    }

    /// Number of solutions (`None` if the budget ran out).
    pub fn count(&self) -> Option<u64> {
        let mut c = 0u64;
        let stats = self.run(|_| {
            c += 1;
            ControlFlow::Continue(())
        });
        (stats.end == SearchEnd::Exhausted).then_some(c)
    }

    /// First solution in canonical order, with the search outcome.
    pub fn first(&self) -> (Option<PseudoOrbit>, SearchStats) {
        let mut found = None;
        let stats = self.run(|f| {
            found = Some(f.clone());
            ControlFlow::Break(())
        });
        (found, stats)
    }

    fn descend(
        &self,
        var: usize,
        domains: Vec<PointSet>,
        nodes: &mut u64,
        visit: &mut impl FnMut(&PseudoOrbit) -> ControlFlow<()>,
    ) -> SearchEnd {
        if let Some(b) = self.budget {
            if *nodes >= b {
                return SearchEnd::BudgetExceeded;
            }
        }
        *nodes += 1;
        if self.surely_traced(&domains) {
            return SearchEnd::Exhausted;
        }
        if var == domains.len() {
            let points = domains.iter().map(|d| d.first().expect("consistent domains are nonempty")).collect();
            let f = PseudoOrbit { horizon: self.ball.radius(), points };
            return match visit(&f) {
                ControlFlow::Continue(()) => SearchEnd::Exhausted,
                ControlFlow::Break(()) => SearchEnd::Stopped,
            };
        }
        if domains[var].count() == 1 {
            return self.descend(var + 1, domains, nodes, visit);
        }
        for p in domains[var].to_vec() {
            let mut next = domains.clone();
            next[var] = PointSet::singleton(self.n, p);
            if !self.propagate(&mut next, vec![var]) {
                continue;
            }
            match self.descend(var + 1, next, nodes, visit) {
                SearchEnd::Exhausted => {}
                other => return other,
            }
        }
        SearchEnd::Exhausted
    }

    /// True if some point ε-traces every completion of `domains`.
    fn surely_traced(&self, domains: &[PointSet]) -> bool {
        let Some(tubes) = &self.tubes else { return false };
        (0..self.n).any(|x| domains.iter().enumerate().all(|(g, d)| d.is_subset(&tubes[g][x])))
    }

    /// Arc consistency; false if some domain empties.
    fn propagate(&self, domains: &mut [PointSet], seeds: Vec<usize>) -> bool {
        let mut queue: VecDeque<usize> = seeds.into();
        let mut queued = vec![false; domains.len()];
        for &v in &queue {
            queued[v] = true;
        }
        while let Some(v) = queue.pop_front() {
            queued[v] = false;
            for &(s, h) in &self.out_edges[v] {
                let mut support = PointSet::empty(self.n);
                for p in domains[v].iter() {
                    support.union_with(&self.forward[s][p]);
                }
                if self.shrink(domains, h, &support, &mut queue, &mut queued) {
                    return false;
                }
            }
            for &(s, g) in &self.in_edges[v] {
                let support = PointSet::from_indices(
                    self.n,
                    domains[g].iter().filter(|&p| self.forward[s][p].intersects(&domains[v])),
                );
                if self.shrink(domains, g, &support, &mut queue, &mut queued) {
                    return false;
                }
            }
        }
        true
    }

    /// Intersects `domains[v]` with `support`; returns true on wipe-out.
    fn shrink(
        &self,
        domains: &mut [PointSet],
        v: usize,
        support: &PointSet,
        queue: &mut VecDeque<usize>,
        queued: &mut [bool],
    ) -> bool {
        if domains[v].is_subset(support) {
            return false;
        }
        domains[v].intersect_with(support);
        if domains[v].is_empty() {
            return true;
        }
        if !queued[v] {
            queued[v] = true;
            queue.push_back(v);
        }
        false
    }
}

/// All δ-pseudo-orbits on `ball` that satisfy `anchors`, in canonical order.
pub fn enumerate_pseudo_orbits(
    action: &GroupAction,
    ball: &CayleyBall,
    delta: Scalar,
    anchors: &[Anchor],
    budget: Option<u64>,
) -> Result<Vec<PseudoOrbit>> {
    if !scalar::is_positive(&delta) {
        return Err(Error::InvalidParameter("delta must be positive".into()));
    }
    let mut search = PseudoOrbitSearch::new(action, ball, delta).with_budget(budget);
    for &a in anchors {
        search.anchor(a)?;
    }
    let mut out = Vec::new();
    let stats = search.run(|f| {
        out.push(f.clone());
        ControlFlow::Continue(())
    });
    match stats.end {
        SearchEnd::BudgetExceeded => Err(Error::BudgetExceeded { budget: budget.unwrap_or_default() }),
        _ => Ok(out),
    }
}
