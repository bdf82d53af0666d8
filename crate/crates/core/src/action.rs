//! Group actions on finite metric spaces and covering maps between them.

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{CayleyBall, GeneratorSystem, PresentedOrder, RealizedElement, Semantics, Word};
use crate::metric::FiniteMetricSpace;
use crate::perm::Perm;
use crate::pointset::PointSet;
use crate::scalar::{self, Scalar};

/// An action of a finitely generated group on a finite metric space, given by
/// one bijection per generator.
///
/// An action may carry *companion* tables: bijections of an auxiliary set,
/// one per generator, that take part in deciding when two words realize the
/// same element but never act on the space itself. They let two actions of
/// the same group share one realized group (for instance when comparing an
/// action with a perturbation of it, or a base action with its cover).
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAction {
    gens: GeneratorSystem,
    space: FiniteMetricSpace,
    maps: Vec<Perm>,
    companion: Vec<Perm>,
    commutative: bool,
}

impl GroupAction {
    /// Validates bijectivity, the inverse pairing and any declared relations.
    pub fn new(gens: GeneratorSystem, space: FiniteMetricSpace, maps: Vec<Perm>) -> Result<Self> {
        if maps.len() != gens.len() {
            return Err(Error::InvalidAction(format!(
                "{} generators but {} maps",
                gens.len(),
                maps.len()
            )));
        }
        for (s, m) in maps.iter().enumerate() {
            if m.len() != space.len() {
                return Err(Error::InvalidAction(format!(
                    "map of `{}` has {} entries, space has {} points",
                    gens.label(s),
                    m.len(),
                    space.len()
                )));
            }
        }
        for s in 0..gens.len() {
            let inv = gens.inverse_of(s);
            if !maps[s].compose(&maps[inv]).is_identity() {
                return Err(Error::InvalidAction(format!(
                    "map of `{}` is not the inverse of the map of `{}`",
                    gens.label(inv),
                    gens.label(s)
                )));
            }
        }
        let commutative = commutes(&maps);
        let action = GroupAction { gens, space, maps, companion: Vec::new(), commutative };
        for (lhs, rhs) in action.gens.relations() {
            if action.word_map(lhs) != action.word_map(rhs) {
                return Err(Error::InvalidAction(format!(
                    "relation {} = {} does not hold",
                    lhs.display(&action.gens),
                    rhs.display(&action.gens)
                )));
            }
        }
        Ok(action)
    }

    /// The action in which every generator acts as the identity.
    pub fn trivial(gens: GeneratorSystem, space: FiniteMetricSpace) -> Result<Self> {
        let maps = vec![Perm::identity(space.len()); gens.len()];
        GroupAction::new(gens, space, maps)
    }

    pub fn generators(&self) -> &GeneratorSystem {
        &self.gens
    }

    pub fn space(&self) -> &FiniteMetricSpace {
        &self.space
    }

    pub fn generator_map(&self, s: usize) -> &Perm {
        &self.maps[s]
    }

    pub fn maps(&self) -> &[Perm] {
        &self.maps
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn has_companion(&self) -> bool {
        !self.companion.is_empty()
    }

    /// Attaches companion tables (one bijection per generator, all on the
    /// same auxiliary set).
    pub fn with_companion(mut self, tables: Vec<Perm>) -> Result<Self> {
        if tables.len() != self.gens.len() {
            return Err(Error::InvalidAction("one companion table per generator is required".into()));
        }
        if tables.windows(2).any(|w| w[0].len() != w[1].len()) {
            return Err(Error::InvalidAction("companion tables have different lengths".into()));
        }
        self.companion = tables;
        Ok(self)
    }

    /// Same action, sharing its realized group with `other` (which must use
    /// the same generator labels in the same order).
    pub fn joined_with(&self, other: &GroupAction) -> Result<Self> {
        if self.gens.labels() != other.gens.labels() {
            return Err(Error::GeneratorMismatch(format!(
                "{:?} vs {:?}",
                self.gens.labels(),
                other.gens.labels()
            )));
        }
        let tables = (0..self.gens.len())
            .map(|s| other.maps[s].concat(other.companion.get(s).unwrap_or(&Perm::identity(0))))
            .collect();
        let mut joined = self.clone();
        joined.companion.clear();
        let joined = joined.with_companion(tables)?;
        Ok(joined)
    }

    pub fn without_companion(&self) -> Self {
        let mut a = self.clone();
        a.companion.clear();
        a
    }

    /// Tables on the space followed by the companion set.
    pub(crate) fn joint_tables(&self) -> Vec<Perm> {
        if self.companion.is_empty() {
            return self.maps.clone();
        }
        self.maps.iter().zip(&self.companion).map(|(m, c)| m.concat(c)).collect()
    }

    /// Realized elements of word length at most `k`.
    pub fn cayley_ball(&self, k: usize) -> CayleyBall {
        CayleyBall::enumerate(&self.joint_tables(), k)
    }

    /// The whole realized group (always finite, since it is a group of
    /// permutations).
    pub fn group(&self) -> CayleyBall {
        CayleyBall::enumerate(&self.joint_tables(), usize::MAX)
    }

    /// Whether, under `semantics`, some non-identity group element acts as the
    /// identity on the space and companion set.
    pub fn kernel_nontrivial(&self, semantics: Semantics) -> bool {
        match (semantics, self.gens.order()) {
            (Semantics::Realized, _) | (_, PresentedOrder::Unknown) => false,
            (Semantics::Presented, PresentedOrder::Infinite) => true,
            (Semantics::Presented, PresentedOrder::Finite(n)) => n > self.group().len(),
        }
    }

    /// For each element of `ball`, whether it counts as a non-identity group
    /// element under `semantics`.
    pub fn non_identity_mask(&self, ball: &CayleyBall, semantics: Semantics) -> Vec<bool> {
        let kernel = self.kernel_nontrivial(semantics);
        ball.elements().iter().map(|e| kernel || !e.is_identity()).collect()
    }

    /// Point reached from `x` by the word `w` (the last letter acts first).
    pub fn evaluate(&self, w: &Word, x: usize) -> Result<usize> {
        self.space.check_index(x)?;
        Ok(w.letters().iter().rev().fold(x, |p, &s| self.maps[s].apply(p)))
    }

    pub fn evaluate_element(&self, g: &RealizedElement, x: usize) -> Result<usize> {
        self.space.check_index(x)?;
        Ok(g.apply(x))
    }

    /// Table of the word `w` on the space.
    pub fn word_map(&self, w: &Word) -> Perm {
        w.letters()
            .iter()
            .rev()
            .fold(Perm::identity(self.space.len()), |acc, &s| self.maps[s].compose(&acc))
    }

    /// The action `g ↦ (Φ_g)^m`; negative powers go through the inverse
    /// action. Declared relations are dropped since they need not survive.
    pub fn power_action(&self, m: i32) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroPower);
        }
        let power = |p: &Perm| {
            let q = p.pow(m.unsigned_abs());
            if m < 0 {
                q.inverse()
            } else {
                q
            }
        };
        let gens = strip_relations(&self.gens);
        let maps = self.maps.iter().map(power).collect();
        let companion = self.companion.iter().map(power).collect();
        let mut a = GroupAction::new(gens, self.space.clone(), maps)?;
        a.companion = companion;
        Ok(a)
    }

    pub fn inverse_action(&self) -> Self {
        self.power_action(-1).expect("-1 is a valid power")
    }

    /// `Ψ_s = h ∘ Φ_s ∘ h⁻¹` on `target`, for a bijection `h` from this space
    /// onto `target`.
    pub fn conjugate_action(&self, h: &Perm, target: FiniteMetricSpace) -> Result<Self> {
        if h.len() != self.space.len() || target.len() != self.space.len() {
            return Err(Error::NotBijective("conjugating map must be a bijection between the point sets".into()));
        }
        let h_inv = h.inverse();
        let maps = self.maps.iter().map(|m| h.compose(&m.compose(&h_inv))).collect();
        let mut a = GroupAction::new(self.gens.clone(), target, maps)?;
        a.companion = self.companion.clone();
        Ok(a)
    }

    /// The action restricted to an invariant subset. The original tables are
    /// kept as companions so the realized group does not shrink.
    pub fn restrict(&self, points: &PointSet) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        for m in &self.maps {
            if points.iter().any(|x| !points.contains(m.apply(x))) {
                return Err(Error::InvalidAction("subset is not invariant".into()));
            }
        }
        let (space, embedding) = self.space.subspace(points)?;
        let mut position = vec![usize::MAX; self.space.len()];
        for (i, &x) in embedding.iter().enumerate() {
            position[x] = i;
        }
        let maps = self
            .maps
            .iter()
            .map(|m| Perm::new(embedding.iter().map(|&x| position[m.apply(x)]).collect()))
            .collect::<Result<Vec<_>>>()?;
        let companion = self.joint_tables();
        let mut a = GroupAction::new(strip_relations(&self.gens), space, maps)?;
        a.companion = companion;
        Ok(a)
    }

    /// Disjoint union with another action of the same generators; points of
    /// different parts are at distance `gap`. Ids get `L.`/`R.` prefixes.
    pub fn disjoint_union(&self, other: &GroupAction, gap: Scalar) -> Result<Self> {
        if self.gens.labels() != other.gens.labels() {
            return Err(Error::GeneratorMismatch("disjoint union needs identical generators".into()));
        }
        let (n, m) = (self.space.len(), other.space.len());
        let ids = self
            .space
            .ids()
            .iter()
            .map(|id| format!("L.{id}"))
            .chain(other.space.ids().iter().map(|id| format!("R.{id}")))
            .collect();
        let space = FiniteMetricSpace::from_fn(ids, |i, j| match (i < n, j < n) {
            (true, true) => self.space.d(i, j),
            (false, false) => other.space.d(i - n, j - n),
            _ => gap,
        })?;
        let _ = m;
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.concat(b)).collect();
        GroupAction::new(strip_relations(&self.gens), space, maps)
    }

    /// Same action with every distance multiplied by `factor`.
    pub fn rescaled(&self, factor: Scalar) -> Result<Self> {
        let mut a = self.clone();
        a.space = self.space.scaled(factor)?;
        Ok(a)
    }

    /// Same maps on a different metric over the same point set.
    pub fn with_space(&self, space: FiniteMetricSpace) -> Result<Self> {
        if space.len() != self.space.len() {
            return Err(Error::InvalidAction("replacement space has a different size".into()));
        }
        let mut a = self.clone();
        a.space = space;
        Ok(a)
    }

    /// Same space with a different generator system and maps.
    pub fn with_generators(&self, gens: GeneratorSystem, maps: Vec<Perm>) -> Result<Self> {
        GroupAction::new(gens, self.space.clone(), maps)
    }
}

fn commutes(maps: &[Perm]) -> bool {
    maps.iter()
        .enumerate()
        .all(|(i, a)| maps[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
}

fn strip_relations(gens: &GeneratorSystem) -> GeneratorSystem {
    let labels = gens.labels();
    let pairs: Vec<(&str, &str)> = (0..gens.len())
        .filter(|&s| gens.inverse_of(s) > s)
        .map(|s| (labels[s].as_str(), labels[gens.inverse_of(s)].as_str()))
        .collect();
    GeneratorSystem::new(&labels.iter().map(String::as_str).collect::<Vec<_>>(), &pairs)
        .expect("labels were already valid")
        .with_order(gens.order())
}

/// A surjection from a cover space onto a base space, locally isometric below
/// `delta0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoveringMap {
    projection: Vec<usize>,
    delta0: Scalar,
}

/// Outcome of [`validate_cover`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverReport {
    pub surjective: bool,
    /// Base points with no preimage.
    pub missed: Vec<usize>,
    /// Cover points `y` whose `delta0`-ball is not carried isometrically onto
    /// the `delta0`-ball of `π(y)`, with a short reason.
    pub local_isometry_violations: Vec<(usize, String)>,
    /// `(generator label, y)` with `π(Ψ_s y) ≠ Φ_s(π y)`.
    pub equivariance_violations: Vec<(String, usize)>,
}

impl CoverReport {
    pub fn is_valid(&self) -> bool {
        self.surjective && self.local_isometry_violations.is_empty() && self.equivariance_violations.is_empty()
    }
}

impl CoveringMap {
    pub fn new(projection: Vec<usize>, delta0: Scalar) -> Result<Self> {
        if !scalar::is_positive(&delta0) {
            return Err(Error::InvalidParameter("delta0 must be positive".into()));
        }
        Ok(CoveringMap { projection, delta0 })
    }

    pub fn identity(space: &FiniteMetricSpace) -> Self {
        let delta0 = space.resolution().unwrap_or_else(Scalar::one);
        CoveringMap { projection: (0..space.len()).collect(), delta0 }
    }

    pub fn delta0(&self) -> Scalar {
        self.delta0
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    #[inline]
    pub fn project_point(&self, y: usize) -> usize {
        self.projection[y]
    }

    /// Base and cover actions sharing one realized group. Their Cayley balls
    /// list corresponding elements at equal indices, so pseudo-orbits can be
    /// moved between them entry by entry.
    pub fn joint_actions(&self, base: &GroupAction, cover: &GroupAction) -> Result<(GroupAction, GroupAction)> {
        Ok((base.joined_with(cover)?, cover.joined_with(base)?))
    }
}

/// Checks surjectivity, local isometry below `delta0` and equivariance.
pub fn validate_cover(pi: &CoveringMap, base: &GroupAction, cover: &GroupAction) -> Result<CoverReport> {
    let (x, y) = (base.space(), cover.space());
    if pi.projection.len() != y.len() {
        return Err(Error::InvalidParameter(format!(
            "projection has {} entries, cover has {} points",
            pi.projection.len(),
            y.len()
        )));
    }
    for &p in &pi.projection {
        x.check_index(p)?;
    }
    if base.generators().labels() != cover.generators().labels() {
        return Err(Error::GeneratorMismatch("base and cover use different generators".into()));
    }
    let mut hit = PointSet::empty(x.len());
    for &p in &pi.projection {
        hit.insert(p);
    }
    let missed: Vec<usize> = (0..x.len()).filter(|&p| !hit.contains(p)).collect();
    let mut local_isometry_violations = Vec::new();
    for c in 0..y.len() {
        let ball = y.open_ball(c, &pi.delta0);
        if let Some((a, b)) = ball
            .iter()
            .flat_map(|a| ball.iter().map(move |b| (a, b)))
            .find(|&(a, b)| x.d(pi.projection[a], pi.projection[b]) != y.d(a, b))
        {
            local_isometry_violations.push((c, format!("distance of {} and {} is not preserved", y.id(a), y.id(b))));
            continue;
        }
        let image = PointSet::from_indices(x.len(), ball.iter().map(|a| pi.projection[a]));
        if image != x.open_ball(pi.projection[c], &pi.delta0) {
            local_isometry_violations.push((c, "ball is not mapped onto the base ball".to_string()));
        }
    }
    let mut equivariance_violations = Vec::new();
    for s in 0..base.generators().len() {
        for p in 0..y.len() {
            if pi.projection[cover.generator_map(s).apply(p)] != base.generator_map(s).apply(pi.projection[p]) {
                equivariance_violations.push((base.generators().label(s).to_string(), p));
            }
        }
    }
    Ok(CoverReport { surjective: missed.is_empty(), missed, local_isometry_violations, equivariance_violations })
}
