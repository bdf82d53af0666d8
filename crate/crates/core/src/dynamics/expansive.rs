//! Separation of point pairs, expansive constants and generator covers.
//!
//! The orbit of a pair `(x, y)` under the diagonal action is a connected
//! component of the pair graph `(x, y) → (Φ_s x, Φ_s y)`; since the
//! generating set is symmetric and every map is a bijection, a breadth-first
//! search from `(x, y)` reaches exactly `{(Φ_g x, Φ_g y) : g ∈ G}` and then
//! stops. All "for some g ∈ G" quantifiers over pairs are read off these
//! closures.

use std::collections::VecDeque;

use serde::Serialize;

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::pointset::PointSet;
use crate::scalar::{self, Scalar};

/// `sep(x, y) = max_g d(Φ_g x, Φ_g y)` for all ordered pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparationTable {
    n: usize,
    sep: Vec<Scalar>,
    exact: Vec<bool>,
    /// Pair-orbit id of every ordered pair.
    orbit: Vec<usize>,
    orbits: usize,
}

impl SeparationTable {
    #[inline]
    pub fn sep(&self, x: usize, y: usize) -> Scalar {
        self.sep[x * self.n + y]
    }

    pub fn is_exact(&self, x: usize, y: usize) -> bool {
        self.exact[x * self.n + y]
    }

    pub fn all_exact(&self) -> bool {
        self.exact.iter().all(|&e| e)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Index of the pair orbit containing `(x, y)`.
    pub fn orbit_of(&self, x: usize, y: usize) -> usize {
        self.orbit[x * self.n + y]
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits
    }

    /// Members of every pair orbit, in discovery order.
    pub fn pair_orbits(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.orbits];
        for x in 0..self.n {
            for y in 0..self.n {
                out[self.orbit_of(x, y)].push((x, y));
            }
        }
        out
    }
}

/// Pair-orbit closure for every pair. `budget` caps the number of pairs a
/// single closure may visit; a capped closure yields a certified lower bound
/// with `exact = false`.
pub fn separation_table(action: &GroupAction, budget: Option<u64>) -> SeparationTable {
    let space = action.space();
    let n = space.len();
    let unset = usize::MAX;
    let mut orbit = vec![unset; n * n];
    let mut sep = vec![Scalar::default(); n * n];
    let mut exact = vec![true; n * n];
    let mut orbits = 0;
    for start in 0..n * n {
        if orbit[start] != unset {
            continue;
        }
        let id = orbits;
        orbits += 1;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        orbit[start] = id;
        let mut best = space.d(start / n, start % n);
        let mut complete = true;
        while let Some(p) = queue.pop_front() {
            let (x, y) = (p / n, p % n);
            for m in action.maps() {
                let q = m.apply(x) * n + m.apply(y);
                if orbit[q] == unset {
                    if budget.is_some_and(|b| members.len() as u64 >= b) {
                        complete = false;
                        continue;
                    }
                    orbit[q] = id;
                    members.push(q);
                    queue.push_back(q);
                    best = scalar::max(best, space.d(q / n, q % n));
                }
            }
        }
        for &p in &members {
            sep[p] = best;
            exact[p] = complete;
        }
    }
    SeparationTable { n, sep, exact, orbit, orbits }
}

/// The minimum separation `m = min_{x≠y} sep(x, y)`: every `e < m` is an
/// expansive constant. `None` for a one-point space.
pub fn expansive_constant(table: &SeparationTable) -> Result<Option<Scalar>> {
    let n = table.len();
    let mut best: Option<Scalar> = None;
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            if !table.is_exact(x, y) {
                return Err(Error::InexactSeparation(x, y));
            }
            let s = table.sep(x, y);
            best = Some(best.map_or(s, |b| scalar::min(b, s)));
        }
    }
    Ok(best.filter(scalar::is_positive))
}

/// Open balls of radius `r` around every point.
pub fn ball_cover(space: &FiniteMetricSpace, r: &Scalar) -> Vec<PointSet> {
    space.open_balls(r)
}

/// Verdict of [`is_generator`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorVerdict {
    pub is_generator: bool,
    /// A pair `x ≠ y` whose whole orbit stays jointly inside cover members.
    pub inseparable_pair: Option<(usize, usize)>,
    pub weak: bool,
}

fn check_cover(n: usize, cover: &[PointSet]) -> Result<()> {
    for x in 0..n {
        if !cover.iter().any(|u| u.contains(x)) {
            return Err(Error::NotACover(x));
        }
    }
    Ok(())
}

fn jointly_covered(cover: &[PointSet], x: usize, y: usize) -> bool {
    cover.iter().any(|u| u.contains(x) && u.contains(y))
}

/// Whether `cover` is a generator: no two distinct points have their whole
/// joint orbit inside cover members. On a finite space closures are trivial,
/// so the weak and plain notions coincide and `weak` is only echoed back.
pub fn is_generator(action: &GroupAction, table: &SeparationTable, cover: &[PointSet], weak: bool) -> Result<GeneratorVerdict> {
    let n = action.space().len();
    check_cover(n, cover)?;
    let orbits = table.pair_orbits();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            if !table.is_exact(x, y) {
                return Err(Error::InexactSeparation(x, y));
            }
            let members = &orbits[table.orbit_of(x, y)];
            if members.iter().all(|&(a, b)| jointly_covered(cover, a, b)) {
                return Ok(GeneratorVerdict { is_generator: false, inseparable_pair: Some((x, y)), weak });
            }
        }
    }
    Ok(GeneratorVerdict { is_generator: true, inseparable_pair: None, weak })
}

/// Smallest distance of a pair not jointly contained in any member, i.e. the
/// largest `L` such that every pair at distance `< L` lies in one member.
/// `None` if every pair is jointly covered.
pub fn pair_lebesgue_number(space: &FiniteMetricSpace, cover: &[PointSet]) -> Option<Scalar> {
    let n = space.len();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| !jointly_covered(cover, x, y))
        .map(|(x, y)| space.d(x, y))
        .min()
}

/// One row of [`generator_consistency`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverScale {
    #[serde(with = "scalar::serde_text")]
    pub radius: Scalar,
    pub is_generator: bool,
    /// `2r ≤ m`, which forces the ball cover to be a generator.
    pub forced_by_separation: bool,
    #[serde(with = "scalar::serde_text_opt")]
    pub pair_lebesgue: Option<Scalar>,
    /// The implications `2r ≤ m ⇒ generator` and
    /// `generator ⇒ m ≥ pair Lebesgue number` both hold.
    pub consistent: bool,
}

/// Ball-cover generator verdicts at each radius, cross-checked against the
/// minimum separation `m`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorConsistency {
    #[serde(with = "scalar::serde_text_opt")]
    pub min_separation: Option<Scalar>,
    pub scales: Vec<CoverScale>,
    /// Some radius yields a generator.
    pub admits_generator: bool,
    /// `admits_generator` agrees with the existence of an expansive constant
    /// and every scale is consistent.
    pub agrees: bool,
}

pub fn generator_consistency(action: &GroupAction, radii: &[Scalar]) -> Result<GeneratorConsistency> {
    let table = separation_table(action, None);
    let m = expansive_constant(&table)?;
    let space = action.space();
    let mut scales = Vec::new();
    for r in radii.iter().filter(|r| scalar::is_positive(r)) {
        let cover = ball_cover(space, r);
        let verdict = is_generator(action, &table, &cover, false)?;
        let forced = m.is_some_and(|m| *r * scalar::int(2) <= m);
        let lebesgue = pair_lebesgue_number(space, &cover);
        let necessary = !verdict.is_generator || space.len() < 2 || match (m, lebesgue) {
            (Some(m), Some(l)) => m >= l,
            _ => false,
        };
        scales.push(CoverScale {
            radius: *r,
            is_generator: verdict.is_generator,
            forced_by_separation: forced,
            pair_lebesgue: lebesgue,
            consistent: (!forced || verdict.is_generator) && necessary,
        });
    }
    let admits_generator = scales.iter().any(|s| s.is_generator);
    let expansive = m.is_some() || space.len() < 2;
    let agrees = admits_generator == expansive && scales.iter().all(|s| s.consistent);
    Ok(GeneratorConsistency { min_separation: m, scales, admits_generator, agrees })
}

/// Smallest `n` such that every `y` with `max_{g ∈ G_n} d(Φ_g x, Φ_g y) ≤ c`
/// satisfies `d(x, y) < ε`.
pub fn separation_horizon(action: &GroupAction, x: usize, epsilon: Scalar, c: Scalar) -> Result<usize> {
    action.space().check_index(x)?;
    if !scalar::is_positive(&epsilon) || !scalar::is_positive(&c) {
        return Err(Error::InvalidParameter("epsilon and c must be positive".into()));
    }
    let space = action.space();
    let group = action.group();
    // Layer at which each element first appears.
    let mut worst = vec![Scalar::default(); space.len()];
    let mut radius = 0;
    loop {
        for e in group.elements().iter().filter(|e| e.length() == radius) {
            for (y, w) in worst.iter_mut().enumerate() {
                *w = scalar::max(*w, space.d(e.apply(x), e.apply(y)));
            }
        }
        let holds = (0..space.len()).all(|y| worst[y] > c || space.d(x, y) < epsilon);
        if holds {
            return Ok(radius);
        }
        let max_len = group.elements().iter().map(|e| e.length()).max().unwrap_or(0);
        if radius >= max_len {
            return Err(Error::HorizonLimited { radius, elements: group.len() });
        }
        radius += 1;
    }
}
