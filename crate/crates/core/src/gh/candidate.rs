//! Candidate maps between spaces and their isometry and equivariance defects.
//! All defects use the bounded metrics `min(d, 1)`.

use num_traits::Zero;
use serde::Serialize;

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::group::GeneratorSystem;
use crate::metric::FiniteMetricSpace;
use crate::scalar::{self, Scalar};

/// A total map from source points to target points, by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CandidateMap {
    pub table: Vec<usize>,
}

impl CandidateMap {
    pub fn new(source: &FiniteMetricSpace, target: &FiniteMetricSpace, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::IncompleteAssignment { expected: source.len(), got: table.len() });
        }
        for &t in &table {
            target.check_index(t)?;
        }
        Ok(CandidateMap { table })
    }

    pub fn identity(n: usize) -> Self {
        CandidateMap { table: (0..n).collect() }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }
}

/// `max(d_H(i(X), Y), sup |d(i x1, i x2) − d(x1, x2)|)`.
pub fn iso_defect(source: &FiniteMetricSpace, target: &FiniteMetricSpace, i: &CandidateMap) -> Scalar {
    let coverage = (0..target.len())
        .map(|y| i.table.iter().map(|&t| target.bounded(y, t)).min().unwrap_or_default())
        .max()
        .unwrap_or_default();
    let n = source.len();
    let distortion = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .map(|(a, b)| scalar::abs_diff(&target.bounded(i.apply(a), i.apply(b)), &source.bounded(a, b)))
        .max()
        .unwrap_or_else(Scalar::zero);
    scalar::max(coverage, distortion)
}

/// For each generator of `source`, the index of the same label in `target`.
pub fn match_generators(source: &GeneratorSystem, target: &GeneratorSystem) -> Result<Vec<usize>> {
    if source.len() != target.len() {
        return Err(Error::GeneratorMismatch(format!(
            "{} generators vs {}",
            source.len(),
            target.len()
        )));
    }
    source
        .labels()
        .iter()
        .map(|l| target.index_of(l).map_err(|_| Error::GeneratorMismatch(format!("label `{l}` is missing"))))
        .collect()
}

/// `max_{s, x} d(Ψ_s(i x), i(Φ_s x))` for `i` from the space of `source` (Φ)
/// to the space of `target` (Ψ).
pub fn equi_defect(source: &GroupAction, target: &GroupAction, i: &CandidateMap) -> Result<Scalar> {
    let sigma = match_generators(source.generators(), target.generators())?;
    let space = target.space();
    Ok(sigma
        .iter()
        .enumerate()
        .flat_map(|(s, &t)| {
            (0..source.space().len()).map(move |x| {
                space.bounded(target.generator_map(t).apply(i.apply(x)), i.apply(source.generator_map(s).apply(x)))
            })
        })
        .max()
        .unwrap_or_default())
}

/// `d_S(Φ, Ψ) = max_{s, x} d(Φ_s x, Ψ_s x)` for two actions on one space.
pub fn displacement(a: &GroupAction, b: &GroupAction) -> Result<Scalar> {
    if a.space() != b.space() {
        return Err(Error::InvalidParameter("displacement needs both actions on the same space".into()));
    }
    equi_defect(a, b, &CandidateMap::identity(a.space().len()))
}
