//! Gromov-Hausdorff distances between spaces and between actions, and the
//! semiconjugacy construction behind strong stability.

pub mod candidate;
pub mod search;
pub mod stability;

use serde::Serialize;

pub use candidate::{displacement, equi_defect, iso_defect, match_generators, CandidateMap};
pub use search::{min_equivariant_defect, min_iso_defect, Engine, GhOptions, MapOptimum};
pub use stability::{synthesize_semiconjugacy, Semiconjugacy, StabilityParams};

use crate::action::GroupAction;
use crate::error::Result;
use crate::metric::FiniteMetricSpace;
use crate::scalar::{self, Scalar};

/// A distance obtained as the larger of independent one-direction optima.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GhResult {
    #[serde(with = "scalar::serde_text")]
    pub value: Scalar,
    #[serde(with = "scalar::serde_text")]
    pub lower_bound: Scalar,
    pub exact: bool,
    /// One optimum per direction searched.
    pub directions: Vec<MapOptimum>,
    pub nodes: u64,
}

impl GhResult {
    fn from_directions(directions: Vec<MapOptimum>) -> Self {
        let value = directions.iter().map(|d| d.value).max().unwrap_or_default();
        let lower_bound = directions.iter().map(|d| d.lower_bound).max().unwrap_or_default();
        GhResult {
            value,
            lower_bound,
            exact: directions.iter().all(|d| d.exact),
            nodes: directions.iter().map(|d| d.nodes).sum(),
            directions,
        }
    }

    pub fn optimizers(&self) -> Vec<&CandidateMap> {
        self.directions.iter().filter_map(|d| d.optimizer.as_ref()).collect()
    }
}

/// `min_{i: X→Y, j: Y→X} max(iso_defect(i), iso_defect(j))`. The two maps
/// are independent, so this is the larger of the two directional minima.
pub fn gh_space_distance(x: &FiniteMetricSpace, y: &FiniteMetricSpace, options: GhOptions) -> GhResult {
    GhResult::from_directions(vec![min_iso_defect(x, y, options), min_iso_defect(y, x, options)])
}

/// `min_{i: Y→X} max(iso_defect(i), max_{s,y} d(Φ_s(i y), i(Ψ_s y)))` for Φ on
/// X and Ψ on Y.
pub fn strong_gh_distance(phi: &GroupAction, psi: &GroupAction, options: GhOptions) -> Result<GhResult> {
    Ok(GhResult::from_directions(vec![min_equivariant_defect(psi, phi, options)?]))
}

/// The symmetric distance computed twice: as the larger of the two strong
/// directions, and by a joint search over map pairs `(i, j)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ActionDistance {
    /// `max(strong(Φ, Ψ), strong(Ψ, Φ))`.
    pub by_directions: GhResult,
    /// Joint two-map optimum; absent if that search ran out of budget.
    #[serde(with = "scalar::serde_text_opt")]
    pub by_pairs: Option<Scalar>,
    pub pair_optimizers: Option<(CandidateMap, CandidateMap)>,
    pub pair_nodes: u64,
    /// Both values are known and equal.
    pub agree: bool,
}

impl ActionDistance {
    pub fn value(&self) -> Scalar {
        self.by_directions.value
    }

    pub fn exact(&self) -> bool {
        self.by_directions.exact
    }
}

pub fn gh_action_distance(phi: &GroupAction, psi: &GroupAction, options: GhOptions) -> Result<ActionDistance> {
    let by_directions =
        GhResult::from_directions(vec![min_equivariant_defect(psi, phi, options)?, min_equivariant_defect(phi, psi, options)?]);
    let (forward, backward) = search::shared_grid_pair(psi, phi)?;
    let pair = search::minimize_pair(&forward, &backward, options.budget);
    let by_pairs = pair.exact.then_some(pair.value);
    Ok(ActionDistance {
        agree: by_directions.exact && by_pairs == Some(by_directions.value),
        by_directions,
        by_pairs,
        pair_optimizers: pair.optimizers,
        pair_nodes: pair.nodes,
    })
}
