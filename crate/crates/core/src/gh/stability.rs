//! Building a semiconjugacy `h: Y → X` from an almost-equivariant
//! almost-isometry `i: Y → X` by tracing transported orbits.
//!
//! For each `y`, the map `g ↦ i(Ψ_g y)` is a pseudo-orbit of Φ over the group
//! generated jointly by both actions; `h(y)` is its tracing point.

use serde::Serialize;

use crate::action::GroupAction;
use crate::chain::ladder::ThresholdLadder;
use crate::dynamics::expansive::{expansive_constant, separation_table};
use crate::dynamics::pseudo_orbit::PseudoOrbit;
use crate::dynamics::shadowing::{shadowing_profile_on, trace_search, TraceResult};
use crate::error::{Error, Result};
use crate::gh::candidate::{equi_defect, iso_defect, match_generators, CandidateMap};
use crate::scalar::{self, ratio, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StabilityParams {
    #[serde(with = "scalar::serde_text")]
    pub epsilon: Scalar,
    #[serde(with = "scalar::serde_text")]
    pub eta: Scalar,
    /// Node budget for the shadowing profile.
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Semiconjugacy {
    pub h: CandidateMap,
    pub tracers: Vec<TraceResult>,
    /// Every tracer has runner-up radius at least half the expansive constant.
    pub unique: bool,
    #[serde(with = "scalar::serde_text")]
    pub expansive_constant: Scalar,
    /// Shadowing scale used: `min(profile δ at η, η)`.
    #[serde(with = "scalar::serde_text")]
    pub delta: Scalar,
    #[serde(with = "scalar::serde_text")]
    pub input_iso_defect: Scalar,
    #[serde(with = "scalar::serde_text")]
    pub input_equi_defect: Scalar,
    /// `max_{s,y} d(Φ_s(h y), h(Ψ_s y))`.
    #[serde(with = "scalar::serde_text")]
    pub residual: Scalar,
    #[serde(with = "scalar::serde_text")]
    pub iso_defect: Scalar,
    /// `2η + δ`.
    #[serde(with = "scalar::serde_text")]
    pub bound: Scalar,
    pub within_bound: bool,
    pub below_epsilon: bool,
}

impl Semiconjugacy {
    /// Residual zero, defect within `2η + δ` and `2η + δ < ε`.
    pub fn certified(&self) -> bool {
        self.residual == Scalar::default() && self.within_bound && self.below_epsilon
    }
}

/// `phi` acts on X and must be expansive; `psi` acts on Y with the same
/// generator labels; `i` maps Y to X.
pub fn synthesize_semiconjugacy(
    phi: &GroupAction,
    psi: &GroupAction,
    i: &CandidateMap,
    params: StabilityParams,
) -> Result<Semiconjugacy> {
    let half = ratio(1, 2);
    let StabilityParams { epsilon, eta, budget } = params;
    if !(scalar::is_positive(&epsilon) && epsilon < half && scalar::is_positive(&eta) && eta < half) {
        return Err(Error::InvalidParameter("epsilon and eta must lie in (0, 1/2)".into()));
    }
    let (nx, ny) = (phi.space().len(), psi.space().len());
    if i.table.len() != ny || i.table.iter().any(|&x| x >= nx) {
        return Err(Error::InvalidParameter("i must map every point of Y into X".into()));
    }
    // Same labels, same order, so the joint tables line up.
    let sigma = match_generators(phi.generators(), psi.generators())?;
    if sigma.iter().enumerate().any(|(s, &t)| s != t) {
        return Err(Error::GeneratorMismatch("generator labels must appear in the same order".into()));
    }
    let table = separation_table(phi, budget);
    let c = expansive_constant(&table)?
        .ok_or_else(|| Error::ShadowingMarginTooSmall("the action on X is not expansive".into()))?;
    if eta * 8 >= scalar::min(epsilon, c) {
        return Err(Error::ShadowingMarginTooSmall(format!(
            "eta = {} is not below min(epsilon, c)/8 with c = {}",
            scalar::format(&eta),
            scalar::format(&c)
        )));
    }

    let phi_j = phi.joined_with(psi)?;
    let group = phi_j.group();
    let ladder = ThresholdLadder::for_action(&phi_j);
    let profile = shadowing_profile_on(&phi_j, &group, eta, &ladder, budget)?;
    let delta = scalar::min(profile.delta, eta);
    if !scalar::is_positive(&delta) {
        return Err(Error::ShadowingMarginTooSmall("no positive shadowing scale at eta".into()));
    }
    let input_iso = iso_defect(psi.space(), phi.space(), i);
    let input_equi = equi_defect(psi, phi, i)?;
    if input_iso >= delta || input_equi >= delta {
        return Err(Error::ShadowingMarginTooSmall(format!(
            "defects of i ({}, {}) are not below delta = {}",
            scalar::format(&input_iso),
            scalar::format(&input_equi),
            scalar::format(&delta)
        )));
    }

    let mut tracers = Vec::with_capacity(ny);
    for y in 0..ny {
        let points = group.elements().iter().map(|g| i.apply(g.apply(nx + y) - nx)).collect();
        let f = PseudoOrbit::new(&group, points)?;
        let t = trace_search(&phi_j, &group, &f, eta).ok_or_else(|| {
            Error::ShadowingMarginTooSmall(format!("the transported orbit of {} is not traced", psi.space().id(y)))
        })?;
        tracers.push(t);
    }
    let h = CandidateMap { table: tracers.iter().map(|t| t.tracer).collect() };
    let unique = tracers.iter().all(|t| t.unique_at.is_some_and(|r| r * 2 >= c));
    let residual = equi_defect(psi, phi, &h)?;
    let iso = iso_defect(psi.space(), phi.space(), &h);
    let bound = eta * 2 + delta;
    Ok(Semiconjugacy {
        h,
        tracers,
        unique,
        expansive_constant: c,
        delta,
        input_iso_defect: input_iso,
        input_equi_defect: input_equi,
        residual,
        iso_defect: iso,
        within_bound: iso <= bound,
        below_epsilon: bound < epsilon,
        bound,
    })
}
