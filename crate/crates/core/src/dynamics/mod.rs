//! Pseudo-orbits, shadowing, expansivity and recurrence.

pub mod covering;
pub mod expansive;
pub mod pseudo_orbit;
pub mod recurrence;
pub mod shadowing;

pub use covering::CoveringTransport;
pub use expansive::{
    ball_cover, expansive_constant, generator_consistency, is_generator, pair_lebesgue_number, separation_horizon,
    separation_table, GeneratorConsistency, GeneratorVerdict, SeparationTable,
};
pub use pseudo_orbit::{enumerate_pseudo_orbits, pseudo_orbit_defect, Anchor, PseudoOrbit, PseudoOrbitSearch, SearchEnd};
pub use recurrence::{fixed_set, fixed_sets_and_periodic, is_transitive, nonwandering_core, nonwandering_set};
pub use shadowing::{shadowing_profile, shadowing_profile_on, trace_search, tracing_radius, ShadowingProfile, TraceResult};
