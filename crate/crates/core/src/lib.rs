//! Exact dynamics of finitely generated group actions on finite metric spaces.
//!
//! Group elements are realized as permutations of the points, distances are
//! exact rationals, and every "for all δ > 0" is evaluated on the finite
//! ladder of realized distances, so shadowing, expansivity, chain recurrence
//! and equivariant Gromov-Hausdorff distances are computed exactly rather
//! than approximated.

pub mod action;
pub mod chain;
pub mod document;
pub mod dynamics;
pub mod error;
pub mod fixtures;
pub mod gh;
pub mod group;
pub mod metric;
pub mod perm;
pub mod pointset;
pub mod report;
pub mod scalar;

pub use action::{validate_cover, CoverReport, CoveringMap, GroupAction};
pub use error::{Error, Result};
pub use group::{
    cayley_ball, word_length_constant, CayleyBall, GeneratorSystem, PresentedOrder, RealizedElement, Semantics, Word,
};
pub use metric::FiniteMetricSpace;
pub use perm::Perm;
pub use pointset::PointSet;
pub use scalar::Scalar;
