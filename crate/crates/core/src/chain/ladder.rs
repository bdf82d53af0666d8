//! The finite set of thresholds at which δ-parameterized predicates change.
//!
//! Every predicate in the crate compares a realized distance `d(Φ_s x, y)`
//! strictly against a threshold, so its truth only changes when the threshold
//! crosses a realized value. Probing one point per open interval between
//! consecutive values (and one beyond the largest) therefore covers every
//! δ > 0 exactly.

use num_traits::{One, Zero};

use crate::action::GroupAction;
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdLadder {
    values: Vec<Scalar>,
}

impl ThresholdLadder {
    /// Distinct values of `d(Φ_s x, y)`, together with 0 and 1.
    pub fn for_action(action: &GroupAction) -> Self {
        let space = action.space();
        let mut values = vec![Scalar::zero(), Scalar::one()];
        for m in action.maps() {
            for x in 0..space.len() {
                let fx = m.apply(x);
                values.extend((0..space.len()).map(|y| space.d(fx, y)));
            }
        }
        Self::from_values(values)
    }

    /// An explicit list; 0 is always added.
    pub fn from_values(mut values: Vec<Scalar>) -> Self {
        values.push(Scalar::zero());
        values.retain(|v| *v >= Scalar::zero());
        values.sort();
        values.dedup();
        ThresholdLadder { values }
    }

    /// Sorted values, starting with 0.
    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn max(&self) -> Scalar {
        *self.values.last().expect("ladder contains 0")
    }

    /// Midpoints of consecutive values.
    pub fn midpoints(&self) -> Vec<Scalar> {
        self.values.windows(2).map(|w| scalar::midpoint(&w[0], &w[1])).collect()
    }

    /// One δ in every interval on which predicates are constant: all
    /// midpoints, then `max + 1`.
    pub fn probes(&self) -> Vec<Scalar> {
        let mut p = self.midpoints();
        p.push(self.max() + Scalar::one());
        p
    }

    /// Smallest probe, which lies below every positive realized distance.
    pub fn finest_probe(&self) -> Scalar {
        self.probes()[0]
    }
}
