//! Moves pseudo-orbits between a 12-cycle and the 6-cycle it double covers.

use std::ops::ControlFlow;

use fgaction::dynamics::{CoveringTransport, PseudoOrbitSearch};
use fgaction::scalar::ratio;
use fgaction::{fixtures, validate_cover};

fn main() -> fgaction::Result<()> {
    let base = fixtures::load("DOUBLECOVER_BASE")?;
    let cover = fixtures::load("DOUBLECOVER_COVER")?;
    let pi = cover.covering.clone().expect("cover file has a covering section");
    println!("cover valid: {}", validate_cover(&pi, &base.action, &cover.action)?.is_valid());
    let delta = ratio(1, 8);
    for k in [1, 3, 5, usize::MAX] {
        let tr = CoveringTransport::new(&pi, &base.action, &cover.action, k)?;
        let (mut total, mut lifted, mut obstructed) = (0u64, 0u64, 0u64);
        PseudoOrbitSearch::new(tr.base(), tr.base_ball(), delta).run(|f| {
            total += 1;
            match tr.lift(f, delta, None) {
                Ok(l) if tr.project(&l).ok().as_ref() == Some(f) => lifted += 1,
                _ => obstructed += 1,
            }
            ControlFlow::Continue(())
        });
        println!("ball of {} elements: {total} pseudo-orbits, {lifted} round trips, {obstructed} obstructed", tr.base_ball().len());
    }
    Ok(())
}
