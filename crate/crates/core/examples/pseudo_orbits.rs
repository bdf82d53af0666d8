//! Enumerates δ-pseudo-orbits of the reflection action on the integers and
//! measures how far each is from a true orbit.

use fgaction::chain::ThresholdLadder;
use fgaction::dynamics::{enumerate_pseudo_orbits, pseudo_orbit_defect, trace_search, Anchor};
use fgaction::fixtures;
use fgaction::scalar::format;

fn main() -> fgaction::Result<()> {
    let a = fixtures::load("FLIP")?.action;
    let ball = a.cayley_ball(1);
    for delta in ThresholdLadder::for_action(&a).probes() {
        let all = enumerate_pseudo_orbits(&a, &ball, delta, &[], None)?;
        println!("δ = {}: {} pseudo-orbits", format(&delta), all.len());
    }
    let delta = ThresholdLadder::for_action(&a).max();
    let anchor = Anchor { element: ball.identity(), point: a.space().index_of("0")? };
    for f in enumerate_pseudo_orbits(&a, &ball, delta, &[anchor], None)?.iter().take(4) {
        let ids: Vec<&str> = f.points().iter().map(|&p| a.space().id(p)).collect();
        let defect = pseudo_orbit_defect(&a, &ball, f)?;
        let trace = trace_search(&a, &ball, f, delta).map(|t| a.space().id(t.tracer).to_string());
        println!("  {ids:?} defect {} traced by {:?}", format(&defect), trace);
    }
    Ok(())
}
