//! Splits two disjoint rotations into invariant transitive classes and checks
//! the sequential shadowing hypothesis.

use fgaction::chain::{spectral_decomposition, SspOptions, WeakMode};
use fgaction::fixtures;
use fgaction::scalar::{format, int, ratio};
use fgaction::Semantics;

fn main() -> fgaction::Result<()> {
    let rot = fixtures::load("ROT")?.action;
    let two = rot.disjoint_union(&rot, int(1))?;
    let r = spectral_decomposition(&two, ratio(1, 12), ratio(1, 12), 2, usize::MAX, Semantics::Presented, WeakMode::CycleMembership, SspOptions::default())?;
    println!("sequential shadowing δ = {} ({:?})", format(&r.ssp.delta), r.ssp.certificate);
    for c in &r.decomposition.classes {
        let ids: Vec<&str> = c.points.iter().map(|&p| two.space().id(p)).collect();
        println!("class {ids:?}: invariant {} transitive {}", c.invariant, c.transitive);
    }
    println!("verified: {}", r.verified());
    Ok(())
}
