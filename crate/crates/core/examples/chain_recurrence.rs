//! Chain recurrent sets and weak-chain classes under both readings of
//! "non-identity element".

use fgaction::chain::{cr_core, is_weak_chain_transitive, weak_chain_classes, StepGraph, ThresholdLadder, WeakMode};
use fgaction::fixtures;
use fgaction::scalar::format;
use fgaction::Semantics;

fn main() -> fgaction::Result<()> {
    for name in ["ROT", "FLIP", "CAT3", "SOLV7_SHIFT"] {
        let a = fixtures::load(name)?.action;
        let ladder = ThresholdLadder::for_action(&a);
        for sem in [Semantics::Realized, Semantics::Presented] {
            let core = cr_core(&a, usize::MAX, sem, &ladder, None)?;
            println!("{name} {sem:?}: chain recurrent core {:?}", core.core);
        }
        let delta = ladder.finest_probe();
        let d = weak_chain_classes(&a, delta, delta, WeakMode::CycleMembership, Semantics::Presented)?;
        let classes: Vec<_> = d.classes.iter().map(|c| c.points.clone()).collect();
        let transitive = is_weak_chain_transitive(&StepGraph::new(&a, delta), WeakMode::CycleMembership);
        println!("  δ = {}: classes {classes:?}, weak-chain transitive {transitive}", format(&delta));
    }
    Ok(())
}
