//! Shadowing profiles: for each tracing scale ε, the largest ladder δ at which
//! every δ-pseudo-orbit on the ball is ε-traced.

use fgaction::chain::ThresholdLadder;
use fgaction::dynamics::shadowing_profile;
use fgaction::fixtures;
use fgaction::scalar::format;

fn main() -> fgaction::Result<()> {
    for name in ["ROT", "CAT3", "FLIP"] {
        let a = fixtures::load(name)?.action;
        let ladder = ThresholdLadder::for_action(&a);
        for k in [1, 2] {
            for epsilon in ladder.probes() {
                let p = shadowing_profile(&a, k, epsilon, &ladder, Some(2_000_000))?;
                println!(
                    "{name:5} k={k} ε={:>5}  δ={:>5}  exact={} nodes={}",
                    format(&epsilon),
                    format(&p.delta),
                    p.exact,
                    p.nodes
                );
            }
        }
    }
    Ok(())
}
