//! Expansive constants, ball-cover generators and the effect of powers.

use fgaction::chain::ThresholdLadder;
use fgaction::dynamics::{expansive_constant, generator_consistency, separation_horizon, separation_table};
use fgaction::fixtures;
use fgaction::scalar::{format, ratio};

fn main() -> fgaction::Result<()> {
    for name in ["CAT3", "CAT5", "FLIP", "TRIV3"] {
        let a = fixtures::load(name)?.action;
        let c = expansive_constant(&separation_table(&a, None))?;
        println!("{name}: expansive constant {}", c.map_or("none".to_string(), |c| format(&c)));
        let check = generator_consistency(&a, &ThresholdLadder::for_action(&a).probes())?;
        for s in &check.scales {
            println!("  r = {:>5}: generator {}", format(&s.radius), s.is_generator);
        }
        for m in [-2, 2, 3] {
            let p = a.power_action(m)?;
            let cp = expansive_constant(&separation_table(&p, None))?;
            println!("  power {m}: {}", cp.map_or("none".to_string(), |c| format(&c)));
        }
    }
    let cat5 = fixtures::load("CAT5")?.action;
    let n = separation_horizon(&cat5, 0, ratio(1, 5), ratio(1, 5))?;
    println!("CAT5 separates (0,0) from every point within {n} letters");
    Ok(())
}
