//! Grows Cayley balls of the cat map on the 5x5 torus until the realized
//! group saturates, printing each element with its shortest word.

use fgaction::fixtures;

fn main() -> fgaction::Result<()> {
    let a = fixtures::load("CAT5")?.action;
    let gens = a.generators();
    for k in 0..=4 {
        let ball = a.cayley_ball(k);
        println!("k = {k}: {} elements, saturated = {}", ball.len(), ball.is_saturated());
    }
    let group = a.group();
    println!("realized group: {} elements, radius {}", group.len(), group.radius());
    for g in group.elements().iter().take(8) {
        println!("  {:>6}  moves (0,1) to {}", g.witness().display(gens).to_string(), a.space().id(g.apply(1)));
    }
    Ok(())
}
