//! Builds a few finite metric spaces and compares point sets in them.

use fgaction::scalar::{format, ratio};
use fgaction::{FiniteMetricSpace, PointSet};

fn main() -> fgaction::Result<()> {
    let torus = FiniteMetricSpace::torus_grid(5, ratio(1, 5))?;
    println!("torus: {} points, diameter {}", torus.len(), format(&torus.diameter()));
    println!("d((0,0), (4,4)) = {}", format(&torus.bounded_distance("(0,0)", "(4,4)")?));

    let cycle = FiniteMetricSpace::cycle(6, ratio(1, 6))?;
    let a = PointSet::from_indices(6, [0, 1]);
    let b = PointSet::from_indices(6, [3]);
    println!("set distance {}", format(&cycle.set_distance(&a, &b)?));
    println!("hausdorff distance {}", format(&cycle.hausdorff_distance(&a, &b)?));

    // Distance tables are validated: this one breaks the triangle inequality.
    let bad = vec![vec![ratio(0, 1), ratio(1, 4), ratio(1, 1)], vec![ratio(1, 4), ratio(0, 1), ratio(1, 4)], vec![ratio(1, 1), ratio(1, 4), ratio(0, 1)]];
    match FiniteMetricSpace::new(vec!["p".into(), "q".into(), "r".into()], bad) {
        Ok(_) => println!("accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
