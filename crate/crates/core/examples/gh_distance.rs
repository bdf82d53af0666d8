//! Gromov-Hausdorff distances between small spaces and between actions.

use fgaction::gh::{gh_action_distance, gh_space_distance, strong_gh_distance, GhOptions};
use fgaction::scalar::{format, ratio};
use fgaction::{FiniteMetricSpace, GeneratorSystem, GroupAction, Perm, PresentedOrder};

fn rotation(n: usize, step: usize) -> fgaction::Result<GroupAction> {
    let gens = GeneratorSystem::new(&["r", "R"], &[("r", "R")])?.with_order(PresentedOrder::Infinite);
    let r = Perm::new((0..n).map(|x| (x + step) % n).collect())?;
    GroupAction::new(gens, FiniteMetricSpace::cycle(n, ratio(1, n as i64))?, vec![r.clone(), r.inverse()])
}

fn main() -> fgaction::Result<()> {
    let opts = GhOptions::default();
    let pairs = [(4, 1, 3, 1), (5, 1, 5, 2), (6, 1, 5, 1), (4, 1, 4, 0)];
    for (n, s, m, t) in pairs {
        let (a, b) = (rotation(n, s)?, rotation(m, t)?);
        let space = gh_space_distance(a.space(), b.space(), opts);
        let strong = strong_gh_distance(&a, &b, opts)?;
        let both = gh_action_distance(&a, &b, opts)?;
        println!(
            "C{n}+{s} vs C{m}+{t}: spaces {}, strong {}, symmetric {} (pair search agrees: {})",
            format(&space.value),
            format(&strong.value),
            format(&both.value()),
            both.agree
        );
    }
    Ok(())
}
