//! Recovers a conjugacy from an approximate one. Ψ is the cat map moved by a
//! translation onto a torus whose metric is stretched by 1%, so the inverse
//! translation is only an approximate isometry; the shadowing construction
//! still produces an exact semiconjugacy.

use fgaction::gh::{equi_defect, iso_defect, synthesize_semiconjugacy, CandidateMap, StabilityParams};
use fgaction::scalar::{format, ratio};
use fgaction::{fixtures, Perm};

fn main() -> fgaction::Result<()> {
    let phi = fixtures::load("CAT5")?.action;
    let shift = Perm::new((0..25).map(|x| (x + 5) % 25).collect())?;
    let stretched = phi.space().scaled(ratio(101, 100))?;
    let psi = phi.conjugate_action(&shift, stretched)?;
    let i = CandidateMap { table: shift.inverse().table().to_vec() };
    println!(
        "input: iso defect {}, equivariance defect {}",
        format(&iso_defect(psi.space(), phi.space(), &i)),
        format(&equi_defect(&psi, &phi, &i)?)
    );
    let params = StabilityParams { epsilon: ratio(1, 4), eta: ratio(1, 40), budget: None };
    let s = synthesize_semiconjugacy(&phi, &psi, &i, params)?;
    println!("shadowing scale δ = {}, expansive constant {}", format(&s.delta), format(&s.expansive_constant));
    println!("residual {}, iso defect {} ≤ 2η+δ = {} < ε", format(&s.residual), format(&s.iso_defect), format(&s.bound));
    println!("certified: {}, unique tracers: {}", s.certified(), s.unique);
    Ok(())
}
