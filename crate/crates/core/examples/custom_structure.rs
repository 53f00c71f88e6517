//! Build a Γ-hemiring from tables, write it in the JSON format the
//! command line reads, and load it back.

use gamma_hemiring::format::StructureFile;
use gamma_hemiring::limits::Limits;
use gamma_hemiring::operator::{build_operator, find_unity, Side};
use gamma_hemiring::structure::{boolean_semiring, matrix_gamma_hemiring, FiniteMonoid, GammaHemiring};
use gamma_hemiring::Result;

pub fn main() -> Result<()> {
    // Z3 acting on itself through a·γ·b, written out by hand.
    let labels: Vec<String> = ["0", "1", "2"].iter().map(|s| s.to_string()).collect();
    let z3 = FiniteMonoid::from_fn(labels, 0, |a, b| (a + b) % 3)?;
    let g = GammaHemiring::from_fn("Z3-by-hand", z3.clone(), z3, |a, x, b| a * x * b % 3)?.validated(16)?;
    let file = StructureFile::from_gamma_hemiring(&g);
    let text = file.to_json();
    let back = StructureFile::from_json(&text)?.to_gamma_hemiring()?;
    assert_eq!(back.action_table(), g.action_table());
    println!("{} round-trips through {} bytes of JSON", g.name(), text.len());

    let limits = Limits::default();
    let m = matrix_gamma_hemiring(&boolean_semiring(), 2, 1, &limits)?;
    println!("{}: S = {:?}", m.name(), m.s().labels());
    println!("{}: Γ = {:?}", m.name(), m.gamma().labels());
    let l = build_operator(&m, Side::Left, &limits)?;
    let u = find_unity(&m, &l).expect("matrix structures have a left unity");
    println!(
        "|L| = {}, unity {} (strong: {})",
        l.len(),
        u.witness.display(&m),
        u.strong
    );
    Ok(())
}
