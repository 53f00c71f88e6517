//! Checking and enumerating fuzzy h-ideals, h-bi-ideals and
//! h-quasi-ideals over a value grid.

use gamma_hemiring::corpus;
use gamma_hemiring::fuzzy::{parse_grid, FuzzySubset, Rational01};
use gamma_hemiring::ideal::{
    enumerate_fuzzy_h_bi_ideals, enumerate_fuzzy_h_ideals, enumerate_fuzzy_h_quasi_ideals, is_fuzzy_h_ideal, Sidedness,
};
use gamma_hemiring::limits::Limits;
use gamma_hemiring::structure::as_product_structure;
use gamma_hemiring::Result;

pub fn main() -> Result<()> {
    let limits = Limits::default();
    let grid = parse_grid("0,1/2,1")?;

    let b = as_product_structure(&corpus::structure("B", &limits)?);
    let chi_zero = FuzzySubset::new(b.id().clone(), vec![Rational01::ONE, Rational01::ZERO]);
    println!(
        "B, χ{{0}}: {}",
        is_fuzzy_h_ideal(&b, &chi_zero, Sidedness::TwoSided, true)?
    );

    for name in ["Z2", "Z4", "Z2xZ2"] {
        let p = as_product_structure(&corpus::structure(name, &limits)?);
        let ideals = enumerate_fuzzy_h_ideals(&p, &grid, Sidedness::TwoSided, &limits)?;
        let bi = enumerate_fuzzy_h_bi_ideals(&p, &grid, &limits)?;
        let quasi = enumerate_fuzzy_h_quasi_ideals(&p, &grid, &limits)?;
        println!(
            "{name:<6} h-ideals {:>3}  bi {:>3}  quasi {:>3}",
            ideals.len(),
            bi.len(),
            quasi.len()
        );
        if name == "Z4" {
            for mu in &ideals.members {
                println!("         {}", mu.display(p.carrier().labels()));
            }
        }
    }
    Ok(())
}
