//! Prime and semiprime fuzzy h-ideals, judged against an enumerated family.

use gamma_hemiring::corpus;
use gamma_hemiring::fuzzy::parse_grid;
use gamma_hemiring::ideal::{enumerate_fuzzy_h_ideals, PrimeChecker, Sidedness};
use gamma_hemiring::limits::Limits;
use gamma_hemiring::structure::as_product_structure;
use gamma_hemiring::Result;

pub fn main() -> Result<()> {
    let limits = Limits::default();
    for name in ["Z2", "Z4", "Z2xZ2"] {
        let p = as_product_structure(&corpus::structure(name, &limits)?);
        let family = enumerate_fuzzy_h_ideals(&p, &parse_grid("0,1/2,1")?, Sidedness::TwoSided, &limits)?;
        let checker = PrimeChecker::new(&p, &family.members);
        println!("{name}: {} fuzzy h-ideals", checker.family_size());
        for zeta in &family.members {
            let prime = checker.is_prime(zeta)?;
            let semi = checker.is_semiprime(zeta)?;
            println!(
                "  {:<40} prime: {:<5} semiprime: {}",
                zeta.display(p.carrier().labels()).to_string(),
                prime.holds,
                semi.holds
            );
        }
    }
    Ok(())
}
