//! Fuzzy subsets of S×S and the product versions of the transfer maps.

use gamma_hemiring::carrier::CarrierKind;
use gamma_hemiring::corpus;
use gamma_hemiring::correspondence::CorrespondenceContext;
use gamma_hemiring::fuzzy::{simple_h_product, FuzzySubset, Rational01};
use gamma_hemiring::ideal::{is_fuzzy_h_ideal, Sidedness};
use gamma_hemiring::limits::Limits;
use gamma_hemiring::Result;

pub fn main() -> Result<()> {
    let limits = Limits::default();
    let ctx = CorrespondenceContext::new(corpus::structure("Z2", &limits)?, &limits)?;
    let half: Rational01 = "1/2".parse()?;
    let s = ctx.carrier_id(CarrierKind::S);
    let mu = FuzzySubset::new(s.clone(), vec![Rational01::ONE, half]);
    let sigma = FuzzySubset::new(s, vec![Rational01::ONE, Rational01::ZERO]);

    let sq = ctx.square_structure()?;
    let labels = ctx.labels(CarrierKind::SxS);
    let phi = ctx.cartesian(&mu, &sigma)?;
    println!("mu × sigma        = {}", phi.display(&labels));
    println!(
        "h-ideal of S×S:     {}",
        is_fuzzy_h_ideal(sq, &phi, Sidedness::TwoSided, true)?
    );
    println!(
        "(mu × sigma) Γh itself = {}",
        simple_h_product(sq, &phi, &phi)?.display(&labels)
    );

    let up = ctx.product_star_prime(&phi)?;
    let split = ctx.cartesian(&ctx.star_prime(&mu)?, &ctx.star_prime(&sigma)?)?;
    assert_eq!(up, split);
    println!("(mu × sigma)*'    = {}", up.display(&ctx.labels(CarrierKind::RxR)));
    assert_eq!(ctx.product_star(&up)?, phi);
    Ok(())
}
