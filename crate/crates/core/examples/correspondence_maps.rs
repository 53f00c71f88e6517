//! Moving fuzzy h-ideals between S and its operator hemirings.

use gamma_hemiring::carrier::CarrierKind;
use gamma_hemiring::corpus;
use gamma_hemiring::correspondence::CorrespondenceContext;
use gamma_hemiring::fuzzy::parse_grid;
use gamma_hemiring::ideal::{enumerate_fuzzy_h_ideals, Sidedness};
use gamma_hemiring::limits::Limits;
use gamma_hemiring::Result;

pub fn main() -> Result<()> {
    let limits = Limits::default();
    let ctx = CorrespondenceContext::new(corpus::structure("Z4", &limits)?, &limits)?;
    let s = ctx.structure(CarrierKind::S)?;
    let (ls, ll, lr) = (
        ctx.labels(CarrierKind::S),
        ctx.labels(CarrierKind::L),
        ctx.labels(CarrierKind::R),
    );

    let family = enumerate_fuzzy_h_ideals(s, &parse_grid("0,1/2,1")?, Sidedness::TwoSided, &limits)?;
    for sigma in &family.members {
        let up = ctx.plus_prime(sigma)?;
        let right = ctx.star_prime(sigma)?;
        assert_eq!(&ctx.plus(&up)?, sigma);
        assert_eq!(&ctx.star(&right)?, sigma);
        println!("{}", sigma.display(&ls));
        println!("  +'  {}", up.display(&ll));
        println!("  *'  {}", right.display(&lr));
    }
    Ok(())
}
