//! Crisp h-ideals of S and of its operator hemirings, matched up by the
//! crisp transfer maps.

use gamma_hemiring::carrier::CarrierKind;
use gamma_hemiring::corpus;
use gamma_hemiring::correspondence::CorrespondenceContext;
use gamma_hemiring::ideal::{enumerate_h_ideals, h_closure, CrispSubset, Sidedness};
use gamma_hemiring::limits::Limits;
use gamma_hemiring::Result;

pub fn main() -> Result<()> {
    let limits = Limits::default();
    let ctx = CorrespondenceContext::new(corpus::structure("Z4", &limits)?, &limits)?;
    let s = ctx.structure(CarrierKind::S)?;
    let two = Sidedness::TwoSided;

    let seed = CrispSubset::from_indices(s.id().clone(), s.len(), &[2]);
    println!(
        "h-closure of {{2}}: {}",
        h_closure(s, &seed, two)?.display(s.carrier().labels())
    );

    let labels_l = ctx.labels(CarrierKind::L);
    for ideal in enumerate_h_ideals(s, two, &limits)? {
        let up = ctx.crisp_plus_prime(&ideal)?;
        let back = ctx.crisp_plus(&up)?;
        assert_eq!(back, ideal);
        println!(
            "{:<10} -> {}",
            ideal.display(s.carrier().labels()).to_string(),
            up.display(&labels_l)
        );
    }

    // Boolean: 1 + 0 + 1 = 0 + 1, so {0} is not an h-ideal.
    let b = CorrespondenceContext::new(corpus::structure("B", &limits)?, &limits)?;
    let sb = b.structure(CarrierKind::S)?;
    let zero = CrispSubset::from_indices(sb.id().clone(), 2, &[0]);
    println!("\nB, {{0}}: {}", gamma_hemiring::ideal::is_h_ideal(sb, &zero, two)?);
    Ok(())
}
