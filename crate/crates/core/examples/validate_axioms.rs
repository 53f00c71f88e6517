//! Validate the built-in structures, then break one cell and read the
//! witness the validator reports.

use gamma_hemiring::corpus;
use gamma_hemiring::limits::Limits;
use gamma_hemiring::structure::axiom_statement;
use gamma_hemiring::Result;

pub fn main() -> Result<()> {
    let limits = Limits::default();
    for name in corpus::NAMES {
        let g = corpus::structure(name, &limits)?;
        println!(
            "{:<8} |S|={} |Γ|={}  {}",
            name,
            g.s().len(),
            g.gamma().len(),
            g.validate(16)
        );
    }

    // 0·1·1 must be 0; make it 1.
    let z2 = corpus::structure("Z2", &limits)?;
    let broken = z2.with_cell(0, 1, 1, 1)?;
    let report = broken.validate(16);
    assert!(report.has_law("axiom-5"));
    let v = report.first("axiom-5").unwrap();
    println!("\nmutated Z2: {}  [{}]", v, axiom_statement(&v.law));
    Ok(())
}
