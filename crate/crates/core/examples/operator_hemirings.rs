//! Left and right operator hemirings, their unities and the formal sums
//! behind each operator.

use gamma_hemiring::corpus;
use gamma_hemiring::limits::Limits;
use gamma_hemiring::operator::{build_operator, find_unity, realize, FormalSum, Side};
use gamma_hemiring::Result;

pub fn main() -> Result<()> {
    let limits = Limits::default();
    for name in ["Z2", "Z4", "Z2xZ2", "M2x1(B)", "Z2-null"] {
        let g = corpus::structure(name, &limits)?;
        for side in [Side::Left, Side::Right] {
            let op = build_operator(&g, side, &limits)?;
            let unity = match find_unity(&g, &op) {
                None => "no unity".to_string(),
                Some(u) if u.strong => format!("strong unity {}", u.witness.display(&g)),
                Some(u) => format!("unity {} (not strong)", u.witness.display(&g)),
            };
            println!(
                "{name:<8} {:<5} |{}|={:<2} {unity}",
                side.as_str(),
                side.carrier_kind().as_str(),
                op.len()
            );
        }
    }

    // [2,1] and [1,1]+[1,1] act identically on Z4, so they are one operator.
    let z4 = corpus::structure("Z4", &limits)?;
    let a = realize(&z4, &FormalSum::left(vec![(2, 1)])?)?;
    let b = realize(&z4, &FormalSum::left(vec![(1, 1), (1, 1)])?)?;
    assert_eq!(a, b);
    println!("\n[2,1] on Z4: {:?}", a.table());
    Ok(())
}
