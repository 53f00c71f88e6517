//! Deliberately corrupt one piece of the machinery and see which checks
//! notice.

use gamma_hemiring::corpus;
use gamma_hemiring::correspondence::{CorrespondenceContext, Faults};
use gamma_hemiring::fuzzy::parse_grid;
use gamma_hemiring::harness::{Suite, Workbench};
use gamma_hemiring::limits::Limits;
use gamma_hemiring::Result;

fn failing(name: &str, faults: Faults) -> Result<Vec<String>> {
    let limits = Limits::default();
    let ctx = CorrespondenceContext::with_faults(corpus::structure(name, &limits)?, &limits, faults)?;
    let report = Workbench::new(ctx, &parse_grid("0,1/2,1")?)?.run_suite(Suite::All)?;
    Ok(report.failures().map(|r| r.id.clone()).collect())
}

pub fn main() -> Result<()> {
    for name in ["Z2", "B", "M2x1(B)"] {
        let baseline = failing(name, Faults::default())?;
        for fault in ["plus-prime-max", "skip-z", "left-orientation"] {
            let extra: Vec<String> = failing(name, Faults::parse(fault).unwrap())?
                .into_iter()
                .filter(|id| !baseline.contains(id))
                .collect();
            println!("{name:<8} {fault:<17} newly failing: {extra:?}");
        }
    }
    Ok(())
}
