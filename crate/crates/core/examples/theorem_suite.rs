//! Run the whole catalog on every built-in structure and print one line
//! per non-passing check.

use gamma_hemiring::corpus;
use gamma_hemiring::correspondence::CorrespondenceContext;
use gamma_hemiring::fuzzy::parse_grid;
use gamma_hemiring::harness::{Status, Suite, Workbench};
use gamma_hemiring::limits::Limits;
use gamma_hemiring::Result;

pub fn main() -> Result<()> {
    let limits = Limits::default();
    let grid = parse_grid("0,1/2,1")?;
    for name in corpus::NAMES {
        let ctx = CorrespondenceContext::new(corpus::structure(name, &limits)?, &limits)?;
        let report = Workbench::new(ctx, &grid)?.run_suite(Suite::All)?;
        let count = |s| report.results.iter().filter(|r| r.status == s).count();
        println!(
            "{name:<8} pass {:>2}  fail {}  unmet {:>2}",
            count(Status::Pass),
            count(Status::Fail),
            count(Status::AssumptionUnmet)
        );
        for r in report.results.iter().filter(|r| r.status == Status::Fail) {
            println!("    {r}");
        }
    }
    Ok(())
}
