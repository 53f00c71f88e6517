//! The `ghr` command line.
//!
//! Exit codes: 0 success, 1 a check or validation failed, 2 bad input,
//! 3 a size cap was hit. Caps come from the `GHR_LIMITS` environment
//! variable, e.g. `GHR_LIMITS=cells=100000,carrier=32`.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::carrier::CarrierKind;
use crate::corpus;
use crate::correspondence::{CorrespondenceContext, Faults};
use crate::error::{Error, Result};
use crate::format::{FuzzyFile, StructureFile};
use crate::fuzzy::parse_grid;
use crate::harness::{Status, Suite, Workbench};
use crate::ideal::{
    enumerate_fuzzy_h_ideals, is_fuzzy_h_bi_ideal, is_fuzzy_h_ideal, is_fuzzy_h_quasi_ideal, PrimeChecker, Sidedness,
};
use crate::limits::Limits;
use crate::operator::{find_unity, OperatorHemiring, Side};
use crate::structure::{axiom_statement, GammaHemiring};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ghr", version, about = "Finite Γ-hemiring workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, hide = true)]
    inject_fault: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Γ-hemiring laws of a structure file.
    Validate { path: String },
    /// Build the operator hemirings and report unities.
    Operators {
        path: String,
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
        /// Print the structure and operator tables as one JSON document.
        #[arg(long)]
        dump_tables: bool,
    },
    /// List the h-ideals of S, L and R and the bijections between them.
    HIdeals { path: String },
    /// Test a fuzzy subset against one definition.
    Check {
        path: String,
        fuzzy: String,
        #[arg(long, value_enum, default_value = "h-ideal")]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "two-sided")]
        side: SidednessArg,
        /// Value grid for the comparison family of prime checks.
        #[arg(long, default_value = "0,1/2,1")]
        grid: String,
    },
    /// Transfer a fuzzy subset between S and L or R.
    Map {
        path: String,
        fuzzy: String,
        #[arg(long, value_enum)]
        dir: DirArg,
    },
    /// Run the theorem suite and print a JSON report.
    Verify {
        path: String,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value = "0,1/2,1")]
        grid: String,
        /// Fill in per-check milliseconds.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SidednessArg {
    Left,
    Right,
    TwoSided,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KindArg {
    HIdeal,
    Bi,
    Quasi,
    Prime,
    Semiprime,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DirArg {
    Plus,
    Plusprime,
    Star,
    Starprime,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    All,
    Section2,
    Section3,
    Section4,
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_capacity() {
                EXIT_CAPACITY
            } else {
                EXIT_INPUT
            }
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Parse(format!("write failed: {e}"))
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))
}

/// A structure file, or `corpus:<name>` for a built-in one.
fn load_structure(path: &str, limits: &Limits) -> Result<GammaHemiring> {
    match path.strip_prefix("corpus:") {
        Some(name) => corpus::structure(name, limits),
        None => StructureFile::from_json(&read(path)?)?.to_gamma_hemiring(),
    }
}

fn context(path: &str, limits: &Limits, faults: Faults) -> Result<CorrespondenceContext> {
    CorrespondenceContext::with_faults(load_structure(path, limits)?, limits, faults)
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let limits = Limits::from_env()?;
    let faults = match &cli.inject_fault {
        None => Faults::default(),
        Some(name) => Faults::parse(name).ok_or_else(|| Error::Parse(format!("unknown fault {name:?}")))?,
    };
    match cli.command {
        Command::Validate { path } => validate(&path, &limits, out),
        Command::Operators {
            path,
            side,
            dump_tables,
        } => operators(&path, side, dump_tables, &limits, out),
        Command::HIdeals { path } => h_ideals(context(&path, &limits, faults)?, out),
        Command::Check {
            path,
            fuzzy,
            kind,
            side,
            grid,
        } => {
            let ctx = context(&path, &limits, faults)?;
            check(&ctx, &fuzzy, kind, side, &grid, out)
        }
        Command::Map { path, fuzzy, dir } => map(&context(&path, &limits, faults)?, &fuzzy, dir, out),
        Command::Verify {
            path,
            suite,
            grid,
            timings,
        } => {
            let grid = parse_grid(&grid)?;
            let suite = match suite {
                SuiteArg::All => Suite::All,
                SuiteArg::Section2 => Suite::Section2,
                SuiteArg::Section3 => Suite::Section3,
                SuiteArg::Section4 => Suite::Section4,
            };
            let bench = Workbench::new(context(&path, &limits, faults)?, &grid)?.with_timings(timings);
            let report = bench.run_suite(suite)?;
            writeln!(out, "{}", report.to_json()).map_err(io)?;
            Ok(if report.overall == Status::Pass {
                EXIT_OK
            } else {
                EXIT_FAIL
            })
        }
    }
}

fn validate(path: &str, limits: &Limits, out: &mut dyn Write) -> Result<i32> {
    let g = load_structure(path, limits)?;
    let report = g.validate(limits.max_violations);
    if report.valid {
        writeln!(out, "{}: valid", g.name()).map_err(io)?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "{}: invalid", g.name()).map_err(io)?;
    for v in &report.violations {
        let statement = axiom_statement(&v.law);
        if statement.is_empty() {
            writeln!(out, "  {v}").map_err(io)?;
        } else {
            writeln!(out, "  {v}  [{statement}]").map_err(io)?;
        }
    }
    if report.truncated {
        writeln!(out, "  (stopped after {} violations)", report.violations.len()).map_err(io)?;
    }
    Ok(EXIT_FAIL)
}

fn unity_line(g: &GammaHemiring, op: &OperatorHemiring) -> String {
    let side = op.side().as_str();
    let size = format!("|{}|={}", op.side().carrier_kind().as_str(), op.len());
    match find_unity(g, op) {
        None => format!("{size}, no {side} unity"),
        Some(u) if u.strong => format!("{size}, strong {side} unity {}", u.witness.display(g)),
        Some(u) => format!(
            "{size}, {side} unity ({} terms), not strong: {}",
            u.witness.len(),
            u.witness.display(g)
        ),
    }
}

fn operators(path: &str, side: SideArg, dump: bool, limits: &Limits, out: &mut dyn Write) -> Result<i32> {
    let ctx = context(path, limits, Faults::default())?;
    let g = ctx.gamma_hemiring();
    let sides: &[Side] = match side {
        SideArg::Left => &[Side::Left],
        SideArg::Right => &[Side::Right],
        SideArg::Both => &[Side::Left, Side::Right],
    };
    if dump {
        let mut doc = serde_json::Map::new();
        let file = StructureFile::from_gamma_hemiring(g);
        doc.insert("structure".into(), serde_json::to_value(&file).expect("serializes"));
        for &s in sides {
            doc.insert(s.as_str().into(), operator_tables(g, ctx.operator(s)));
        }
        let text = serde_json::to_string_pretty(&serde_json::Value::Object(doc)).expect("serializes");
        writeln!(out, "{text}").map_err(io)?;
        return Ok(EXIT_OK);
    }
    for &s in sides {
        let op = ctx.operator(s);
        writeln!(out, "{}", unity_line(g, op)).map_err(io)?;
        for k in 0..op.len() {
            let image: Vec<&str> = op.map(k).table().iter().map(|&i| g.s().label(i)).collect();
            writeln!(
                out,
                "  {} = {}  maps S to ({})",
                op.labels()[k],
                op.provenance(k).display(g),
                image.join(",")
            )
            .map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn operator_tables(g: &GammaHemiring, op: &OperatorHemiring) -> serde_json::Value {
    let labels = op.labels();
    let n = op.len();
    let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<String>> {
        (0..n)
            .map(|i| (0..n).map(|j| labels[f(i, j)].clone()).collect())
            .collect()
    };
    let maps: serde_json::Map<String, serde_json::Value> = (0..n)
        .map(|k| {
            let image: Vec<&str> = op.map(k).table().iter().map(|&i| g.s().label(i)).collect();
            (labels[k].clone(), serde_json::json!(image))
        })
        .collect();
    let sums: serde_json::Map<String, serde_json::Value> = (0..n)
        .map(|k| {
            (
                labels[k].clone(),
                serde_json::json!(op.provenance(k).display(g).to_string()),
            )
        })
        .collect();
    serde_json::json!({
        "elements": labels,
        "zero": labels[op.zero()],
        "add": table(&|i, j| op.add(i, j)),
        "mul": table(&|i, j| op.mul(i, j)),
        "maps": maps,
        "sums": sums,
    })
}

fn h_ideals(ctx: CorrespondenceContext, out: &mut dyn Write) -> Result<i32> {
    let bench = Workbench::new(ctx, &parse_grid("0,1")?)?;
    let ctx = bench.context();
    let two = Sidedness::TwoSided;
    let s = bench.h_ideals(CarrierKind::S, two)?;
    let l = bench.h_ideals(CarrierKind::L, two)?;
    let r = bench.h_ideals(CarrierKind::R, two)?;
    writeln!(
        out,
        "h-ideals of {}: |S|={}, |L|={}, |R|={}",
        ctx.name(),
        s.len(),
        l.len(),
        r.len()
    )
    .map_err(io)?;
    let ls = ctx.labels(CarrierKind::S);
    let ll = ctx.labels(CarrierKind::L);
    let lr = ctx.labels(CarrierKind::R);
    let rows: Vec<[String; 3]> = s
        .iter()
        .map(|i| {
            Ok([
                i.display(&ls).to_string(),
                ctx.crisp_plus_prime(i)?.display(&ll).to_string(),
                ctx.crisp_star_prime(i)?.display(&lr).to_string(),
            ])
        })
        .collect::<Result<_>>()?;
    let w0 = rows.iter().map(|r| r[0].len()).max().unwrap_or(0).max(1);
    let w1 = rows.iter().map(|r| r[1].len()).max().unwrap_or(0).max(3);
    writeln!(out, "{:<w0$}  {:<w1$}  I*'", "I", "I+'").map_err(io)?;
    for row in &rows {
        writeln!(out, "{:<w0$}  {:<w1$}  {}", row[0], row[1], row[2]).map_err(io)?;
    }
    let mut code = EXIT_OK;
    for (id, what) in [("T3.15", "S <-> L"), ("T3.16", "S <-> R")] {
        let res = bench.run_check(id)?;
        let line = match res.status {
            Status::Pass => "verified".to_string(),
            Status::AssumptionUnmet => format!("not asserted (no {})", res.missing().unwrap_or("unity")),
            Status::Fail => {
                code = EXIT_FAIL;
                format!("fails: {}", res.witness.expect("failures carry witnesses"))
            }
        };
        writeln!(out, "bijection {what}: {line}").map_err(io)?;
    }
    Ok(code)
}

fn check(
    ctx: &CorrespondenceContext,
    fuzzy: &str,
    kind: KindArg,
    side: SidednessArg,
    grid: &str,
    out: &mut dyn Write,
) -> Result<i32> {
    let mu = FuzzyFile::from_json(&read(fuzzy)?)?.to_fuzzy(ctx)?;
    let carrier = mu.carrier().kind;
    let p = ctx.structure(carrier)?;
    let sidedness = match side {
        SidednessArg::Left => Sidedness::Left,
        SidednessArg::Right => Sidedness::Right,
        SidednessArg::TwoSided => Sidedness::TwoSided,
    };
    let res = match kind {
        KindArg::HIdeal => is_fuzzy_h_ideal(p, &mu, sidedness, false)?,
        KindArg::Bi => is_fuzzy_h_bi_ideal(p, &mu)?,
        KindArg::Quasi => is_fuzzy_h_quasi_ideal(p, &mu)?,
        KindArg::Prime | KindArg::Semiprime => {
            let family = enumerate_fuzzy_h_ideals(p, &parse_grid(grid)?, Sidedness::TwoSided, ctx.limits())?;
            let checker = PrimeChecker::new(p, &family.members);
            if matches!(kind, KindArg::Prime) {
                checker.is_prime(&mu)?
            } else {
                checker.is_semiprime(&mu)?
            }
        }
    };
    writeln!(out, "{}", res).map_err(io)?;
    Ok(if res.holds { EXIT_OK } else { EXIT_FAIL })
}

fn map(ctx: &CorrespondenceContext, fuzzy: &str, dir: DirArg, out: &mut dyn Write) -> Result<i32> {
    let mu = FuzzyFile::from_json(&read(fuzzy)?)?.to_fuzzy(ctx)?;
    let image = match dir {
        DirArg::Plus => ctx.plus(&mu)?,
        DirArg::Plusprime => ctx.plus_prime(&mu)?,
        DirArg::Star => ctx.star(&mu)?,
        DirArg::Starprime => ctx.star_prime(&mu)?,
    };
    writeln!(out, "{}", FuzzyFile::from_fuzzy(&image, ctx).to_json()).map_err(io)?;
    Ok(EXIT_OK)
}
