//! One PASS/FAIL line per acceptance criterion, checked against the
//! brute-force oracles in `common`. Exits non-zero if any line fails.

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use gamma_hemiring::carrier::CarrierKind;
use gamma_hemiring::corpus;
use gamma_hemiring::correspondence::{CorrespondenceContext, Faults};
use gamma_hemiring::format::{FuzzyFile, StructureFile};
use gamma_hemiring::fuzzy::{generalized_h_product, simple_h_product, FuzzySubset, Rational01};
use gamma_hemiring::harness::{run_suite, Status, Suite};
use gamma_hemiring::ideal::{enumerate_h_ideals, CrispSubset, Sidedness};
use gamma_hemiring::limits::Limits;
use gamma_hemiring::operator::{build_operator, find_unity, Side};
use gamma_hemiring::structure::{as_product_structure, GammaHemiring};

use common::*;

type Outcome = Result<String, String>;

type Criterion = (&'static str, fn() -> Outcome, u64);

const AXIOMS: [&str; 6] = ["axiom-1", "axiom-2", "axiom-3", "axiom-4", "axiom-5", "axiom-6"];

fn grid() -> Vec<Rational01> {
    vec![Rational01::ZERO, Rational01::new(1, 2).unwrap(), Rational01::ONE]
}

fn corpus_structures() -> Vec<GammaHemiring> {
    corpus::all(&Limits::default()).expect("corpus builds")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn axiom_gate() -> Outcome {
    let mut mutations = 0;
    for g in corpus_structures() {
        ensure(g.validate(16).valid, || format!("{} does not validate", g.name()))?;
        let (ns, ng) = (g.s().len(), g.gamma().len());
        for law in AXIOMS {
            let mut found = None;
            'search: for a in 0..ns {
                for x in 0..ng {
                    for b in 0..ns {
                        for v in (0..ns).filter(|&v| v != g.act(a, x, b)) {
                            let m = g.clone().with_cell(a, x, b, v).expect("in range");
                            if let Some(viol) = m.validate(64).first(law).cloned() {
                                found = Some((m, viol));
                                break 'search;
                            }
                        }
                    }
                }
            }
            let (m, viol) = found.ok_or_else(|| format!("{}: no single-cell mutation breaks {law}", g.name()))?;
            ensure(witness_breaks_axiom(&m, law, &viol.witness), || {
                format!("{}: {law} witness {:?} does not break the law", g.name(), viol.witness)
            })?;
            mutations += 1;
        }
    }
    Ok(format!(
        "6 structures valid, {mutations} mutations caught with genuine witnesses"
    ))
}

fn operator_construction() -> Outcome {
    let lim = Limits::default();
    let mut sizes = Vec::new();
    for g in corpus_structures() {
        for side in [Side::Left, Side::Right] {
            let op = build_operator(&g, side, &lim).map_err(|e| e.to_string())?;
            let ours: BTreeSet<Vec<usize>> = op.maps().iter().map(|m| m.table().to_vec()).collect();
            let oracle = operator_closure(&g, side);
            ensure(ours == oracle, || {
                format!(
                    "{} {}: {} maps, oracle {}",
                    g.name(),
                    side.as_str(),
                    ours.len(),
                    oracle.len()
                )
            })?;
            let expected = unity_flags(&g, side);
            let unity = find_unity(&g, &op);
            let got = (unity.is_some(), unity.as_ref().is_some_and(|u| u.strong));
            ensure(got == expected, || {
                format!("{} {}: unity {got:?}, oracle {expected:?}", g.name(), side.as_str())
            })?;
            if let Some(u) = &unity {
                let id = op.index_of(&gamma_hemiring::operator::ActionMap::from_table(
                    (0..g.s().len()).collect(),
                ));
                let realized = gamma_hemiring::operator::realize(&g, &u.witness).map_err(|e| e.to_string())?;
                ensure(realized.is_identity() && id.is_some(), || {
                    format!("{}: unity witness is not the identity", g.name())
                })?;
            }
            let name = g.name();
            let named = match (name, side) {
                ("M2x1(B)", Side::Left) => Some((true, false)),
                ("Z2xZ2", _) => unity.as_ref().map(|_| expected),
                ("M2x1(B)", Side::Right) => None,
                _ => Some((true, true)),
            };
            if let Some(want) = named {
                ensure(got == want, || {
                    format!("{name} {}: unity {got:?}, expected {want:?}", side.as_str())
                })?;
            }
            if name == "M2x1(B)" && side == Side::Left {
                let terms = unity.as_ref().map(|u| u.witness.len());
                ensure(terms == Some(2), || format!("{name}: left unity has {terms:?} terms"))?;
            }
            sizes.push(format!("{}:{}", name, op.len()));
        }
    }
    Ok(format!(
        "operator sets equal the oracle, unities agree ({})",
        sizes.join(" ")
    ))
}

fn subset_oracle(ctx: &CorrespondenceContext, kind: CarrierKind) -> BTreeSet<Vec<usize>> {
    let p = ctx.structure(kind).expect("carrier");
    let m = p.carrier();
    h_ideals_by_subsets(
        m.len(),
        m.zero(),
        |a, b| m.add(a, b),
        |a, b| p.pair_products(a, b).to_vec(),
    )
}

fn lattice_isomorphism() -> Outcome {
    let lim = Limits::default();
    let mut counts = Vec::new();
    for g in corpus_structures() {
        let ctx = CorrespondenceContext::new(g, &lim).map_err(|e| e.to_string())?;
        let mut lists = Vec::new();
        for kind in [CarrierKind::S, CarrierKind::L, CarrierKind::R] {
            let p = ctx.structure(kind).map_err(|e| e.to_string())?;
            let ours = enumerate_h_ideals(p, Sidedness::TwoSided, &lim).map_err(|e| e.to_string())?;
            let as_sets: BTreeSet<Vec<usize>> = ours.iter().map(CrispSubset::indices).collect();
            ensure(as_sets == subset_oracle(&ctx, kind), || {
                format!("{} {}: h-ideals differ from the subset scan", ctx.name(), kind.as_str())
            })?;
            lists.push(ours);
        }
        let (s, l, r) = (&lists[0], &lists[1], &lists[2]);
        ensure(s.len() == l.len() && s.len() == r.len(), || {
            format!("{}: counts {} {} {}", ctx.name(), s.len(), l.len(), r.len())
        })?;
        for (targets, to_op, back) in [
            (
                l,
                CorrespondenceContext::crisp_plus_prime as fn(&_, &_) -> _,
                CorrespondenceContext::crisp_plus as fn(&_, &_) -> _,
            ),
            (
                r,
                CorrespondenceContext::crisp_star_prime,
                CorrespondenceContext::crisp_star,
            ),
        ] {
            let images: Vec<CrispSubset> = s
                .iter()
                .map(|i| to_op(&ctx, i))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            for (i, q) in s.iter().zip(&images) {
                ensure(targets.contains(q), || {
                    format!("{}: image of {:?} is not an h-ideal", ctx.name(), i.indices())
                })?;
                let back_i: CrispSubset = back(&ctx, q).map_err(|e| e.to_string())?;
                ensure(&back_i == i, || {
                    format!("{}: {:?} does not come back", ctx.name(), i.indices())
                })?;
            }
            let distinct: BTreeSet<Vec<usize>> = images.iter().map(CrispSubset::indices).collect();
            ensure(distinct.len() == s.len(), || {
                format!("{}: map is not injective", ctx.name())
            })?;
            for (i, a) in s.iter().enumerate() {
                for (j, b) in s.iter().enumerate() {
                    ensure(a.is_subset(b) == images[i].is_subset(&images[j]), || {
                        format!("{}: inclusion not preserved", ctx.name())
                    })?;
                }
            }
        }
        if ctx.name() == "Z4" {
            ensure(s.len() == 3, || format!("Z4 has {} h-ideals, expected 3", s.len()))?;
        }
        counts.push(format!("{}:{}", ctx.name(), s.len()));
    }
    Ok(format!(
        "S, L, R lattices match the subset scan and correspond ({})",
        counts.join(" ")
    ))
}

fn theorem_suite() -> Outcome {
    let lim = Limits::default();
    let mut fails = Vec::new();
    let mut slow = Vec::new();
    let mut first = String::new();
    for g in corpus_structures() {
        let start = Instant::now();
        let ctx = CorrespondenceContext::new(g, &lim).map_err(|e| e.to_string())?;
        let report = run_suite(ctx, &grid(), Suite::All).map_err(|e| e.to_string())?;
        if start.elapsed() > Duration::from_secs(60) {
            slow.push(report.structure.clone());
        }
        for r in &report.results {
            match r.status {
                Status::Fail => {
                    if fails.is_empty() {
                        first = format!("{} {}: {}", report.structure, r.id, r.witness.as_ref().unwrap());
                    }
                    fails.push(format!("{} {}", report.structure, r.id));
                }
                Status::AssumptionUnmet => {
                    let g = corpus::structure(&report.structure, &lim).unwrap();
                    let ctx = CorrespondenceContext::new(g, &lim).unwrap();
                    let genuine = match r.missing() {
                        Some("left unity") => ctx.left_unity().is_none(),
                        Some("right unity") => ctx.right_unity().is_none(),
                        Some("strong left unity") => !ctx.left_unity().is_some_and(|u| u.strong),
                        Some("strong right unity") => !ctx.right_unity().is_some_and(|u| u.strong),
                        _ => false,
                    };
                    if !genuine {
                        fails.push(format!("{} {}: unmet without cause", report.structure, r.id));
                    }
                }
                Status::Pass => {}
            }
        }
    }
    ensure(slow.is_empty(), || format!("over 60 s: {slow:?}"))?;
    ensure(fails.is_empty(), || {
        format!("{} failing: {}; first: {first}", fails.len(), fails.join(", "))
    })?;
    Ok("no failures on the corpus".into())
}

fn grid_subsets(ctx: &CorrespondenceContext) -> Vec<FuzzySubset> {
    let n = ctx.carrier_len(CarrierKind::S);
    let v = grid();
    let mut out = Vec::new();
    for code in 0..v.len().pow(n as u32) {
        let values = (0..n).map(|i| v[code / v.len().pow(i as u32) % v.len()]).collect();
        out.push(FuzzySubset::new(ctx.carrier_id(CarrierKind::S), values));
    }
    out
}

fn h_product_oracle() -> Outcome {
    let lim = Limits::default();
    let mut pairs = 0;
    for name in ["Z2", "B"] {
        let g = corpus::structure(name, &lim).unwrap();
        let ctx = CorrespondenceContext::new(g.clone(), &lim).unwrap();
        let p = as_product_structure(&g);
        let subsets = grid_subsets(&ctx);
        for mu in &subsets {
            for theta in &subsets {
                let gen = generalized_h_product(&p, mu, theta).map_err(|e| e.to_string())?;
                let simple = simple_h_product(&p, mu, theta).map_err(|e| e.to_string())?;
                let want_gen = h_product_by_decompositions(&g, mu, theta, false);
                let want_simple = h_product_by_decompositions(&g, mu, theta, true);
                ensure(gen.values() == want_gen.as_slice(), || {
                    format!(
                        "{name}: ∘h of {:?} and {:?} is {:?}, oracle {:?}",
                        mu.values(),
                        theta.values(),
                        gen.values(),
                        want_gen
                    )
                })?;
                ensure(simple.values() == want_simple.as_slice(), || {
                    format!(
                        "{name}: Γh of {:?} and {:?} is {:?}, oracle {:?}",
                        mu.values(),
                        theta.values(),
                        simple.values(),
                        want_simple
                    )
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("∘h and Γh equal the decomposition oracle on {pairs} pairs"))
}

/// Checks that fail under the fault but pass without it.
fn fault_caught(name: &str, fault: &str) -> Result<Vec<String>, String> {
    let lim = Limits::default();
    let g = corpus::structure(name, &lim).unwrap();
    let base = run_suite(
        CorrespondenceContext::new(g.clone(), &lim).unwrap(),
        &grid(),
        Suite::All,
    )
    .map_err(|e| e.to_string())?;
    let faults = Faults::parse(fault).expect("known fault");
    let ctx = CorrespondenceContext::with_faults(g, &lim, faults).map_err(|e| e.to_string())?;
    let bad = run_suite(ctx, &grid(), Suite::All).map_err(|e| e.to_string())?;
    Ok(bad
        .failures()
        .filter(|r| r.witness.is_some() && base.result(&r.id).is_some_and(|b| b.status == Status::Pass))
        .map(|r| r.id.clone())
        .collect())
}

fn fault_injection() -> Outcome {
    let mut missed = Vec::new();
    let mut caught = Vec::new();
    for fault in ["plus-prime-max", "skip-z", "left-orientation"] {
        let ids = fault_caught("Z2", fault)?;
        if ids.is_empty() {
            missed.push(fault);
        } else {
            caught.push(format!("{fault}: {}", ids.join(",")));
        }
    }
    // The faults Z2 cannot see still have to show on a structure where
    // they change some value.
    let elsewhere = [("skip-z", "B"), ("left-orientation", "M2x1(B)")]
        .iter()
        .map(|(f, s)| Ok(format!("{f} on {s}: {}", fault_caught(s, f)?.join(","))))
        .collect::<Result<Vec<_>, String>>()?;
    ensure(missed.is_empty(), || {
        format!(
            "on Z2 no check notices {}; caught {}; elsewhere {}",
            missed.join(", "),
            caught.join("; "),
            elsewhere.join("; ")
        )
    })?;
    Ok(caught.join("; "))
}

struct Run {
    code: i32,
    stdout: Vec<u8>,
}

fn ghr(args: &[&str], env: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ghr"));
    cmd.args(args).env_remove("GHR_LIMITS");
    if let Some(e) = env {
        cmd.env("GHR_LIMITS", e);
    }
    let out = cmd.output().expect("ghr runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: out.stdout,
    }
}

fn cli_contract() -> Outcome {
    let lim = Limits::default();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut commands = 0;
    for (name, file) in [
        ("B", "b.json"),
        ("Z2", "z2.json"),
        ("Z3", "z3.json"),
        ("Z4", "z4.json"),
        ("Z2xZ2", "z2xz2.json"),
        ("M2x1(B)", "m2x1_b.json"),
    ] {
        let path = data(file);
        let g = corpus::structure(name, &lim).unwrap();
        let ctx = CorrespondenceContext::new(g.clone(), &lim).unwrap();
        let on_disk = StructureFile::from_json(&fs::read_to_string(&path).unwrap()).map_err(|e| e.to_string())?;
        ensure(on_disk == StructureFile::from_gamma_hemiring(&g), || {
            format!("{file} differs from the built-in {name}")
        })?;

        let full_s = FuzzySubset::constant(
            ctx.carrier_id(CarrierKind::S),
            ctx.carrier_len(CarrierKind::S),
            Rational01::ONE,
        );
        let full_l = FuzzySubset::constant(
            ctx.carrier_id(CarrierKind::L),
            ctx.carrier_len(CarrierKind::L),
            Rational01::ONE,
        );
        let s_file = dir.path().join(format!("{file}.s"));
        let l_file = dir.path().join(format!("{file}.l"));
        fs::write(&s_file, FuzzyFile::from_fuzzy(&full_s, &ctx).to_json()).unwrap();
        fs::write(&l_file, FuzzyFile::from_fuzzy(&full_l, &ctx).to_json()).unwrap();
        let (s_file, l_file) = (s_file.to_str().unwrap(), l_file.to_str().unwrap());

        let suite_code = match run_suite(ctx, &grid(), Suite::All).map_err(|e| e.to_string())?.overall {
            Status::Fail => 1,
            _ => 0,
        };
        let cases: Vec<(Vec<&str>, i32)> = vec![
            (vec!["validate", &path], 0),
            (vec!["operators", &path], 0),
            (vec!["h-ideals", &path], 0),
            (vec!["check", &path, s_file], 0),
            (vec!["check", &path, s_file, "--kind", "prime"], 1),
            (vec!["map", &path, l_file, "--dir", "plus"], 0),
            (vec!["map", &path, s_file, "--dir", "plusprime"], 0),
            (vec!["verify", &path], suite_code),
        ];
        for (args, want) in cases {
            let first = ghr(&args, None);
            let second = ghr(&args, None);
            ensure(first.code == want, || {
                format!("ghr {} exited {}, expected {want}", args.join(" "), first.code)
            })?;
            ensure(first.stdout == second.stdout && !first.stdout.is_empty(), || {
                format!("ghr {} is not byte-stable", args.join(" "))
            })?;
            commands += 1;
        }

        let dump = ghr(&["operators", &path, "--dump-tables"], None);
        let text = String::from_utf8(dump.stdout).unwrap();
        let parsed = StructureFile::from_json(&text).map_err(|e| e.to_string())?;
        ensure(parsed == on_disk, || {
            format!("{name}: dump does not parse back to the structure")
        })?;
        let again = StructureFile::from_json(&parsed.to_json()).map_err(|e| e.to_string())?;
        ensure(
            again == parsed && parsed.to_gamma_hemiring().unwrap().action_table() == g.action_table(),
            || format!("{name}: round trip is not the identity"),
        )?;
    }
    for (args, env, want) in [
        (vec!["validate".to_string(), data("z2_broken.json")], None, 1),
        (vec!["validate".to_string(), data("malformed.json")], None, 2),
        (vec!["validate".to_string(), data("missing.json")], None, 2),
        (vec!["h-ideals".to_string(), data("z4.json")], Some("carrier=2"), 3),
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let code = ghr(&args, env).code;
        ensure(code == want, || {
            format!("ghr {} exited {code}, expected {want}", args.join(" "))
        })?;
        commands += 1;
    }
    Ok(format!(
        "{commands} invocations stable with documented exit codes, dumps round trip"
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("axiom gate", axiom_gate, 5),
        ("operator construction", operator_construction, 30),
        ("crisp lattice isomorphism", lattice_isomorphism, 30),
        ("theorem suite", theorem_suite, 6 * 60),
        ("h-product oracle", h_product_oracle, 60),
        ("fault injection", fault_injection, 60),
        ("cli contract", cli_contract, 30),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let outcome = outcome.and_then(|msg| {
            if secs < *budget as f64 {
                Ok(msg)
            } else {
                Err(format!("took {secs:.1} s, budget {budget} s"))
            }
        });
        match outcome {
            Ok(msg) => println!("PASS {} {name} ({secs:.2} s): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.2} s): {msg}", i + 1)
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
