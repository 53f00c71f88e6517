//! Executable catalog of the correspondence theorems, run against one
//! structure and one value grid.
//!
//! Families are enumerated once per [`Workbench`] and shared between
//! checks. A check whose hypotheses fail reports `assumption-unmet` and is
//! never counted as a pass.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::time::Instant;

use serde::Serialize;

use crate::carrier::CarrierKind;
use crate::correspondence::CorrespondenceContext;
use crate::error::{Error, Result};
use crate::fuzzy::{check_grid, fuzzy_sum, generalized_h_product, simple_h_product, FuzzySubset, Rational01};
use crate::ideal::{
    enumerate_fuzzy_h_bi_ideals, enumerate_fuzzy_h_ideals, enumerate_fuzzy_h_quasi_ideals, enumerate_h_ideals,
    is_fuzzy_h_bi_ideal, is_fuzzy_h_ideal, is_fuzzy_h_quasi_ideal, is_h_ideal, CheckResult, CrispSubset, FamilyKind,
    FuzzyHIdealFamily, PrimeChecker, Sidedness, Witness,
};
use crate::operator::{realize, Side};
use crate::structure::FiniteMonoid;

pub use crate::correspondence::Faults;

const SECTION2: &[&str] = &[
    "S2-axioms",
    "S2-operator-mul",
    "S2-h-relation",
    "S2-indicator-bridge",
    "S2-hierarchy",
];

const SECTION3: &[&str] = &[
    "L3.3",
    "P3.4",
    "P3.5",
    "P3.6",
    "P3.7",
    "T3.8-roundtrip",
    "T3.8-monotone",
    "T3.8-lattice",
    "T3.9",
    "C3.10",
    "L3.11",
    "L3.12",
    "L3.13",
    "L3.14",
    "T3.15",
    "T3.16",
    "P-comp",
    "R-gamma",
    "P-prime-fwd",
    "P-prime-bwd",
    "P-bi-fwd",
    "P-bi-bwd",
    "P-quasi-fwd",
    "P-quasi-bwd",
];

const SECTION4: &[&str] = &[
    "S4-coprod",
    "S4-commute-star",
    "S4-commute-starprime",
    "S4-hideal",
    "S4-prime",
    "T-cores2",
];

/// Subset indicator sweeps stop above this carrier size.
const BRIDGE_MAX: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Section2,
    Section3,
    Section4,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "all" => Suite::All,
            "section2" => Suite::Section2,
            "section3" => Suite::Section3,
            "section4" => Suite::Section4,
            _ => return None,
        })
    }

    pub fn ids(self) -> Vec<&'static str> {
        match self {
            Suite::All => SECTION2.iter().chain(SECTION3).chain(SECTION4).copied().collect(),
            Suite::Section2 => SECTION2.to_vec(),
            Suite::Section3 => SECTION3.to_vec(),
            Suite::Section4 => SECTION4.to_vec(),
        }
    }
}

/// Every check id in run order.
pub fn catalog() -> Vec<&'static str> {
    Suite::All.ids()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    AssumptionUnmet,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::AssumptionUnmet => "assumption-unmet",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub id: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PropertyResult {
    /// The missing hypothesis of an `assumption-unmet` result.
    pub fn missing(&self) -> Option<&str> {
        match self.status {
            Status::AssumptionUnmet => self.witness.as_ref().and_then(|w| w.role("hypothesis")),
            _ => None,
        }
    }
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<22} {}", self.id, self.status.as_str())?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        if let Some(n) = &self.note {
            write!(f, " [{n}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub structure: String,
    pub grid: Vec<Rational01>,
    pub results: Vec<PropertyResult>,
    pub overall: Status,
}

impl SuiteReport {
    pub fn result(&self, id: &str) -> Option<&PropertyResult> {
        self.results.iter().find(|r| r.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

struct Outcome {
    status: Status,
    witness: Option<Witness>,
    note: Option<String>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome {
            status: Status::Pass,
            witness: None,
            note: None,
        }
    }

    fn from(w: Option<Witness>) -> Self {
        match w {
            None => Outcome::pass(),
            Some(w) => Outcome {
                status: Status::Fail,
                witness: Some(w),
                note: None,
            },
        }
    }

    fn unmet(hypothesis: &str) -> Self {
        Outcome {
            status: Status::AssumptionUnmet,
            witness: Some(Witness::new("missing hypothesis").with("hypothesis", hypothesis)),
            note: None,
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

fn pairs<T>(items: &[T]) -> impl Iterator<Item = (&T, &T)> {
    items.iter().flat_map(move |a| items.iter().map(move |b| (a, b)))
}

type CrispFamily = Rc<Vec<CrispSubset>>;

/// A context, a grid and the families enumerated so far.
pub struct Workbench {
    ctx: CorrespondenceContext,
    grid: Vec<Rational01>,
    timings: bool,
    families: RefCell<HashMap<(CarrierKind, FamilyKind), Rc<FuzzyHIdealFamily>>>,
    crisp: RefCell<HashMap<(CarrierKind, Sidedness), CrispFamily>>,
}

impl Workbench {
    pub fn new(ctx: CorrespondenceContext, grid: &[Rational01]) -> Result<Self> {
        check_grid(grid)?;
        Ok(Workbench {
            ctx,
            grid: grid.to_vec(),
            timings: false,
            families: RefCell::new(HashMap::new()),
            crisp: RefCell::new(HashMap::new()),
        })
    }

    /// Records wall-clock milliseconds per check; off by default so that
    /// reports are byte-stable.
    pub fn with_timings(mut self, on: bool) -> Self {
        self.timings = on;
        self
    }

    pub fn context(&self) -> &CorrespondenceContext {
        &self.ctx
    }

    pub fn grid(&self) -> &[Rational01] {
        &self.grid
    }

    pub fn family(&self, carrier: CarrierKind, kind: FamilyKind) -> Result<Rc<FuzzyHIdealFamily>> {
        if let Some(f) = self.families.borrow().get(&(carrier, kind)) {
            return Ok(f.clone());
        }
        let p = self.ctx.structure(carrier)?;
        let lim = self.ctx.limits();
        let fam = match kind {
            FamilyKind::HIdeal(s) => enumerate_fuzzy_h_ideals(p, &self.grid, s, lim)?,
            FamilyKind::BiIdeal => enumerate_fuzzy_h_bi_ideals(p, &self.grid, lim)?,
            FamilyKind::QuasiIdeal => enumerate_fuzzy_h_quasi_ideals(p, &self.grid, lim)?,
        };
        let fam = Rc::new(fam);
        self.families.borrow_mut().insert((carrier, kind), fam.clone());
        Ok(fam)
    }

    fn ideals(&self, carrier: CarrierKind, s: Sidedness) -> Result<Rc<FuzzyHIdealFamily>> {
        self.family(carrier, FamilyKind::HIdeal(s))
    }

    pub fn h_ideals(&self, carrier: CarrierKind, s: Sidedness) -> Result<Rc<Vec<CrispSubset>>> {
        if let Some(f) = self.crisp.borrow().get(&(carrier, s)) {
            return Ok(f.clone());
        }
        let list = Rc::new(enumerate_h_ideals(self.ctx.structure(carrier)?, s, self.ctx.limits())?);
        self.crisp.borrow_mut().insert((carrier, s), list.clone());
        Ok(list)
    }

    pub fn run_check(&self, id: &str) -> Result<PropertyResult> {
        let start = Instant::now();
        let out = self.dispatch(id)?;
        let ms = if self.timings {
            start.elapsed().as_millis() as u64
        } else {
            0
        };
        Ok(PropertyResult {
            id: id.to_string(),
            status: out.status,
            witness: out.witness,
            ms,
            note: out.note,
        })
    }

    pub fn run_suite(&self, suite: Suite) -> Result<SuiteReport> {
        let results = suite
            .ids()
            .into_iter()
            .map(|id| self.run_check(id))
            .collect::<Result<Vec<_>>>()?;
        let overall = if results.iter().any(|r| r.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        };
        Ok(SuiteReport {
            structure: self.ctx.name().to_string(),
            grid: self.grid.clone(),
            results,
            overall,
        })
    }

    fn dispatch(&self, id: &str) -> Result<Outcome> {
        match id {
            "S2-axioms" => self.s2_axioms(),
            "S2-operator-mul" => self.s2_operator_mul(),
            "S2-h-relation" => self.s2_h_relation(),
            "S2-indicator-bridge" => self.s2_indicator_bridge(),
            "S2-hierarchy" => self.s2_hierarchy(),
            "L3.3" => self.l3_3(),
            "P3.4" => self.transfer_ideals(CarrierKind::L, |m| self.ctx.plus(m), CarrierKind::S, "plus"),
            "P3.5" => self.transfer_ideals(CarrierKind::S, |m| self.ctx.plus_prime(m), CarrierKind::L, "plus-prime"),
            "P3.6" => self.transfer_ideals(CarrierKind::R, |m| self.ctx.star(m), CarrierKind::S, "star"),
            "P3.7" => self.transfer_ideals(CarrierKind::S, |m| self.ctx.star_prime(m), CarrierKind::R, "star-prime"),
            "T3.8-roundtrip" => self.gated(|| self.roundtrip(Side::Left)),
            "T3.8-monotone" => self.gated(|| self.monotone(Side::Left)),
            "T3.8-lattice" => self.gated(|| self.lattice_ops(Side::Left)),
            "T3.9" => self.gated(|| {
                for o in [
                    self.roundtrip(Side::Right)?,
                    self.monotone(Side::Right)?,
                    self.lattice_ops(Side::Right)?,
                ] {
                    if o.status != Status::Pass {
                        return Ok(o);
                    }
                }
                Ok(Outcome::pass())
            }),
            "C3.10" => self.gated(|| self.c3_10()),
            "L3.11" => self.indicator_square(CarrierKind::S, Side::Left),
            "L3.12" => self.indicator_square(CarrierKind::L, Side::Left),
            "L3.13" => self.indicator_square(CarrierKind::S, Side::Right),
            "L3.14" => self.indicator_square(CarrierKind::R, Side::Right),
            "T3.15" => self.gated(|| self.crisp_bijection(Side::Left)),
            "T3.16" => self.gated(|| self.crisp_bijection(Side::Right)),
            "P-comp" => self.gated(|| self.composition(true)),
            "R-gamma" => self.gated(|| self.composition(false)),
            "P-prime-fwd" => self.gated(|| self.prime_fwd()),
            "P-prime-bwd" => self.gated(|| self.prime_bwd()),
            "P-bi-fwd" => self.gated(|| self.kind_fwd(FamilyKind::BiIdeal)),
            "P-bi-bwd" => self.gated(|| self.kind_bwd(FamilyKind::BiIdeal)),
            "P-quasi-fwd" => self.gated(|| self.kind_fwd(FamilyKind::QuasiIdeal)),
            "P-quasi-bwd" => self.gated(|| self.kind_bwd(FamilyKind::QuasiIdeal)),
            "S4-coprod" => self.s4_coprod(),
            "S4-commute-star" => self.s4_commute_star(),
            "S4-commute-starprime" => self.s4_commute_starprime(),
            "S4-hideal" => self.s4_hideal(),
            "S4-prime" => self.gated(|| self.s4_prime()),
            "T-cores2" => self.t_cores2(),
            other => Err(Error::Precondition(format!("unknown check id {other:?}"))),
        }
    }

    // ------------------------------------------------------------ helpers

    fn gated(&self, f: impl FnOnce() -> Result<Outcome>) -> Result<Outcome> {
        if self.ctx.left_unity().is_none() {
            return Ok(Outcome::unmet("left unity"));
        }
        if self.ctx.right_unity().is_none() {
            return Ok(Outcome::unmet("right unity"));
        }
        f()
    }

    fn show(&self, mu: &FuzzySubset) -> String {
        mu.display(&self.ctx.labels(mu.carrier().kind)).to_string()
    }

    fn show_set(&self, a: &CrispSubset) -> String {
        a.display(&self.ctx.labels(a.carrier.kind)).to_string()
    }

    fn label(&self, kind: CarrierKind, i: usize) -> String {
        self.ctx.labels(kind)[i].clone()
    }

    /// Witness for `lhs ≠ rhs`, naming the inputs and the first differing
    /// element.
    fn differ(
        &self,
        condition: &str,
        inputs: &[(&str, &FuzzySubset)],
        lhs: &FuzzySubset,
        rhs: &FuzzySubset,
    ) -> Result<Option<Witness>> {
        if lhs.equals(rhs)? {
            return Ok(None);
        }
        let x = lhs.first_difference(rhs).expect("unequal");
        let mut w = Witness::new(condition);
        for (role, mu) in inputs {
            w = w.with(role, self.show(mu));
        }
        Ok(Some(
            w.with("at", self.label(lhs.carrier().kind, x))
                .with("lhs", lhs.get(x))
                .with("rhs", rhs.get(x)),
        ))
    }

    fn failed(&self, condition: &str, inputs: &[(&str, &FuzzySubset)], check: CheckResult) -> Option<Witness> {
        let inner = check.witness?;
        let mut w = Witness::new(condition);
        for (role, mu) in inputs {
            w = w.with(role, self.show(mu));
        }
        w = w.with("violated", &inner.condition);
        for (r, v) in inner.roles {
            w.roles.push((r, v));
        }
        Some(w)
    }

    fn monoid(&self, kind: CarrierKind) -> Result<&FiniteMonoid> {
        Ok(self.ctx.structure(kind)?.carrier())
    }

    fn up(&self, side: Side, sigma: &FuzzySubset) -> Result<FuzzySubset> {
        match side {
            Side::Left => self.ctx.plus_prime(sigma),
            Side::Right => self.ctx.star_prime(sigma),
        }
    }

    fn down(&self, side: Side, mu: &FuzzySubset) -> Result<FuzzySubset> {
        match side {
            Side::Left => self.ctx.plus(mu),
            Side::Right => self.ctx.star(mu),
        }
    }

    // section2 checks

    fn s2_axioms(&self) -> Result<Outcome> {
        let max = self.ctx.limits().max_violations;
        let report = self.ctx.gamma_hemiring().validate(max);
        if let Some(v) = report.violations.first() {
            return Ok(Outcome::from(Some(
                Witness::new(&v.law)
                    .with("structure", self.ctx.name())
                    .with("cell", v.witness.join(",")),
            )));
        }
        for side in [Side::Left, Side::Right] {
            let h = self.ctx.operator(side).as_hemiring();
            if let Some(v) = h.validate(max).violations.first() {
                return Ok(Outcome::from(Some(
                    Witness::new(&v.law)
                        .with("structure", h.name())
                        .with("cell", v.witness.join(",")),
                )));
            }
        }
        Ok(Outcome::pass())
    }

    /// Each operator's recorded formal sum realizes it, and the sum and
    /// product tables agree with realizing concatenated and multiplied sums.
    fn s2_operator_mul(&self) -> Result<Outcome> {
        let g = self.ctx.gamma_hemiring();
        for side in [Side::Left, Side::Right] {
            let op = self.ctx.operator(side);
            let n = op.len();
            for i in 0..n {
                if &realize(g, op.provenance(i))? != op.map(i) {
                    return Ok(Outcome::from(Some(
                        Witness::new("provenance")
                            .with("side", side.as_str())
                            .with("operator", format!("op{i}"))
                            .with("sum", op.provenance(i).display(g)),
                    )));
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let (fi, fj) = (op.provenance(i), op.provenance(j));
                    let sum = realize(g, &fi.concat(fj)?)?;
                    if &sum != op.map(op.add(i, j)) {
                        return Ok(Outcome::from(Some(
                            Witness::new("operator-add")
                                .with("side", side.as_str())
                                .with("f", format!("op{i}"))
                                .with("g", format!("op{j}")),
                        )));
                    }
                    let prod = realize(g, &fi.product(fj, g)?)?;
                    if &prod != op.map(op.mul(i, j)) {
                        return Ok(Outcome::from(Some(
                            Witness::new("operator-mul")
                                .with("side", side.as_str())
                                .with("f", format!("op{i}"))
                                .with("g", format!("op{j}"))
                                .with("table", format!("op{}", op.mul(i, j)))
                                .with(
                                    "realized",
                                    op.index_of(&prod).map_or("outside".into(), |k| format!("op{k}")),
                                ),
                        )));
                    }
                }
            }
        }
        Ok(Outcome::pass())
    }

    /// The stored h-relation agrees with a direct search for `z`.
    fn s2_h_relation(&self) -> Result<Outcome> {
        for kind in [CarrierKind::S, CarrierKind::L, CarrierKind::R] {
            let p = self.ctx.structure(kind)?;
            let m = p.carrier();
            let n = m.len();
            for w in 0..n {
                for v in 0..n {
                    let z = (0..n).find(|&z| m.add(w, z) == m.add(v, z));
                    if z.is_some() != p.related(w, v) {
                        let mut wit = Witness::new("h-relation")
                            .with("carrier", p.id())
                            .with("w", m.label(w))
                            .with("v", m.label(v))
                            .with("stored", p.related(w, v));
                        if let Some(z) = z {
                            wit = wit.with("z", m.label(z));
                        }
                        return Ok(Outcome::from(Some(wit)));
                    }
                }
            }
        }
        Ok(Outcome::pass())
    }

    /// `A` is an h-ideal iff its indicator is a fuzzy h-ideal, over every
    /// subset of S containing zero.
    fn s2_indicator_bridge(&self) -> Result<Outcome> {
        let p = self.ctx.structure(CarrierKind::S)?;
        let n = p.len();
        if n > BRIDGE_MAX {
            return Ok(Outcome::pass().note(format!("skipped: more than {BRIDGE_MAX} elements")));
        }
        let zero = p.carrier().zero();
        let others: Vec<usize> = (0..n).filter(|&i| i != zero).collect();
        for mask in 0u32..(1 << others.len()) {
            let mut members = vec![false; n];
            members[zero] = true;
            for (bit, &i) in others.iter().enumerate() {
                members[i] = mask >> bit & 1 == 1;
            }
            let a = CrispSubset::new(p.id().clone(), members);
            for s in Sidedness::ALL {
                let crisp = is_h_ideal(p, &a, s)?.holds;
                let fuzzy = is_fuzzy_h_ideal(p, &a.characteristic(), s, true)?.holds;
                if crisp != fuzzy {
                    return Ok(Outcome::from(Some(
                        Witness::new("indicator")
                            .with("set", self.show_set(&a))
                            .with("side", s.as_str())
                            .with("crisp", crisp)
                            .with("fuzzy", fuzzy),
                    )));
                }
            }
        }
        Ok(Outcome::pass())
    }

    /// Fuzzy h-ideals of any side are h-bi-ideals and h-quasi-ideals.
    fn s2_hierarchy(&self) -> Result<Outcome> {
        let p = self.ctx.structure(CarrierKind::S)?;
        for s in Sidedness::ALL {
            for mu in &self.ideals(CarrierKind::S, s)?.members {
                let bi = is_fuzzy_h_bi_ideal(p, mu)?;
                if let Some(w) = self.failed("ideal-not-bi", &[("mu", mu)], bi) {
                    return Ok(Outcome::from(Some(w.with("side", s.as_str()))));
                }
                let quasi = is_fuzzy_h_quasi_ideal(p, mu)?;
                if let Some(w) = self.failed("ideal-not-quasi", &[("mu", mu)], quasi) {
                    return Ok(Outcome::from(Some(w.with("side", s.as_str()))));
                }
            }
        }
        Ok(Outcome::pass())
    }

    // section3 checks

    /// `(μ ∩ ν)⁺ = μ⁺ ∩ ν⁺` on pairs and triples of fuzzy h-ideals of L.
    fn l3_3(&self) -> Result<Outcome> {
        let fam = self.ideals(CarrierKind::L, Sidedness::TwoSided)?;
        for (mu, nu) in pairs(&fam.members) {
            let lhs = self.ctx.plus(&mu.intersect(nu)?)?;
            let rhs = self.ctx.plus(mu)?.intersect(&self.ctx.plus(nu)?)?;
            if let Some(w) = self.differ("intersection", &[("mu", mu), ("nu", nu)], &lhs, &rhs)? {
                return Ok(Outcome::from(Some(w)));
            }
            for xi in &fam.members {
                let lhs = self.ctx.plus(&mu.intersect(nu)?.intersect(xi)?)?;
                let rhs = self
                    .ctx
                    .plus(mu)?
                    .intersect(&self.ctx.plus(nu)?)?
                    .intersect(&self.ctx.plus(xi)?)?;
                if let Some(w) = self.differ("intersection", &[("mu", mu), ("nu", nu), ("xi", xi)], &lhs, &rhs)? {
                    return Ok(Outcome::from(Some(w)));
                }
            }
        }
        Ok(Outcome::pass())
    }

    /// Images of sided fuzzy h-ideals are fuzzy h-ideals of the same side.
    fn transfer_ideals(
        &self,
        from: CarrierKind,
        map: impl Fn(&FuzzySubset) -> Result<FuzzySubset>,
        to: CarrierKind,
        name: &str,
    ) -> Result<Outcome> {
        let target = self.ctx.structure(to)?;
        for s in Sidedness::ALL {
            for mu in &self.ideals(from, s)?.members {
                let image = map(mu)?;
                let check = is_fuzzy_h_ideal(target, &image, s, false)?;
                if let Some(w) = self.failed(name, &[("mu", mu), ("image", &image)], check) {
                    return Ok(Outcome::from(Some(w.with("side", s.as_str()))));
                }
            }
        }
        Ok(Outcome::pass())
    }

    fn op_kind(side: Side) -> CarrierKind {
        side.carrier_kind()
    }

    fn roundtrip(&self, side: Side) -> Result<Outcome> {
        let ok = Self::op_kind(side);
        for sigma in &self.ideals(CarrierKind::S, Sidedness::TwoSided)?.members {
            let back = self.down(side, &self.up(side, sigma)?)?;
            if let Some(w) = self.differ("roundtrip-S", &[("sigma", sigma)], &back, sigma)? {
                return Ok(Outcome::from(Some(w)));
            }
        }
        for mu in &self.ideals(ok, Sidedness::TwoSided)?.members {
            let back = self.up(side, &self.down(side, mu)?)?;
            if let Some(w) = self.differ(&format!("roundtrip-{}", ok.as_str()), &[("mu", mu)], &back, mu)? {
                return Ok(Outcome::from(Some(w)));
            }
        }
        Ok(Outcome::pass())
    }

    /// `σ₁ ⊆ σ₂ ⟺ up(σ₁) ⊆ up(σ₂)`.
    fn monotone(&self, side: Side) -> Result<Outcome> {
        let fam = self.ideals(CarrierKind::S, Sidedness::TwoSided)?;
        for (a, b) in pairs(&fam.members) {
            let before = a.is_subset(b)?;
            let after = self.up(side, a)?.is_subset(&self.up(side, b)?)?;
            if before != after {
                return Ok(Outcome::from(Some(
                    Witness::new("inclusion")
                        .with("sigma1", self.show(a))
                        .with("sigma2", self.show(b))
                        .with("before", before)
                        .with("after", after),
                )));
            }
        }
        Ok(Outcome::pass())
    }

    /// `up` preserves `⊕` and `∩`.
    fn lattice_ops(&self, side: Side) -> Result<Outcome> {
        let fam = self.ideals(CarrierKind::S, Sidedness::TwoSided)?;
        let ms = self.monoid(CarrierKind::S)?;
        let mo = self.monoid(Self::op_kind(side))?;
        for (a, b) in pairs(&fam.members) {
            let (ua, ub) = (self.up(side, a)?, self.up(side, b)?);
            let lhs = self.up(side, &fuzzy_sum(ms, a, b)?)?;
            let rhs = fuzzy_sum(mo, &ua, &ub)?;
            if let Some(w) = self.differ("sum", &[("sigma1", a), ("sigma2", b)], &lhs, &rhs)? {
                return Ok(Outcome::from(Some(w)));
            }
            let lhs = self.up(side, &a.intersect(b)?)?;
            let rhs = ua.intersect(&ub)?;
            if let Some(w) = self.differ("intersection", &[("sigma1", a), ("sigma2", b)], &lhs, &rhs)? {
                return Ok(Outcome::from(Some(w)));
            }
        }
        Ok(Outcome::pass())
    }

    /// Every family of S, L and R is closed under `∩` and `⊕`.
    fn c3_10(&self) -> Result<Outcome> {
        for kind in [CarrierKind::S, CarrierKind::L, CarrierKind::R] {
            let m = self.monoid(kind)?;
            for s in Sidedness::ALL {
                let fam = self.ideals(kind, s)?;
                for (a, b) in pairs(&fam.members) {
                    for (op, c) in [("intersection", a.intersect(b)?), ("sum", fuzzy_sum(m, a, b)?)] {
                        if !fam.contains(&c) {
                            return Ok(Outcome::from(Some(
                                Witness::new(format!("{op} leaves family"))
                                    .with("carrier", kind.as_str())
                                    .with("side", s.as_str())
                                    .with("mu", self.show(a))
                                    .with("nu", self.show(b))
                                    .with("result", self.show(&c)),
                            )));
                        }
                    }
                }
            }
        }
        Ok(Outcome::pass())
    }

    /// The indicator of a crisp h-ideal maps to the indicator of its image.
    fn indicator_square(&self, from: CarrierKind, side: Side) -> Result<Outcome> {
        for s in Sidedness::ALL {
            for a in self.h_ideals(from, s)?.iter() {
                let chi = a.characteristic();
                let (lhs, image) = if from == CarrierKind::S {
                    let img = match side {
                        Side::Left => self.ctx.crisp_plus_prime(a)?,
                        Side::Right => self.ctx.crisp_star_prime(a)?,
                    };
                    (self.up(side, &chi)?, img)
                } else {
                    let img = match side {
                        Side::Left => self.ctx.crisp_plus(a)?,
                        Side::Right => self.ctx.crisp_star(a)?,
                    };
                    (self.down(side, &chi)?, img)
                };
                let rhs = image.characteristic();
                if let Some(w) = self.differ("indicator", &[], &lhs, &rhs)? {
                    return Ok(Outcome::from(Some(
                        w.with("ideal", self.show_set(a)).with("side", s.as_str()),
                    )));
                }
            }
        }
        Ok(Outcome::pass())
    }

    /// `I ↦ I⁺′` (or `I*′`) is an inclusion-preserving bijection between
    /// the h-ideals of S and of the operator hemiring, inverted by `⁺`
    /// (or `*`).
    fn crisp_bijection(&self, side: Side) -> Result<Outcome> {
        let ok = Self::op_kind(side);
        let s_ideals = self.h_ideals(CarrierKind::S, Sidedness::TwoSided)?;
        let o_ideals = self.h_ideals(ok, Sidedness::TwoSided)?;
        if s_ideals.len() != o_ideals.len() {
            return Ok(Outcome::from(Some(
                Witness::new("count")
                    .with("S", s_ideals.len())
                    .with(ok.as_str(), o_ideals.len()),
            )));
        }
        let up = |a: &CrispSubset| match side {
            Side::Left => self.ctx.crisp_plus_prime(a),
            Side::Right => self.ctx.crisp_star_prime(a),
        };
        let down = |a: &CrispSubset| match side {
            Side::Left => self.ctx.crisp_plus(a),
            Side::Right => self.ctx.crisp_star(a),
        };
        let images = s_ideals.iter().map(up).collect::<Result<Vec<_>>>()?;
        for (i, img) in images.iter().enumerate() {
            if !o_ideals.contains(img) {
                return Ok(Outcome::from(Some(
                    Witness::new("image not an h-ideal")
                        .with("ideal", self.show_set(&s_ideals[i]))
                        .with("image", self.show_set(img)),
                )));
            }
            let back = down(img)?;
            if back != s_ideals[i] {
                return Ok(Outcome::from(Some(
                    Witness::new("inverse")
                        .with("ideal", self.show_set(&s_ideals[i]))
                        .with("back", self.show_set(&back)),
                )));
            }
        }
        for p in o_ideals.iter() {
            let back = up(&down(p)?)?;
            if &back != p {
                return Ok(Outcome::from(Some(
                    Witness::new("inverse")
                        .with("ideal", self.show_set(p))
                        .with("back", self.show_set(&back)),
                )));
            }
        }
        for (i, a) in s_ideals.iter().enumerate() {
            for (j, b) in s_ideals.iter().enumerate() {
                if a.is_subset(b) != images[i].is_subset(&images[j]) {
                    return Ok(Outcome::from(Some(
                        Witness::new("inclusion")
                            .with("I", self.show_set(a))
                            .with("J", self.show_set(b)),
                    )));
                }
            }
        }
        Ok(Outcome::note(Outcome::pass(), format!("{} h-ideals", s_ideals.len())))
    }

    /// `(μ ∘ₕ ν)⁺′ = μ⁺′ ∘ₕ ν⁺′`, or the same for `Γₕ`.
    fn composition(&self, generalized: bool) -> Result<Outcome> {
        let ps = self.ctx.structure(CarrierKind::S)?;
        let pl = self.ctx.structure(CarrierKind::L)?;
        let prod = |p, a: &FuzzySubset, b: &FuzzySubset| {
            if generalized {
                generalized_h_product(p, a, b)
            } else {
                simple_h_product(p, a, b)
            }
        };
        let fam = self.ideals(CarrierKind::S, Sidedness::TwoSided)?;
        for (mu, nu) in pairs(&fam.members) {
            let lhs = self.ctx.plus_prime(&prod(ps, mu, nu)?)?;
            let rhs = prod(pl, &self.ctx.plus_prime(mu)?, &self.ctx.plus_prime(nu)?)?;
            if let Some(w) = self.differ("product", &[("mu", mu), ("nu", nu)], &lhs, &rhs)? {
                return Ok(Outcome::from(Some(w)));
            }
        }
        Ok(Outcome::pass())
    }

    fn prime_flags(&self, checker: &PrimeChecker, zeta: &FuzzySubset) -> Result<(bool, bool)> {
        Ok((checker.is_prime(zeta)?.holds, checker.is_semiprime(zeta)?.holds))
    }

    /// Prime and semiprime members of the S family stay so under `⁺′` and
    /// `*′`, each relative to the enumerated family on its carrier.
    fn prime_fwd(&self) -> Result<Outcome> {
        let fs = self.ideals(CarrierKind::S, Sidedness::TwoSided)?;
        let cs = PrimeChecker::new(self.ctx.structure(CarrierKind::S)?, &fs.members);
        for side in [Side::Left, Side::Right] {
            let ok = Self::op_kind(side);
            let fo = self.ideals(ok, Sidedness::TwoSided)?;
            let co = PrimeChecker::new(self.ctx.structure(ok)?, &fo.members);
            for zeta in &fs.members {
                let (p, sp) = self.prime_flags(&cs, zeta)?;
                let image = self.up(side, zeta)?;
                let (ip, isp) = self.prime_flags(&co, &image)?;
                if (p && !ip) || (sp && !isp) {
                    return Ok(Outcome::from(Some(
                        Witness::new(if p && !ip { "prime lost" } else { "semiprime lost" })
                            .with("zeta", self.show(zeta))
                            .with("image", self.show(&image)),
                    ))
                    .note(self.family_note(&[&fs, &fo])));
                }
            }
        }
        let fl = self.ideals(CarrierKind::L, Sidedness::TwoSided)?;
        let fr = self.ideals(CarrierKind::R, Sidedness::TwoSided)?;
        Ok(Outcome::pass().note(self.family_note(&[&fs, &fl, &fr])))
    }

    fn prime_bwd(&self) -> Result<Outcome> {
        let fs = self.ideals(CarrierKind::S, Sidedness::TwoSided)?;
        let cs = PrimeChecker::new(self.ctx.structure(CarrierKind::S)?, &fs.members);
        let mut fams = vec![fs.clone()];
        for side in [Side::Left, Side::Right] {
            let ok = Self::op_kind(side);
            let fo = self.ideals(ok, Sidedness::TwoSided)?;
            let co = PrimeChecker::new(self.ctx.structure(ok)?, &fo.members);
            for zeta in &fo.members {
                let (p, sp) = self.prime_flags(&co, zeta)?;
                let image = self.down(side, zeta)?;
                let (ip, isp) = self.prime_flags(&cs, &image)?;
                if (p && !ip) || (sp && !isp) {
                    return Ok(Outcome::from(Some(
                        Witness::new(if p && !ip { "prime lost" } else { "semiprime lost" })
                            .with("zeta", self.show(zeta))
                            .with("image", self.show(&image)),
                    ))
                    .note(self.family_note(&[&fs, &fo])));
                }
            }
            fams.push(fo);
        }
        let refs: Vec<&FuzzyHIdealFamily> = fams.iter().map(|f| f.as_ref()).collect();
        Ok(Outcome::pass().note(self.family_note(&refs)))
    }

    fn family_note(&self, fams: &[&FuzzyHIdealFamily]) -> String {
        let parts: Vec<String> = fams
            .iter()
            .map(|f| format!("{} on {}: {}", f.kind, f.carrier.kind.as_str(), f.len()))
            .collect();
        format!("relative to enumerated families ({})", parts.join(", "))
    }

    fn check_kind(&self, kind: FamilyKind, carrier: CarrierKind, mu: &FuzzySubset) -> Result<CheckResult> {
        let p = self.ctx.structure(carrier)?;
        match kind {
            FamilyKind::BiIdeal => is_fuzzy_h_bi_ideal(p, mu),
            FamilyKind::QuasiIdeal => is_fuzzy_h_quasi_ideal(p, mu),
            FamilyKind::HIdeal(s) => is_fuzzy_h_ideal(p, mu, s, false),
        }
    }

    /// Members of the S family map into the same kind on L and R.
    fn kind_fwd(&self, kind: FamilyKind) -> Result<Outcome> {
        let fs = self.family(CarrierKind::S, kind)?;
        for side in [Side::Left, Side::Right] {
            for mu in &fs.members {
                let image = self.up(side, mu)?;
                let check = self.check_kind(kind, Self::op_kind(side), &image)?;
                if let Some(w) = self.failed(
                    &format!("{kind} on {}", side.as_str()),
                    &[("mu", mu), ("image", &image)],
                    check,
                ) {
                    return Ok(Outcome::from(Some(w)));
                }
            }
        }
        Ok(Outcome::pass())
    }

    fn kind_bwd(&self, kind: FamilyKind) -> Result<Outcome> {
        for side in [Side::Left, Side::Right] {
            let fo = self.family(Self::op_kind(side), kind)?;
            for mu in &fo.members {
                let image = self.down(side, mu)?;
                let check = self.check_kind(kind, CarrierKind::S, &image)?;
                if let Some(w) = self.failed(
                    &format!("{kind} from {}", side.as_str()),
                    &[("mu", mu), ("image", &image)],
                    check,
                ) {
                    return Ok(Outcome::from(Some(w)));
                }
            }
        }
        Ok(Outcome::pass())
    }

    // section4 checks

    /// `(μ×μ′) Γₕ (ν×ν′) = (μ Γₕ ν) × (μ′ Γₕ ν′)` on S×S.
    fn s4_coprod(&self) -> Result<Outcome> {
        let ps = self.ctx.structure(CarrierKind::S)?;
        let sq = self.ctx.square_structure()?;
        let fam = self.ideals(CarrierKind::S, Sidedness::TwoSided)?;
        let m = &fam.members;
        let mut simple = HashMap::new();
        for (i, a) in m.iter().enumerate() {
            for (j, b) in m.iter().enumerate() {
                simple.insert((i, j), simple_h_product(ps, a, b)?);
            }
        }
        let crosses: Vec<Vec<FuzzySubset>> = m
            .iter()
            .map(|a| m.iter().map(|b| self.ctx.cartesian(a, b)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        for i in 0..m.len() {
            for i2 in 0..m.len() {
                for j in 0..m.len() {
                    for j2 in 0..m.len() {
                        let lhs = simple_h_product(sq, &crosses[i][i2], &crosses[j][j2])?;
                        let rhs = self.ctx.cartesian(&simple[&(i, j)], &simple[&(i2, j2)])?;
                        let inputs = [("mu", &m[i]), ("mu2", &m[i2]), ("nu", &m[j]), ("nu2", &m[j2])];
                        if let Some(w) = self.differ("product", &inputs, &lhs, &rhs)? {
                            return Ok(Outcome::from(Some(w)));
                        }
                    }
                }
            }
        }
        Ok(Outcome::pass())
    }

    /// `(μ × σ)* = μ* × σ*` on pairs from R, and the `⁺` version from L.
    fn s4_commute_star(&self) -> Result<Outcome> {
        for side in [Side::Right, Side::Left] {
            let fo = self.ideals(Self::op_kind(side), Sidedness::TwoSided)?;
            for (mu, sigma) in pairs(&fo.members) {
                let phi = self.ctx.cartesian(mu, sigma)?;
                let lhs = match side {
                    Side::Left => self.ctx.product_plus(&phi)?,
                    Side::Right => self.ctx.product_star(&phi)?,
                };
                let rhs = self.ctx.cartesian(&self.down(side, mu)?, &self.down(side, sigma)?)?;
                if let Some(w) = self.differ("commute", &[("mu", mu), ("sigma", sigma)], &lhs, &rhs)? {
                    return Ok(Outcome::from(Some(w)));
                }
            }
        }
        Ok(Outcome::pass())
    }

    /// `(μ × σ)*′ = μ*′ × σ*′` on pairs from S, and the `⁺′` version.
    fn s4_commute_starprime(&self) -> Result<Outcome> {
        let fs = self.ideals(CarrierKind::S, Sidedness::TwoSided)?;
        for side in [Side::Right, Side::Left] {
            for (mu, sigma) in pairs(&fs.members) {
                let phi = self.ctx.cartesian(mu, sigma)?;
                let lhs = match side {
                    Side::Left => self.ctx.product_plus_prime(&phi)?,
                    Side::Right => self.ctx.product_star_prime(&phi)?,
                };
                let rhs = self.ctx.cartesian(&self.up(side, mu)?, &self.up(side, sigma)?)?;
                if let Some(w) = self.differ("commute", &[("mu", mu), ("sigma", sigma)], &lhs, &rhs)? {
                    return Ok(Outcome::from(Some(w)));
                }
            }
        }
        Ok(Outcome::pass())
    }

    /// `μ* × σ*` is a fuzzy h-ideal of S×S for `μ, σ` over R, and likewise
    /// with `⁺` over L.
    fn s4_hideal(&self) -> Result<Outcome> {
        let sq = self.ctx.square_structure()?;
        for side in [Side::Right, Side::Left] {
            let fo = self.ideals(Self::op_kind(side), Sidedness::TwoSided)?;
            for (mu, sigma) in pairs(&fo.members) {
                let phi = self.ctx.cartesian(&self.down(side, mu)?, &self.down(side, sigma)?)?;
                let check = is_fuzzy_h_ideal(sq, &phi, Sidedness::TwoSided, false)?;
                if let Some(w) = self.failed("square", &[("mu", mu), ("sigma", sigma)], check) {
                    return Ok(Outcome::from(Some(w)));
                }
            }
        }
        Ok(Outcome::pass())
    }

    /// For prime (semiprime) `μ, σ` over R, `μ* × σ*` is prime (semiprime)
    /// on S×S, relative to the products `θ × θ′` of S-family members; the
    /// same with `⁺` over L.
    fn s4_prime(&self) -> Result<Outcome> {
        let sq = self.ctx.square_structure()?;
        let fs = self.ideals(CarrierKind::S, Sidedness::TwoSided)?;
        let product_family: Vec<FuzzySubset> = pairs(&fs.members)
            .map(|(a, b)| self.ctx.cartesian(a, b))
            .collect::<Result<_>>()?;
        let csq = PrimeChecker::new(sq, &product_family);
        let note = format!(
            "relative to {} products of the {} fuzzy h-ideals of S",
            product_family.len(),
            fs.len()
        );
        for side in [Side::Right, Side::Left] {
            let ok = Self::op_kind(side);
            let fo = self.ideals(ok, Sidedness::TwoSided)?;
            let co = PrimeChecker::new(self.ctx.structure(ok)?, &fo.members);
            let flags = fo
                .members
                .iter()
                .map(|z| self.prime_flags(&co, z))
                .collect::<Result<Vec<_>>>()?;
            for (i, mu) in fo.members.iter().enumerate() {
                for (j, sigma) in fo.members.iter().enumerate() {
                    let prime = flags[i].0 && flags[j].0;
                    let semi = flags[i].1 && flags[j].1;
                    if !prime && !semi {
                        continue;
                    }
                    let phi = self.ctx.cartesian(&self.down(side, mu)?, &self.down(side, sigma)?)?;
                    for (wanted, label, res) in [
                        (prime, "prime", csq.is_prime(&phi)?),
                        (semi, "semiprime", csq.is_semiprime(&phi)?),
                    ] {
                        if wanted && !res.holds {
                            let mut w = Witness::new(format!("product not {label}"))
                                .with("side", side.as_str())
                                .with("mu", self.show(mu))
                                .with("sigma", self.show(sigma));
                            let inner = res.witness.expect("failed check has witness");
                            for (role, v) in inner.roles {
                                let role = match role.as_str() {
                                    "mu" => "theta".to_string(),
                                    "nu" => "eta".to_string(),
                                    _ => role,
                                };
                                w.roles.push((role, v));
                            }
                            return Ok(Outcome::from(Some(w)).note(note));
                        }
                    }
                }
            }
        }
        Ok(Outcome::pass().note(note))
    }

    /// `(μ*′ × σ*′)* = μ × σ`, `(μ* × σ*)*′ = μ × σ`, and inclusion is
    /// preserved. Needs a strong left unity and a right unity.
    fn t_cores2(&self) -> Result<Outcome> {
        match self.ctx.left_unity() {
            None => return Ok(Outcome::unmet("left unity")),
            Some(u) if !u.strong => return Ok(Outcome::unmet("strong left unity")),
            _ => {}
        }
        if self.ctx.right_unity().is_none() {
            return Ok(Outcome::unmet("right unity"));
        }
        let fs = self.ideals(CarrierKind::S, Sidedness::TwoSided)?;
        let fr = self.ideals(CarrierKind::R, Sidedness::TwoSided)?;
        let mut ups = Vec::new();
        for (mu, sigma) in pairs(&fs.members) {
            let phi = self.ctx.cartesian(mu, sigma)?;
            let up = self
                .ctx
                .cartesian(&self.ctx.star_prime(mu)?, &self.ctx.star_prime(sigma)?)?;
            let back = self.ctx.product_star(&up)?;
            if let Some(w) = self.differ("roundtrip-SxS", &[("mu", mu), ("sigma", sigma)], &back, &phi)? {
                return Ok(Outcome::from(Some(w)));
            }
            ups.push((phi, up));
        }
        for (mu, sigma) in pairs(&fr.members) {
            let phi = self.ctx.cartesian(mu, sigma)?;
            let down = self.ctx.cartesian(&self.ctx.star(mu)?, &self.ctx.star(sigma)?)?;
            let back = self.ctx.product_star_prime(&down)?;
            if let Some(w) = self.differ("roundtrip-RxR", &[("mu", mu), ("sigma", sigma)], &back, &phi)? {
                return Ok(Outcome::from(Some(w)));
            }
        }
        for (a, b) in pairs(&ups) {
            let before = a.0.is_subset(&b.0)?;
            let after = a.1.is_subset(&b.1)?;
            if before != after {
                return Ok(Outcome::from(Some(
                    Witness::new("inclusion")
                        .with("phi1", self.show(&a.0))
                        .with("phi2", self.show(&b.0))
                        .with("before", before)
                        .with("after", after),
                )));
            }
        }
        Ok(Outcome::pass())
    }
}

/// Builds a context and runs one suite.
pub fn run_suite(ctx: CorrespondenceContext, grid: &[Rational01], suite: Suite) -> Result<SuiteReport> {
    Workbench::new(ctx, grid)?.run_suite(suite)
}

pub fn run_check(ctx: CorrespondenceContext, grid: &[Rational01], id: &str) -> Result<PropertyResult> {
    Workbench::new(ctx, grid)?.run_check(id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::parse_grid;
    use crate::limits::Limits;
    use crate::structure::{boolean_semiring, from_hemiring, zn_ring, GammaHemiring};

    fn z(n: usize) -> GammaHemiring {
        from_hemiring(&zn_ring(n).unwrap(), 16).unwrap()
    }

    fn bench(g: GammaHemiring, grid: &str) -> Workbench {
        let ctx = CorrespondenceContext::new(g, &Limits::default()).unwrap();
        Workbench::new(ctx, &parse_grid(grid).unwrap()).unwrap()
    }

    #[test]
    fn catalog_is_complete_and_unique() {
        let ids = catalog();
        assert_eq!(ids.len(), 35);
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        assert_eq!(ids[5], "L3.3");
        assert_eq!(ids.last(), Some(&"T-cores2"));
    }

    #[test]
    fn single_checks() {
        let w = bench(z(2), "0,1/2,1");
        assert_eq!(w.run_check("T3.8-roundtrip").unwrap().status, Status::Pass);
        let w4 = bench(z(4), "0,1");
        let r = w4.run_check("L3.11").unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(w4.h_ideals(CarrierKind::S, Sidedness::TwoSided).unwrap().len(), 3);
        assert!(w4.run_check("nope").is_err());
    }

    #[test]
    fn null_action_is_unmet() {
        let g = GammaHemiring::from_fn(
            "Z2-null",
            zn_ring(2).unwrap().additive().clone(),
            zn_ring(2).unwrap().additive().clone(),
            |_, _, _| 0,
        )
        .unwrap();
        let w = bench(g, "0,1");
        let r = w.run_check("T3.8-roundtrip").unwrap();
        assert_eq!(r.status, Status::AssumptionUnmet);
        assert_eq!(r.missing(), Some("left unity"));
    }

    #[test]
    fn boolean_section3_has_no_failures() {
        let w = bench(from_hemiring(&boolean_semiring(), 16).unwrap(), "0,1");
        let rep = w.run_suite(Suite::Section3).unwrap();
        assert_eq!(rep.failures().count(), 0, "{}", rep.to_json());
    }

    #[test]
    fn report_json_shape() {
        let w = bench(z(2), "0,1");
        let rep = w.run_suite(Suite::Section2).unwrap();
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["structure"], "Z2");
        assert_eq!(v["grid"], serde_json::json!(["0", "1"]));
        assert_eq!(v["results"][0]["id"], "S2-axioms");
        assert_eq!(v["results"][0]["ms"], 0);
        assert_eq!(v["overall"], "pass");
    }
}
