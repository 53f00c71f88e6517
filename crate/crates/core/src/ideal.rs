//! Crisp and fuzzy h-ideals, h-bi-ideals, h-quasi-ideals and primality.
//!
//! Every checker works on a [`ProductStructure`], so the same code serves S
//! and the operator hemirings. Witnesses are the lexicographically first
//! failing tuple.

use std::cell::OnceCell;
use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::carrier::CarrierId;
use crate::error::{Error, Result};
use crate::fuzzy::{check_grid, generalized_h_product, simple_h_product, FuzzySubset, Rational01};
use crate::limits::Limits;
use crate::structure::ProductStructure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sidedness {
    Left,
    Right,
    TwoSided,
}

impl Sidedness {
    pub const ALL: [Sidedness; 3] = [Sidedness::Left, Sidedness::Right, Sidedness::TwoSided];

    pub fn as_str(self) -> &'static str {
        match self {
            Sidedness::Left => "left",
            Sidedness::Right => "right",
            Sidedness::TwoSided => "two-sided",
        }
    }

    pub fn parse(s: &str) -> Option<Sidedness> {
        Some(match s {
            "left" => Sidedness::Left,
            "right" => Sidedness::Right,
            "two-sided" | "two" | "both" => Sidedness::TwoSided,
            _ => return None,
        })
    }

    fn left(self) -> bool {
        self != Sidedness::Right
    }

    fn right(self) -> bool {
        self != Sidedness::Left
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Ideal,
    HIdeal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IdealKind {
    pub sidedness: Sidedness,
    pub flavor: Flavor,
}

/// A crisp subset of a named carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrispSubset {
    pub carrier: CarrierId,
    pub members: Vec<bool>,
}

impl CrispSubset {
    pub fn new(carrier: CarrierId, members: Vec<bool>) -> Self {
        CrispSubset { carrier, members }
    }

    pub fn from_indices(carrier: CarrierId, n: usize, idx: &[usize]) -> Self {
        let mut members = vec![false; n];
        for &i in idx {
            members[i] = true;
        }
        CrispSubset { carrier, members }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&i| self.members[i]).collect()
    }

    pub fn size(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_subset(&self, other: &CrispSubset) -> bool {
        self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b)
    }

    pub fn intersect(&self, other: &CrispSubset) -> CrispSubset {
        let members = self.members.iter().zip(&other.members).map(|(&a, &b)| a && b).collect();
        CrispSubset::new(self.carrier.clone(), members)
    }

    pub fn characteristic(&self) -> FuzzySubset {
        FuzzySubset::characteristic(self.carrier.clone(), &self.members)
    }

    pub fn display<'a>(&'a self, labels: &'a [String]) -> impl fmt::Display + 'a {
        DisplaySet { set: self, labels }
    }
}

struct DisplaySet<'a> {
    set: &'a CrispSubset,
    labels: &'a [String],
}

impl fmt::Display for DisplaySet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .set
            .indices()
            .into_iter()
            .map(|i| self.labels[i].as_str())
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A failing instance: the violated condition and role-labelled elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub condition: String,
    pub roles: Vec<(String, String)>,
}

impl Witness {
    pub fn new(condition: impl Into<String>) -> Self {
        Witness {
            condition: condition.into(),
            roles: Vec::new(),
        }
    }

    pub fn with(mut self, role: &str, value: impl fmt::Display) -> Self {
        self.roles.push((role.to_string(), value.to_string()));
        self
    }

    pub fn role(&self, name: &str) -> Option<&str> {
        self.roles.iter().find(|(r, _)| r == name).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.condition)?;
        if !self.roles.is_empty() {
            let parts: Vec<String> = self.roles.iter().map(|(r, v)| format!("{r}={v}")).collect();
            write!(f, " ({})", parts.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.roles.len() + 1))?;
        map.serialize_entry("condition", &self.condition)?;
        for (r, v) in &self.roles {
            map.serialize_entry(r, v)?;
        }
        map.end()
    }
}

/// `holds` exactly when `witness` is absent. `note` qualifies a pass, for
/// instance "relative to a family of 3".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub holds: bool,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn pass() -> Self {
        CheckResult {
            holds: true,
            witness: None,
            note: None,
        }
    }

    pub fn fail(w: Witness) -> Self {
        CheckResult {
            holds: false,
            witness: Some(w),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "holds")?,
            Some(w) => write!(f, "fails: {w}")?,
        }
        if let Some(n) = &self.note {
            write!(f, " [{n}]")?;
        }
        Ok(())
    }
}

fn label(p: &ProductStructure, i: usize) -> &str {
    p.carrier().label(i)
}

fn check_subset_on(p: &ProductStructure, a: &CrispSubset) -> Result<()> {
    if &a.carrier != p.id() || a.members.len() != p.len() {
        return Err(Error::CarrierMismatch {
            expected: p.id().to_string(),
            found: a.carrier.to_string(),
        });
    }
    Ok(())
}

fn check_fuzzy_on(p: &ProductStructure, mu: &FuzzySubset) -> Result<()> {
    if mu.carrier() != p.id() || mu.len() != p.len() {
        return Err(Error::CarrierMismatch {
            expected: p.id().to_string(),
            found: mu.carrier().to_string(),
        });
    }
    if !mu.is_nonempty() {
        return Err(Error::Precondition("fuzzy subset is identically zero".into()));
    }
    Ok(())
}

// ---------------------------------------------------------------- crisp

/// Closure under `+` and under products with arbitrary elements on the
/// side(s) given by `kind.sidedness`; with [`Flavor::HIdeal`] also the
/// h-condition.
pub fn is_ideal(p: &ProductStructure, a: &CrispSubset, kind: IdealKind) -> Result<CheckResult> {
    check_subset_on(p, a)?;
    let zero = p.carrier().zero();
    if !a.contains(zero) {
        return Err(Error::Precondition(format!(
            "{} does not contain zero",
            a.display(p.carrier().labels())
        )));
    }
    let n = p.len();
    let m = p.carrier();
    for x in 0..n {
        for y in 0..n {
            if a.contains(x) && a.contains(y) && !a.contains(m.add(x, y)) {
                return Ok(CheckResult::fail(
                    Witness::new("additive").with("x", label(p, x)).with("y", label(p, y)),
                ));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if kind.sidedness.left() && a.contains(y) {
                if let Some(&q) = p.pair_products(x, y).iter().find(|&&q| !a.contains(q)) {
                    return Ok(CheckResult::fail(
                        Witness::new("left-product")
                            .with("x", label(p, x))
                            .with("a", label(p, y))
                            .with("product", label(p, q)),
                    ));
                }
            }
            if kind.sidedness.right() && a.contains(x) {
                if let Some(&q) = p.pair_products(x, y).iter().find(|&&q| !a.contains(q)) {
                    return Ok(CheckResult::fail(
                        Witness::new("right-product")
                            .with("a", label(p, x))
                            .with("x", label(p, y))
                            .with("product", label(p, q)),
                    ));
                }
            }
        }
    }
    if kind.flavor == Flavor::HIdeal {
        if let Some(w) = crisp_h_violation(p, &a.members) {
            return Ok(CheckResult::fail(w));
        }
    }
    Ok(CheckResult::pass())
}

pub fn is_h_ideal(p: &ProductStructure, a: &CrispSubset, sidedness: Sidedness) -> Result<CheckResult> {
    is_ideal(
        p,
        a,
        IdealKind {
            sidedness,
            flavor: Flavor::HIdeal,
        },
    )
}

/// First `(x, a, b, z)` with `a, b ∈ A`, `x + a + z = b + z`, `x ∉ A`.
fn crisp_h_violation(p: &ProductStructure, a: &[bool]) -> Option<Witness> {
    let n = p.len();
    for x in (0..n).filter(|&x| !a[x]) {
        for u in (0..n).filter(|&u| a[u]) {
            for v in (0..n).filter(|&v| a[v]) {
                if p.h_related(x, u, v) {
                    let z = p.h_witness_z(x, u, v).expect("related");
                    return Some(
                        Witness::new("h-condition")
                            .with("x", label(p, x))
                            .with("a", label(p, u))
                            .with("b", label(p, v))
                            .with("z", label(p, z)),
                    );
                }
            }
        }
    }
    None
}

/// Grows `set` to a fixpoint of `step`, which reports elements to add.
fn fixpoint(mut set: Vec<bool>, step: impl Fn(&[bool]) -> Vec<usize>) -> Vec<bool> {
    loop {
        let new = step(&set);
        let mut changed = false;
        for i in new {
            if !set[i] {
                set[i] = true;
                changed = true;
            }
        }
        if !changed {
            return set;
        }
    }
}

fn sums_of(p: &ProductStructure, set: &[bool]) -> Vec<usize> {
    let n = p.len();
    let m = p.carrier();
    let mut out = Vec::new();
    for x in (0..n).filter(|&x| set[x]) {
        for y in (0..n).filter(|&y| set[y]) {
            out.push(m.add(x, y));
        }
    }
    out
}

fn h_condition_of(p: &ProductStructure, set: &[bool]) -> Vec<usize> {
    let n = p.len();
    let members: Vec<usize> = (0..n).filter(|&i| set[i]).collect();
    (0..n)
        .filter(|&x| !set[x] && members.iter().any(|&a| members.iter().any(|&b| p.h_related(x, a, b))))
        .collect()
}

fn sided_products_of(p: &ProductStructure, set: &[bool], sidedness: Sidedness) -> Vec<usize> {
    let n = p.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if (sidedness.left() && set[y]) || (sidedness.right() && set[x]) {
                out.extend_from_slice(p.pair_products(x, y));
            }
        }
    }
    out
}

/// Least (sided) h-ideal containing `a`.
pub fn h_closure(p: &ProductStructure, a: &CrispSubset, sidedness: Sidedness) -> Result<CrispSubset> {
    check_subset_on(p, a)?;
    let mut seed = a.members.clone();
    seed[p.carrier().zero()] = true;
    let members = h_closure_raw(p, &seed, sidedness);
    Ok(CrispSubset::new(a.carrier.clone(), members))
}

fn h_closure_raw(p: &ProductStructure, seed: &[bool], sidedness: Sidedness) -> Vec<bool> {
    fixpoint(seed.to_vec(), |s| {
        let mut add = sums_of(p, s);
        add.extend(sided_products_of(p, s, sidedness));
        add.extend(h_condition_of(p, s));
        add
    })
}

/// Least h-bi-ideal closed set containing `seed`: sums, `AΓA`, `AΓSΓA` and
/// the h-condition.
fn bi_closure_raw(p: &ProductStructure, seed: &[bool]) -> Vec<bool> {
    let n = p.len();
    fixpoint(seed.to_vec(), |s| {
        let mut add = sums_of(p, s);
        for x in (0..n).filter(|&x| s[x]) {
            for y in 0..n {
                if s[y] {
                    add.extend_from_slice(p.pair_products(x, y));
                }
                for &q in p.pair_products(x, y) {
                    for z in (0..n).filter(|&z| s[z]) {
                        add.extend_from_slice(p.pair_products(q, z));
                    }
                }
            }
        }
        add.extend(h_condition_of(p, s));
        add
    })
}

/// Crisp `A ∘ₕ B`: all `x` with `x + u + z = v + z` for `u, v` finite sums of
/// products `ab`, `a ∈ A`, `b ∈ B`.
pub fn crisp_h_product(p: &ProductStructure, a: &[bool], b: &[bool]) -> Vec<bool> {
    let n = p.len();
    let mut gens = vec![false; n];
    for x in (0..n).filter(|&x| a[x]) {
        for y in (0..n).filter(|&y| b[y]) {
            for &q in p.pair_products(x, y) {
                gens[q] = true;
            }
        }
    }
    let sums = p.carrier().additive_closure(&gens);
    let members: Vec<usize> = (0..n).filter(|&i| sums[i]).collect();
    (0..n)
        .map(|x| members.iter().any(|&u| members.iter().any(|&v| p.h_related(x, u, v))))
        .collect()
}

/// Least closed set for h-quasi-ideals: sums, the h-condition and
/// `(A ∘ₕ S) ∩ (S ∘ₕ A)`.
fn quasi_closure_raw(p: &ProductStructure, seed: &[bool]) -> Vec<bool> {
    let n = p.len();
    let all = vec![true; n];
    fixpoint(seed.to_vec(), |s| {
        let mut add = sums_of(p, s);
        add.extend(h_condition_of(p, s));
        let l = crisp_h_product(p, s, &all);
        let r = crisp_h_product(p, &all, s);
        add.extend((0..n).filter(|&x| l[x] && r[x]));
        add
    })
}

/// All sets closed under `closure` that contain `closure({0})`, found by
/// adding one element at a time and closing again.
fn enumerate_closed(
    p: &ProductStructure,
    limits: &Limits,
    what: &str,
    closure: impl Fn(&[bool]) -> Vec<bool>,
) -> Result<Vec<Vec<bool>>> {
    let n = p.len();
    if n > limits.max_enum_carrier {
        return Err(Error::capacity(
            format!("{what} of {}", p.id()),
            n as u128,
            limits.max_enum_carrier,
        ));
    }
    let mut seed = vec![false; n];
    seed[p.carrier().zero()] = true;
    let start = closure(&seed);
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut out = Vec::new();
    while let Some(set) = queue.pop_front() {
        for x in (0..n).filter(|&x| !set[x]) {
            let mut bigger = set.clone();
            bigger[x] = true;
            let closed = closure(&bigger);
            if !seen.contains(&closed) {
                if seen.len() >= limits.max_family {
                    return Err(Error::capacity(
                        format!("{what} of {}", p.id()),
                        seen.len() as u128 + 1,
                        limits.max_family,
                    ));
                }
                seen.insert(closed.clone());
                queue.push_back(closed);
            }
        }
        out.push(set);
    }
    out.sort_by(|a, b| {
        let ka: Vec<usize> = (0..n).filter(|&i| a[i]).collect();
        let kb: Vec<usize> = (0..n).filter(|&i| b[i]).collect();
        ka.len().cmp(&kb.len()).then(ka.cmp(&kb))
    });
    Ok(out)
}

/// All (sided) h-ideals, sorted by size and then by member indices. Each is
/// re-verified with [`is_h_ideal`].
pub fn enumerate_h_ideals(p: &ProductStructure, sidedness: Sidedness, limits: &Limits) -> Result<Vec<CrispSubset>> {
    let sets = enumerate_closed(p, limits, "h-ideal enumeration", |s| h_closure_raw(p, s, sidedness))?;
    let mut out = Vec::with_capacity(sets.len());
    for members in sets {
        let set = CrispSubset::new(p.id().clone(), members);
        let check = is_h_ideal(p, &set, sidedness)?;
        if !check.holds {
            return Err(Error::Precondition(format!(
                "h-closure produced a non-h-ideal {}: {check}",
                set.display(p.carrier().labels())
            )));
        }
        out.push(set);
    }
    Ok(out)
}

// ---------------------------------------------------------------- fuzzy

fn fuzzy_additive(p: &ProductStructure, mu: &FuzzySubset) -> Option<Witness> {
    let n = p.len();
    let m = p.carrier();
    for x in 0..n {
        for y in 0..n {
            if mu.get(m.add(x, y)) < mu.get(x).min(mu.get(y)) {
                return Some(Witness::new("additive").with("x", label(p, x)).with("y", label(p, y)));
            }
        }
    }
    None
}

fn fuzzy_h_condition(p: &ProductStructure, mu: &FuzzySubset) -> Option<Witness> {
    let n = p.len();
    for x in 0..n {
        for a in 0..n {
            for b in 0..n {
                if mu.get(x) < mu.get(a).min(mu.get(b)) && p.h_related(x, a, b) {
                    let z = p.h_witness_z(x, a, b).expect("related");
                    return Some(
                        Witness::new("h-condition")
                            .with("x", label(p, x))
                            .with("a", label(p, a))
                            .with("b", label(p, b))
                            .with("z", label(p, z)),
                    );
                }
            }
        }
    }
    None
}

/// `μ(x+y) ≥ min(μ(x), μ(y))`, the product inequalities for the chosen
/// side(s), and `μ(x) ≥ min(μ(a), μ(b))` whenever `x + a + z = b + z`.
/// With `require_top`, also `μ(0) = 1`.
pub fn is_fuzzy_h_ideal(
    p: &ProductStructure,
    mu: &FuzzySubset,
    sidedness: Sidedness,
    require_top: bool,
) -> Result<CheckResult> {
    check_fuzzy_on(p, mu)?;
    let zero = p.carrier().zero();
    if require_top && mu.get(zero) != Rational01::ONE {
        return Ok(CheckResult::fail(
            Witness::new("top")
                .with("x", label(p, zero))
                .with("value", mu.get(zero)),
        ));
    }
    if let Some(w) = fuzzy_additive(p, mu) {
        return Ok(CheckResult::fail(w));
    }
    let n = p.len();
    for x in 0..n {
        for y in 0..n {
            for &q in p.pair_products(x, y) {
                if sidedness.left() && mu.get(q) < mu.get(y) {
                    return Ok(CheckResult::fail(
                        Witness::new("left-product")
                            .with("x", label(p, x))
                            .with("y", label(p, y))
                            .with("product", label(p, q)),
                    ));
                }
                if sidedness.right() && mu.get(q) < mu.get(x) {
                    return Ok(CheckResult::fail(
                        Witness::new("right-product")
                            .with("x", label(p, x))
                            .with("y", label(p, y))
                            .with("product", label(p, q)),
                    ));
                }
            }
        }
    }
    if let Some(w) = fuzzy_h_condition(p, mu) {
        return Ok(CheckResult::fail(w));
    }
    Ok(CheckResult::pass())
}

/// Conditions: `μ(x+y) ≥ min`, `μ(xαy) ≥ min(μ(x), μ(y))`,
/// `μ(xαyβz) ≥ min(μ(x), μ(z))`, and the h-condition.
pub fn is_fuzzy_h_bi_ideal(p: &ProductStructure, mu: &FuzzySubset) -> Result<CheckResult> {
    check_fuzzy_on(p, mu)?;
    if let Some(w) = fuzzy_additive(p, mu) {
        return Ok(CheckResult::fail(w));
    }
    let n = p.len();
    for x in 0..n {
        for y in 0..n {
            if let Some(&q) = p
                .pair_products(x, y)
                .iter()
                .find(|&&q| mu.get(q) < mu.get(x).min(mu.get(y)))
            {
                return Ok(CheckResult::fail(
                    Witness::new("product")
                        .with("x", label(p, x))
                        .with("y", label(p, y))
                        .with("product", label(p, q)),
                ));
            }
        }
    }
    for x in 0..n {
        for z in 0..n {
            let floor = mu.get(x).min(mu.get(z));
            for y in 0..n {
                for &q in p.pair_products(x, y) {
                    if let Some(&r) = p.pair_products(q, z).iter().find(|&&r| mu.get(r) < floor) {
                        return Ok(CheckResult::fail(
                            Witness::new("chained-product")
                                .with("x", label(p, x))
                                .with("y", label(p, y))
                                .with("z", label(p, z))
                                .with("product", label(p, r)),
                        ));
                    }
                }
            }
        }
    }
    if let Some(w) = fuzzy_h_condition(p, mu) {
        return Ok(CheckResult::fail(w));
    }
    Ok(CheckResult::pass())
}

/// Conditions checked in the order additivity, h-condition, then
/// `(μ ∘ₕ χ) ∩ (χ ∘ₕ μ) ⊆ μ` with `χ` the whole carrier.
pub fn is_fuzzy_h_quasi_ideal(p: &ProductStructure, mu: &FuzzySubset) -> Result<CheckResult> {
    check_fuzzy_on(p, mu)?;
    if let Some(w) = fuzzy_additive(p, mu) {
        return Ok(CheckResult::fail(w));
    }
    if let Some(w) = fuzzy_h_condition(p, mu) {
        return Ok(CheckResult::fail(w));
    }
    let full = FuzzySubset::constant(p.id().clone(), p.len(), Rational01::ONE);
    let left = generalized_h_product(p, mu, &full)?;
    let right = generalized_h_product(p, &full, mu)?;
    let meet = left.intersect(&right)?;
    if let Some(x) = meet.first_excess(mu) {
        return Ok(CheckResult::fail(
            Witness::new("quasi-product")
                .with("x", label(p, x))
                .with("product", meet.get(x))
                .with("value", mu.get(x)),
        ));
    }
    Ok(CheckResult::pass())
}

// ---------------------------------------------------------------- families

/// Which family a [`FuzzyHIdealFamily`] enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    HIdeal(Sidedness),
    BiIdeal,
    QuasiIdeal,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::HIdeal(Sidedness::TwoSided) => write!(f, "fuzzy h-ideals"),
            FamilyKind::HIdeal(s) => write!(f, "fuzzy {} h-ideals", s.as_str()),
            FamilyKind::BiIdeal => write!(f, "fuzzy h-bi-ideals"),
            FamilyKind::QuasiIdeal => write!(f, "fuzzy h-quasi-ideals"),
        }
    }
}

/// Every fuzzy subset of a given kind with values in `grid` and `μ(0) = 1`.
#[derive(Debug, Clone)]
pub struct FuzzyHIdealFamily {
    pub carrier: CarrierId,
    pub kind: FamilyKind,
    pub grid: Vec<Rational01>,
    pub members: Vec<FuzzySubset>,
}

impl FuzzyHIdealFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, mu: &FuzzySubset) -> bool {
        self.members.iter().any(|m| m == mu)
    }
}

/// A grid-valued μ with `μ(0) = 1` belongs to the family iff each level set
/// `{μ ≥ v}` is closed, so members are exactly the descending chains of
/// closed sets indexed by the positive grid values.
fn chains(
    p: &ProductStructure,
    grid: &[Rational01],
    closed: &[Vec<bool>],
    limits: &Limits,
    what: &str,
) -> Result<Vec<FuzzySubset>> {
    check_grid(grid)?;
    let n = p.len();
    let levels = &grid[1..];
    let k = closed.len();
    let sub: Vec<Vec<bool>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| closed[i].iter().zip(&closed[j]).all(|(&a, &b)| !a || b))
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(levels.len());
    fn go(
        depth: usize,
        stack: &mut Vec<usize>,
        k: usize,
        levels: &[Rational01],
        sub: &[Vec<bool>],
        emit: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if depth == levels.len() {
            return emit(stack);
        }
        for j in 0..k {
            if stack.last().is_none_or(|&prev| sub[j][prev]) {
                stack.push(j);
                go(depth + 1, stack, k, levels, sub, emit)?;
                stack.pop();
            }
        }
        Ok(())
    }
    let mut emit = |chain: &[usize]| -> Result<()> {
        if out.len() >= limits.max_family {
            return Err(Error::capacity(
                format!("{what} of {}", p.id()),
                out.len() as u128 + 1,
                limits.max_family,
            ));
        }
        let mut values = vec![Rational01::ZERO; n];
        for (&set, &v) in chain.iter().zip(levels) {
            for x in (0..n).filter(|&x| closed[set][x]) {
                values[x] = v;
            }
        }
        out.push(FuzzySubset::new(p.id().clone(), values));
        Ok(())
    };
    go(0, &mut stack, k, levels, &sub, &mut emit)?;
    out.sort_by(|a, b| a.values().cmp(b.values()));
    Ok(out)
}

fn family(p: &ProductStructure, grid: &[Rational01], kind: FamilyKind, limits: &Limits) -> Result<FuzzyHIdealFamily> {
    let what = format!("{kind} enumeration");
    let closed = match kind {
        FamilyKind::HIdeal(s) => enumerate_closed(p, limits, &what, |x| h_closure_raw(p, x, s))?,
        FamilyKind::BiIdeal => enumerate_closed(p, limits, &what, |x| bi_closure_raw(p, x))?,
        FamilyKind::QuasiIdeal => enumerate_closed(p, limits, &what, |x| quasi_closure_raw(p, x))?,
    };
    let members = chains(p, grid, &closed, limits, &what)?;
    for mu in &members {
        let check = match kind {
            FamilyKind::HIdeal(s) => is_fuzzy_h_ideal(p, mu, s, true)?,
            FamilyKind::BiIdeal => is_fuzzy_h_bi_ideal(p, mu)?,
            FamilyKind::QuasiIdeal => is_fuzzy_h_quasi_ideal(p, mu)?,
        };
        if !check.holds {
            return Err(Error::Precondition(format!(
                "enumerated {kind} member {} fails its checker: {check}",
                mu.display(p.carrier().labels())
            )));
        }
    }
    Ok(FuzzyHIdealFamily {
        carrier: p.id().clone(),
        kind,
        grid: grid.to_vec(),
        members,
    })
}

/// All fuzzy (sided) h-ideals with values in `grid` and `μ(0) = 1`, sorted
/// by value vector.
pub fn enumerate_fuzzy_h_ideals(
    p: &ProductStructure,
    grid: &[Rational01],
    sidedness: Sidedness,
    limits: &Limits,
) -> Result<FuzzyHIdealFamily> {
    family(p, grid, FamilyKind::HIdeal(sidedness), limits)
}

pub fn enumerate_fuzzy_h_bi_ideals(
    p: &ProductStructure,
    grid: &[Rational01],
    limits: &Limits,
) -> Result<FuzzyHIdealFamily> {
    family(p, grid, FamilyKind::BiIdeal, limits)
}

pub fn enumerate_fuzzy_h_quasi_ideals(
    p: &ProductStructure,
    grid: &[Rational01],
    limits: &Limits,
) -> Result<FuzzyHIdealFamily> {
    family(p, grid, FamilyKind::QuasiIdeal, limits)
}

// ---------------------------------------------------------------- primes

/// Checks primality against a fixed finite family, caching `μ Γₕ ν` for
/// each pair the first time it is needed.
pub struct PrimeChecker<'a> {
    p: &'a ProductStructure,
    members: &'a [FuzzySubset],
    products: Vec<OnceCell<FuzzySubset>>,
}

impl<'a> PrimeChecker<'a> {
    pub fn new(p: &'a ProductStructure, members: &'a [FuzzySubset]) -> Self {
        let k = members.len();
        PrimeChecker {
            p,
            members,
            products: (0..k * k).map(|_| OnceCell::new()).collect(),
        }
    }

    pub fn family_size(&self) -> usize {
        self.members.len()
    }

    fn product(&self, i: usize, j: usize) -> Result<&FuzzySubset> {
        let cell = &self.products[i * self.members.len() + j];
        if let Some(v) = cell.get() {
            return Ok(v);
        }
        let v = simple_h_product(self.p, &self.members[i], &self.members[j])?;
        Ok(cell.get_or_init(|| v))
    }

    fn check(&self, zeta: &FuzzySubset, semi: bool) -> Result<CheckResult> {
        if zeta.carrier() != self.p.id() || zeta.len() != self.p.len() {
            return Err(Error::CarrierMismatch {
                expected: self.p.id().to_string(),
                found: zeta.carrier().to_string(),
            });
        }
        let note = format!("relative to a family of {}", self.members.len());
        if zeta.is_constant() {
            return Ok(CheckResult::fail(Witness::new("constant function").with("value", zeta.get(0))).with_note(note));
        }
        let labels = self.p.carrier().labels();
        let k = self.members.len();
        let inside: Vec<bool> = self.members.iter().map(|m| m.is_subset(zeta)).collect::<Result<_>>()?;
        for i in 0..k {
            let js: Vec<usize> = if semi { vec![i] } else { (0..k).collect() };
            for j in js {
                if inside[i] || inside[j] {
                    continue;
                }
                if self.product(i, j)?.is_subset(zeta)? {
                    let cond = if semi { "not semiprime" } else { "not prime" };
                    let mut w = Witness::new(cond).with("mu", self.members[i].display(labels));
                    if !semi {
                        w = w.with("nu", self.members[j].display(labels));
                    }
                    return Ok(CheckResult::fail(w).with_note(note));
                }
            }
        }
        Ok(CheckResult::pass().with_note(note))
    }

    pub fn is_prime(&self, zeta: &FuzzySubset) -> Result<CheckResult> {
        self.check(zeta, false)
    }

    pub fn is_semiprime(&self, zeta: &FuzzySubset) -> Result<CheckResult> {
        self.check(zeta, true)
    }
}

/// `ζ` is non-constant and `μ Γₕ ν ⊆ ζ ⟹ μ ⊆ ζ or ν ⊆ ζ` for all `μ, ν` in
/// the family. A pass is only as strong as the family.
pub fn is_prime_fuzzy_h_ideal(
    p: &ProductStructure,
    zeta: &FuzzySubset,
    family: &FuzzyHIdealFamily,
) -> Result<CheckResult> {
    PrimeChecker::new(p, &family.members).is_prime(zeta)
}

pub fn is_semiprime_fuzzy_h_ideal(
    p: &ProductStructure,
    zeta: &FuzzySubset,
    family: &FuzzyHIdealFamily,
) -> Result<CheckResult> {
    PrimeChecker::new(p, &family.members).is_semiprime(zeta)
}
