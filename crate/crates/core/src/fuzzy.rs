//! Fuzzy subsets of finite carriers with exact rational membership values.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::carrier::CarrierId;
use crate::error::{Error, Result};
use crate::structure::{FiniteMonoid, ProductStructure};

/// A rational number in `[0, 1]`, always in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational01(Ratio<u64>);

impl Rational01 {
    pub const ZERO: Rational01 = Rational01(Ratio::new_raw(0, 1));
    pub const ONE: Rational01 = Rational01(Ratio::new_raw(1, 1));

    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Parse(format!("{numer}/0 has a zero denominator")));
        }
        if numer > denom {
            return Err(Error::Parse(format!("{numer}/{denom} is greater than 1")));
        }
        Ok(Rational01(Ratio::new(numer, denom)))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }
}

impl fmt::Display for Rational01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rational01 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("{s:?} is not a rational p/q"));
        match s.split_once('/') {
            Some((p, q)) => Rational01::new(
                p.trim().parse().map_err(|_| bad())?,
                q.trim().parse().map_err(|_| bad())?,
            ),
            None => Rational01::new(s.parse().map_err(|_| bad())?, 1),
        }
    }
}

impl Serialize for Rational01 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational01 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a comma separated, strictly ascending chain that contains 0 and 1.
pub fn parse_grid(s: &str) -> Result<Vec<Rational01>> {
    let grid = s.split(',').map(str::parse).collect::<Result<Vec<Rational01>>>()?;
    check_grid(&grid)?;
    Ok(grid)
}

pub fn check_grid(grid: &[Rational01]) -> Result<()> {
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse("value grid must be strictly ascending".into()));
    }
    if grid.first() != Some(&Rational01::ZERO) || grid.last() != Some(&Rational01::ONE) {
        return Err(Error::Parse("value grid must start at 0 and end at 1".into()));
    }
    Ok(())
}

/// A fuzzy subset: one membership value per carrier element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FuzzySubset {
    carrier: CarrierId,
    values: Vec<Rational01>,
}

impl FuzzySubset {
    pub fn new(carrier: CarrierId, values: Vec<Rational01>) -> Self {
        FuzzySubset { carrier, values }
    }

    pub fn constant(carrier: CarrierId, n: usize, v: Rational01) -> Self {
        FuzzySubset::new(carrier, vec![v; n])
    }

    /// 1 on `members`, 0 elsewhere.
    pub fn characteristic(carrier: CarrierId, members: &[bool]) -> Self {
        let values = members
            .iter()
            .map(|&m| if m { Rational01::ONE } else { Rational01::ZERO })
            .collect();
        FuzzySubset::new(carrier, values)
    }

    pub fn carrier(&self) -> &CarrierId {
        &self.carrier
    }

    pub fn values(&self) -> &[Rational01] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> Rational01 {
        self.values[i]
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    /// Some value is positive.
    pub fn is_nonempty(&self) -> bool {
        self.values.iter().any(|v| !v.is_zero())
    }

    /// Distinct values in descending order.
    pub fn distinct_values(&self) -> Vec<Rational01> {
        let mut v = self.values.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.dedup();
        v
    }

    pub fn level_set(&self, t: Rational01) -> LevelSet {
        LevelSet {
            threshold: t,
            members: self.values.iter().map(|&v| v >= t).collect(),
        }
    }

    pub fn same_carrier(&self, other: &FuzzySubset) -> Result<()> {
        if self.carrier != other.carrier || self.len() != other.len() {
            return Err(Error::CarrierMismatch {
                expected: self.carrier.to_string(),
                found: other.carrier.to_string(),
            });
        }
        Ok(())
    }

    pub fn intersect(&self, other: &FuzzySubset) -> Result<FuzzySubset> {
        self.same_carrier(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| *a.min(b)).collect();
        Ok(FuzzySubset::new(self.carrier.clone(), values))
    }

    /// Pointwise `≤`.
    pub fn is_subset(&self, other: &FuzzySubset) -> Result<bool> {
        self.same_carrier(other)?;
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a <= b))
    }

    /// Pointwise equality, also requiring the same carrier.
    pub fn equals(&self, other: &FuzzySubset) -> Result<bool> {
        self.same_carrier(other)?;
        Ok(self.values == other.values)
    }

    /// First element where `self` exceeds `other`.
    pub fn first_excess(&self, other: &FuzzySubset) -> Option<usize> {
        self.values.iter().zip(&other.values).position(|(a, b)| a > b)
    }

    pub fn first_difference(&self, other: &FuzzySubset) -> Option<usize> {
        self.values.iter().zip(&other.values).position(|(a, b)| a != b)
    }

    pub fn display<'a>(&'a self, labels: &'a [String]) -> impl fmt::Display + 'a {
        DisplayFuzzy { mu: self, labels }
    }
}

struct DisplayFuzzy<'a> {
    mu: &'a FuzzySubset,
    labels: &'a [String],
}

impl fmt::Display for DisplayFuzzy<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .mu
            .values
            .iter()
            .zip(self.labels)
            .map(|(v, l)| format!("{l}:{v}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSet {
    pub threshold: Rational01,
    pub members: Vec<bool>,
}

/// `(μ₁ ⊕ μ₂)(x) = max { min(μ₁(u), μ₂(v)) : u + v = x }`.
pub fn fuzzy_sum(m: &FiniteMonoid, mu1: &FuzzySubset, mu2: &FuzzySubset) -> Result<FuzzySubset> {
    mu1.same_carrier(mu2)?;
    check_len(m.len(), mu1)?;
    let n = m.len();
    let mut values = vec![Rational01::ZERO; n];
    for u in 0..n {
        for v in 0..n {
            let x = m.add(u, v);
            let val = mu1.get(u).min(mu2.get(v));
            if val > values[x] {
                values[x] = val;
            }
        }
    }
    Ok(FuzzySubset::new(mu1.carrier.clone(), values))
}

/// `(μ × σ)(x, y) = min(μ(x), σ(y))`, indexed `x·|σ| + y`.
pub fn cartesian(mu: &FuzzySubset, sigma: &FuzzySubset, carrier: CarrierId) -> FuzzySubset {
    let mut values = Vec::with_capacity(mu.len() * sigma.len());
    for &a in &mu.values {
        for &b in &sigma.values {
            values.push(a.min(b));
        }
    }
    FuzzySubset::new(carrier, values)
}

fn check_len(n: usize, mu: &FuzzySubset) -> Result<()> {
    if mu.len() != n {
        return Err(Error::CarrierMismatch {
            expected: format!("{n} elements"),
            found: format!("{} ({} values)", mu.carrier, mu.len()),
        });
    }
    Ok(())
}

fn check_on(p: &ProductStructure, mu: &FuzzySubset) -> Result<()> {
    if mu.carrier() != p.id() {
        return Err(Error::CarrierMismatch {
            expected: p.id().to_string(),
            found: mu.carrier().to_string(),
        });
    }
    check_len(p.len(), mu)
}

/// Products `p ∈ pair_products(a, b)` with `μ(a) ≥ t` and `θ(b) ≥ t`.
fn generators_at(p: &ProductStructure, mu: &FuzzySubset, theta: &FuzzySubset, t: Rational01) -> Vec<bool> {
    let n = p.len();
    let mut out = vec![false; n];
    for a in (0..n).filter(|&a| mu.get(a) >= t) {
        for b in (0..n).filter(|&b| theta.get(b) >= t) {
            for &q in p.pair_products(a, b) {
                out[q] = true;
            }
        }
    }
    out
}

fn h_product(p: &ProductStructure, mu: &FuzzySubset, theta: &FuzzySubset, closed: bool) -> Result<FuzzySubset> {
    check_on(p, mu)?;
    check_on(p, theta)?;
    let n = p.len();
    let mut thresholds: Vec<Rational01> = mu
        .distinct_values()
        .into_iter()
        .chain(theta.distinct_values())
        .filter(|t| !t.is_zero())
        .collect();
    thresholds.sort_unstable_by(|a, b| b.cmp(a));
    thresholds.dedup();

    let mut values = vec![Rational01::ZERO; n];
    let mut settled = vec![false; n];
    for t in thresholds {
        let mut level = generators_at(p, mu, theta, t);
        if closed {
            level = p.carrier().additive_closure(&level);
        }
        let members: Vec<usize> = (0..n).filter(|&i| level[i]).collect();
        if members.is_empty() {
            continue;
        }
        for x in 0..n {
            if settled[x] {
                continue;
            }
            let hit = members.iter().any(|&u| members.iter().any(|&v| p.h_related(x, u, v)));
            if hit {
                values[x] = t;
                settled[x] = true;
            }
        }
    }
    Ok(FuzzySubset::new(mu.carrier.clone(), values))
}

/// Generalized h-product `μ ∘ₕ θ`: the sup over decompositions
/// `x + Σ aᵢγᵢbᵢ + z = Σ cⱼδⱼdⱼ + z` (independent numbers of terms on the
/// two sides) of the min of `μ(aᵢ), μ(cⱼ), θ(bᵢ), θ(dⱼ)`.
///
/// Computed level by level: at threshold `t` the admissible sums form the
/// additive closure of the products whose factors clear `t`.
pub fn generalized_h_product(p: &ProductStructure, mu: &FuzzySubset, theta: &FuzzySubset) -> Result<FuzzySubset> {
    h_product(p, mu, theta, true)
}

/// Simple h-product `μ Γₕ θ`: single-term decompositions `x + aγb + z = cδd + z`.
pub fn simple_h_product(p: &ProductStructure, mu: &FuzzySubset, theta: &FuzzySubset) -> Result<FuzzySubset> {
    h_product(p, mu, theta, false)
}
