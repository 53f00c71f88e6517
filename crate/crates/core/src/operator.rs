//! Left and right operator hemirings, realized as finite closures of the
//! action maps that formal sums induce on S.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::carrier::{CarrierId, CarrierKind};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::structure::{validate_hemiring, FiniteMonoid, GammaHemiring, Hemiring, ProductStructure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn carrier_kind(self) -> CarrierKind {
        match self {
            Side::Left => CarrierKind::L,
            Side::Right => CarrierKind::R,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// A non-empty formal sum of generators. Terms are stored in the order the
/// notation uses: `(x, γ)` for `[x,γ]` on the left, `(γ, x)` for `[γ,x]` on
/// the right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalSum {
    side: Side,
    terms: Vec<(usize, usize)>,
}

impl FormalSum {
    pub fn new(side: Side, terms: Vec<(usize, usize)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Precondition("a formal sum needs at least one term".into()));
        }
        Ok(FormalSum { side, terms })
    }

    /// `Σ [xᵢ, αᵢ]`.
    pub fn left(terms: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(Side::Left, terms)
    }

    /// `Σ [αᵢ, xᵢ]`.
    pub fn right(terms: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(Side::Right, terms)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn terms(&self) -> &[(usize, usize)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(x, γ)` regardless of side.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.terms.iter().map(move |&(p, q)| match self.side {
            Side::Left => (p, q),
            Side::Right => (q, p),
        })
    }

    fn from_pairs(side: Side, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let terms = pairs
            .into_iter()
            .map(|(x, g)| match side {
                Side::Left => (x, g),
                Side::Right => (g, x),
            })
            .collect();
        FormalSum { side, terms }
    }

    pub fn concat(&self, other: &FormalSum) -> Result<FormalSum> {
        same_side(self, other)?;
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Ok(FormalSum { side: self.side, terms })
    }

    /// The formal sum representing the product of two classes:
    /// `Σᵢⱼ [xᵢαᵢyⱼ, βⱼ]` on the left, `Σᵢⱼ [αᵢ, xᵢβⱼyⱼ]` on the right.
    pub fn product(&self, other: &FormalSum, g: &GammaHemiring) -> Result<FormalSum> {
        same_side(self, other)?;
        let mut pairs = Vec::with_capacity(self.len() * other.len());
        for (x, a) in self.pairs() {
            for (y, b) in other.pairs() {
                pairs.push(match self.side {
                    Side::Left => (g.act(x, a, y), b),
                    Side::Right => (g.act(x, b, y), a),
                });
            }
        }
        Ok(FormalSum::from_pairs(self.side, pairs))
    }

    pub fn display<'a>(&'a self, g: &'a GammaHemiring) -> impl fmt::Display + 'a {
        DisplaySum { sum: self, g }
    }
}

fn same_side(a: &FormalSum, b: &FormalSum) -> Result<()> {
    if a.side != b.side {
        return Err(Error::Precondition("formal sums live on different sides".into()));
    }
    Ok(())
}

struct DisplaySum<'a> {
    sum: &'a FormalSum,
    g: &'a GammaHemiring,
}

impl fmt::Display for DisplaySum<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .sum
            .pairs()
            .map(|(x, a)| {
                let (xs, gs) = (self.g.s().label(x), self.g.gamma().label(a));
                match self.sum.side {
                    Side::Left => format!("[{xs},{gs}]"),
                    Side::Right => format!("[{gs},{xs}]"),
                }
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// The total map `S → S` induced by a formal sum, as a table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionMap(Vec<usize>);

impl ActionMap {
    pub fn from_table(table: Vec<usize>) -> Self {
        ActionMap(table)
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.0[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_additive(&self, s: &FiniteMonoid) -> bool {
        let n = s.len();
        self.0[s.zero()] == s.zero()
            && (0..n).all(|a| (0..n).all(|b| self.0[s.add(a, b)] == s.add(self.0[a], self.0[b])))
    }

    pub fn pointwise_sum(&self, other: &ActionMap, s: &FiniteMonoid) -> ActionMap {
        ActionMap(self.0.iter().zip(&other.0).map(|(&a, &b)| s.add(a, b)).collect())
    }

    /// `a ↦ self(other(a))`.
    pub fn after(&self, other: &ActionMap) -> ActionMap {
        ActionMap(other.0.iter().map(|&a| self.0[a]).collect())
    }

    /// The set `{self(s) : s ∈ S}` as a membership vector.
    pub fn image(&self, n: usize) -> Vec<bool> {
        let mut out = vec![false; n];
        for &v in &self.0 {
            out[v] = true;
        }
        out
    }
}

/// Left: `a ↦ Σ xᵢαᵢa`. Right: `a ↦ Σ aαᵢxᵢ`.
pub fn realize(g: &GammaHemiring, f: &FormalSum) -> Result<ActionMap> {
    let (ns, ng) = (g.s().len(), g.gamma().len());
    if f.pairs().any(|(x, a)| x >= ns || a >= ng) {
        return Err(Error::Precondition("formal sum term out of range".into()));
    }
    let s = g.s();
    let table = (0..ns)
        .map(|a| {
            s.sum(f.pairs().map(|(x, al)| match f.side {
                Side::Left => g.act(x, al, a),
                Side::Right => g.act(a, al, x),
            }))
        })
        .collect();
    Ok(ActionMap(table))
}

/// The defining relation of the quotient: both sums act identically on S.
pub fn rho_equivalent(g: &GammaHemiring, f1: &FormalSum, f2: &FormalSum) -> Result<bool> {
    same_side(f1, f2)?;
    Ok(realize(g, f1)? == realize(g, f2)?)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Composes left operators as `(f·g)(a) = g(f(a))`. Fault injection only.
    #[doc(hidden)]
    pub reverse_left_orientation: bool,
}

/// A left or right operator hemiring: distinct action maps closed under
/// pointwise addition and composition, with one realizing formal sum each.
#[derive(Debug, Clone)]
pub struct OperatorHemiring {
    side: Side,
    structure: String,
    maps: Vec<ActionMap>,
    index: HashMap<ActionMap, usize>,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    provenance: Vec<FormalSum>,
    generators: Vec<usize>,
    n_gamma: usize,
}

/// `op<k>`, the stable label of the k-th operator in discovery order.
pub fn operator_label(k: usize) -> String {
    format!("op{k}")
}

impl OperatorHemiring {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn structure_name(&self) -> &str {
        &self.structure
    }

    pub fn carrier_id(&self) -> CarrierId {
        CarrierId::new(self.structure.clone(), self.side.carrier_kind())
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[ActionMap] {
        &self.maps
    }

    pub fn map(&self, i: usize) -> &ActionMap {
        &self.maps[i]
    }

    pub fn index_of(&self, m: &ActionMap) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, i: usize, j: usize) -> usize {
        self.add[i * self.len() + j]
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.len() + j]
    }

    pub fn provenance(&self, i: usize) -> &FormalSum {
        &self.provenance[i]
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(operator_label).collect()
    }

    /// Index of the class of `[x,γ]` (left) or `[γ,x]` (right).
    #[inline]
    pub fn embed(&self, x: usize, gamma: usize) -> usize {
        self.generators[x * self.n_gamma + gamma]
    }

    pub fn additive_monoid(&self) -> FiniteMonoid {
        FiniteMonoid::from_flat(self.labels(), self.zero, self.add.clone()).expect("closure tables are well-shaped")
    }

    pub fn as_hemiring(&self) -> Hemiring {
        Hemiring::from_flat(
            format!("{}({})", self.side.carrier_kind().as_str(), self.structure),
            self.additive_monoid(),
            self.mul.clone(),
        )
        .expect("closure tables are well-shaped")
    }

    pub fn identity(&self) -> Option<usize> {
        self.maps.iter().position(ActionMap::is_identity)
    }
}

/// Product structure of the operator hemiring seen as a hemiring.
pub fn hemiring_as_product_structure(op: &OperatorHemiring) -> ProductStructure {
    let n = op.len();
    let monoid = op.additive_monoid();
    ProductStructure::new(op.carrier_id(), monoid, |a, b| vec![op.mul[a * n + b]])
}

pub fn build_operator(g: &GammaHemiring, side: Side, limits: &Limits) -> Result<OperatorHemiring> {
    build_operator_with(g, side, limits, BuildOptions::default())
}

/// Breadth-first closure from the generators `[x,γ]` in `(x, γ)` order.
/// Each new map records the first derivation that produced it.
pub fn build_operator_with(
    g: &GammaHemiring,
    side: Side,
    limits: &Limits,
    opts: BuildOptions,
) -> Result<OperatorHemiring> {
    let s = g.s();
    let (ns, ng) = (s.len(), g.gamma().len());
    let mut maps: Vec<ActionMap> = Vec::new();
    let mut index: HashMap<ActionMap, usize> = HashMap::new();
    let mut provenance: Vec<FormalSum> = Vec::new();
    let mut generators = Vec::with_capacity(ns * ng);

    let cap = limits.max_operators;
    let mut intern = |m: ActionMap,
                      f: &dyn Fn() -> FormalSum,
                      maps: &mut Vec<ActionMap>,
                      provenance: &mut Vec<FormalSum>|
     -> Result<usize> {
        if let Some(&i) = index.get(&m) {
            return Ok(i);
        }
        if maps.len() >= cap {
            return Err(Error::capacity(
                format!("{} operator closure of {}", side.as_str(), g.name()),
                maps.len() as u128 + 1,
                cap,
            ));
        }
        let i = maps.len();
        index.insert(m.clone(), i);
        maps.push(m);
        provenance.push(f());
        Ok(i)
    };

    for x in 0..ns {
        for al in 0..ng {
            let f = FormalSum::from_pairs(side, [(x, al)]);
            let m = realize(g, &f)?;
            let i = intern(m, &|| f.clone(), &mut maps, &mut provenance)?;
            generators.push(i);
        }
    }

    let compose = |f: &ActionMap, h: &ActionMap| -> ActionMap {
        let right_first = match side {
            Side::Left => opts.reverse_left_orientation,
            Side::Right => true,
        };
        if right_first {
            h.after(f)
        } else {
            f.after(h)
        }
    };

    let mut add_t: HashMap<(usize, usize), usize> = HashMap::new();
    let mut mul_t: HashMap<(usize, usize), usize> = HashMap::new();
    let mut cursor = 0;
    while cursor < maps.len() {
        let i = cursor;
        for j in 0..=i {
            let sum = maps[i].pointwise_sum(&maps[j], s);
            let (pi, pj) = (provenance[i].clone(), provenance[j].clone());
            let k = intern(sum, &|| pj.concat(&pi).expect("same side"), &mut maps, &mut provenance)?;
            add_t.insert((i, j), k);
            add_t.insert((j, i), k);

            for (a, b) in [(i, j), (j, i)] {
                if mul_t.contains_key(&(a, b)) {
                    continue;
                }
                let prod = compose(&maps[a], &maps[b]);
                let (pa, pb) = (provenance[a].clone(), provenance[b].clone());
                let k = intern(
                    prod,
                    &|| pa.product(&pb, g).expect("same side"),
                    &mut maps,
                    &mut provenance,
                )?;
                mul_t.insert((a, b), k);
            }
        }
        let n = maps.len() as u128;
        if n * n > limits.max_table_cells as u128 {
            return Err(Error::capacity(
                format!("{} operator tables of {}", side.as_str(), g.name()),
                n * n,
                limits.max_table_cells,
            ));
        }
        cursor += 1;
    }

    let n = maps.len();
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            add[i * n + j] = add_t[&(i, j)];
            mul[i * n + j] = mul_t[&(i, j)];
        }
    }
    let zero_map = ActionMap(vec![s.zero(); ns]);
    let zero = *index
        .get(&zero_map)
        .ok_or_else(|| Error::Precondition(format!("{} has no zero operator; is it a Γ-hemiring?", g.name())))?;

    let op = OperatorHemiring {
        side,
        structure: g.name().to_string(),
        maps,
        index,
        add,
        mul,
        zero,
        provenance,
        generators,
        n_gamma: ng,
    };

    if (n as u128).pow(3) <= limits.max_table_cells as u128 {
        let report = validate_hemiring(&op.as_hemiring(), limits.max_violations);
        if !report.valid {
            return Err(Error::Invalid {
                what: format!("{} operator hemiring of {}", side.as_str(), g.name()),
                report,
            });
        }
    }
    Ok(op)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unity {
    pub side: Side,
    pub strong: bool,
    pub witness: FormalSum,
}

/// Present iff the identity map lies in the closure. `strong` iff a single
/// generator realizes it, in which case that generator is the witness.
pub fn find_unity(g: &GammaHemiring, op: &OperatorHemiring) -> Option<Unity> {
    let id = op.identity()?;
    let ng = g.gamma().len();
    let strong_gen = (0..g.s().len() * ng).find(|&k| op.generators[k] == id);
    let witness = match strong_gen {
        Some(k) => FormalSum::from_pairs(op.side, [(k / ng, k % ng)]),
        None => op.provenance(id).clone(),
    };
    Some(Unity {
        side: op.side,
        strong: strong_gen.is_some(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{boolean_semiring, from_hemiring, matrix_gamma_hemiring, zn_ring};

    fn z(n: usize) -> GammaHemiring {
        from_hemiring(&zn_ring(n).unwrap(), 16).unwrap()
    }

    fn b() -> GammaHemiring {
        from_hemiring(&boolean_semiring(), 16).unwrap()
    }

    #[test]
    fn realize_examples() {
        let z2 = z(2);
        let twice = FormalSum::left(vec![(1, 1), (1, 1)]).unwrap();
        assert_eq!(realize(&z2, &twice).unwrap().table(), &[0, 0]);
        let zero = FormalSum::left(vec![(0, 1)]).unwrap();
        assert_eq!(realize(&z2, &zero).unwrap().table(), &[0, 0]);
        let id = FormalSum::left(vec![(1, 1)]).unwrap();
        assert!(realize(&b(), &id).unwrap().is_identity());
    }

    #[test]
    fn empty_sums_are_rejected() {
        assert!(FormalSum::left(vec![]).is_err());
    }

    #[test]
    fn rho_examples() {
        let z2 = z(2);
        let f = |t: Vec<(usize, usize)>| FormalSum::left(t).unwrap();
        assert!(rho_equivalent(&z2, &f(vec![(1, 1), (1, 1)]), &f(vec![(0, 0)])).unwrap());
        assert!(rho_equivalent(&b(), &f(vec![(1, 1)]), &f(vec![(1, 1), (1, 1)])).unwrap());
        assert!(!rho_equivalent(&z2, &f(vec![(1, 1)]), &f(vec![(0, 0)])).unwrap());
        let r = FormalSum::right(vec![(1, 1)]).unwrap();
        assert!(rho_equivalent(&z2, &f(vec![(1, 1)]), &r).is_err());
    }

    #[test]
    fn small_closures() {
        let lim = Limits::default();
        let lb = build_operator(&b(), Side::Left, &lim).unwrap();
        assert_eq!(lb.len(), 2);
        let lz2 = build_operator(&z(2), Side::Left, &lim).unwrap();
        assert_eq!(lz2.len(), 2);
        assert_eq!(lz2.add(1, 1), lz2.zero());
        let lz4 = build_operator(&z(4), Side::Left, &lim).unwrap();
        assert_eq!(lz4.len(), 4);
        let by2 = lz4.embed(2, 1);
        assert_eq!(lz4.map(by2).table(), &[0, 2, 0, 2]);
    }

    #[test]
    fn embedding_of_zero_is_zero_and_additive() {
        let lim = Limits::default();
        for g in [b(), z(2), z(3), z(4)] {
            for side in [Side::Left, Side::Right] {
                let op = build_operator(&g, side, &lim).unwrap();
                let ns = g.s().len();
                for gm in 0..g.gamma().len() {
                    assert_eq!(op.embed(g.s().zero(), gm), op.zero());
                    for x in 0..ns {
                        for y in 0..ns {
                            assert_eq!(op.embed(g.s().add(x, y), gm), op.add(op.embed(x, gm), op.embed(y, gm)));
                        }
                    }
                }
                for (i, m) in op.maps().iter().enumerate() {
                    assert!(m.is_additive(g.s()));
                    assert_eq!(&realize(&g, op.provenance(i)).unwrap(), m);
                }
            }
        }
    }

    #[test]
    fn unities() {
        let lim = Limits::default();
        let z2 = z(2);
        let l = build_operator(&z2, Side::Left, &lim).unwrap();
        let u = find_unity(&z2, &l).unwrap();
        assert!(u.strong);
        assert_eq!(u.witness.terms(), &[(1, 1)]);

        let m = matrix_gamma_hemiring(&boolean_semiring(), 2, 1, &lim).unwrap();
        let lm = build_operator(&m, Side::Left, &lim).unwrap();
        assert_eq!(lm.len(), 16);
        let u = find_unity(&m, &lm).unwrap();
        assert!(!u.strong);
        assert_eq!(u.witness.len(), 2);
        assert!(realize(&m, &u.witness).unwrap().is_identity());
    }

    #[test]
    fn null_action_has_no_unity() {
        let z2 = z(2);
        let null = GammaHemiring::from_fn("null", z2.s().clone(), z2.gamma().clone(), |_, _, _| 0).unwrap();
        let l = build_operator(&null, Side::Left, &Limits::default()).unwrap();
        assert_eq!(l.len(), 1);
        assert!(find_unity(&null, &l).is_none());
    }

    #[test]
    fn left_multiplication_matches_pairwise_sum() {
        let lim = Limits::default();
        let m = matrix_gamma_hemiring(&boolean_semiring(), 2, 1, &lim).unwrap();
        for side in [Side::Left, Side::Right] {
            let op = build_operator(&m, side, &lim).unwrap();
            for i in 0..op.len() {
                for j in 0..op.len() {
                    let f = op.provenance(i).product(op.provenance(j), &m).unwrap();
                    assert_eq!(realize(&m, &f).unwrap(), *op.map(op.mul(i, j)));
                }
            }
        }
    }

    #[test]
    fn operator_cap() {
        let tight = Limits {
            max_operators: 1,
            ..Limits::default()
        };
        assert!(build_operator(&z(3), Side::Left, &tight).unwrap_err().is_capacity());
    }
}
