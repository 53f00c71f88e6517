//! Transfers of fuzzy and crisp subsets between S and its operator
//! hemirings, and their versions on the squares S×S, L×L, R×R.
//!
//! Γ and S are finite, so every infimum is a minimum.

use std::cell::OnceCell;

use crate::carrier::{CarrierId, CarrierKind};
use crate::error::{Error, Result};
use crate::fuzzy::{cartesian, FuzzySubset, Rational01};
use crate::ideal::CrispSubset;
use crate::limits::Limits;
use crate::operator::{
    build_operator_with, find_unity, hemiring_as_product_structure, BuildOptions, OperatorHemiring, Side, Unity,
};
use crate::structure::{as_product_structure, FiniteMonoid, GammaHemiring, ProductStructure};

/// Deliberate corruptions used to show that the checks can fail.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Faults {
    /// `⁺′` takes a maximum over S instead of a minimum.
    pub plus_prime_max: bool,
    /// The h-relation only looks at `z = 0`.
    pub h_scan_skip_z: bool,
    /// Left operators compose as `(f·g)(a) = g(f(a))`.
    pub left_orientation_reversed: bool,
}

impl Faults {
    pub fn parse(name: &str) -> Option<Faults> {
        let mut f = Faults::default();
        match name {
            "plus-prime-max" => f.plus_prime_max = true,
            "skip-z" => f.h_scan_skip_z = true,
            "left-orientation" => f.left_orientation_reversed = true,
            _ => return None,
        }
        Some(f)
    }
}

/// A validated Γ-hemiring with both operator hemirings, their unities and
/// the product structures the checks run on.
pub struct CorrespondenceContext {
    g: GammaHemiring,
    s_ps: ProductStructure,
    l: OperatorHemiring,
    r: OperatorHemiring,
    l_ps: ProductStructure,
    r_ps: ProductStructure,
    left_unity: Option<Unity>,
    right_unity: Option<Unity>,
    sxs: OnceCell<ProductStructure>,
    limits: Limits,
    faults: Faults,
}

impl CorrespondenceContext {
    pub fn new(g: GammaHemiring, limits: &Limits) -> Result<Self> {
        Self::with_faults(g, limits, Faults::default())
    }

    #[doc(hidden)]
    pub fn with_faults(g: GammaHemiring, limits: &Limits, faults: Faults) -> Result<Self> {
        let report = g.validate(limits.max_violations);
        if !report.valid {
            return Err(Error::Invalid {
                what: format!("Γ-hemiring {}", g.name()),
                report,
            });
        }
        let opts = BuildOptions {
            reverse_left_orientation: faults.left_orientation_reversed,
        };
        let l = build_operator_with(&g, Side::Left, limits, opts)?;
        let r = build_operator_with(&g, Side::Right, limits, BuildOptions::default())?;
        let skip = faults.h_scan_skip_z;
        Ok(CorrespondenceContext {
            s_ps: as_product_structure(&g).with_skip_z(skip),
            l_ps: hemiring_as_product_structure(&l).with_skip_z(skip),
            r_ps: hemiring_as_product_structure(&r).with_skip_z(skip),
            left_unity: find_unity(&g, &l),
            right_unity: find_unity(&g, &r),
            g,
            l,
            r,
            sxs: OnceCell::new(),
            limits: *limits,
            faults,
        })
    }

    pub fn gamma_hemiring(&self) -> &GammaHemiring {
        &self.g
    }

    pub fn name(&self) -> &str {
        self.g.name()
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn faults(&self) -> Faults {
        self.faults
    }

    pub fn left(&self) -> &OperatorHemiring {
        &self.l
    }

    pub fn right(&self) -> &OperatorHemiring {
        &self.r
    }

    pub fn operator(&self, side: Side) -> &OperatorHemiring {
        match side {
            Side::Left => &self.l,
            Side::Right => &self.r,
        }
    }

    pub fn left_unity(&self) -> Option<&Unity> {
        self.left_unity.as_ref()
    }

    pub fn right_unity(&self) -> Option<&Unity> {
        self.right_unity.as_ref()
    }

    pub fn unity(&self, side: Side) -> Option<&Unity> {
        match side {
            Side::Left => self.left_unity(),
            Side::Right => self.right_unity(),
        }
    }

    pub fn carrier_id(&self, kind: CarrierKind) -> CarrierId {
        CarrierId::new(self.g.name(), kind)
    }

    pub fn carrier_len(&self, kind: CarrierKind) -> usize {
        let n = |k| match k {
            CarrierKind::S => self.g.s().len(),
            CarrierKind::L => self.l.len(),
            _ => self.r.len(),
        };
        match kind {
            CarrierKind::SxS => n(CarrierKind::S).pow(2),
            CarrierKind::LxL => n(CarrierKind::L).pow(2),
            CarrierKind::RxR => n(CarrierKind::R).pow(2),
            k => n(k),
        }
    }

    /// Element labels: S labels, `op<k>` for operators, `(a,b)` for squares.
    pub fn labels(&self, kind: CarrierKind) -> Vec<String> {
        let base = |k: CarrierKind| -> Vec<String> {
            match k {
                CarrierKind::S => self.g.s().labels().to_vec(),
                CarrierKind::L => self.l.labels(),
                _ => self.r.labels(),
            }
        };
        match kind {
            CarrierKind::SxS | CarrierKind::LxL | CarrierKind::RxR => {
                let b = base(match kind {
                    CarrierKind::SxS => CarrierKind::S,
                    CarrierKind::LxL => CarrierKind::L,
                    _ => CarrierKind::R,
                });
                b.iter()
                    .flat_map(|x| b.iter().map(move |y| format!("({x},{y})")))
                    .collect()
            }
            k => base(k),
        }
    }

    /// The product structure of S, L or R.
    pub fn structure(&self, kind: CarrierKind) -> Result<&ProductStructure> {
        match kind {
            CarrierKind::S => Ok(&self.s_ps),
            CarrierKind::L => Ok(&self.l_ps),
            CarrierKind::R => Ok(&self.r_ps),
            CarrierKind::SxS => self.square_structure(),
            k => Err(Error::Precondition(format!(
                "no product structure registered for {}",
                k.as_str()
            ))),
        }
    }

    /// S×S as a Γ-hemiring: `(a,b)γ(c,d) = (aγc, bγd)`. Built on first use.
    pub fn square_structure(&self) -> Result<&ProductStructure> {
        if let Some(p) = self.sxs.get() {
            return Ok(p);
        }
        let s = self.g.s();
        let n = s.len();
        let ng = self.g.gamma().len();
        self.limits.check_cells(&format!("{}:SxS", self.g.name()), n * n, ng)?;
        let monoid = FiniteMonoid::from_fn(self.labels(CarrierKind::SxS), s.zero() * n + s.zero(), |x, y| {
            s.add(x / n, y / n) * n + s.add(x % n, y % n)
        })?;
        let g = &self.g;
        let p = ProductStructure::new(self.carrier_id(CarrierKind::SxS), monoid, |x, y| {
            (0..ng)
                .map(|gamma| g.act(x / n, gamma, y / n) * n + g.act(x % n, gamma, y % n))
                .collect()
        })
        .with_skip_z(self.faults.h_scan_skip_z);
        Ok(self.sxs.get_or_init(|| p))
    }

    fn expect(&self, mu: &FuzzySubset, kind: CarrierKind) -> Result<()> {
        let id = self.carrier_id(kind);
        if mu.carrier() != &id || mu.len() != self.carrier_len(kind) {
            return Err(Error::CarrierMismatch {
                expected: id.to_string(),
                found: mu.carrier().to_string(),
            });
        }
        Ok(())
    }

    fn expect_crisp(&self, a: &CrispSubset, kind: CarrierKind) -> Result<()> {
        let id = self.carrier_id(kind);
        if a.carrier != id || a.members.len() != self.carrier_len(kind) {
            return Err(Error::CarrierMismatch {
                expected: id.to_string(),
                found: a.carrier.to_string(),
            });
        }
        Ok(())
    }

    /// `μ × σ` over the square of their common carrier.
    pub fn cartesian(&self, mu: &FuzzySubset, sigma: &FuzzySubset) -> Result<FuzzySubset> {
        mu.same_carrier(sigma)?;
        let id = mu
            .carrier()
            .square()
            .ok_or_else(|| Error::Precondition(format!("{} has no square", mu.carrier())))?;
        Ok(cartesian(mu, sigma, id))
    }

    fn down(&self, op: &OperatorHemiring, mu: &FuzzySubset) -> FuzzySubset {
        let n = self.g.s().len();
        let ng = self.g.gamma().len();
        let values = (0..n)
            .map(|x| {
                (0..ng)
                    .map(|gamma| mu.get(op.embed(x, gamma)))
                    .min()
                    .expect("Γ has a zero")
            })
            .collect();
        FuzzySubset::new(self.carrier_id(CarrierKind::S), values)
    }

    fn up(&self, op: &OperatorHemiring, sigma: &FuzzySubset) -> FuzzySubset {
        let n = self.g.s().len();
        let max = self.faults.plus_prime_max && op.side() == Side::Left;
        let values = op
            .maps()
            .iter()
            .map(|m| {
                let vals = (0..n).map(|s| sigma.get(m.apply(s)));
                if max { vals.max() } else { vals.min() }.expect("S has a zero")
            })
            .collect();
        FuzzySubset::new(op.carrier_id(), values)
    }

    /// `μ⁺(x) = min_γ μ([x,γ])`.
    pub fn plus(&self, mu: &FuzzySubset) -> Result<FuzzySubset> {
        self.expect(mu, CarrierKind::L)?;
        Ok(self.down(&self.l, mu))
    }

    /// `σ⁺′(ℓ) = min_s σ(ℓ(s))`.
    pub fn plus_prime(&self, sigma: &FuzzySubset) -> Result<FuzzySubset> {
        self.expect(sigma, CarrierKind::S)?;
        Ok(self.up(&self.l, sigma))
    }

    /// `δ*(x) = min_γ δ([γ,x])`.
    pub fn star(&self, delta: &FuzzySubset) -> Result<FuzzySubset> {
        self.expect(delta, CarrierKind::R)?;
        Ok(self.down(&self.r, delta))
    }

    /// `η*′(r) = min_s η(r(s))`, where `[α,x]` sends `s` to `sαx`.
    pub fn star_prime(&self, eta: &FuzzySubset) -> Result<FuzzySubset> {
        self.expect(eta, CarrierKind::S)?;
        Ok(self.up(&self.r, eta))
    }

    /// `P⁺ = {a : [a,γ] ∈ P for all γ}`.
    pub fn crisp_plus(&self, p: &CrispSubset) -> Result<CrispSubset> {
        self.expect_crisp(p, CarrierKind::L)?;
        Ok(self.crisp_down(&self.l, p))
    }

    pub fn crisp_star(&self, p: &CrispSubset) -> Result<CrispSubset> {
        self.expect_crisp(p, CarrierKind::R)?;
        Ok(self.crisp_down(&self.r, p))
    }

    /// `Q⁺′ = {ℓ : every finite sum of values ℓ(s) lies in Q}`.
    pub fn crisp_plus_prime(&self, q: &CrispSubset) -> Result<CrispSubset> {
        self.expect_crisp(q, CarrierKind::S)?;
        Ok(self.crisp_up(&self.l, q))
    }

    pub fn crisp_star_prime(&self, q: &CrispSubset) -> Result<CrispSubset> {
        self.expect_crisp(q, CarrierKind::S)?;
        Ok(self.crisp_up(&self.r, q))
    }

    fn crisp_down(&self, op: &OperatorHemiring, p: &CrispSubset) -> CrispSubset {
        let n = self.g.s().len();
        let ng = self.g.gamma().len();
        let members = (0..n)
            .map(|a| (0..ng).all(|gamma| p.contains(op.embed(a, gamma))))
            .collect();
        CrispSubset::new(self.carrier_id(CarrierKind::S), members)
    }

    fn crisp_up(&self, op: &OperatorHemiring, q: &CrispSubset) -> CrispSubset {
        let s = self.g.s();
        let members = op
            .maps()
            .iter()
            .map(|m| {
                let sums = s.additive_closure(&m.image(s.len()));
                sums.iter().zip(&q.members).all(|(&x, &inq)| !x || inq)
            })
            .collect();
        CrispSubset::new(op.carrier_id(), members)
    }

    fn square_down(&self, op: &OperatorHemiring, phi: &FuzzySubset) -> FuzzySubset {
        let n = self.g.s().len();
        let ng = self.g.gamma().len();
        let k = op.len();
        let mut values = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let mut v = Rational01::ONE;
                for alpha in 0..ng {
                    for beta in 0..ng {
                        v = v.min(phi.get(op.embed(x, alpha) * k + op.embed(y, beta)));
                    }
                }
                values.push(v);
            }
        }
        FuzzySubset::new(self.carrier_id(CarrierKind::SxS), values)
    }

    fn square_up(&self, op: &OperatorHemiring, phi: &FuzzySubset) -> FuzzySubset {
        let n = self.g.s().len();
        let max = self.faults.plus_prime_max && op.side() == Side::Left;
        let mut values = Vec::with_capacity(op.len() * op.len());
        for l1 in op.maps() {
            for l2 in op.maps() {
                let vals = (0..n)
                    .flat_map(|s1| (0..n).map(move |s2| (s1, s2)))
                    .map(|(s1, s2)| phi.get(l1.apply(s1) * n + l2.apply(s2)));
                values.push(if max { vals.max() } else { vals.min() }.expect("S has a zero"));
            }
        }
        let id = op.carrier_id().square().expect("operator carriers have squares");
        FuzzySubset::new(id, values)
    }

    /// `φ⁺(x,y) = min_{α,β} φ([x,α],[y,β])`.
    pub fn product_plus(&self, phi: &FuzzySubset) -> Result<FuzzySubset> {
        self.expect(phi, CarrierKind::LxL)?;
        Ok(self.square_down(&self.l, phi))
    }

    pub fn product_star(&self, phi: &FuzzySubset) -> Result<FuzzySubset> {
        self.expect(phi, CarrierKind::RxR)?;
        Ok(self.square_down(&self.r, phi))
    }

    /// `φ⁺′(ℓ₁,ℓ₂) = min_{s₁,s₂} φ(ℓ₁(s₁), ℓ₂(s₂))`, the two minima independent.
    pub fn product_plus_prime(&self, phi: &FuzzySubset) -> Result<FuzzySubset> {
        self.expect(phi, CarrierKind::SxS)?;
        Ok(self.square_up(&self.l, phi))
    }

    pub fn product_star_prime(&self, phi: &FuzzySubset) -> Result<FuzzySubset> {
        self.expect(phi, CarrierKind::SxS)?;
        Ok(self.square_up(&self.r, phi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{realize, FormalSum};
    use crate::structure::{boolean_semiring, from_hemiring, zn_ring};

    fn ctx(g: GammaHemiring) -> CorrespondenceContext {
        CorrespondenceContext::new(g, &Limits::default()).unwrap()
    }

    fn z(n: usize) -> CorrespondenceContext {
        ctx(from_hemiring(&zn_ring(n).unwrap(), 16).unwrap())
    }

    fn b() -> CorrespondenceContext {
        ctx(from_hemiring(&boolean_semiring(), 16).unwrap())
    }

    fn fz(c: &CorrespondenceContext, kind: CarrierKind, vals: &[&str]) -> FuzzySubset {
        FuzzySubset::new(c.carrier_id(kind), vals.iter().map(|v| v.parse().unwrap()).collect())
    }

    fn vals(mu: &FuzzySubset) -> Vec<String> {
        mu.values().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn fuzzy_maps_on_z2_and_b() {
        for c in [z(2), b()] {
            assert_eq!(c.left().identity(), Some(1));
            let mu = fz(&c, CarrierKind::L, &["1", "1/2"]);
            assert_eq!(vals(&c.plus(&mu).unwrap()), ["1", "1/2"]);
            let delta = fz(&c, CarrierKind::R, &["1", "1/2"]);
            assert_eq!(vals(&c.star(&delta).unwrap()), ["1", "1/2"]);
            let sigma = fz(&c, CarrierKind::S, &["1", "1/2"]);
            assert_eq!(vals(&c.plus_prime(&sigma).unwrap()), ["1", "1/2"]);
            assert_eq!(vals(&c.star_prime(&sigma).unwrap()), ["1", "1/2"]);
            let zero = fz(&c, CarrierKind::S, &["1", "0"]);
            assert_eq!(vals(&c.plus_prime(&zero).unwrap()), ["1", "0"]);
            assert_eq!(vals(&c.star_prime(&zero).unwrap()), ["1", "0"]);
            let full = fz(&c, CarrierKind::S, &["1", "1"]);
            assert_eq!(vals(&c.plus_prime(&full).unwrap()), ["1", "1"]);
            let full_l = fz(&c, CarrierKind::L, &["1", "1"]);
            assert_eq!(vals(&c.plus(&full_l).unwrap()), ["1", "1"]);
        }
    }

    #[test]
    fn carrier_mismatch() {
        let c = z(2);
        let sigma = fz(&c, CarrierKind::S, &["1", "1/2"]);
        assert!(matches!(c.plus(&sigma), Err(Error::CarrierMismatch { .. })));
    }

    #[test]
    fn crisp_maps() {
        let c = z(2);
        let l = |idx: &[usize]| CrispSubset::from_indices(c.carrier_id(CarrierKind::L), 2, idx);
        let s = |idx: &[usize]| CrispSubset::from_indices(c.carrier_id(CarrierKind::S), 2, idx);
        assert_eq!(c.crisp_plus(&l(&[0])).unwrap().indices(), vec![0]);
        assert_eq!(c.crisp_plus(&l(&[0, 1])).unwrap().indices(), vec![0, 1]);
        assert_eq!(c.crisp_plus(&l(&[])).unwrap().indices(), Vec::<usize>::new());
        assert_eq!(c.crisp_plus_prime(&s(&[0])).unwrap().indices(), vec![0]);
        assert_eq!(c.crisp_plus_prime(&s(&[0, 1])).unwrap().indices(), vec![0, 1]);

        let c4 = z(4);
        let q = CrispSubset::from_indices(c4.carrier_id(CarrierKind::S), 4, &[0, 2]);
        let got = c4.crisp_plus_prime(&q).unwrap();
        let tables: Vec<&[usize]> = got.indices().into_iter().map(|i| c4.left().map(i).table()).collect();
        assert_eq!(tables, [&[0, 0, 0, 0][..], &[0, 2, 0, 2][..]]);
    }

    #[test]
    fn plus_prime_respects_rho() {
        let c = z(4);
        let sigma = fz(&c, CarrierKind::S, &["1", "0", "1/2", "0"]);
        let up = c.plus_prime(&sigma).unwrap();
        let g = c.gamma_hemiring();
        let f1 = FormalSum::left(vec![(2, 1)]).unwrap();
        let f2 = FormalSum::left(vec![(1, 1), (1, 1)]).unwrap();
        let i1 = c.left().index_of(&realize(g, &f1).unwrap()).unwrap();
        let i2 = c.left().index_of(&realize(g, &f2).unwrap()).unwrap();
        assert_eq!(up.get(i1), up.get(i2));
        assert_eq!(up.get(i1).to_string(), "1/2");
    }

    #[test]
    fn square_maps() {
        let c = z(2);
        let mu = fz(&c, CarrierKind::L, &["1", "1/3"]);
        let sigma = fz(&c, CarrierKind::L, &["1", "1/2"]);
        let phi = c.cartesian(&mu, &sigma).unwrap();
        let lhs = c.product_plus(&phi).unwrap();
        let rhs = c.cartesian(&c.plus(&mu).unwrap(), &c.plus(&sigma).unwrap()).unwrap();
        assert_eq!(lhs, rhs);

        let full = FuzzySubset::constant(c.carrier_id(CarrierKind::LxL), 4, Rational01::ONE);
        assert!(c
            .product_plus(&full)
            .unwrap()
            .values()
            .iter()
            .all(|v| *v == Rational01::ONE));

        let t = fz(&c, CarrierKind::S, &["1", "1/3"]);
        let u = fz(&c, CarrierKind::S, &["1", "1/2"]);
        let up = c.product_plus_prime(&c.cartesian(&t, &u).unwrap()).unwrap();
        assert_eq!(up.get(3).to_string(), "1/3");
    }

    #[test]
    fn square_structure_is_cached() {
        let c = z(2);
        let p = c.square_structure().unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.pair_products(3, 3), &[0, 3]);
        assert!(std::ptr::eq(p, c.square_structure().unwrap()));
    }

    #[test]
    fn faulty_plus_prime_uses_max() {
        let c = CorrespondenceContext::with_faults(
            from_hemiring(&zn_ring(2).unwrap(), 16).unwrap(),
            &Limits::default(),
            Faults::parse("plus-prime-max").unwrap(),
        )
        .unwrap();
        let sigma = fz(&c, CarrierKind::S, &["1", "1/2"]);
        assert_eq!(vals(&c.plus_prime(&sigma).unwrap()), ["1", "1"]);
    }
}
