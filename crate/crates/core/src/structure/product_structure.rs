use crate::carrier::{CarrierId, CarrierKind};
use crate::structure::gamma::{GammaHemiring, Hemiring};
use crate::structure::monoid::FiniteMonoid;

/// An additive monoid together with, for every ordered pair `(a, b)`, the
/// set of all products of `a` and `b`. One engine serves h-products and
/// h-ideal checks on S (products `aγb`) and on a hemiring (`{a·b}`).
///
/// It also carries the h-relation table: `related(w, v)` holds when
/// `w + z = v + z` for some `z`.
#[derive(Debug, Clone)]
pub struct ProductStructure {
    id: CarrierId,
    carrier: FiniteMonoid,
    pair_products: Vec<Vec<usize>>,
    related: Vec<bool>,
    skip_z: bool,
}

impl ProductStructure {
    /// `products(a, b)` may return duplicates; they are sorted and removed.
    pub fn new(id: CarrierId, carrier: FiniteMonoid, products: impl Fn(usize, usize) -> Vec<usize>) -> Self {
        let n = carrier.len();
        let mut pair_products = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut p = products(a, b);
                p.sort_unstable();
                p.dedup();
                pair_products.push(p);
            }
        }
        let mut related = vec![false; n * n];
        for w in 0..n {
            for v in 0..n {
                related[w * n + v] = (0..n).any(|z| carrier.add(w, z) == carrier.add(v, z));
            }
        }
        ProductStructure {
            id,
            carrier,
            pair_products,
            related,
            skip_z: false,
        }
    }

    /// Restricts the h-relation to `z = 0`. Only useful for fault
    /// injection: on non-cancellative carriers it drops genuine witnesses.
    #[doc(hidden)]
    pub fn with_skip_z(mut self, on: bool) -> Self {
        self.skip_z = on;
        self
    }

    pub fn id(&self) -> &CarrierId {
        &self.id
    }

    pub fn carrier(&self) -> &FiniteMonoid {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn pair_products(&self, a: usize, b: usize) -> &[usize] {
        &self.pair_products[a * self.len() + b]
    }

    /// `∃z : w + z = v + z`.
    #[inline]
    pub fn related(&self, w: usize, v: usize) -> bool {
        if self.skip_z {
            w == v
        } else {
            self.related[w * self.len() + v]
        }
    }

    /// `∃z : x + a + z = b + z`.
    #[inline]
    pub fn h_related(&self, x: usize, a: usize, b: usize) -> bool {
        self.related(self.carrier.add(x, a), b)
    }

    /// Least `z` with `x + a + z = b + z`.
    pub fn h_witness_z(&self, x: usize, a: usize, b: usize) -> Option<usize> {
        let m = &self.carrier;
        let w = m.add(x, a);
        if self.skip_z {
            return (w == b).then_some(m.zero());
        }
        (0..m.len()).find(|&z| m.add(w, z) == m.add(b, z))
    }
}

pub fn as_product_structure(g: &GammaHemiring) -> ProductStructure {
    let ng = g.gamma().len();
    ProductStructure::new(CarrierId::new(g.name(), CarrierKind::S), g.s().clone(), |a, b| {
        (0..ng).map(|gm| g.act(a, gm, b)).collect()
    })
}

/// Product structure of a hemiring: `pair_products(a, b) = {a·b}`.
pub fn hemiring_product_structure(id: CarrierId, h: &Hemiring) -> ProductStructure {
    ProductStructure::new(id, h.additive().clone(), |a, b| vec![h.mul(a, b)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::construct::{boolean_semiring, from_hemiring, zn_ring};

    #[test]
    fn boolean_pair_products() {
        let b = from_hemiring(&boolean_semiring(), 16).unwrap();
        let p = as_product_structure(&b);
        assert_eq!(p.pair_products(1, 1), &[0, 1]);
        for x in 0..2 {
            assert_eq!(p.pair_products(0, x), &[0]);
        }
    }

    #[test]
    fn h_relation_on_boolean_is_not_equality() {
        let b = from_hemiring(&boolean_semiring(), 16).unwrap();
        let p = as_product_structure(&b);
        // 1 + 0 + 1 = 0 + 1
        assert!(p.h_related(1, 0, 0));
        assert_eq!(p.h_witness_z(1, 0, 0), Some(1));
        let skipping = p.with_skip_z(true);
        assert!(!skipping.h_related(1, 0, 0));
    }

    #[test]
    fn h_relation_on_a_group_is_equality() {
        let z4 = from_hemiring(&zn_ring(4).unwrap(), 16).unwrap();
        let p = as_product_structure(&z4);
        for w in 0..4 {
            for v in 0..4 {
                assert_eq!(p.related(w, v), w == v);
            }
        }
    }
}
