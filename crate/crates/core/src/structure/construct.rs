use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::structure::gamma::{GammaHemiring, Hemiring};
use crate::structure::monoid::FiniteMonoid;

fn numeric_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// The two-element Boolean semiring ({0,1}, max, min).
pub fn boolean_semiring() -> Hemiring {
    let add = FiniteMonoid::from_fn(numeric_labels(2), 0, |a, b| a.max(b)).expect("static table");
    Hemiring::from_fn("B", add, |a, b| a.min(b)).expect("static table")
}

/// The ring of integers modulo `n`, labelled `0..n-1`.
pub fn zn_ring(n: usize) -> Result<Hemiring> {
    if n == 0 {
        return Err(Error::Shape("Z/0 has no elements".into()));
    }
    let add = FiniteMonoid::from_fn(numeric_labels(n), 0, |a, b| (a + b) % n)?;
    Hemiring::from_fn(format!("Z{n}"), add, |a, b| (a * b) % n)
}

/// Views a hemiring `H` as a Γ-hemiring with Γ = H and `aγb = a·γ·b`.
pub fn from_hemiring(h: &Hemiring, max_violations: usize) -> Result<GammaHemiring> {
    let report = h.validate(max_violations);
    if !report.valid {
        return Err(Error::Invalid {
            what: format!("hemiring {}", h.name()),
            report,
        });
    }
    GammaHemiring::from_fn(h.name(), h.additive().clone(), h.additive().clone(), |a, g, b| {
        h.mul(h.mul(a, g), b)
    })
}

/// Binary product `S1 × S2` over a shared Γ. Element `(a, b)` has index
/// `a·|S2| + b` and label `(a,b)`.
pub fn product(g1: &GammaHemiring, g2: &GammaHemiring, limits: &Limits) -> Result<GammaHemiring> {
    if g1.gamma() != g2.gamma() {
        return Err(Error::Precondition(format!(
            "product needs identical Γ, but {} and {} differ",
            g1.name(),
            g2.name()
        )));
    }
    let (s1, s2) = (g1.s(), g2.s());
    let (n1, n2) = (s1.len(), s2.len());
    let n = n1
        .checked_mul(n2)
        .ok_or_else(|| Error::capacity("product carrier", u128::MAX, limits.max_table_cells))?;
    limits.check_cells("product", n, g1.gamma().len())?;

    let labels = (0..n)
        .map(|k| format!("({},{})", s1.label(k / n2), s2.label(k % n2)))
        .collect();
    let zero = s1.zero() * n2 + s2.zero();
    let s = FiniteMonoid::from_fn(labels, zero, |x, y| {
        s1.add(x / n2, y / n2) * n2 + s2.add(x % n2, y % n2)
    })?;
    GammaHemiring::from_fn(
        format!("{}x{}", g1.name(), g2.name()),
        s,
        g1.gamma().clone(),
        |x, g, y| g1.act(x / n2, g, y / n2) * n2 + g2.act(x % n2, g, y % n2),
    )
}

/// Matrices over `h` with entries in row-major order; index digits are the
/// entries, most significant first, so indices follow label order.
struct MatrixSpace<'a> {
    h: &'a Hemiring,
    rows: usize,
    cols: usize,
    count: usize,
}

impl<'a> MatrixSpace<'a> {
    fn new(h: &'a Hemiring, rows: usize, cols: usize, cap: usize) -> Result<Self> {
        let entries = (rows * cols) as u32;
        let count = (h.len() as u128).checked_pow(entries).unwrap_or(u128::MAX);
        if count > cap as u128 {
            return Err(Error::capacity(
                format!("{rows}x{cols} matrices over {}", h.name()),
                count,
                cap,
            ));
        }
        Ok(MatrixSpace {
            h,
            rows,
            cols,
            count: count as usize,
        })
    }

    fn decode(&self, mut idx: usize) -> Vec<usize> {
        let n = self.h.len();
        let mut out = vec![0; self.rows * self.cols];
        for slot in out.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        out
    }

    fn encode(&self, entries: &[usize]) -> usize {
        entries.iter().fold(0, |acc, &e| acc * self.h.len() + e)
    }

    fn label(&self, idx: usize) -> String {
        let e = self.decode(idx);
        let rows: Vec<String> = e
            .chunks(self.cols)
            .map(|r| {
                r.iter()
                    .map(|&v| self.h.additive().label(v))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        format!("[{}]", rows.join(";"))
    }

    fn monoid(&self) -> Result<FiniteMonoid> {
        let labels = (0..self.count).map(|i| self.label(i)).collect();
        let zero = self.encode(&vec![self.h.additive().zero(); self.rows * self.cols]);
        FiniteMonoid::from_fn(labels, zero, |a, b| {
            let (x, y) = (self.decode(a), self.decode(b));
            let sum: Vec<usize> = x.iter().zip(&y).map(|(&p, &q)| self.h.add(p, q)).collect();
            self.encode(&sum)
        })
    }
}

fn mat_mul(h: &Hemiring, a: &[usize], b: &[usize], m: usize, k: usize, n: usize) -> Vec<usize> {
    let zero = h.additive().zero();
    let mut out = vec![zero; m * n];
    for i in 0..m {
        for j in 0..n {
            out[i * n + j] = (0..k).fold(zero, |acc, t| h.add(acc, h.mul(a[i * k + t], b[t * n + j])));
        }
    }
    out
}

/// S = m×n matrices over a commutative hemiring `h`, Γ = n×m matrices,
/// `AγB` the matrix triple product.
pub fn matrix_gamma_hemiring(h: &Hemiring, m: usize, n: usize, limits: &Limits) -> Result<GammaHemiring> {
    if m == 0 || n == 0 {
        return Err(Error::Shape("matrix dimensions must be positive".into()));
    }
    let report = h.validate(limits.max_violations);
    if !report.valid {
        return Err(Error::Invalid {
            what: format!("hemiring {}", h.name()),
            report,
        });
    }
    if !h.is_commutative() {
        return Err(Error::Precondition(format!("{} is not commutative", h.name())));
    }
    let sp = MatrixSpace::new(h, m, n, limits.max_table_cells)?;
    let gp = MatrixSpace::new(h, n, m, limits.max_table_cells)?;
    limits.check_cells("matrix", sp.count, gp.count)?;

    let s = sp.monoid()?;
    let gamma = gp.monoid()?;
    let s_entries: Vec<Vec<usize>> = (0..sp.count).map(|i| sp.decode(i)).collect();
    let g_entries: Vec<Vec<usize>> = (0..gp.count).map(|i| gp.decode(i)).collect();
    GammaHemiring::from_fn(format!("M{m}x{n}({})", h.name()), s, gamma, |a, g, b| {
        let ag = mat_mul(h, &s_entries[a], &g_entries[g], m, n, m);
        sp.encode(&mat_mul(h, &ag, &s_entries[b], m, m, n))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn hemirings_lift_to_valid_gamma_hemirings() {
        let b = from_hemiring(&boolean_semiring(), 16).unwrap();
        assert!(b.validate(16).valid);
        for n in 1..=4 {
            let z = from_hemiring(&zn_ring(n).unwrap(), 16).unwrap();
            assert!(z.validate(16).valid, "Z{n}");
            assert_eq!(z.s().len(), n);
        }
    }

    #[test]
    fn boolean_action_is_min() {
        let b = from_hemiring(&boolean_semiring(), 16).unwrap();
        for a in 0..2 {
            for g in 0..2 {
                for c in 0..2 {
                    assert_eq!(b.act(a, g, c), a.min(g).min(c));
                }
            }
        }
    }

    #[test]
    fn invalid_hemiring_is_rejected() {
        let add = FiniteMonoid::from_fn(numeric_labels(2), 0, |a, b| (a + b) % 2).unwrap();
        // constant-one multiplication does not absorb zero
        let h = Hemiring::from_fn("bad", add, |_, _| 1).unwrap();
        let err = from_hemiring(&h, 64).unwrap_err();
        match err {
            Error::Invalid { report, .. } => assert!(report.has_law("zero-absorbing")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn product_is_componentwise() {
        let z2 = from_hemiring(&zn_ring(2).unwrap(), 16).unwrap();
        let p = product(&z2, &z2, &lim()).unwrap();
        assert_eq!(p.s().len(), 4);
        assert_eq!(p.name(), "Z2xZ2");
        assert!(p.validate(16).valid);
        let x = p.s().index_of("(1,0)").unwrap();
        let y = p.s().index_of("(1,1)").unwrap();
        assert_eq!(p.s().label(p.s().add(x, y)), "(0,1)");
        assert_eq!(p.s().label(p.act(y, 1, x)), "(1,0)");

        let b = from_hemiring(&boolean_semiring(), 16).unwrap();
        let bb = product(&b, &b, &lim()).unwrap();
        assert!(bb.validate(16).valid);
        let p01 = bb.s().index_of("(0,1)").unwrap();
        let p11 = bb.s().index_of("(1,1)").unwrap();
        assert_eq!(bb.act(p11, 1, p01), p01);
    }

    #[test]
    fn product_needs_shared_gamma() {
        let z2 = from_hemiring(&zn_ring(2).unwrap(), 16).unwrap();
        let z3 = from_hemiring(&zn_ring(3).unwrap(), 16).unwrap();
        assert!(matches!(product(&z2, &z3, &lim()), Err(Error::Precondition(_))));
    }

    #[test]
    fn product_is_symmetric_up_to_swap() {
        let b = from_hemiring(&boolean_semiring(), 16).unwrap();
        let bb = product(&b, &b, &lim()).unwrap();
        let swap = |k: usize| (k % 2) * 2 + k / 2;
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(swap(bb.s().add(x, y)), bb.s().add(swap(x), swap(y)));
                for g in 0..2 {
                    assert_eq!(swap(bb.act(x, g, y)), bb.act(swap(x), g, swap(y)));
                }
            }
        }
    }

    #[test]
    fn product_with_trivial_factor() {
        let z3 = from_hemiring(&zn_ring(3).unwrap(), 16).unwrap();
        let one = GammaHemiring::from_fn(
            "one",
            FiniteMonoid::from_fn(vec!["0".into()], 0, |_, _| 0).unwrap(),
            z3.gamma().clone(),
            |_, _, _| 0,
        )
        .unwrap();
        let p = product(&z3, &one, &lim()).unwrap();
        assert_eq!(p.s().len(), 3);
        assert_eq!(p.action_table(), z3.action_table());
    }

    #[test]
    fn boolean_column_matrices() {
        let m = matrix_gamma_hemiring(&boolean_semiring(), 2, 1, &lim()).unwrap();
        assert_eq!(m.s().len(), 4);
        assert_eq!(m.gamma().len(), 4);
        assert!(m.validate(16).valid);
        assert_eq!(m.s().labels(), ["[0;0]", "[0;1]", "[1;0]", "[1;1]"]);
        assert_eq!(m.gamma().labels(), ["[0,0]", "[0,1]", "[1,0]", "[1,1]"]);
        // e1 δ1 (x) picks the first coordinate
        let e1 = m.s().index_of("[1;0]").unwrap();
        let d1 = m.gamma().index_of("[1,0]").unwrap();
        let x = m.s().index_of("[1;1]").unwrap();
        assert_eq!(m.act(e1, d1, x), e1);
    }

    #[test]
    fn one_by_one_matrices_match_the_hemiring() {
        let h = boolean_semiring();
        let m = matrix_gamma_hemiring(&h, 1, 1, &lim()).unwrap();
        let b = from_hemiring(&h, 16).unwrap();
        assert_eq!(m.s().table(), b.s().table());
        assert_eq!(m.action_table(), b.action_table());
    }

    #[test]
    fn z2_row_matrices() {
        let m = matrix_gamma_hemiring(&zn_ring(2).unwrap(), 1, 2, &lim()).unwrap();
        assert_eq!(m.s().len(), 4);
        assert!(m.validate(16).valid);
    }

    #[test]
    fn matrix_cap_is_enforced() {
        let tight = Limits {
            max_table_cells: 10,
            ..Limits::default()
        };
        let err = matrix_gamma_hemiring(&boolean_semiring(), 2, 2, &tight).unwrap_err();
        assert!(err.is_capacity());
    }
}
