//! Brute-force reference computations shared by the integration tests.
//! They use only the raw tables, never the library's own algorithms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use gamma_hemiring::fuzzy::{FuzzySubset, Rational01};
use gamma_hemiring::operator::Side;
use gamma_hemiring::structure::GammaHemiring;

pub fn data(file: &str) -> String {
    format!("{}/data/{file}", env!("CARGO_MANIFEST_DIR"))
}

/// Does the labelled tuple really break the named axiom?
pub fn witness_breaks_axiom(g: &GammaHemiring, law: &str, w: &[String]) -> bool {
    let s = |i: usize| g.s().index_of(&w[i]).expect("S label");
    let t = |i: usize| g.gamma().index_of(&w[i]).expect("Γ label");
    let add = |a, b| g.s().add(a, b);
    let act = |a, x, b| g.act(a, x, b);
    match law {
        "axiom-1" => {
            let (a, b, x, c) = (s(0), s(1), t(2), s(3));
            act(add(a, b), x, c) != add(act(a, x, c), act(b, x, c))
        }
        "axiom-2" => {
            let (a, x, b, c) = (s(0), t(1), s(2), s(3));
            act(a, x, add(b, c)) != add(act(a, x, b), act(a, x, c))
        }
        "axiom-3" => {
            let (a, x, y, b) = (s(0), t(1), t(2), s(3));
            act(a, g.gamma().add(x, y), b) != add(act(a, x, b), act(a, y, b))
        }
        "axiom-4" => {
            let (a, x, b, y, c) = (s(0), t(1), s(2), t(3), s(4));
            act(a, x, act(b, y, c)) != act(act(a, x, b), y, c)
        }
        "axiom-5" => {
            let (a, x, b) = (s(0), t(1), s(2));
            (a == g.s().zero() || b == g.s().zero()) && act(a, x, b) != g.s().zero()
        }
        "axiom-6" => {
            let (a, x, b) = (s(0), t(1), s(2));
            x == g.gamma().zero() && act(a, x, b) != g.s().zero()
        }
        _ => false,
    }
}

fn generator(g: &GammaHemiring, side: Side, x: usize, gamma: usize) -> Vec<usize> {
    (0..g.s().len())
        .map(|a| match side {
            Side::Left => g.act(x, gamma, a),
            Side::Right => g.act(a, gamma, x),
        })
        .collect()
}

/// Every map realized by a formal sum of at most |S| generator terms, then
/// closed under pointwise sums and composition.
pub fn operator_closure(g: &GammaHemiring, side: Side) -> BTreeSet<Vec<usize>> {
    let n = g.s().len();
    let gens: Vec<Vec<usize>> = (0..n)
        .flat_map(|x| (0..g.gamma().len()).map(move |y| (x, y)))
        .map(|(x, y)| generator(g, side, x, y))
        .collect();
    let plus = |f: &[usize], h: &[usize]| -> Vec<usize> { (0..n).map(|a| g.s().add(f[a], h[a])).collect() };

    let mut level: BTreeSet<Vec<usize>> = gens.iter().cloned().collect();
    let mut maps = level.clone();
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for f in &level {
            for h in &gens {
                next.insert(plus(f, h));
            }
        }
        maps.extend(next.iter().cloned());
        level = next;
    }
    loop {
        let current: Vec<Vec<usize>> = maps.iter().cloned().collect();
        let mut grew = false;
        for f in &current {
            for h in &current {
                let comp: Vec<usize> = (0..n).map(|a| f[h[a]]).collect();
                grew |= maps.insert(plus(f, h));
                grew |= maps.insert(comp);
            }
        }
        if !grew {
            return maps;
        }
    }
}

/// `(has unity, some single generator is the identity)`.
pub fn unity_flags(g: &GammaHemiring, side: Side) -> (bool, bool) {
    let n = g.s().len();
    let id: Vec<usize> = (0..n).collect();
    let strong = (0..n).any(|x| (0..g.gamma().len()).any(|y| generator(g, side, x, y) == id));
    (operator_closure(g, side).contains(&id), strong)
}

/// All h-ideals straight from the definition, by scanning every subset.
pub fn h_ideals_by_subsets(
    n: usize,
    zero: usize,
    add: impl Fn(usize, usize) -> usize,
    products: impl Fn(usize, usize) -> Vec<usize>,
) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << n) {
        let inside = |i: usize| mask >> i & 1 == 1;
        if !inside(zero) {
            continue;
        }
        let ok = (0..n).all(|a| {
            (0..n).all(|b| {
                let sums = !(inside(a) && inside(b)) || inside(add(a, b));
                let prods = !(inside(a) || inside(b)) || products(a, b).into_iter().all(inside);
                sums && prods
            })
        }) && (0..n).all(|x| {
            inside(x)
                || !(0..n)
                    .any(|a| inside(a) && (0..n).any(|b| inside(b) && (0..n).any(|z| add(add(x, a), z) == add(b, z))))
        });
        if ok {
            out.insert((0..n).filter(|&i| inside(i)).collect());
        }
    }
    out
}

/// `μ ∘ₕ θ` (or `μ Γₕ θ` when `single`) by listing every decomposition
/// with at most |S| terms per side.
pub fn h_product_by_decompositions(
    g: &GammaHemiring,
    mu: &FuzzySubset,
    theta: &FuzzySubset,
    single: bool,
) -> Vec<Rational01> {
    let s = g.s();
    let n = s.len();
    let terms: Vec<(usize, Rational01)> = (0..n)
        .flat_map(|a| (0..g.gamma().len()).flat_map(move |x| (0..n).map(move |b| (a, x, b))))
        .map(|(a, x, b)| (g.act(a, x, b), mu.get(a).min(theta.get(b))))
        .collect();
    // best[k][v]: largest min-value of a list of exactly k terms summing to v.
    let max_terms = if single { 1 } else { n };
    let mut reach: Vec<Option<Rational01>> = vec![None; n];
    let mut layer: Vec<Option<Rational01>> = vec![None; n];
    for &(p, v) in &terms {
        layer[p] = layer[p].max(Some(v));
    }
    for _ in 0..max_terms {
        for i in 0..n {
            reach[i] = reach[i].max(layer[i]);
        }
        let mut next = vec![None; n];
        for (i, cur) in layer.iter().enumerate() {
            if let Some(c) = cur {
                for &(p, v) in &terms {
                    let j = s.add(i, p);
                    next[j] = next[j].max(Some((*c).min(v)));
                }
            }
        }
        layer = next;
    }
    (0..n)
        .map(|x| {
            let mut best = Rational01::ZERO;
            for u in 0..n {
                for v in 0..n {
                    if let (Some(a), Some(b)) = (reach[u], reach[v]) {
                        if (0..n).any(|z| s.add(s.add(x, u), z) == s.add(v, z)) {
                            best = best.max(a.min(b));
                        }
                    }
                }
            }
            best
        })
        .collect()
}
