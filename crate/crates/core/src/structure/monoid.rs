use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::structure::report::{Collector, ValidationReport};

/// A finite additive monoid given by its full addition table.
///
/// Elements are dense indices into `labels`; `add` is stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    labels: Vec<String>,
    zero: usize,
    add: Vec<usize>,
}

impl FiniteMonoid {
    /// Checks the shape of the data (unique non-empty labels, square table,
    /// indices in range). The monoid laws are checked by [`validate_monoid`].
    pub fn new(labels: Vec<String>, zero: usize, add: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if add.len() != n || add.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!("addition table must be {n}x{n}")));
        }
        Self::from_flat(labels, zero, add.into_iter().flatten().collect())
    }

    pub fn from_fn(labels: Vec<String>, zero: usize, add: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = labels.len();
        let table = (0..n * n).map(|k| add(k / n, k % n)).collect();
        Self::from_flat(labels, zero, table)
    }

    pub(crate) fn from_flat(labels: Vec<String>, zero: usize, add: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Shape("a monoid needs at least one element".into()));
        }
        if add.len() != n * n {
            return Err(Error::Shape(format!("addition table must be {n}x{n}")));
        }
        check_labels(&labels)?;
        if zero >= n {
            return Err(Error::Shape(format!("zero index {zero} out of range")));
        }
        if let Some(bad) = add.iter().find(|&&v| v >= n) {
            return Err(Error::Shape(format!("addition table entry {bad} out of range")));
        }
        Ok(FiniteMonoid { labels, zero, add })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.labels.len() + b]
    }

    /// Sum of a sequence of elements; the empty sum is zero.
    pub fn sum(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.zero, |acc, x| self.add(acc, x))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.len()).map(<[usize]>::to_vec).collect()
    }

    /// Smallest superset of `seed` closed under addition (non-empty sums only,
    /// so zero is included only if it is generated).
    pub fn additive_closure(&self, seed: &[bool]) -> Vec<bool> {
        let n = self.len();
        let mut members = seed.to_vec();
        let mut list: Vec<usize> = (0..n).filter(|&i| members[i]).collect();
        let mut cursor = 0;
        while cursor < list.len() {
            let x = list[cursor];
            let mut j = 0;
            while j <= cursor {
                let s = self.add(x, list[j]);
                if !members[s] {
                    members[s] = true;
                    list.push(s);
                }
                j += 1;
            }
            cursor += 1;
        }
        members
    }

    pub fn validate(&self, max_violations: usize) -> ValidationReport {
        validate_monoid(self, max_violations)
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if l.is_empty() {
            return Err(Error::Shape("element labels must be non-empty".into()));
        }
        if !seen.insert(l.as_str()) {
            return Err(Error::Shape(format!("duplicate element label {l:?}")));
        }
    }
    Ok(())
}

/// Exhaustive check of commutativity, associativity and two-sided
/// neutrality of zero. Witnesses come in lexicographic element order.
pub fn validate_monoid(m: &FiniteMonoid, max_violations: usize) -> ValidationReport {
    let mut out = Collector::new(max_violations);
    let n = m.len();
    let l = |i: usize| m.label(i).to_string();
    let z = m.zero();

    'neutral: for x in 0..n {
        if (m.add(z, x) != x || m.add(x, z) != x) && !out.push("zero-neutral", vec![l(x)]) {
            break 'neutral;
        }
    }
    'comm: for x in 0..n {
        for y in x + 1..n {
            if m.add(x, y) != m.add(y, x) && !out.push("commutativity", vec![l(x), l(y)]) {
                break 'comm;
            }
        }
    }
    'assoc: for x in 0..n {
        for y in 0..n {
            let xy = m.add(x, y);
            for w in 0..n {
                if m.add(xy, w) != m.add(x, m.add(y, w)) && !out.push("associativity", vec![l(x), l(y), l(w)]) {
                    break 'assoc;
                }
            }
        }
    }
    out.finish()
}
