use crate::error::{Error, Result};
use crate::structure::monoid::{validate_monoid, FiniteMonoid};
use crate::structure::report::{Collector, ValidationReport};

/// A finite Γ-hemiring: additive monoids S and Γ with a ternary action
/// `(a, α, b) ↦ aαb`, stored as a dense `|S|·|Γ|·|S|` table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaHemiring {
    name: String,
    s: FiniteMonoid,
    gamma: FiniteMonoid,
    action: Vec<usize>,
}

impl GammaHemiring {
    /// `action[a][alpha][b]` is the index of `aαb` in S. Only the shape is
    /// checked here; see [`validate_gamma_hemiring`] for the axioms.
    pub fn new(
        name: impl Into<String>,
        s: FiniteMonoid,
        gamma: FiniteMonoid,
        action: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let (ns, ng) = (s.len(), gamma.len());
        if action.len() != ns
            || action
                .iter()
                .any(|row| row.len() != ng || row.iter().any(|r| r.len() != ns))
        {
            return Err(Error::Shape(format!("action table must be {ns}x{ng}x{ns}")));
        }
        let flat = action.into_iter().flatten().flatten().collect();
        Self::from_flat(name.into(), s, gamma, flat)
    }

    pub fn from_fn(
        name: impl Into<String>,
        s: FiniteMonoid,
        gamma: FiniteMonoid,
        action: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let (ns, ng) = (s.len(), gamma.len());
        let mut flat = Vec::with_capacity(ns * ng * ns);
        for a in 0..ns {
            for g in 0..ng {
                for b in 0..ns {
                    flat.push(action(a, g, b));
                }
            }
        }
        Self::from_flat(name.into(), s, gamma, flat)
    }

    fn from_flat(name: String, s: FiniteMonoid, gamma: FiniteMonoid, action: Vec<usize>) -> Result<Self> {
        if name.is_empty() {
            return Err(Error::Shape("structure name must be non-empty".into()));
        }
        if let Some(bad) = action.iter().find(|&&v| v >= s.len()) {
            return Err(Error::Shape(format!("action table entry {bad} out of range")));
        }
        Ok(GammaHemiring { name, s, gamma, action })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn s(&self) -> &FiniteMonoid {
        &self.s
    }

    pub fn gamma(&self) -> &FiniteMonoid {
        &self.gamma
    }

    #[inline]
    pub fn act(&self, a: usize, alpha: usize, b: usize) -> usize {
        let (ns, ng) = (self.s.len(), self.gamma.len());
        self.action[(a * ng + alpha) * ns + b]
    }

    pub fn action_table(&self) -> Vec<Vec<Vec<usize>>> {
        let (ns, ng) = (self.s.len(), self.gamma.len());
        (0..ns)
            .map(|a| (0..ng).map(|g| (0..ns).map(|b| self.act(a, g, b)).collect()).collect())
            .collect()
    }

    /// Overwrites one cell of the action table. Used to build faulty
    /// fixtures; the result is generally not a Γ-hemiring.
    pub fn with_cell(mut self, a: usize, alpha: usize, b: usize, value: usize) -> Result<Self> {
        let (ns, ng) = (self.s.len(), self.gamma.len());
        if a >= ns || b >= ns || alpha >= ng || value >= ns {
            return Err(Error::Shape("cell index out of range".into()));
        }
        self.action[(a * ng + alpha) * ns + b] = value;
        Ok(self)
    }

    pub fn validate(&self, max_violations: usize) -> ValidationReport {
        validate_gamma_hemiring(self, max_violations)
    }

    /// Returns the structure unchanged if it validates, otherwise an
    /// [`Error::Invalid`] carrying the report.
    pub fn validated(self, max_violations: usize) -> Result<Self> {
        let report = self.validate(max_violations);
        if report.valid {
            Ok(self)
        } else {
            Err(Error::Invalid {
                what: format!("Γ-hemiring {}", self.name),
                report,
            })
        }
    }
}

/// Names of the six Γ-hemiring axioms, in the order they are checked.
pub const AXIOMS: [&str; 6] = ["axiom-1", "axiom-2", "axiom-3", "axiom-4", "axiom-5", "axiom-6"];

pub fn axiom_statement(law: &str) -> &'static str {
    match law {
        "axiom-1" => "(a+b)αc = aαc + bαc",
        "axiom-2" => "aα(b+c) = aαb + aαc",
        "axiom-3" => "a(α+β)b = aαb + aβb",
        "axiom-4" => "aα(bβc) = (aαb)βc",
        "axiom-5" => "0αa = 0 = aα0",
        "axiom-6" => "a0b = 0",
        _ => "",
    }
}

/// Exhaustively checks the six axioms. If S or Γ is not a commutative
/// monoid, the monoid report is returned instead (prefixed `S:` / `Gamma:`).
///
/// Witness tuples: (1) `(a,b,α,c)`, (2) `(a,α,b,c)`, (3) `(a,α,β,b)`,
/// (4) `(a,α,b,β,c)`, (5) and (6) the offending cell `(a,α,b)`.
pub fn validate_gamma_hemiring(g: &GammaHemiring, max_violations: usize) -> ValidationReport {
    let s_report = validate_monoid(g.s(), max_violations);
    let g_report = validate_monoid(g.gamma(), max_violations);
    if !s_report.valid || !g_report.valid {
        let mut out = Collector::new(max_violations);
        for (prefix, r) in [("S", s_report), ("Gamma", g_report)] {
            for v in r.violations {
                out.push(&format!("{prefix}:{}", v.law), v.witness);
            }
        }
        return out.finish();
    }

    let (s, gm) = (g.s(), g.gamma());
    let (ns, ng) = (s.len(), gm.len());
    let sl = |i: usize| s.label(i).to_string();
    let gl = |i: usize| gm.label(i).to_string();
    let mut out = Collector::new(max_violations);

    // (1) (a+b)αc = aαc + bαc
    'ax1: for a in 0..ns {
        for b in 0..ns {
            for al in 0..ng {
                for c in 0..ns {
                    let lhs = g.act(s.add(a, b), al, c);
                    let rhs = s.add(g.act(a, al, c), g.act(b, al, c));
                    if lhs != rhs && !out.push("axiom-1", vec![sl(a), sl(b), gl(al), sl(c)]) {
                        break 'ax1;
                    }
                }
            }
        }
    }
    // (2) aα(b+c) = aαb + aαc
    'ax2: for a in 0..ns {
        for al in 0..ng {
            for b in 0..ns {
                for c in 0..ns {
                    let lhs = g.act(a, al, s.add(b, c));
                    let rhs = s.add(g.act(a, al, b), g.act(a, al, c));
                    if lhs != rhs && !out.push("axiom-2", vec![sl(a), gl(al), sl(b), sl(c)]) {
                        break 'ax2;
                    }
                }
            }
        }
    }
    // (3) a(α+β)b = aαb + aβb
    'ax3: for a in 0..ns {
        for al in 0..ng {
            for be in 0..ng {
                for b in 0..ns {
                    let lhs = g.act(a, gm.add(al, be), b);
                    let rhs = s.add(g.act(a, al, b), g.act(a, be, b));
                    if lhs != rhs && !out.push("axiom-3", vec![sl(a), gl(al), gl(be), sl(b)]) {
                        break 'ax3;
                    }
                }
            }
        }
    }
    // (4) aα(bβc) = (aαb)βc
    'ax4: for a in 0..ns {
        for al in 0..ng {
            for b in 0..ns {
                let ab = g.act(a, al, b);
                for be in 0..ng {
                    for c in 0..ns {
                        let lhs = g.act(a, al, g.act(b, be, c));
                        let rhs = g.act(ab, be, c);
                        if lhs != rhs && !out.push("axiom-4", vec![sl(a), gl(al), sl(b), gl(be), sl(c)]) {
                            break 'ax4;
                        }
                    }
                }
            }
        }
    }
    // (5) 0αa = 0 = aα0
    let z = s.zero();
    'ax5: for a in 0..ns {
        for al in 0..ng {
            for b in 0..ns {
                if (a == z || b == z) && g.act(a, al, b) != z && !out.push("axiom-5", vec![sl(a), gl(al), sl(b)]) {
                    break 'ax5;
                }
            }
        }
    }
    // (6) a0b = 0
    let zg = gm.zero();
    'ax6: for a in 0..ns {
        for b in 0..ns {
            if g.act(a, zg, b) != z && !out.push("axiom-6", vec![sl(a), gl(zg), sl(b)]) {
                break 'ax6;
            }
        }
    }
    out.finish()
}

/// A hemiring: commutative additive monoid, associative multiplication
/// distributing over addition from both sides, zero absorbing. No
/// multiplicative identity is required.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hemiring {
    name: String,
    add: FiniteMonoid,
    mul: Vec<usize>,
}

impl Hemiring {
    pub fn new(name: impl Into<String>, add: FiniteMonoid, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = add.len();
        if mul.len() != n || mul.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("multiplication table must be {n}x{n}")));
        }
        Self::from_flat(name.into(), add, mul.into_iter().flatten().collect())
    }

    pub fn from_fn(name: impl Into<String>, add: FiniteMonoid, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = add.len();
        let flat = (0..n * n).map(|k| mul(k / n, k % n)).collect();
        Self::from_flat(name.into(), add, flat)
    }

    pub(crate) fn from_flat(name: String, add: FiniteMonoid, mul: Vec<usize>) -> Result<Self> {
        let n = add.len();
        if mul.len() != n * n {
            return Err(Error::Shape(format!("multiplication table must be {n}x{n}")));
        }
        if let Some(bad) = mul.iter().find(|&&v| v >= n) {
            return Err(Error::Shape(format!("multiplication table entry {bad} out of range")));
        }
        Ok(Hemiring { name, add, mul })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn additive(&self) -> &FiniteMonoid {
        &self.add
    }

    pub fn len(&self) -> usize {
        self.add.len()
    }

    pub fn is_empty(&self) -> bool {
        self.add.is_empty()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.add(a, b)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.add.len() + b]
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.len()).map(<[usize]>::to_vec).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn validate(&self, max_violations: usize) -> ValidationReport {
        validate_hemiring(self, max_violations)
    }
}

pub fn validate_hemiring(h: &Hemiring, max_violations: usize) -> ValidationReport {
    let add_report = validate_monoid(h.additive(), max_violations);
    if !add_report.valid {
        return add_report;
    }
    let n = h.len();
    let l = |i: usize| h.additive().label(i).to_string();
    let z = h.additive().zero();
    let mut out = Collector::new(max_violations);
    'assoc: for a in 0..n {
        for b in 0..n {
            let ab = h.mul(a, b);
            for c in 0..n {
                if h.mul(ab, c) != h.mul(a, h.mul(b, c)) && !out.push("mul-associativity", vec![l(a), l(b), l(c)]) {
                    break 'assoc;
                }
            }
        }
    }
    'dist: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if h.mul(a, h.add(b, c)) != h.add(h.mul(a, b), h.mul(a, c))
                    && !out.push("left-distributivity", vec![l(a), l(b), l(c)])
                {
                    break 'dist;
                }
                if h.mul(h.add(a, b), c) != h.add(h.mul(a, c), h.mul(b, c))
                    && !out.push("right-distributivity", vec![l(a), l(b), l(c)])
                {
                    break 'dist;
                }
            }
        }
    }
    for a in 0..n {
        if (h.mul(z, a) != z || h.mul(a, z) != z) && !out.push("zero-absorbing", vec![l(a)]) {
            break;
        }
    }
    out.finish()
}
