use std::fmt;

use serde::Serialize;

/// One violated law together with the labels of the elements that break it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.law, self.witness.join(", "))
    }
}

/// Outcome of validating a table-defined structure. `valid` holds exactly
/// when `violations` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    /// Set when collection stopped at the violation cap.
    pub truncated: bool,
}

impl ValidationReport {
    pub fn ok() -> Self {
        ValidationReport {
            valid: true,
            violations: Vec::new(),
            truncated: false,
        }
    }

    pub fn has_law(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn first(&self, law: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.law == law)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return write!(f, "valid");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        if self.truncated {
            write!(f, " (truncated)")?;
        }
        for v in &self.violations {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}

/// Accumulates violations up to a cap.
pub(crate) struct Collector {
    cap: usize,
    violations: Vec<Violation>,
    truncated: bool,
}

impl Collector {
    pub(crate) fn new(cap: usize) -> Self {
        Collector {
            cap: cap.max(1),
            violations: Vec::new(),
            truncated: false,
        }
    }

    /// Returns false once the cap is reached, so callers can stop scanning.
    pub(crate) fn push(&mut self, law: &str, witness: Vec<String>) -> bool {
        if self.violations.len() >= self.cap {
            self.truncated = true;
            return false;
        }
        self.violations.push(Violation {
            law: law.to_string(),
            witness,
        });
        true
    }

    pub(crate) fn finish(self) -> ValidationReport {
        ValidationReport {
            valid: self.violations.is_empty(),
            violations: self.violations,
            truncated: self.truncated,
        }
    }
}
