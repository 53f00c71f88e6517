//! Size caps for the exhaustive loops.
//!
//! Every cap can be overridden through the `GHR_LIMITS` environment
//! variable, a comma separated list of `key=value` pairs:
//!
//! ```text
//! GHR_LIMITS="cells=1000000,operators=20000,violations=16,carrier=64,family=1000000"
//! ```

use crate::error::{Error, Result};

pub const LIMITS_ENV: &str = "GHR_LIMITS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Upper bound on |S|·|Γ|·|S| for any Γ-hemiring that gets built.
    pub max_table_cells: usize,
    /// Upper bound on the size of an operator hemiring closure.
    pub max_operators: usize,
    /// Number of violations a validation report collects before stopping.
    pub max_violations: usize,
    /// Largest carrier on which closed subsets are enumerated.
    pub max_enum_carrier: usize,
    /// Largest number of closed subsets or fuzzy family members produced by
    /// one enumeration.
    pub max_family: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_table_cells: 1_000_000,
            max_operators: 20_000,
            max_violations: 16,
            max_enum_carrier: 64,
            max_family: 1_000_000,
        }
    }
}

impl Limits {
    /// Defaults, overridden by `GHR_LIMITS` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(LIMITS_ENV) {
            Ok(spec) => Limits::default().with_overrides(&spec),
            Err(_) => Ok(Limits::default()),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("{LIMITS_ENV}: expected key=value, got {part:?}")))?;
            let value: usize = value
                .trim()
                .replace('_', "")
                .parse()
                .map_err(|_| Error::Parse(format!("{LIMITS_ENV}: bad number in {part:?}")))?;
            match key.trim() {
                "cells" => self.max_table_cells = value,
                "operators" => self.max_operators = value,
                "violations" => self.max_violations = value,
                "carrier" => self.max_enum_carrier = value,
                "family" => self.max_family = value,
                other => {
                    return Err(Error::Parse(format!("{LIMITS_ENV}: unknown key {other:?}")));
                }
            }
        }
        Ok(self)
    }

    pub(crate) fn check_cells(&self, what: &str, s: usize, gamma: usize) -> Result<()> {
        let cells = (s as u128) * (gamma as u128) * (s as u128);
        if cells > self.max_table_cells as u128 {
            return Err(Error::capacity(
                format!("{what} action table"),
                cells,
                self.max_table_cells,
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let l = Limits::default()
            .with_overrides("cells=10, carrier=5,family=1_000")
            .unwrap();
        assert_eq!(l.max_table_cells, 10);
        assert_eq!(l.max_enum_carrier, 5);
        assert_eq!(l.max_family, 1000);
        assert_eq!(l.max_operators, 20_000);
    }

    #[test]
    fn bad_overrides_rejected() {
        assert!(Limits::default().with_overrides("cells").is_err());
        assert!(Limits::default().with_overrides("speed=3").is_err());
        assert!(Limits::default().with_overrides("cells=x").is_err());
    }
}
