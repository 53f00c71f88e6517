//! The fixed test structures.

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::structure::{boolean_semiring, from_hemiring, matrix_gamma_hemiring, product, zn_ring, GammaHemiring};

/// Names accepted by [`structure`], regular corpus first.
pub const NAMES: &[&str] = &["B", "Z2", "Z3", "Z4", "Z2xZ2", "M2x1(B)", "Z2-null"];

/// The regular corpus, without degenerate fixtures.
pub const CORPUS: &[&str] = &["B", "Z2", "Z3", "Z4", "Z2xZ2", "M2x1(B)"];

pub fn structure(name: &str, limits: &Limits) -> Result<GammaHemiring> {
    let cap = limits.max_violations;
    let z = |n| from_hemiring(&zn_ring(n)?, cap);
    let g = match name {
        "B" => from_hemiring(&boolean_semiring(), cap)?,
        "Z2" => z(2)?.with_name("Z2"),
        "Z3" => z(3)?.with_name("Z3"),
        "Z4" => z(4)?.with_name("Z4"),
        "Z2xZ2" => product(&z(2)?, &z(2)?, limits)?.with_name("Z2xZ2"),
        "M2x1(B)" => matrix_gamma_hemiring(&boolean_semiring(), 2, 1, limits)?.with_name("M2x1(B)"),
        "Z2-null" => {
            let m = zn_ring(2)?.additive().clone();
            GammaHemiring::from_fn("Z2-null", m.clone(), m, |_, _, _| 0)?
        }
        other => return Err(Error::Parse(format!("unknown corpus structure {other:?}"))),
    };
    Ok(g)
}

pub fn all(limits: &Limits) -> Result<Vec<GammaHemiring>> {
    CORPUS.iter().map(|n| structure(n, limits)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_validates() {
        let lim = Limits::default();
        for name in NAMES {
            let g = structure(name, &lim).unwrap();
            assert_eq!(g.name(), *name);
            assert!(g.validate(16).valid, "{name}");
        }
        assert!(structure("Q", &lim).is_err());
    }
}
