//! JSON file formats for structures and fuzzy subsets.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::carrier::{CarrierId, CarrierKind};
use crate::correspondence::CorrespondenceContext;
use crate::error::{Error, Result};
use crate::fuzzy::{FuzzySubset, Rational01};
use crate::structure::{FiniteMonoid, GammaHemiring};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidFile {
    pub elements: Vec<String>,
    pub zero: String,
    pub add: Vec<Vec<String>>,
}

/// `{"name", "S", "Gamma", "action"}` with `action[a][γ][b]` a label of S.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub name: String,
    #[serde(rename = "S")]
    pub s: MonoidFile,
    #[serde(rename = "Gamma")]
    pub gamma: MonoidFile,
    pub action: Vec<Vec<Vec<String>>>,
}

fn lookup(labels: &[String], what: &str, label: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::Parse(format!("unknown {what} element {label:?}")))
}

impl MonoidFile {
    fn to_monoid(&self, what: &str) -> Result<FiniteMonoid> {
        let labels = &self.elements;
        let zero = lookup(labels, what, &self.zero)?;
        let add = self
            .add
            .iter()
            .map(|row| row.iter().map(|l| lookup(labels, what, l)).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        FiniteMonoid::new(labels.clone(), zero, add)
    }

    fn from_monoid(m: &FiniteMonoid) -> Self {
        MonoidFile {
            elements: m.labels().to_vec(),
            zero: m.label(m.zero()).to_string(),
            add: m
                .table()
                .iter()
                .map(|row| row.iter().map(|&i| m.label(i).to_string()).collect())
                .collect(),
        }
    }
}

impl StructureFile {
    /// Accepts a bare structure or any object holding one under
    /// `"structure"`, such as the table dump of the `operators` command.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let inner = match value.get("structure") {
            Some(v) if v.is_object() => v.clone(),
            _ => value,
        };
        serde_json::from_value(inner).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structures serialize")
    }

    /// Builds the Γ-hemiring without checking its laws.
    pub fn to_gamma_hemiring(&self) -> Result<GammaHemiring> {
        let s = self.s.to_monoid("S")?;
        let gamma = self.gamma.to_monoid("Gamma")?;
        let labels = s.labels().to_vec();
        let action = self
            .action
            .iter()
            .map(|plane| {
                plane
                    .iter()
                    .map(|row| row.iter().map(|l| lookup(&labels, "S", l)).collect())
                    .collect()
            })
            .collect::<Result<Vec<Vec<Vec<usize>>>>>()?;
        GammaHemiring::new(self.name.clone(), s, gamma, action)
    }

    pub fn from_gamma_hemiring(g: &GammaHemiring) -> Self {
        let s = g.s();
        StructureFile {
            name: g.name().to_string(),
            s: MonoidFile::from_monoid(s),
            gamma: MonoidFile::from_monoid(g.gamma()),
            action: g
                .action_table()
                .iter()
                .map(|plane| {
                    plane
                        .iter()
                        .map(|row| row.iter().map(|&i| s.label(i).to_string()).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

/// `{"over", "structure", "values"}`; labels left out of `values` are 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzyFile {
    pub over: String,
    pub structure: String,
    pub values: IndexMap<String, Rational01>,
}

impl FuzzyFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fuzzy subsets serialize")
    }

    pub fn kind(&self) -> Result<CarrierKind> {
        CarrierKind::parse(&self.over).ok_or_else(|| Error::Parse(format!("unknown carrier {:?}", self.over)))
    }

    /// Resolves labels against the carrier of `ctx` named by `over`.
    pub fn to_fuzzy(&self, ctx: &CorrespondenceContext) -> Result<FuzzySubset> {
        let kind = self.kind()?;
        if self.structure != ctx.name() {
            return Err(Error::CarrierMismatch {
                expected: ctx.name().to_string(),
                found: self.structure.clone(),
            });
        }
        let labels = ctx.labels(kind);
        let mut values = vec![Rational01::ZERO; labels.len()];
        for (label, v) in &self.values {
            values[lookup(&labels, kind.as_str(), label)?] = *v;
        }
        Ok(FuzzySubset::new(CarrierId::new(ctx.name(), kind), values))
    }

    /// Lists every element, zeros included.
    pub fn from_fuzzy(mu: &FuzzySubset, ctx: &CorrespondenceContext) -> Self {
        let kind = mu.carrier().kind;
        let values = ctx.labels(kind).into_iter().zip(mu.values().iter().copied()).collect();
        FuzzyFile {
            over: kind.as_str().to_string(),
            structure: mu.carrier().structure.clone(),
            values,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::limits::Limits;

    #[test]
    fn structure_round_trip() {
        let lim = Limits::default();
        for name in corpus::NAMES {
            let g = corpus::structure(name, &lim).unwrap();
            let file = StructureFile::from_gamma_hemiring(&g);
            let back = StructureFile::from_json(&file.to_json()).unwrap();
            assert_eq!(back, file);
            let g2 = back.to_gamma_hemiring().unwrap();
            assert_eq!(g2.action_table(), g.action_table());
            assert_eq!(g2.s().labels(), g.s().labels());
        }
    }

    #[test]
    fn bad_files() {
        assert!(matches!(StructureFile::from_json("{"), Err(Error::Parse(_))));
        let mut f = StructureFile::from_gamma_hemiring(&corpus::structure("Z2", &Limits::default()).unwrap());
        f.action[0][0][0] = "7".into();
        assert!(matches!(f.to_gamma_hemiring(), Err(Error::Parse(_))));
    }

    #[test]
    fn fuzzy_defaults_to_zero() {
        let lim = Limits::default();
        let ctx = CorrespondenceContext::new(corpus::structure("Z2", &lim).unwrap(), &lim).unwrap();
        let f = FuzzyFile::from_json(r#"{"over":"L","structure":"Z2","values":{"op0":"1"}}"#).unwrap();
        let mu = f.to_fuzzy(&ctx).unwrap();
        assert_eq!(mu.values(), &[Rational01::ONE, Rational01::ZERO]);
        let out = FuzzyFile::from_fuzzy(&mu, &ctx).to_json();
        assert!(out.contains("\"op1\": \"0\""));
        let wrong = FuzzyFile::from_json(r#"{"over":"S","structure":"B","values":{}}"#).unwrap();
        assert!(matches!(wrong.to_fuzzy(&ctx), Err(Error::CarrierMismatch { .. })));
    }
}
