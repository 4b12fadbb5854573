//! JSON job files: a ring, named modules and the pairs to evaluate.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mf::{mf_cokernel, MatrixFactorization};
use crate::poly::CoefficientField;
use crate::quotient::{HypersurfaceRing, RModulePresentation};
use crate::theta::ThetaOptions;

/// `"rational"`, `"prime:p"` or `{"prime": p}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub struct FieldSpec(pub CoefficientField);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FieldRepr {
    Named(String),
    Prime { prime: u64 },
}

impl TryFrom<FieldRepr> for FieldSpec {
    type Error = Error;

    fn try_from(r: FieldRepr) -> Result<Self> {
        match r {
            FieldRepr::Named(s) => Ok(FieldSpec(s.parse()?)),
            FieldRepr::Prime { prime } => Ok(FieldSpec(CoefficientField::prime(prime)?)),
        }
    }
}

impl From<FieldSpec> for FieldRepr {
    fn from(f: FieldSpec) -> Self {
        match f.0 {
            CoefficientField::Rationals => FieldRepr::Named("rational".into()),
            CoefficientField::Prime(p) => FieldRepr::Prime { prime: p },
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec(CoefficientField::Rationals)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MfSpec {
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
}

/// A module given by a presentation matrix, or as `coker(A)` of a matrix
/// factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuleSpec {
    #[serde(rename = "presentation")]
    Presentation(Vec<Vec<String>>),
    #[serde(rename = "mf")]
    Mf(MfSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    #[serde(default)]
    pub field: FieldSpec,
    pub variables: Vec<String>,
    pub f: String,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub pairs: Vec<[String; 2]>,
    #[serde(default)]
    pub options: ThetaOptions,
}

/// A job with its ring built and every module validated.
#[derive(Clone, Debug)]
pub struct LoadedJob {
    pub ring: Arc<HypersurfaceRing>,
    pub modules: BTreeMap<String, RModulePresentation>,
    pub factorizations: BTreeMap<String, MatrixFactorization>,
    pub pairs: Vec<(String, String)>,
    pub options: ThetaOptions,
}

impl JobFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("job file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("job serializes")
    }

    pub fn ring(&self) -> Result<Arc<HypersurfaceRing>> {
        HypersurfaceRing::parse(self.field.0, &self.variables, &self.f)
    }

    /// Builds the ring, parses every module and checks each factorization.
    pub fn load(&self) -> Result<LoadedJob> {
        let ring = self.ring()?;
        let mut modules = BTreeMap::new();
        let mut factorizations = BTreeMap::new();
        for (name, spec) in &self.modules {
            let m = match spec {
                ModuleSpec::Presentation(rows) => RModulePresentation::parse(&ring, rows)?,
                ModuleSpec::Mf(mf) => {
                    let mf = MatrixFactorization::parse(&ring, &mf.a, &mf.b)?;
                    let m = mf_cokernel(&mf);
                    factorizations.insert(name.clone(), mf);
                    m
                }
            };
            modules.insert(name.clone(), m.with_label(name.clone()));
        }
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for [a, b] in &self.pairs {
            for name in [a, b] {
                if !modules.contains_key(name) {
                    return Err(Error::InvalidParameter(format!("pair names unknown module `{name}`")));
                }
            }
            pairs.push((a.clone(), b.clone()));
        }
        Ok(LoadedJob {
            ring,
            modules,
            factorizations,
            pairs,
            options: self.options,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NODE: &str = r#"{
        "field": "rational",
        "variables": ["x", "y"],
        "f": "x*y",
        "modules": {
            "M": {"presentation": [["x"]]},
            "N": {"mf": {"A": [["y"]], "B": [["x"]]}}
        },
        "pairs": [["M", "N"]],
        "options": {"max_steps": 8, "assume_stable_at": null}
    }"#;

    #[test]
    fn load_node_job() {
        let job = JobFile::from_json(NODE).unwrap();
        let loaded = job.load().unwrap();
        assert_eq!(loaded.modules.len(), 2);
        assert_eq!(loaded.factorizations.len(), 1);
        assert_eq!(loaded.pairs, vec![("M".to_string(), "N".to_string())]);
        assert_eq!(JobFile::from_json(&job.to_json()).unwrap(), job);
    }

    #[test]
    fn field_forms() {
        let f: FieldSpec = serde_json::from_str(r#"{"prime": 7}"#).unwrap();
        assert_eq!(f.0, CoefficientField::Prime(7));
        let g: FieldSpec = serde_json::from_str(r#""prime:7""#).unwrap();
        assert_eq!(f, g);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"prime":7}"#);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"prime": 8}"#).is_err());
    }

    #[test]
    fn rejects_bad_jobs() {
        let bad_mf = NODE.replace(r#""B": [["x"]]"#, r#""B": [["y"]]"#);
        assert!(matches!(
            JobFile::from_json(&bad_mf).unwrap().load(),
            Err(Error::NotAFactorization { .. })
        ));
        let bad_pair = NODE.replace(r#"["M", "N"]"#, r#"["M", "P"]"#);
        assert!(JobFile::from_json(&bad_pair).unwrap().load().is_err());
        let bad_poly = NODE.replace(r#""x*y""#, r#""x*y +""#);
        assert!(matches!(JobFile::from_json(&bad_poly).unwrap().load(), Err(Error::Syntax { .. })));
    }
}
