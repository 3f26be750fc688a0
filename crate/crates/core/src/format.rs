//! Instance and report files.
//!
//! An instance is one JSON document carrying both the value table and the
//! dependence family:
//!
//! ```json
//! {
//!   "n": 2,
//!   "values": ["2", "1", "1/2", "0"],
//!   "dependence": { "explicit": [[1, 2], [1], [2]] }
//! }
//! ```
//!
//! `values[mask]` is `f` of the subset whose bit `i - 1` marks element `i`.
//! Values are integer or `p/q` strings, never JSON numbers. The dependence
//! family is either listed explicitly or given as the dual of a matroid:
//! `{"uniform": {"rank": k}}` or
//! `{"partition": {"blocks": [[1, 3], [2, 4]], "capacities": [1, 1]}}`.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::audit::{BoundReport, InstanceAudit, OptResult};
use crate::comatroid::{from_matroid_dual, validate_comatroid, Comatroid, ComatroidViolation, MatroidSpec};
use crate::error::{Error, Result};
use crate::gen::RawInstance;
use crate::greedy::GreedyTrace;
use crate::rational::Rational;
use crate::search::Finding;
use crate::setfn::{FunctionVerdict, SetFunction};
use crate::subset::{Element, GroundSet, Subset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Dependence {
    Explicit(Vec<Vec<Element>>),
    Uniform { rank: usize },
    Partition { blocks: Vec<Vec<Element>>, capacities: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub values: Vec<String>,
    pub dependence: Dependence,
}

impl InstanceFile {
    /// Canonical file for a validated instance: explicit family by
    /// increasing mask.
    pub fn from_instance(f: &SetFunction, c: &Comatroid) -> Self {
        InstanceFile {
            name: None,
            n: f.ground().len(),
            values: f.values().iter().map(Rational::to_string).collect(),
            dependence: Dependence::Explicit(c.members().map(Subset::to_vec).collect()),
        }
    }

    pub fn from_raw(raw: &RawInstance) -> Self {
        InstanceFile {
            name: None,
            n: raw.function.ground().len(),
            values: raw.function.values().iter().map(Rational::to_string).collect(),
            dependence: Dependence::Explicit(raw.family.iter().map(|s| s.to_vec()).collect()),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn ground(&self) -> Result<GroundSet> {
        GroundSet::new(self.n)
    }

    pub fn function(&self) -> Result<SetFunction> {
        let ground = self.ground()?;
        if self.values.len() != ground.subset_count() {
            return Err(Error::ValueCount { expected: ground.subset_count(), found: self.values.len() });
        }
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(index, v)| v.parse::<Rational>().map_err(|source| Error::Value { index, source }))
            .collect::<Result<Vec<_>>>()?;
        SetFunction::new(ground, values)
    }

    pub fn comatroid(&self) -> Result<Comatroid> {
        let ground = self.ground()?;
        match &self.dependence {
            Dependence::Explicit(members) => {
                let sets = members.iter().map(|m| ground.subset_of(m)).collect::<Result<Vec<_>>>()?;
                Ok(validate_comatroid(ground, sets)?)
            }
            Dependence::Uniform { rank } => from_matroid_dual(&MatroidSpec::uniform(ground, *rank)),
            Dependence::Partition { blocks, capacities } => {
                from_matroid_dual(&MatroidSpec::partition(ground, blocks.clone(), capacities.clone()))
            }
        }
    }

    /// SHA-256 of the canonical compact form of the validated instance.
    pub fn digest(f: &SetFunction, c: &Comatroid) -> String {
        let canonical = serde_json::to_string(&InstanceFile::from_instance(f, c)).expect("instance serializes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }
}

/// Parses and validates an instance. The function's structure is not
/// checked here; see [`SetFunction::validate`].
pub fn parse_instance(text: &str) -> Result<(SetFunction, Comatroid)> {
    let file = InstanceFile::parse(text)?;
    let f = file.function()?;
    let c = file.comatroid()?;
    Ok((f, c))
}

pub fn emit_instance(f: &SetFunction, c: &Comatroid) -> String {
    InstanceFile::from_instance(f, c).to_json()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationSection {
    pub valid: bool,
    pub function: FunctionVerdict,
    /// Axiom failure of an explicit family, with its witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comatroid_violation: Option<ComatroidViolation>,
    /// Any other reason the family could not be built.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comatroid_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub girth: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub circuits: Vec<Subset>,
}

/// Machine-readable output of every subcommand. Absent sections are
/// omitted; field order is fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReportFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub traces: Option<Vec<GreedyTrace>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimum: Option<OptResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reports: Vec<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<InstanceAudit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub findings: Option<Vec<Finding>>,
}

impl ReportFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
