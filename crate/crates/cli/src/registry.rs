//! Built-in scenarios: graphs and ideals from the literature together with
//! the values the workbench is expected to reproduce.
//!
//! Each scenario is a checked-in JSON fixture embedded at compile time.

use serde::{Deserialize, Serialize};

use edgereg_core::json::to_canonical_string;
use edgereg_core::{ExponentVec, Graph, MonomialIdeal};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    /// Needs `--allow-slow` to run.
    pub slow: bool,
    pub payload: Payload,
    /// Named extra generators, referenced by `Expected::with`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extras: Vec<NamedMonomial>,
    pub expected: Vec<Expected>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedMonomial {
    pub name: String,
    pub exponent: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Payload {
    Graph(serde_json::Value),
    Ideal(serde_json::Value),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// `reg I^s`.
    RegPower,
    /// `reg closure(I^s)`; graphs only.
    RegClosure,
    /// Common `reg` of every ideal between `I^s` and its closure, or a
    /// mismatch when they differ; graphs only.
    RegIntermediates,
    /// `reg (I^s + (with...))`.
    RegPlus,
    /// `reg I^(s)`; graphs only.
    RegSymbolic,
    /// `reg (I_A + I_B)^s` from the per-component powers; graphs only.
    RegMixedSum,
    /// Minimal generators of `closure(I^s)` outside `I^s`; graphs only.
    ExtraGenerators,
    /// 1 when the edge ideal is normal.
    Normal,
    /// Girth of the 1-skeleton of the Stanley–Reisner complex of `I`
    /// (0 for a forest).
    ComplexGirth,
    /// How many of the `with` monomials lie in `closure(I^s)` but not `I^s`.
    ExtrasInClosure,
}

impl Quantity {
    pub fn uses_field(self) -> bool {
        matches!(
            self,
            Quantity::RegPower
                | Quantity::RegClosure
                | Quantity::RegIntermediates
                | Quantity::RegPlus
                | Quantity::RegSymbolic
                | Quantity::RegMixedSum
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub quantity: Quantity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub with: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub value: u64,
    pub provenance: Provenance,
    pub citation: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the literature.
    Published,
    /// Obtained here by an independent computation.
    Computed,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        to_canonical_string(&serde_json::to_value(self).expect("scenario serializes"))
    }

    fn validate(&self) -> Result<(), CliError> {
        let n = match &self.payload {
            Payload::Graph(_) => self.graph()?.map(|g| g.n()),
            Payload::Ideal(_) => Some(self.ideal()?.ambient()),
        };
        for x in &self.extras {
            if Some(x.exponent.len()) != n {
                return Err(CliError::Input(format!("extra generator {} has the wrong length", x.name)));
            }
        }
        for e in &self.expected {
            for w in &e.with {
                if !self.extras.iter().any(|x| &x.name == w) {
                    return Err(CliError::Input(format!("unknown extra generator {w}")));
                }
            }
            if e.quantity.uses_field() != e.field.is_some() {
                return Err(CliError::Input(format!("{:?}: field given iff the quantity depends on it", e.quantity)));
            }
        }
        Ok(())
    }

    /// The graph payload, if any.
    pub fn graph(&self) -> Result<Option<Graph>, CliError> {
        match &self.payload {
            Payload::Graph(v) => Ok(Some(Graph::from_json(&v.to_string())?)),
            Payload::Ideal(_) => Ok(None),
        }
    }

    /// The ideal: the payload ideal or the edge ideal of the payload graph.
    pub fn ideal(&self) -> Result<MonomialIdeal, CliError> {
        match &self.payload {
            Payload::Graph(_) => Ok(MonomialIdeal::edge_ideal(&self.graph()?.expect("graph payload"))),
            Payload::Ideal(v) => Ok(MonomialIdeal::from_json(&v.to_string())?),
        }
    }

    pub fn extra(&self, name: &str) -> Option<ExponentVec> {
        self.extras.iter().find(|x| x.name == name).map(|x| ExponentVec::new(x.exponent.clone()))
    }
}

/// `(file name, contents)` of every fixture, in registry order.
pub const FIXTURES: &[(&str, &str)] = &[
    ("rigidity-c3c3-s3.json", include_str!("../fixtures/rigidity-c3c3-s3.json")),
    ("rigidity-c3c5-s4.json", include_str!("../fixtures/rigidity-c3c5-s4.json")),
    ("dim1-girth3-s0.json", include_str!("../fixtures/dim1-girth3-s0.json")),
    ("dim1-girth3-s1.json", include_str!("../fixtures/dim1-girth3-s1.json")),
    ("dim1-girth4-s0.json", include_str!("../fixtures/dim1-girth4-s0.json")),
    ("dim1-girth4-s1.json", include_str!("../fixtures/dim1-girth4-s1.json")),
    ("dk16.json", include_str!("../fixtures/dk16.json")),
    ("char-dependence-s1.json", include_str!("../fixtures/char-dependence-s1.json")),
    ("char-dependence-s2.json", include_str!("../fixtures/char-dependence-s2.json")),
    ("katzman11.json", include_str!("../fixtures/katzman11.json")),
    ("triangle-symbolic.json", include_str!("../fixtures/triangle-symbolic.json")),
    ("bipartite-c6.json", include_str!("../fixtures/bipartite-c6.json")),
];

/// All built-in scenarios.
pub fn registry() -> Vec<Scenario> {
    FIXTURES
        .iter()
        .map(|(file, text)| Scenario::from_json(text).unwrap_or_else(|e| panic!("fixture {file}: {e}")))
        .collect()
}

pub fn find(name: &str) -> Result<Scenario, CliError> {
    registry()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| CliError::Input(format!("unknown scenario {name:?}; see list-scenarios")))
}
