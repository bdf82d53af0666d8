//! Deterministic JSON analysis reports.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::document::LoadedAction;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// Every quantifier was decided exactly.
    Exact,
    /// The Cayley ball did not saturate; verdicts concern `G_k` only.
    HorizonLimited,
    /// A budget ran out; numbers are certified bounds.
    BudgetBracket,
    /// Part of the verdict rests on seeded random sampling.
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputRef {
    pub name: String,
    pub origin: String,
    /// Hex SHA-256 of the input text.
    pub digest: String,
}

impl InputRef {
    pub fn of(loaded: &LoadedAction, origin: &str) -> Self {
        InputRef { name: loaded.document.name.clone(), origin: origin.to_string(), digest: loaded.digest.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub analysis: String,
    pub tool_version: String,
    pub inputs: Vec<InputRef>,
    pub parameters: BTreeMap<String, Value>,
    pub certificate: CertificateKind,
    pub results: Value,
}

impl AnalysisReport {
    pub fn new(analysis: &str, inputs: Vec<InputRef>) -> Self {
        AnalysisReport {
            schema_version: SCHEMA_VERSION,
            analysis: analysis.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            inputs,
            parameters: BTreeMap::new(),
            certificate: CertificateKind::Exact,
            results: Value::Null,
        }
    }

    pub fn parameter(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(key.to_string(), serde_json::to_value(value).expect("parameters serialize"));
        self
    }

    pub fn results(mut self, results: impl Serialize) -> Self {
        self.results = serde_json::to_value(results).expect("results serialize");
        self
    }

    /// Keeps the weakest certificate seen so far.
    pub fn certify(mut self, kind: CertificateKind) -> Self {
        let rank = |k: CertificateKind| match k {
            CertificateKind::Exact => 0,
            CertificateKind::HorizonLimited => 1,
            CertificateKind::Sampled => 2,
            CertificateKind::BudgetBracket => 3,
        };
        if rank(kind) > rank(self.certificate) {
            self.certificate = kind;
        }
        self
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
