//! Structured verdict documents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_PASS};

pub const SCHEMA_VERSION: &str = "cyroots-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// `null` means inconclusive
    pub passed: Option<bool>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl Check {
    pub fn new(name: &str, passed: Option<bool>, detail: impl Into<String>) -> Check {
        Check { name: name.to_string(), passed, detail: detail.into(), witness: None }
    }

    pub fn with_witness(mut self, w: serde_json::Value) -> Check {
        self.witness = Some(w);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool_version: String,
    pub command: String,
    /// every option of the job, including field, seed and trial count
    pub job: BTreeMap<String, serde_json::Value>,
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub artifacts: Vec<String>,
    pub verdict: String,
    pub timing: Timing,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            schema: SCHEMA_VERSION.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            job: BTreeMap::new(),
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            data: BTreeMap::new(),
            artifacts: Vec::new(),
            verdict: String::new(),
            timing: Timing { elapsed_ms: 0 },
        }
    }

    pub fn echo(&mut self, key: &str, v: impl Serialize) {
        self.job.insert(key.to_string(), serde_json::to_value(v).expect("serializable job option"));
    }

    pub fn add_input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.insert(name.to_string(), sha256_hex(bytes));
    }

    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.passed == Some(false)) {
            EXIT_FAIL
        } else if self.checks.iter().any(|c| c.passed.is_none()) {
            EXIT_INCONCLUSIVE
        } else {
            EXIT_PASS
        }
    }

    pub fn finish(&mut self, elapsed_ms: u128) {
        self.verdict = match self.exit_code() {
            EXIT_PASS => "pass",
            EXIT_FAIL => "fail",
            _ => "inconclusive",
        }
        .to_string();
        self.timing.elapsed_ms = elapsed_ms;
    }

    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The report without its timing, which is the part reruns must reproduce exactly.
    pub fn stable_form(&self) -> String {
        let mut r = self.clone();
        r.timing.elapsed_ms = 0;
        r.to_pretty()
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
