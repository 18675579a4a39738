//! Versioned, deterministic JSON reports.

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckResult {
    pub fn pass(id: &str, detail: impl Into<String>) -> Self {
        CheckResult {
            id: id.to_string(),
            passed: true,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn fail(id: &str, detail: impl Into<String>) -> Self {
        CheckResult {
            id: id.to_string(),
            passed: false,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn new(id: &str, passed: bool, detail: impl Into<String>) -> Self {
        if passed {
            Self::pass(id, detail)
        } else {
            Self::fail(id, detail)
        }
    }

    pub fn with_witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(name: &str, bytes: &[u8]) -> Self {
        let digest = Sha256::digest(bytes);
        InputDigest {
            name: name.to_string(),
            sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub results: Vec<CheckResult>,
    pub certificates: Vec<Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            inputs: Vec::new(),
            results: Vec::new(),
            certificates: Vec::new(),
        }
    }

    pub fn add_input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.push(InputDigest::of(name, bytes));
    }

    pub fn push(&mut self, r: CheckResult) {
        self.results.push(r);
    }

    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn to_json(&self) -> Value {
        json!(self)
    }

    /// One `PASS id: detail` or `FAIL id: detail` line per result.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&format!("{} {}: {}\n", if r.passed { "PASS" } else { "FAIL" }, r.id, r.detail));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        let d = InputDigest::of("x", b"abc");
        assert_eq!(d.sha256, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn json_shape() {
        let mut r = Report::new("validate");
        r.push(CheckResult::pass("a", "fine"));
        r.push(CheckResult::fail("b", "broken").with_witness(json!([1, 2])));
        let v = r.to_json();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["results"][0].get("witness"), None);
        assert_eq!(v["results"][1]["witness"], json!([1, 2]));
        assert!(!r.all_passed());
        assert_eq!(r.to_text(), "PASS a: fine\nFAIL b: broken\n");
    }
}
