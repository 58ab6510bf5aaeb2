//! Pass/fail records and the aggregated report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One checked inequality `lhs <= rhs + tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub passed: bool,
    /// `rhs - lhs`.
    pub margin: f64,
    pub tolerance: f64,
    #[serde(default)]
    pub metadata: BTreeMap<String, Value>,
}

impl VerificationRecord {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let passed = lhs.is_finite() && rhs.is_finite() && lhs <= rhs + tolerance;
        VerificationRecord {
            name: name.into(),
            lhs,
            rhs,
            passed,
            margin: rhs - lhs,
            tolerance,
            metadata: BTreeMap::new(),
        }
    }

    /// Record for a strict inequality `lhs < rhs`.
    pub fn strict(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let mut r = Self::new(name, lhs, rhs, 0.0);
        r.passed = lhs.is_finite() && rhs.is_finite() && lhs < rhs;
        r
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    /// Re-evaluate `passed` under a different tolerance.
    pub fn retolerate(&mut self, tolerance: f64) {
        self.tolerance = tolerance;
        self.passed = self.lhs.is_finite() && self.rhs.is_finite() && self.lhs <= self.rhs + tolerance;
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: Value,
    pub records: Vec<VerificationRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    /// Sorts records by name (stable, so equal names keep insertion order)
    /// and computes the summary.
    pub fn new(config: Value, mut records: Vec<VerificationRecord>) -> Self {
        records.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = records.iter().filter(|r| r.passed).count();
        let failed = records.len() - passed;
        VerificationReport { config, records, summary: Summary { passed, failed } }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn find(&self, name: &str) -> Option<&VerificationRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Margin table: `name,lhs,rhs,margin,passed`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,lhs,rhs,margin,passed\n");
        for r in &self.records {
            out.push_str(&format!("{},{:e},{:e},{:e},{}\n", csv_field(&r.name), r.lhs, r.rhs, r.margin, r.passed));
        }
        out
    }
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
