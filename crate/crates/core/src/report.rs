//! Machine-readable check reports (schema "report/1").

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "report/1";

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Case {
    pub id: String,
    pub inputs: Value,
    pub computed: Value,
    pub expected: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl Case {
    pub fn check(id: impl Into<String>, inputs: Value, computed: Value, expected: Value) -> Self {
        let pass = computed == expected;
        Case {
            id: id.into(),
            inputs,
            computed,
            expected,
            pass,
            skipped: None,
            detail: None,
        }
    }

    pub fn skip(id: impl Into<String>, inputs: Value, reason: impl Into<String>) -> Self {
        Case {
            id: id.into(),
            inputs,
            computed: Value::Null,
            expected: Value::Null,
            pass: false,
            skipped: Some(reason.into()),
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }

    pub fn is_failure(&self) -> bool {
        !self.pass && self.skipped.is_none()
    }
}

#[derive(Clone, Copy, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(cases: &[Case]) -> Self {
        let mut s = Summary::default();
        for c in cases {
            if c.skipped.is_some() {
                s.skipped += 1;
            } else if c.pass {
                s.passed += 1;
            } else {
                s.failed += 1;
            }
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub config: Value,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: Value, cases: Vec<Case>, timestamp: Option<u64>) -> Self {
        let summary = Summary::of(&cases);
        Report {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION"),
            timestamp,
            config,
            cases,
            summary,
        }
    }
}
