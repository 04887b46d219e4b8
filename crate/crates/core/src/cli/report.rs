//! Check records and their serialization. Every number is written as an exact string.

use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub name: String,
    /// What the check is about, in words.
    pub anchor: String,
    pub status: Status,
    pub expected: Option<String>,
    pub actual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Extra evidence outside the criterion proper.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub supplementary: bool,
    /// Structured values specific to the subcommand.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl Record {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        Record {
            name: name.into(),
            anchor: anchor.into(),
            status: Status::Skipped,
            expected: None,
            actual: None,
            note: None,
            supplementary: false,
            data: BTreeMap::new(),
            runtime_ms: None,
        }
    }

    /// Pass iff the two strings agree.
    pub fn compare(mut self, expected: impl ToString, actual: impl ToString) -> Self {
        let (e, a) = (expected.to_string(), actual.to_string());
        self.status = Status::from_bool(e == a);
        self.expected = Some(e);
        self.actual = Some(a);
        self
    }

    pub fn verdict(mut self, ok: bool, actual: impl ToString) -> Self {
        self.status = Status::from_bool(ok);
        self.actual = Some(actual.to_string());
        self
    }

    pub fn expect(mut self, expected: impl ToString) -> Self {
        self.expected = Some(expected.to_string());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn supplementary(mut self) -> Self {
        self.supplementary = true;
        self
    }

    pub fn skipped(mut self, why: impl Into<String>) -> Self {
        self.status = Status::Skipped;
        self.note = Some(why.into());
        self
    }

    pub fn failed(mut self, why: impl Into<String>) -> Self {
        self.status = Status::Fail;
        self.note = Some(why.into());
        self
    }

    pub fn with(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.data.insert(key.to_string(), value.into());
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.runtime_ms = Some(start.elapsed().as_millis() as u64);
        self
    }
}

/// Record for an error: budget exhaustion is a skip, anything else a failure.
pub fn from_error(rec: Record, e: &crate::Error) -> Record {
    match e {
        crate::Error::BudgetExceeded { .. } => rec.skipped(e.to_string()),
        _ => rec.failed(e.to_string()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Serialize deterministically. Runtimes are dropped unless `timings` is set.
pub fn emit(records: &[Record], format: Format, timings: bool) -> String {
    let cleaned: Vec<Record> = records
        .iter()
        .cloned()
        .map(|mut r| {
            if !timings {
                r.runtime_ms = None;
            }
            r
        })
        .collect();
    match format {
        Format::Json => serde_json::to_string_pretty(&cleaned).unwrap_or_else(|e| format!("{{\"error\": \"{e}\"}}")),
        Format::Text => {
            let mut out = String::new();
            for r in &cleaned {
                out.push_str(&format!("{} {}", r.status.label(), r.name));
                if let Some(a) = &r.actual {
                    out.push_str(&format!(" = {a}"));
                }
                if let Some(e) = &r.expected {
                    if Some(e) != r.actual.as_ref() {
                        out.push_str(&format!(" (expected {e})"));
                    }
                }
                if let Some(n) = &r.note {
                    out.push_str(&format!(" [{n}]"));
                }
                if let Some(ms) = r.runtime_ms {
                    out.push_str(&format!(" {ms} ms"));
                }
                out.push('\n');
            }
            out
        }
    }
}

pub fn all_pass(records: &[Record]) -> bool {
    records.iter().all(|r| r.status != Status::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        assert_eq!(emit(&[], Format::Json, false), "[]");
    }

    #[test]
    fn pass_record_and_exact_strings() {
        let r = Record::new("density", "self-representation").compare("32/27", "32/27");
        let v: serde_json::Value = serde_json::from_str(&emit(&[r], Format::Json, false)).unwrap();
        assert_eq!(v[0]["status"], "pass");
        assert_eq!(v[0]["actual"], "32/27");
        assert!(v[0].get("runtime_ms").is_none());
    }

    #[test]
    fn timings_only_on_request() {
        let r = Record::new("x", "y").verdict(true, "1").timed(Instant::now());
        assert!(!emit(&[r.clone()], Format::Json, false).contains("runtime_ms"));
        assert!(emit(&[r], Format::Json, true).contains("runtime_ms"));
    }
}
