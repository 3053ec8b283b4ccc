//! Structured result records shared by the CLI and the browser demo.

use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

/// Ordered key/value record; keys keep insertion order when serialized.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(Vec<(String, Value)>);

impl Record {
    pub fn new() -> Self {
        Record(Vec::new())
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.0.push((key.to_string(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn fields(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }
}

impl Serialize for Record {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    /// Process exit code: 0 pass, 1 failure, 2 input error.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Failure {
    pub cell: String,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    pub inputs: Record,
    pub results: Vec<Record>,
    /// Aggregate values that do not fit the per-row results.
    pub summary: Record,
    pub status: Status,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(command: &str, inputs: Record) -> Self {
        Report {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs,
            results: Vec::new(),
            summary: Record::new(),
            status: Status::Pass,
            failures: Vec::new(),
        }
    }

    pub fn fail(&mut self, cell: impl Into<String>, witness: impl Into<String>) {
        self.status = Status::Fail;
        self.failures.push(Failure {
            cell: cell.into(),
            witness: witness.into(),
        });
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_keeps_insertion_order() {
        let r = Record::new().with("z", "1/3").with("a", true);
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"z":"1/3","a":true}"#);
    }

    #[test]
    fn failing_report() {
        let mut rep = Report::new("scan", Record::new());
        assert_eq!(rep.status.exit_code(), 0);
        rep.fail("m=1", "j=1");
        assert_eq!(rep.status, Status::Fail);
        assert!(rep.to_json().contains("\"status\": \"fail\""));
    }
}
