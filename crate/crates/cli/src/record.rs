//! Structured output: one JSON object per line.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// How a result was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Structural,
    Oracle,
}

/// A command's inputs and result. Keys serialize in sorted order, so equal
/// records render to identical text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: Value,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

impl OutputRecord {
    pub fn new(command: impl Into<String>, method: Method) -> Self {
        OutputRecord {
            command: command.into(),
            inputs: BTreeMap::new(),
            result: Value::Null,
            method,
            elapsed_us: None,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn parse_line(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trips_and_is_stable() {
        let rec = OutputRecord::new("fixed count", Method::Oracle)
            .input("q", 4)
            .input("p", 3)
            .input("n", 4);
        let rec = OutputRecord {
            result: json!({"count": "21", "b": [1, 2]}),
            elapsed_us: Some(12),
            ..rec
        };
        let line = rec.to_line();
        assert_eq!(
            line,
            r#"{"command":"fixed count","inputs":{"n":"4","p":"3","q":"4"},"result":{"b":[1,2],"count":"21"},"method":"oracle","elapsed_us":12}"#
        );
        assert_eq!(OutputRecord::parse_line(&line).unwrap(), rec);
    }
}
