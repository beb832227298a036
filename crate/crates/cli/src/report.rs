use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

/// Versioned envelope around every command's results. Numbers inside
/// `results` are exact strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub results: serde_json::Value,
}

impl ReportDocument {
    pub fn new(command: &str) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            parameters: BTreeMap::new(),
            results: serde_json::Value::Null,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip() {
        let mut doc = ReportDocument::new("certify")
            .param("n_max", 3)
            .param("space", "one-sided");
        doc.results = json!({"entries": [{"n": 1, "t": "4", "proximity_bound": "1/2^1"}]});
        assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
    }
}
