use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const SCHEMA_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One command invocation and its payload. Keys serialize sorted; every
/// number in `results` is a decimal string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub spec: String,
    pub parameters: BTreeMap<String, String>,
    pub results: Value,
    pub version: String,
}

impl OutputRecord {
    pub fn new(command: &str, spec: impl ToString, results: impl Serialize) -> Result<Self, CliError> {
        Ok(Self {
            command: command.to_string(),
            spec: spec.to_string(),
            parameters: BTreeMap::new(),
            results: stringify_numbers(serde_json::to_value(results)?),
            version: SCHEMA_VERSION.to_string(),
        })
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        // serde_json's Map is a BTreeMap, so nested keys come out sorted too
        Ok(serde_json::to_string_pretty(&serde_json::to_value(self)?)?)
    }
}

pub fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(items) => Value::Array(items.into_iter().map(stringify_numbers).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        other => other,
    }
}
