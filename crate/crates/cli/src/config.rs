use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{Map, Value};

/// Optional flat JSON config: keys mirror the long flag names, explicit
/// flags win over file values, defaults fill the rest.
#[derive(Debug, Default)]
pub struct ConfigFile {
    values: Map<String, Value>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        let value: Value = serde_json::from_str(&text)
            .with_context(|| format!("parsing config file {}", path.display()))?;
        match value {
            Value::Object(values) => Ok(Self { values }),
            _ => bail!("config file must hold a flat JSON object"),
        }
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(Value::Number(x)) => Ok(x.as_f64()),
            Some(other) => bail!("config key {key} must be a number, got {other}"),
        }
    }

    pub fn u64(&self, key: &str) -> Result<Option<u64>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(Value::Number(x)) => x
                .as_u64()
                .map(Some)
                .with_context(|| format!("config key {key} must be a non-negative integer")),
            Some(other) => bail!("config key {key} must be an integer, got {other}"),
        }
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>> {
        Ok(self.u64(key)?.map(|x| x as usize))
    }

    pub fn string(&self, key: &str) -> Result<Option<String>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(other) => bail!("config key {key} must be a string, got {other}"),
        }
    }

    pub fn f64_list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| {
                    v.as_f64()
                        .with_context(|| format!("config key {key} must hold numbers"))
                })
                .collect::<Result<Vec<f64>>>()
                .map(Some),
            Some(other) => bail!("config key {key} must be an array, got {other}"),
        }
    }
}

/// flag > config file > default.
pub fn resolve<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// flag > config file, no default.
pub fn resolve_required<T>(flag: Option<T>, file: Option<T>, name: &str) -> Result<T> {
    flag.or(file)
        .with_context(|| format!("missing required parameter --{name} (flag or config file)"))
}
