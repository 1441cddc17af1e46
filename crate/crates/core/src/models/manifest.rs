//! Experiment manifests: plain-text `key=value` lines, `#` comments.

use std::collections::BTreeMap;
use std::str::FromStr;

use super::ModelsError;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Manifest {
    entries: BTreeMap<String, String>,
}

impl Manifest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.entries.insert(key.to_string(), value.to_string());
        self
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Parsed value of `key`, `default` when absent.
    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T, ModelsError> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| ModelsError::Manifest(format!("cannot parse {key}={v}"))),
        }
    }

    /// Parsed value of a key that must be present.
    pub fn require<T: FromStr>(&self, key: &str) -> Result<T, ModelsError> {
        let v = self.raw(key).ok_or_else(|| ModelsError::Manifest(format!("missing key {key}")))?;
        v.parse().map_err(|_| ModelsError::Manifest(format!("cannot parse {key}={v}")))
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn to_text(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }
}

impl FromStr for Manifest {
    type Err = ModelsError;

    fn from_str(text: &str) -> Result<Self, ModelsError> {
        let mut out = Manifest::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| ModelsError::Manifest(format!("line {}: expected key=value", lineno + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() {
                return Err(ModelsError::Manifest(format!("line {}: empty key", lineno + 1)));
            }
            if out.entries.insert(k.to_string(), v.to_string()).is_some() {
                return Err(ModelsError::Manifest(format!("line {}: duplicate key {k}", lineno + 1)));
            }
        }
        Ok(out)
    }
}
