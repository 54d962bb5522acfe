//! Flat `key = value` files. Blank lines and text after `#` are ignored;
//! lists are comma separated. The seed is always required.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{ExperimentError, Result};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| ExperimentError::Config(format!("line {}: expected key = value, got {raw:?}", i + 1)))?;
            let k = k.trim();
            if k.is_empty() {
                return Err(ExperimentError::Config(format!("line {}: empty key", i + 1)));
            }
            if values.insert(k.to_string(), v.trim().to_string()).is_some() {
                return Err(ExperimentError::Config(format!("line {}: duplicate key {k}", i + 1)));
            }
        }
        Ok(Self { values })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ExperimentError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.values.insert(key.to_string(), value.to_string());
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.set(key, value);
        self
    }

    pub fn contains(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn entries(&self) -> &BTreeMap<String, String> {
        &self.values
    }

    fn parse_value<T: FromStr>(&self, key: &str, v: &str) -> Result<T> {
        v.parse().map_err(|_| ExperimentError::Config(format!("{key}: cannot parse {v:?}")))
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<T> {
        let v = self.values.get(key).ok_or_else(|| ExperimentError::Config(format!("missing key {key}")))?;
        self.parse_value(key, v)
    }

    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T> {
        match self.values.get(key) {
            Some(v) => self.parse_value(key, v),
            None => Ok(default),
        }
    }

    pub fn list<T: FromStr>(&self, key: &str) -> Result<Vec<T>> {
        let v = self.values.get(key).ok_or_else(|| ExperimentError::Config(format!("missing key {key}")))?;
        v.split(',').map(|p| self.parse_value(key, p.trim())).collect()
    }

    pub fn list_or<T: FromStr>(&self, key: &str, default: Vec<T>) -> Result<Vec<T>> {
        if self.contains(key) { self.list(key) } else { Ok(default) }
    }

    pub fn seed(&self) -> Result<u64> {
        self.get("seed")
    }

    pub fn threads(&self) -> Result<usize> {
        self.get_or("threads", 0)
    }

    /// Reads a float and checks it against an open or closed range.
    pub fn ranged(&self, key: &str, default: Option<f64>, ok: impl Fn(f64) -> bool, what: &str) -> Result<f64> {
        let v = match default {
            Some(d) => self.get_or(key, d)?,
            None => self.get(key)?,
        };
        if !ok(v) {
            return Err(ExperimentError::Config(format!("{key} = {v} must be {what}")));
        }
        Ok(v)
    }
}
