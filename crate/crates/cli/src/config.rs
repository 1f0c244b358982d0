//! `key = value` experiment configs.
//!
//! ```text
//! # reference sweep
//! alphas = 2.1, 2.2, 2.3
//! replicates = 50
//! n = 1000
//! metrics = miuz, degree, betweenness, harmonic
//! mode = sequential
//! a_values = 5, 10, 20, 30
//! master_seed = 1
//! ```
//!
//! `alphas`, `replicates`, `n` and `metrics` are required. `mode` defaults
//! to sequential, `a_values` to 5, 10, 20, 30 and `master_seed` to 0;
//! `k_min`/`k_max` fall back to the generator defaults.

use std::collections::BTreeMap;
use std::str::FromStr;

use miuz_core::attack::AttackMode;
use miuz_core::harness::ExperimentConfig;
use thiserror::Error;

const REQUIRED: [&str; 4] = ["alphas", "replicates", "n", "metrics"];
const OPTIONAL: [&str; 5] = ["mode", "a_values", "master_seed", "k_min", "k_max"];

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected 'key = value', got '{text}'")]
    Syntax { line: usize, text: String },
    #[error("unknown config key '{0}'")]
    UnknownKey(String),
    #[error("missing config keys: {}", .0.join(", "))]
    Missing(Vec<String>),
    #[error("bad value for '{key}': {message}")]
    Value { key: String, message: String },
}

/// Collects `key = value` pairs; later assignments win.
#[derive(Debug, Default, Clone)]
pub struct ConfigBuilder {
    values: BTreeMap<String, String>,
}

impl ConfigBuilder {
    pub fn parse_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            self.set(line).map_err(|err| match err {
                ConfigError::Syntax { text, .. } => ConfigError::Syntax { line: i + 1, text },
                other => other,
            })?;
        }
        Ok(())
    }

    /// Applies one `key=value` assignment.
    pub fn set(&mut self, assignment: &str) -> Result<(), ConfigError> {
        let Some((key, value)) = assignment.split_once('=') else {
            return Err(ConfigError::Syntax {
                line: 0,
                text: assignment.to_string(),
            });
        };
        let key = key.trim().to_ascii_lowercase().replace('-', "_");
        if !REQUIRED.contains(&key.as_str()) && !OPTIONAL.contains(&key.as_str()) {
            return Err(ConfigError::UnknownKey(key));
        }
        self.values.insert(key, value.trim().to_string());
        Ok(())
    }

    pub fn build(&self) -> Result<ExperimentConfig, ConfigError> {
        let missing: Vec<String> = REQUIRED
            .iter()
            .filter(|k| !self.values.contains_key(**k))
            .map(|k| k.to_string())
            .collect();
        if !missing.is_empty() {
            return Err(ConfigError::Missing(missing));
        }
        Ok(ExperimentConfig {
            alphas: self.list("alphas")?,
            replicates: self.scalar("replicates")?,
            n: self.scalar("n")?,
            metrics: self.list("metrics")?,
            mode: self.optional("mode")?.unwrap_or(AttackMode::Sequential),
            a_values: match self.values.get("a_values") {
                Some(_) => self.list("a_values")?,
                None => vec![5, 10, 20, 30],
            },
            master_seed: self.optional("master_seed")?.unwrap_or(0),
            k_min: self.optional("k_min")?,
            k_max: self.optional("k_max")?,
        })
    }

    fn parse_one<T>(key: &str, text: &str) -> Result<T, ConfigError>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        text.trim().parse().map_err(|e: T::Err| ConfigError::Value {
            key: key.to_string(),
            message: format!("'{}': {e}", text.trim()),
        })
    }

    fn scalar<T>(&self, key: &str) -> Result<T, ConfigError>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        Self::parse_one(key, &self.values[key])
    }

    fn optional<T>(&self, key: &str) -> Result<Option<T>, ConfigError>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        self.values
            .get(key)
            .map(|v| Self::parse_one(key, v))
            .transpose()
    }

    fn list<T>(&self, key: &str) -> Result<Vec<T>, ConfigError>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        self.values[key]
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| Self::parse_one(key, s))
            .collect()
    }
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut builder = ConfigBuilder::default();
    builder.parse_text(text)?;
    builder.build()
}
