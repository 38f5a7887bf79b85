//! System model: antenna pattern, blockage, fading, power consumption and
//! the full network scenario.

mod antenna;
mod network;
pub(crate) mod params;
pub mod units;

pub use antenna::{gain_distribution, AntennaPattern, GainDistribution, GainLevel};
pub use network::{eta, BlockageModel, FadingParams, NetworkConfig, PowerModel};
pub use params::{ConfigParams, CONFIG_KEYS};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("missing required key `{0}`")]
    MissingKey(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("key `{0}` given more than once")]
    DuplicateKey(String),
    #[error("invalid value for `{key}`: {reason}")]
    Invalid { key: String, reason: String },
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
}

impl ConfigError {
    pub(crate) fn invalid(key: &str, reason: impl Into<String>) -> Self {
        ConfigError::Invalid { key: key.to_string(), reason: reason.into() }
    }

    /// The configuration key this error is about, if any.
    pub fn key(&self) -> Option<&str> {
        match self {
            ConfigError::MissingKey(k)
            | ConfigError::UnknownKey(k)
            | ConfigError::DuplicateKey(k)
            | ConfigError::Invalid { key: k, .. } => Some(k),
            ConfigError::Syntax { .. } => None,
        }
    }
}
