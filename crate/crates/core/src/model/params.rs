//! The configuration boundary: parameters as a user writes them (dB, dBm,
//! degrees) and the flat `key = value` file format.

use std::fmt::Write as _;

use super::units::{db_to_linear, dbm_to_watts};
use super::{AntennaPattern, BlockageModel, ConfigError, FadingParams, NetworkConfig, PowerModel};

/// Every recognised configuration key, in file order.
pub const CONFIG_KEYS: [&str; 23] = [
    "alpha_L",
    "alpha_N",
    "N_L",
    "N_N",
    "M_dB",
    "m_dB",
    "theta_deg",
    "lambda_R",
    "lambda_B",
    "R_B",
    "a",
    "T_dB",
    "sigma2_dBm",
    "B_nc",
    "B_c",
    "P_BU_dBm",
    "P_BR_dBm",
    "P_RU_dBm",
    "P_B0",
    "P_R0",
    "beta_B",
    "beta_R",
    "sigma_BE_deg",
];

const OPTIONAL_KEYS: [&str; 1] = ["sigma_BE_deg"];

/// Scenario parameters in configuration units, indexed by key name.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigParams {
    values: [f64; CONFIG_KEYS.len()],
}

fn key_index(key: &str) -> Option<usize> {
    CONFIG_KEYS.iter().position(|k| *k == key)
}

impl ConfigParams {
    /// Baseline parameter table. Neither the BS density nor the beamwidth is
    /// part of the published table; they default to 1e-4 per m² and 30°.
    pub fn table_one() -> Self {
        let mut values = [0.0; CONFIG_KEYS.len()];
        let defaults = [
            ("alpha_L", 2.0),
            ("alpha_N", 4.0),
            ("N_L", 3.0),
            ("N_N", 2.0),
            ("M_dB", 20.0),
            ("m_dB", -10.0),
            ("theta_deg", 30.0),
            ("lambda_R", 1e-4),
            ("lambda_B", 1e-4),
            ("R_B", 100.0),
            ("a", 30.0),
            ("T_dB", 30.0),
            ("sigma2_dBm", -70.0),
            ("B_nc", 1e9),
            ("B_c", 1e8),
            ("P_BU_dBm", 50.0),
            ("P_BR_dBm", 50.0),
            ("P_RU_dBm", 30.0),
            ("P_B0", 100.0),
            ("P_R0", 5.0),
            ("beta_B", 5.0),
            ("beta_R", 4.0),
            ("sigma_BE_deg", 0.0),
        ];
        for (k, v) in defaults {
            values[key_index(k).unwrap()] = v;
        }
        Self { values }
    }

    /// Microwave baseline: omni antennas, a 1500 m LOS ball and narrower
    /// bands, everything else from `self`.
    pub fn microwave_overlay(mut self) -> Self {
        for (k, v) in [
            ("M_dB", 0.0),
            ("m_dB", 0.0),
            ("theta_deg", 360.0),
            ("R_B", 1500.0),
            ("B_nc", 50e6),
            ("B_c", 5e6),
        ] {
            self.set(k, v).unwrap();
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        key_index(key).map(|i| self.values[i])
    }

    pub fn set(&mut self, key: &str, value: f64) -> Result<(), ConfigError> {
        let i = key_index(key).ok_or_else(|| ConfigError::UnknownKey(key.to_string()))?;
        if !value.is_finite() {
            return Err(ConfigError::invalid(key, "must be a finite number"));
        }
        self.values[i] = value;
        Ok(())
    }

    /// Builder-style [`ConfigParams::set`] for known-good keys.
    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.set(key, value).unwrap_or_else(|e| panic!("{e}"));
        self
    }

    /// Parses a complete configuration file. Every key except
    /// `sigma_BE_deg` (default 0) is required.
    pub fn from_text(text: &str) -> Result<Self, ConfigError> {
        let entries = parse_key_values(text)?;
        let mut params = Self::table_one();
        let mut seen = [false; CONFIG_KEYS.len()];
        for entry in entries {
            let i = key_index(&entry.key).ok_or_else(|| ConfigError::UnknownKey(entry.key.clone()))?;
            if seen[i] {
                return Err(ConfigError::DuplicateKey(entry.key));
            }
            seen[i] = true;
            let value = parse_number(&entry.key, &entry.value)?;
            params.set(&entry.key, value)?;
        }
        for (i, key) in CONFIG_KEYS.iter().enumerate() {
            if !seen[i] {
                if OPTIONAL_KEYS.contains(key) {
                    params.values[i] = 0.0;
                } else {
                    return Err(ConfigError::MissingKey(key.to_string()));
                }
            }
        }
        Ok(params)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (key, value) in CONFIG_KEYS.iter().zip(self.values) {
            writeln!(out, "{key} = {value}").unwrap();
        }
        out
    }

    /// Converts to linear SI units and validates every invariant.
    pub fn to_config(&self) -> Result<NetworkConfig, ConfigError> {
        let v = |k: &str| self.get(k).unwrap();
        let antenna = AntennaPattern::new(
            db_to_linear(v("M_dB")),
            db_to_linear(v("m_dB")),
            v("theta_deg").to_radians(),
        )?;
        let blockage = BlockageModel::new(v("R_B"), v("alpha_L"), v("alpha_N"))?;
        let fading = FadingParams::new(positive_integer("N_L", v("N_L"))?, positive_integer("N_N", v("N_N"))?)?;
        let power = PowerModel::new(v("P_B0"), v("P_R0"), v("beta_B"), v("beta_R"))?;
        if v("sigma_BE_deg") < 0.0 {
            return Err(ConfigError::invalid("sigma_BE_deg", "must be non-negative"));
        }
        let cfg = NetworkConfig {
            lambda_b: v("lambda_B"),
            lambda_r: v("lambda_R"),
            p_bu: dbm_to_watts(v("P_BU_dBm")),
            p_br: dbm_to_watts(v("P_BR_dBm")),
            p_ru: dbm_to_watts(v("P_RU_dBm")),
            noise_power: dbm_to_watts(v("sigma2_dBm")),
            threshold: db_to_linear(v("T_dB")),
            relay_disk_radius: v("a"),
            bandwidth_nc: v("B_nc"),
            bandwidth_c: v("B_c"),
            antenna,
            blockage,
            fading,
            power,
            beam_error_sigma: v("sigma_BE_deg").to_radians(),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn positive_integer(key: &str, value: f64) -> Result<u32, ConfigError> {
    if value >= 1.0 && value.fract() == 0.0 && value <= u32::MAX as f64 {
        Ok(value as u32)
    } else {
        Err(ConfigError::invalid(key, "must be a positive integer"))
    }
}

pub(crate) fn parse_number(key: &str, raw: &str) -> Result<f64, ConfigError> {
    raw.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| ConfigError::invalid(key, format!("`{raw}` is not a finite number")))
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Entry {
    pub line: usize,
    pub key: String,
    pub value: String,
}

/// Splits `key = value` lines, dropping blank lines and `#` comments.
pub(crate) fn parse_key_values(text: &str) -> Result<Vec<Entry>, ConfigError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line: n + 1,
            reason: format!("expected `key = value`, found `{line}`"),
        })?;
        let key = key.trim();
        if key.is_empty() {
            return Err(ConfigError::Syntax { line: n + 1, reason: "empty key".into() });
        }
        out.push(Entry { line: n + 1, key: key.to_string(), value: value.trim().to_string() });
    }
    Ok(out)
}
