use crate::model::params::{parse_key_values, parse_number};
use crate::model::{ConfigError, ConfigParams, CONFIG_KEYS};

/// Overlay name used when a sweep file declares no overlays.
pub const DEFAULT_OVERLAY: &str = "default";

/// A one-dimensional parameter sweep, optionally repeated for several
/// named sets of parameter overrides.
///
/// File syntax, one `key = value` per line:
///
/// ```text
/// sweep = lambda_B
/// logspace = 1e-6, 1e-3, 31        # or: values = 1e-5, 1e-4
/// R_B = 200                        # overrides the base config
/// overlay.wide.theta_deg = 45
/// overlay.wide.M_dB = 10
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    variable: String,
    values: Vec<f64>,
    base_overrides: Vec<(String, f64)>,
    overlays: Vec<(String, Vec<(String, f64)>)>,
}

fn is_config_key(key: &str) -> bool {
    CONFIG_KEYS.contains(&key)
}

fn parse_list(key: &str, raw: &str) -> Result<Vec<f64>, ConfigError> {
    raw.split(',').map(|s| parse_number(key, s)).collect()
}

fn logspace(raw: &str) -> Result<Vec<f64>, ConfigError> {
    let parts = parse_list("logspace", raw)?;
    let &[start, stop, count] = parts.as_slice() else {
        return Err(ConfigError::invalid("logspace", "expected `start, stop, count`"));
    };
    if !(start > 0.0 && stop > 0.0) {
        return Err(ConfigError::invalid("logspace", "start and stop must be positive"));
    }
    if !(count >= 1.0 && count.fract() == 0.0) {
        return Err(ConfigError::invalid("logspace", "count must be a positive integer"));
    }
    let n = count as usize;
    if n == 1 {
        return Ok(vec![start]);
    }
    let (lo, hi) = (start.log10(), stop.log10());
    Ok((0..n)
        .map(|i| match i {
            0 => start,
            i if i == n - 1 => stop,
            i => 10f64.powf(lo + (hi - lo) * i as f64 / (n - 1) as f64),
        })
        .collect())
}

fn set_once(list: &mut Vec<(String, f64)>, key: &str, value: f64) -> Result<(), ConfigError> {
    if list.iter().any(|(k, _)| k == key) {
        return Err(ConfigError::DuplicateKey(key.to_string()));
    }
    list.push((key.to_string(), value));
    Ok(())
}

impl SweepSpec {
    pub fn new(variable: &str, values: Vec<f64>) -> Result<Self, ConfigError> {
        let spec = Self { variable: variable.to_string(), values, base_overrides: Vec::new(), overlays: Vec::new() };
        spec.validate()?;
        Ok(spec)
    }

    /// Adds a named set of overrides; overlays are emitted in insertion order.
    pub fn with_overlay(mut self, name: &str, overrides: &[(&str, f64)]) -> Result<Self, ConfigError> {
        let mut list = Vec::new();
        for (k, v) in overrides {
            set_once(&mut list, k, *v)?;
        }
        self.overlays.push((name.to_string(), list));
        self.validate()?;
        Ok(self)
    }

    pub fn from_text(text: &str) -> Result<Self, ConfigError> {
        let mut variable = None;
        let mut values = None;
        let mut base_overrides = Vec::new();
        let mut overlays: Vec<(String, Vec<(String, f64)>)> = Vec::new();
        for entry in parse_key_values(text)? {
            let key = entry.key.as_str();
            match key {
                "sweep" => {
                    if variable.replace(entry.value.clone()).is_some() {
                        return Err(ConfigError::DuplicateKey(key.into()));
                    }
                }
                "values" | "logspace" => {
                    if values.is_some() {
                        return Err(ConfigError::invalid(key, "give exactly one of `values` and `logspace`"));
                    }
                    values = Some(if key == "values" { parse_list(key, &entry.value)? } else { logspace(&entry.value)? });
                }
                _ if key.starts_with("overlay.") => {
                    let (name, param) = key["overlay.".len()..]
                        .split_once('.')
                        .filter(|(n, p)| !n.is_empty() && !p.is_empty())
                        .ok_or_else(|| ConfigError::invalid(key, "expected `overlay.<name>.<key>`"))?;
                    let value = parse_number(key, &entry.value)?;
                    let slot = match overlays.iter().position(|(n, _)| n == name) {
                        Some(i) => i,
                        None => {
                            overlays.push((name.to_string(), Vec::new()));
                            overlays.len() - 1
                        }
                    };
                    set_once(&mut overlays[slot].1, param, value)?;
                }
                _ => set_once(&mut base_overrides, key, parse_number(key, &entry.value)?)?,
            }
        }
        let spec = Self {
            variable: variable.ok_or_else(|| ConfigError::MissingKey("sweep".into()))?,
            values: values.ok_or_else(|| ConfigError::MissingKey("values".into()))?,
            base_overrides,
            overlays,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if !is_config_key(&self.variable) {
            return Err(ConfigError::invalid("sweep", format!("`{}` is not a configuration key", self.variable)));
        }
        if self.values.is_empty() {
            return Err(ConfigError::invalid("values", "must not be empty"));
        }
        if self.values.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(ConfigError::invalid("values", "must be strictly increasing"));
        }
        let overrides = self.base_overrides.iter().chain(self.overlays.iter().flat_map(|(_, l)| l));
        for (key, _) in overrides {
            if !is_config_key(key) {
                return Err(ConfigError::UnknownKey(key.clone()));
            }
            if *key == self.variable {
                return Err(ConfigError::invalid(key, "is the swept variable and cannot be overridden"));
            }
        }
        Ok(())
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn overlay_names(&self) -> Vec<String> {
        if self.overlays.is_empty() {
            vec![DEFAULT_OVERLAY.to_string()]
        } else {
            self.overlays.iter().map(|(n, _)| n.clone()).collect()
        }
    }

    /// `base` with the file's base overrides and then the named overlay
    /// applied. The swept variable keeps its base value.
    pub fn overlay_params(&self, base: &ConfigParams, overlay: &str) -> Result<ConfigParams, ConfigError> {
        let mut params = base.clone();
        for (k, v) in &self.base_overrides {
            params.set(k, *v)?;
        }
        if let Some((_, list)) = self.overlays.iter().find(|(n, _)| n == overlay) {
            for (k, v) in list {
                params.set(k, *v)?;
            }
        } else if overlay != DEFAULT_OVERLAY || !self.overlays.is_empty() {
            return Err(ConfigError::invalid("overlay", format!("no overlay named `{overlay}`")));
        }
        Ok(params)
    }

    /// Every sweep point as (overlay, value, parameters), overlay-major.
    pub fn points(&self, base: &ConfigParams) -> Result<Vec<(String, f64, ConfigParams)>, ConfigError> {
        let mut out = Vec::with_capacity(self.values.len() * self.overlays.len().max(1));
        for name in self.overlay_names() {
            let params = self.overlay_params(base, &name)?;
            for &v in &self.values {
                let mut p = params.clone();
                p.set(&self.variable, v)?;
                out.push((name.clone(), v, p));
            }
        }
        Ok(out)
    }
}
