//! Serving-link gain under Gaussian beam steering errors.

use statrs::function::erf::erf;

use super::{AnalyticEngine, CoverageResult, EngineError, Link};
use crate::model::{AntennaPattern, GainDistribution, NetworkConfig};

/// Distribution of the serving gain when each end of the link steers its
/// beam with an independent zero-mean Gaussian error of standard deviation
/// `sigma`. An end keeps its main lobe on the link while `|error| <= θ/2`,
/// which happens with probability `F = erf(θ / (2√2 σ))`.
pub fn beam_error_gain_distribution(antenna: &AntennaPattern, sigma: f64) -> Result<GainDistribution, EngineError> {
    if !(sigma >= 0.0) {
        return Err(EngineError::InvalidArgument(format!("beam error deviation {sigma} must be non-negative")));
    }
    let f = if sigma == 0.0 {
        1.0
    } else {
        erf(antenna.beamwidth() / (2.0 * std::f64::consts::SQRT_2 * sigma))
    };
    let probs = [f * f, 2.0 * f * (1.0 - f), (1.0 - f) * (1.0 - f)];
    Ok(GainDistribution::with_probabilities(antenna, probs)?)
}

impl AnalyticEngine {
    /// Coverage averaged over the serving gain distribution of
    /// [`beam_error_gain_distribution`]. Interferer gains are unaffected by
    /// the steering error.
    pub fn coverage_with_beam_error(&self, cfg: &NetworkConfig) -> Result<CoverageResult, EngineError> {
        let weights = beam_error_gain_distribution(&cfg.antenna, cfg.beam_error_sigma)?;
        let averaged = |link: Link, lambda_prime: Option<f64>| -> Result<f64, EngineError> {
            let mut total = 0.0;
            for &(gain, weight) in weights.levels() {
                if weight > 0.0 {
                    total += weight * self.link_coverage(cfg, link, gain, lambda_prime)?;
                }
            }
            Ok(total.clamp(0.0, 1.0))
        };
        let p_bu = averaged(Link::BsUser, None)?;
        let p_br = averaged(Link::BsRelay, None)?;
        let lambda_prime = cfg.lambda_min() * p_br;
        let p_ru = averaged(Link::RelayUser, Some(lambda_prime))?;
        Ok(CoverageResult { p_bu, p_br, p_ru, lambda_prime })
    }

    /// Perfect-alignment coverage when the deviation is zero, otherwise the
    /// error-averaged coverage.
    pub fn coverage(&self, cfg: &NetworkConfig) -> Result<CoverageResult, EngineError> {
        if cfg.beam_error_sigma > 0.0 {
            self.coverage_with_beam_error(cfg)
        } else {
            self.coverage_all(cfg)
        }
    }
}
