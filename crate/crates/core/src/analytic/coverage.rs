use std::cell::RefCell;
use std::f64::consts::PI;

use super::{AnalyticEngine, EngineError};
use crate::model::NetworkConfig;

/// The three hops of the network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Link {
    /// BS to a directly served user.
    BsUser,
    /// BS to relay, first slot of the relayed path.
    BsRelay,
    /// Relay to a cooperative user, second slot.
    RelayUser,
}

impl Link {
    pub const ALL: [Link; 3] = [Link::BsUser, Link::BsRelay, Link::RelayUser];

    pub fn name(self) -> &'static str {
        match self {
            Link::BsUser => "bu",
            Link::BsRelay => "br",
            Link::RelayUser => "ru",
        }
    }

    pub fn tx_power(self, cfg: &NetworkConfig) -> f64 {
        match self {
            Link::BsUser => cfg.p_bu,
            Link::BsRelay => cfg.p_br,
            Link::RelayUser => cfg.p_ru,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageResult {
    pub p_bu: f64,
    pub p_br: f64,
    pub p_ru: f64,
    /// Density of relays that decoded the first slot, `lambda_min * p_br`.
    pub lambda_prime: f64,
}

impl CoverageResult {
    /// Coverage of a user served through a relay: both hops must succeed.
    pub fn dual_hop(&self) -> f64 {
        self.p_br * self.p_ru
    }
}

/// Serving-distance law and interferer density of one hop.
#[derive(Debug, Clone, Copy)]
struct HopGeometry {
    /// Density of the process the serving node is nearest in, or `None` for
    /// a distance uniform over the relay disk area.
    nearest_of: Option<f64>,
    upper: f64,
    interferer_density: f64,
}

impl HopGeometry {
    fn pdf(&self, x: f64) -> f64 {
        match self.nearest_of {
            Some(lambda) => 2.0 * PI * lambda * x * (-PI * lambda * x * x).exp(),
            None => 2.0 * x / (self.upper * self.upper),
        }
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * (n - k + i) as f64 / i as f64)
}

impl AnalyticEngine {
    pub fn coverage_bu(&self, cfg: &NetworkConfig) -> Result<f64, EngineError> {
        self.link_coverage(cfg, Link::BsUser, cfg.serving_gain(), None)
    }

    /// Serving distance follows the full BS process while interferers are
    /// thinned to `lambda_min`.
    pub fn coverage_br(&self, cfg: &NetworkConfig) -> Result<f64, EngineError> {
        self.link_coverage(cfg, Link::BsRelay, cfg.serving_gain(), None)
    }

    /// Relay-to-user coverage with active relays of density `lambda_prime`
    /// as interferers.
    pub fn coverage_ru(&self, cfg: &NetworkConfig, lambda_prime: f64) -> Result<f64, EngineError> {
        self.link_coverage(cfg, Link::RelayUser, cfg.serving_gain(), Some(lambda_prime))
    }

    /// Coverage of all three hops under perfect alignment.
    pub fn coverage_all(&self, cfg: &NetworkConfig) -> Result<CoverageResult, EngineError> {
        let p_bu = self.coverage_bu(cfg)?;
        let p_br = self.coverage_br(cfg)?;
        let lambda_prime = cfg.lambda_min() * p_br;
        let p_ru = self.coverage_ru(cfg, lambda_prime)?;
        Ok(CoverageResult { p_bu, p_br, p_ru, lambda_prime })
    }

    /// Coverage of one hop with a given serving-link gain. `lambda_prime` is
    /// the interferer density of the relay hop and ignored otherwise.
    pub fn link_coverage(
        &self,
        cfg: &NetworkConfig,
        link: Link,
        serving_gain: f64,
        lambda_prime: Option<f64>,
    ) -> Result<f64, EngineError> {
        cfg.validate()?;
        self.settings.validate(cfg.blockage.ball_radius())?;
        if !(serving_gain.is_finite() && serving_gain > 0.0) {
            return Err(EngineError::InvalidArgument(format!("serving gain {serving_gain} must be positive")));
        }
        let r_b = cfg.blockage.ball_radius();
        let geometry = match link {
            Link::BsUser => HopGeometry { nearest_of: Some(cfg.lambda_b), upper: r_b, interferer_density: cfg.lambda_b },
            Link::BsRelay => {
                HopGeometry { nearest_of: Some(cfg.lambda_b), upper: r_b, interferer_density: cfg.lambda_min() }
            }
            Link::RelayUser => {
                let lp = lambda_prime
                    .ok_or_else(|| EngineError::InvalidArgument("relay hop needs the active relay density".into()))?;
                if !(lp.is_finite() && lp >= 0.0) {
                    return Err(EngineError::InvalidArgument(format!("active relay density {lp} must be non-negative")));
                }
                HopGeometry { nearest_of: None, upper: cfg.relay_disk_radius, interferer_density: lp }
            }
        };

        let tx_power = link.tx_power(cfg);
        let n_los = cfg.fading.nakagami_los();
        let alpha = cfg.blockage.alpha_los();
        let scale = cfg.fading.eta_los() * cfg.threshold / (tx_power * serving_gain);
        let coefficients: Vec<f64> =
            (1..=n_los).map(|n| if n % 2 == 1 { 1.0 } else { -1.0 } * binomial(n_los, n)).collect();

        // The outer integrand cannot return a Result; park the first inner
        // failure here and surface it after the outer pass.
        let inner_error: RefCell<Option<EngineError>> = RefCell::new(None);
        let integrand = |x: f64| -> f64 {
            let pdf = geometry.pdf(x);
            if pdf == 0.0 {
                return 0.0;
            }
            let base = scale * x.powf(alpha);
            let mut sum = 0.0;
            for (k, coefficient) in coefficients.iter().enumerate() {
                let s = (k + 1) as f64 * base;
                let noise_term = (-s * cfg.noise_power).exp();
                if noise_term == 0.0 {
                    continue;
                }
                match self.laplace_interference(s, geometry.interferer_density, cfg, tx_power, x) {
                    Ok(l) => sum += coefficient * noise_term * l,
                    Err(e) => {
                        inner_error.borrow_mut().get_or_insert(e);
                        return f64::NAN;
                    }
                }
            }
            sum * pdf
        };
        let outcome = self.integrate(integrand, 0.0, geometry.upper);
        if let Some(e) = inner_error.into_inner() {
            return Err(e);
        }
        let value = outcome?;
        Ok(value.clamp(0.0, 1.0))
    }
}
