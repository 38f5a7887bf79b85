//! Closed-form coverage, power and efficiency expressions, evaluated by
//! nested adaptive quadrature.
//!
//! All operations are pure functions of their inputs; [`AnalyticEngine`]
//! only carries quadrature settings and can be shared across threads.

mod beam;
mod coverage;
mod energy;
mod laplace;

pub use beam::beam_error_gain_distribution;
pub use coverage::{CoverageResult, Link};
pub use energy::{area_spectral_efficiencies, avg_power_bs, avg_power_rs, ee_from_coverage, EEBreakdown, OptimalDensity};

use thiserror::Error;

use crate::model::ConfigError;
use crate::quadrature::QuadratureError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// How the integral over the NLOS region `[R_B, inf)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NlosIntegration {
    /// Map `t = R_B w^(-1/(alpha_N - 2))` onto `w in (0, 1]`, where the
    /// integrand is bounded.
    Substitution,
    /// Integrate to `initial_radius`, then keep doubling the radius until the
    /// added annulus contributes less than the tolerance.
    Truncation { initial_radius: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub nlos: NlosIntegration,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self { rel_tol: 1e-8, abs_tol: 1e-12, nlos: NlosIntegration::Substitution, max_subdivisions: 200 }
    }
}

impl QuadratureSettings {
    pub fn validate(&self, ball_radius: f64) -> Result<(), EngineError> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(EngineError::InvalidArgument("quadrature tolerances must be positive".into()));
        }
        if let NlosIntegration::Truncation { initial_radius } = self.nlos {
            if !(initial_radius > ball_radius) {
                return Err(EngineError::InvalidArgument(
                    "truncation radius must exceed the LOS ball radius".into(),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct AnalyticEngine {
    pub settings: QuadratureSettings,
}

impl AnalyticEngine {
    pub fn new(settings: QuadratureSettings) -> Self {
        Self { settings }
    }

    fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<f64, QuadratureError> {
        crate::quadrature::integrate(f, a, b, self.settings.rel_tol, self.settings.abs_tol, self.settings.max_subdivisions)
            .map(|r| r.value)
    }
}
