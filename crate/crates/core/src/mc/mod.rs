//! Direct Monte Carlo simulation of the network model, used as an
//! independent check on the analytic engine.
//!
//! Each trial places the typical receiver at the origin, draws the point
//! processes in a finite window around it and decides coverage from the
//! realised SINR. Trials are independent and seeded individually, so
//! results do not depend on thread count or scheduling.

mod rng;
mod sampling;
mod simulate;
mod validate;

pub use rng::RngSeed;
pub use sampling::{
    sample_interferer_gain, sample_link_gain, sample_nakagami_power, sample_ppp_annulus, sample_ppp_disk,
    sample_serving_gain, PolarPoint,
};
pub use simulate::{SimulationSettings, Simulator};
pub use validate::{mc_validate, ValidationReport, ValidationRow, VALIDATION_TOLERANCE};

use thiserror::Error;

use crate::analytic::EngineError;
use crate::model::ConfigError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum McError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("simulation window radius {radius} m must exceed the LOS ball radius {ball_radius} m")]
    WindowTooSmall { radius: f64, ball_radius: f64 },
    #[error("simulation window would hold {expected_points:e} points on average")]
    WindowTooLarge { expected_points: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Sample mean with a normal-approximation 95% confidence half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub trials: u64,
    pub half_width_95: f64,
}

impl McEstimate {
    pub fn from_successes(successes: u64, trials: u64) -> Self {
        assert!(trials >= 1);
        let mean = successes as f64 / trials as f64;
        let half_width_95 = 1.96 * (mean * (1.0 - mean) / trials as f64).sqrt();
        Self { mean, trials, half_width_95 }
    }

    /// From the sum and sum of squares of `trials` real-valued samples.
    pub fn from_moments(sum: f64, sum_sq: f64, trials: u64) -> Self {
        assert!(trials >= 1);
        let n = trials as f64;
        let mean = sum / n;
        let var = if trials > 1 { ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0) } else { 0.0 };
        Self { mean, trials, half_width_95: 1.96 * (var / n).sqrt() }
    }
}
