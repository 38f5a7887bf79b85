//! Average network power, area spectral efficiency and energy efficiency.

use rayon::prelude::*;

use super::{AnalyticEngine, CoverageResult, EngineError};
use crate::model::NetworkConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EEBreakdown {
    /// Area spectral efficiency of direct links, bps/Hz/m².
    pub tau_nc: f64,
    /// Area spectral efficiency of relayed links, bps/Hz/m².
    pub tau_c: f64,
    /// Average BS power per unit area, W/m².
    pub p_b_avg: f64,
    /// Average RS power per unit area, W/m².
    pub p_r_avg: f64,
    /// Energy efficiency, bps/Hz/W.
    pub ee: f64,
}

impl EEBreakdown {
    pub fn from_parts(tau_nc: f64, tau_c: f64, p_b_avg: f64, p_r_avg: f64) -> Self {
        let ee = (tau_nc + tau_c) / (p_b_avg + p_r_avg);
        Self { tau_nc, tau_c, p_b_avg, p_r_avg, ee }
    }

    pub fn area_spectral_efficiency(&self) -> f64 {
        self.tau_nc + self.tau_c
    }

    pub fn network_power(&self) -> f64 {
        self.p_b_avg + self.p_r_avg
    }
}

/// Static power of every BS plus amplifier power for direct transmission
/// and, during the first slot only, for the `lambda_min` BSs feeding relays.
pub fn avg_power_bs(cfg: &NetworkConfig) -> f64 {
    let pm = &cfg.power;
    cfg.lambda_b * pm.static_bs() + pm.beta_bs() * (cfg.lambda_b * cfg.p_bu + cfg.lambda_min() * cfg.p_br / 2.0)
}

/// Idle relays draw static power only; the `lambda_prime` active relays also
/// transmit during the second slot.
pub fn avg_power_rs(cfg: &NetworkConfig, lambda_prime: f64) -> f64 {
    let pm = &cfg.power;
    (cfg.lambda_r - lambda_prime) * pm.static_rs() + lambda_prime * (pm.beta_rs() * cfg.p_ru / 2.0 + pm.static_rs())
}

/// `(tau_nc, tau_c)`. Only the bandwidth split enters, so scaling both
/// bandwidths leaves the result unchanged.
pub fn area_spectral_efficiencies(cfg: &NetworkConfig, cov: &CoverageResult) -> (f64, f64) {
    let total_band = cfg.bandwidth_nc + cfg.bandwidth_c;
    let rate = (1.0 + cfg.threshold).log2();
    let tau_nc = cfg.bandwidth_nc / total_band * cfg.lambda_b * cov.p_bu * rate;
    let tau_c = 0.5 * cfg.bandwidth_c / total_band * cfg.lambda_min() * cov.p_br * cov.p_ru * rate;
    (tau_nc, tau_c)
}

/// Energy efficiency for an already computed coverage.
pub fn ee_from_coverage(cfg: &NetworkConfig, cov: &CoverageResult) -> EEBreakdown {
    let (tau_nc, tau_c) = area_spectral_efficiencies(cfg, cov);
    EEBreakdown::from_parts(tau_nc, tau_c, avg_power_bs(cfg), avg_power_rs(cfg, cov.lambda_prime))
}

/// Best point of a BS density sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalDensity {
    pub lambda_star: f64,
    pub ee_star: f64,
    pub index: usize,
    /// The maximum sits on the first or last grid point, so the true optimum
    /// may lie outside the grid.
    pub at_boundary: bool,
}

impl AnalyticEngine {
    /// Coverage (error-averaged when `beam_error_sigma > 0`) together with
    /// the energy-efficiency breakdown.
    pub fn evaluate(&self, cfg: &NetworkConfig) -> Result<(CoverageResult, EEBreakdown), EngineError> {
        let cov = self.coverage(cfg)?;
        Ok((cov, ee_from_coverage(cfg, &cov)))
    }

    pub fn energy_efficiency(&self, cfg: &NetworkConfig) -> Result<EEBreakdown, EngineError> {
        self.evaluate(cfg).map(|(_, ee)| ee)
    }

    /// Energy efficiency at every BS density of `grid`, in grid order.
    pub fn ee_over_bs_density(&self, cfg: &NetworkConfig, grid: &[f64]) -> Result<Vec<EEBreakdown>, EngineError> {
        grid.par_iter()
            .map(|&lambda_b| {
                let mut point = cfg.clone();
                point.lambda_b = lambda_b;
                self.energy_efficiency(&point)
            })
            .collect()
    }

    /// Maximises energy efficiency over a strictly increasing grid of BS
    /// densities; ties go to the smaller density.
    pub fn optimal_bs_density(&self, cfg: &NetworkConfig, grid: &[f64]) -> Result<OptimalDensity, EngineError> {
        if grid.is_empty() {
            return Err(EngineError::InvalidArgument("density grid is empty".into()));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(EngineError::InvalidArgument("density grid must be strictly increasing".into()));
        }
        let values = self.ee_over_bs_density(cfg, grid)?;
        Ok(argmax(grid, &values))
    }
}

pub(crate) fn argmax(grid: &[f64], values: &[EEBreakdown]) -> OptimalDensity {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if v.ee > values[best].ee {
            best = i;
        }
    }
    OptimalDensity {
        lambda_star: grid[best],
        ee_star: values[best].ee,
        index: best,
        at_boundary: grid.len() > 1 && (best == 0 || best == grid.len() - 1),
    }
}
