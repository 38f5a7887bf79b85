use super::{McError, McEstimate, Simulator};
use crate::analytic::{AnalyticEngine, Link};
use crate::model::NetworkConfig;

/// Absolute agreement required between analytic and simulated coverage.
pub const VALIDATION_TOLERANCE: f64 = 0.015;

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationRow {
    /// `bu`, `br`, `ru`, or the same with a `_be` suffix for the
    /// beam-error-averaged variant.
    pub link: String,
    pub analytic: f64,
    pub mc: McEstimate,
    pub abs_diff: f64,
    pub pass: bool,
}

impl ValidationRow {
    pub fn new(link: String, analytic: f64, mc: McEstimate) -> Self {
        let abs_diff = (analytic - mc.mean).abs();
        let pass = abs_diff <= VALIDATION_TOLERANCE.max(3.0 * mc.half_width_95);
        Self { link, analytic, mc, abs_diff, pass }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub rows: Vec<ValidationRow>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Compares analytic and simulated coverage for the three hops, first with
/// perfect alignment and then with the configuration's beam error. The
/// relay hop uses the analytic active-relay density in both routes.
pub fn mc_validate(
    engine: &AnalyticEngine,
    simulator: &Simulator,
    cfg: &NetworkConfig,
    trials: u64,
    seed: u64,
) -> Result<ValidationReport, McError> {
    if trials < 10_000 {
        return Err(McError::InvalidArgument(format!("validation needs at least 10^4 trials, got {trials}")));
    }
    let mut rows = Vec::with_capacity(6);
    let mut aligned = cfg.clone();
    aligned.beam_error_sigma = 0.0;
    let variants = [(aligned, ""), (cfg.clone(), "_be")];
    for (variant, suffix) in &variants {
        let cov = engine.coverage_with_beam_error(variant)?;
        for link in Link::ALL {
            let analytic = match link {
                Link::BsUser => cov.p_bu,
                Link::BsRelay => cov.p_br,
                Link::RelayUser => cov.p_ru,
            };
            let lambda_prime = (link == Link::RelayUser).then_some(cov.lambda_prime);
            let mc = simulator.coverage(variant, link, lambda_prime, trials, seed)?;
            rows.push(ValidationRow::new(format!("{}{suffix}", link.name()), analytic, mc));
        }
    }
    Ok(ValidationReport { rows })
}
