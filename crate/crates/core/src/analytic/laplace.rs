//! Laplace transform of the aggregate interference from a PPP split by
//! gain level and LOS/NLOS state into six independent thinned processes.

use std::f64::consts::PI;

use super::{AnalyticEngine, EngineError, NlosIntegration};
use crate::model::NetworkConfig;

/// `1 - (1 + y/n)^(-n)`, accurate for small `y`.
fn mgf_complement(y: f64, n: f64) -> f64 {
    -(-n * (y / n).ln_1p()).exp_m1()
}

impl AnalyticEngine {
    /// `∫_{x0}^{R_B} (1 - (1 + s P G t^-αL / N_L)^-N_L) t dt`.
    pub fn los_integral(&self, s: f64, gain: f64, tx_power: f64, x0: f64, cfg: &NetworkConfig) -> Result<f64, EngineError> {
        let r_b = cfg.blockage.ball_radius();
        if !(0.0..=r_b).contains(&x0) {
            return Err(EngineError::InvalidArgument(format!("x0 = {x0} lies outside [0, R_B]")));
        }
        if s == 0.0 || x0 == r_b {
            return Ok(0.0);
        }
        let alpha = cfg.blockage.alpha_los();
        let n = cfg.fading.nakagami_los() as f64;
        let c = s * tx_power * gain;
        Ok(self.integrate(|t| mgf_complement(c * t.powf(-alpha), n) * t, x0, r_b)?)
    }

    /// `∫_{R_B}^{∞} (1 - (1 + s P G t^-αN / N_N)^-N_N) t dt`.
    pub fn nlos_integral(&self, s: f64, gain: f64, tx_power: f64, cfg: &NetworkConfig) -> Result<f64, EngineError> {
        let alpha = cfg.blockage.alpha_nlos();
        if alpha <= 2.0 {
            return Err(EngineError::InvalidArgument("NLOS exponent must exceed 2 for the tail to converge".into()));
        }
        if s == 0.0 {
            return Ok(0.0);
        }
        let r_b = cfg.blockage.ball_radius();
        let n = cfg.fading.nakagami_nlos() as f64;
        let c = s * tx_power * gain;
        match self.settings.nlos {
            NlosIntegration::Substitution => {
                // t = R_B w^-k with k = 1/(alpha - 2): the integrand becomes
                // scale * g(y) with g(y) = complement(y)/y -> 1 as w -> 0.
                let k = 1.0 / (alpha - 2.0);
                let y0 = c * r_b.powf(-alpha);
                let scale = y0 * r_b * r_b * k;
                let f = |w: f64| {
                    let y = y0 * w.powf(k * alpha);
                    if y == 0.0 { 1.0 } else { mgf_complement(y, n) / y }
                };
                Ok(scale * self.integrate(f, 0.0, 1.0)?)
            }
            NlosIntegration::Truncation { initial_radius } => {
                let f = |t: f64| mgf_complement(c * t.powf(-alpha), n) * t;
                let mut total = self.integrate(f, r_b, initial_radius)?;
                let mut radius = initial_radius;
                for _ in 0..200 {
                    let added = self.integrate(f, radius, 2.0 * radius)?;
                    total += added;
                    radius *= 2.0;
                    if added.abs() < self.settings.abs_tol.max(self.settings.rel_tol * total.abs()) {
                        return Ok(total);
                    }
                }
                Err(EngineError::Quadrature(crate::quadrature::QuadratureError::NotConverged {
                    estimate: total,
                    error: f64::NAN,
                    subdivisions: 200,
                }))
            }
        }
    }

    /// Laplace transform of the LOS interference from one thinned process
    /// with gain `gain_prob.0` kept with probability `gain_prob.1`.
    pub fn laplace_los_term(
        &self,
        s: f64,
        density: f64,
        gain_prob: (f64, f64),
        tx_power: f64,
        x0: f64,
        cfg: &NetworkConfig,
    ) -> Result<f64, EngineError> {
        check_arguments(s, density)?;
        let (gain, prob) = gain_prob;
        if density == 0.0 || prob == 0.0 {
            return Ok(1.0);
        }
        let integral = self.los_integral(s, gain, tx_power, x0, cfg)?;
        Ok((-2.0 * PI * density * prob * integral).exp())
    }

    /// NLOS counterpart of [`AnalyticEngine::laplace_los_term`].
    pub fn laplace_nlos_term(
        &self,
        s: f64,
        density: f64,
        gain_prob: (f64, f64),
        tx_power: f64,
        cfg: &NetworkConfig,
    ) -> Result<f64, EngineError> {
        check_arguments(s, density)?;
        let (gain, prob) = gain_prob;
        if density == 0.0 || prob == 0.0 {
            return Ok(1.0);
        }
        let integral = self.nlos_integral(s, gain, tx_power, cfg)?;
        Ok((-2.0 * PI * density * prob * integral).exp())
    }

    /// `E[exp(-s I)]` for interferers of the given density beyond the serving
    /// distance `x0`: the product of the three LOS and three NLOS terms.
    pub fn laplace_interference(
        &self,
        s: f64,
        density: f64,
        cfg: &NetworkConfig,
        tx_power: f64,
        x0: f64,
    ) -> Result<f64, EngineError> {
        let gains = cfg.interferer_gains();
        let mut product = 1.0;
        for &gain_prob in gains.levels() {
            product *= self.laplace_los_term(s, density, gain_prob, tx_power, x0, cfg)?;
            product *= self.laplace_nlos_term(s, density, gain_prob, tx_power, cfg)?;
        }
        Ok(product)
    }
}

fn check_arguments(s: f64, density: f64) -> Result<(), EngineError> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(EngineError::InvalidArgument(format!("Laplace argument s = {s} must be finite and non-negative")));
    }
    if !(density.is_finite() && density >= 0.0) {
        return Err(EngineError::InvalidArgument(format!("density {density} must be finite and non-negative")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::QuadratureSettings;
    use proptest::prelude::*;

    fn setup() -> (AnalyticEngine, NetworkConfig) {
        (AnalyticEngine::default(), NetworkConfig::table_one())
    }

    /// Laplace argument for the first binomial term at serving distance x0.
    fn s_first_term(cfg: &NetworkConfig, x0: f64) -> f64 {
        cfg.fading.eta_los() * cfg.threshold * x0.powf(cfg.blockage.alpha_los()) / (cfg.p_bu * cfg.serving_gain())
    }

    /// Composite trapezoid rule; test-only oracle.
    fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let inner: f64 = (1..n).map(|i| f(a + i as f64 * h)).sum();
        h * (0.5 * (f(a) + f(b)) + inner)
    }

    /// `1 - (1 + y/n)^-n` via `(1 + y/n)^-n = exp(-n ln(1 + y/n))`; the
    /// direct form cancels catastrophically far out in the NLOS tail.
    fn oracle_complement(y: f64, n: f64) -> f64 {
        let log_term = (y / n).ln_1p();
        -(-n * log_term).exp_m1()
    }

    #[test]
    fn trivial_cases_are_one() {
        let (e, cfg) = setup();
        let g = cfg.interferer_gains().levels()[0];
        assert_eq!(e.laplace_los_term(0.0, 1e-4, g, 100.0, 50.0, &cfg).unwrap(), 1.0);
        assert_eq!(e.laplace_los_term(1e-3, 1e-4, g, 100.0, 100.0, &cfg).unwrap(), 1.0);
        assert_eq!(e.laplace_nlos_term(0.0, 1e-4, g, 100.0, &cfg).unwrap(), 1.0);
        assert_eq!(e.laplace_nlos_term(1e-3, 0.0, g, 100.0, &cfg).unwrap(), 1.0);
        assert_eq!(e.laplace_interference(0.0, 1e-4, &cfg, 100.0, 10.0).unwrap(), 1.0);
    }

    #[test]
    fn rejects_bad_arguments() {
        let (e, cfg) = setup();
        let g = cfg.interferer_gains().levels()[0];
        assert!(e.laplace_los_term(-1.0, 1e-4, g, 100.0, 50.0, &cfg).is_err());
        assert!(e.laplace_los_term(1.0, 1e-4, g, 100.0, 150.0, &cfg).is_err());
        assert!(e.laplace_nlos_term(1.0, -1e-4, g, 100.0, &cfg).is_err());
    }

    #[test]
    fn los_term_matches_trapezoid_oracle() {
        let (e, cfg) = setup();
        let x0 = 50.0;
        let s = s_first_term(&cfg, x0);
        for &(gain, prob) in cfg.interferer_gains().levels() {
            let c = s * cfg.p_bu * gain;
            let n = cfg.fading.nakagami_los() as f64;
            let oracle = trapezoid(|t| oracle_complement(c * t.powi(-2), n) * t, x0, 100.0, 1_000_000);
            let want = (-2.0 * PI * cfg.lambda_b * prob * oracle).exp();
            let got = e.laplace_los_term(s, cfg.lambda_b, (gain, prob), cfg.p_bu, x0, &cfg).unwrap();
            assert!((got - want).abs() <= 1e-8 * want, "gain {gain}: {got} vs {want}");
            let raw = e.los_integral(s, gain, cfg.p_bu, x0, &cfg).unwrap();
            assert!((raw - oracle).abs() <= 1e-8 * oracle, "gain {gain}: {raw} vs {oracle}");
        }
    }

    #[test]
    fn nlos_term_matches_truncated_trapezoid_oracle() {
        let (e, cfg) = setup();
        let s = s_first_term(&cfg, 50.0);
        let n = cfg.fading.nakagami_nlos() as f64;
        for &(gain, _) in cfg.interferer_gains().levels() {
            let c = s * cfg.p_bu * gain;
            let f = |t: f64| oracle_complement(c * t.powi(-4), n) * t;
            // Trapezoid on geometric annuli, doubling the radius until the
            // added annulus is negligible; the analytic tail beyond the last
            // radius, n c R^-2 / 2, bounds what is left.
            let mut radius = 100.0;
            let mut total = 0.0;
            loop {
                let added = trapezoid(f, radius, 2.0 * radius, 20_000);
                total += added;
                radius *= 2.0;
                if added < 1e-12 * total {
                    break;
                }
            }
            total += c / (2.0 * radius * radius);
            let got = e.nlos_integral(s, gain, cfg.p_bu, &cfg).unwrap();
            assert!((got - total).abs() <= 1e-7 * total, "gain {gain}: {got} vs {total}");
        }
    }

    #[test]
    fn substitution_and_truncation_agree() {
        let (e, cfg) = setup();
        let truncated = AnalyticEngine::new(QuadratureSettings {
            nlos: NlosIntegration::Truncation { initial_radius: 200.0 },
            ..QuadratureSettings::default()
        });
        for x0 in [5.0, 30.0, 80.0] {
            let s = s_first_term(&cfg, x0);
            for &(gain, _) in cfg.interferer_gains().levels() {
                let a = e.nlos_integral(s, gain, cfg.p_bu, &cfg).unwrap();
                let b = truncated.nlos_integral(s, gain, cfg.p_bu, &cfg).unwrap();
                assert!((a - b).abs() <= 1e-7 * a.max(1e-300), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn shallow_nlos_exponent_still_converges() {
        let (_, mut cfg) = setup();
        cfg.blockage = crate::model::BlockageModel::new(100.0, 2.0, 2.3).unwrap();
        let settings = QuadratureSettings { rel_tol: 1e-10, ..QuadratureSettings::default() };
        let e = AnalyticEngine::new(settings);
        let truncated = AnalyticEngine::new(QuadratureSettings {
            nlos: NlosIntegration::Truncation { initial_radius: 200.0 },
            ..settings
        });
        let s = s_first_term(&cfg, 30.0);
        let a = e.nlos_integral(s, 100.0, cfg.p_bu, &cfg).unwrap();
        let b = truncated.nlos_integral(s, 100.0, cfg.p_bu, &cfg).unwrap();
        assert!((a - b).abs() <= 1e-6 * a, "{a} vs {b}");
    }

    #[test]
    fn degenerate_pattern_collapses_to_single_gain() {
        let (e, mut cfg) = setup();
        cfg.antenna = crate::model::AntennaPattern::new(1.0, 1.0, 2.0 * PI).unwrap();
        let s = 1e-3;
        let product = e.laplace_interference(s, 1e-4, &cfg, 100.0, 20.0).unwrap();
        let single = e.laplace_los_term(s, 1e-4, (1.0, 1.0), 100.0, 20.0, &cfg).unwrap()
            * e.laplace_nlos_term(s, 1e-4, (1.0, 1.0), 100.0, &cfg).unwrap();
        assert!((product - single).abs() < 1e-14);
    }

    #[test]
    fn mgf_complement_is_accurate_for_tiny_arguments() {
        assert!((mgf_complement(1e-20, 3.0) - 1e-20).abs() < 1e-34);
        assert!((mgf_complement(2.0, 1.0) - 2.0 / 3.0).abs() < 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn laplace_in_unit_interval_and_monotone(
            s in 1e-9f64..1e-2,
            density in 1e-6f64..1e-3,
            x0 in 0.0f64..100.0,
            scale in 1.01f64..10.0,
        ) {
            let (e, cfg) = setup();
            let base = e.laplace_interference(s, density, &cfg, 100.0, x0).unwrap();
            prop_assert!(base > 0.0 && base <= 1.0);
            let more_s = e.laplace_interference(s * scale, density, &cfg, 100.0, x0).unwrap();
            let more_density = e.laplace_interference(s, density * scale, &cfg, 100.0, x0).unwrap();
            prop_assert!(more_s <= base * (1.0 + 1e-9));
            prop_assert!(more_density <= base * (1.0 + 1e-9));
            let g = cfg.interferer_gains().levels()[1];
            let lo = e.laplace_los_term(s, density, g, 100.0, x0, &cfg).unwrap();
            let hi = e.laplace_los_term(s, density, (g.0 * scale, g.1), 100.0, x0, &cfg).unwrap();
            prop_assert!(hi <= lo * (1.0 + 1e-9));
        }
    }
}
