use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;

use super::sampling::{nakagami, sample_link_gain, sample_ppp_annulus, sample_serving_gain, PolarPoint};
use super::{McError, McEstimate, RngSeed};
use crate::analytic::Link;
use crate::model::NetworkConfig;

/// Simulation window rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationSettings {
    /// The base window is at least this many LOS ball radii.
    pub min_ball_multiple: f64,
    /// ... and large enough to hold this many points on average.
    pub min_expected_points: f64,
    /// The window doubles until the mean NLOS interference left outside it
    /// is below this fraction of the decision scale (see
    /// [`Simulator::window_radius`]).
    pub residual_fraction: f64,
    /// Refuse windows expected to hold more points than this.
    pub max_expected_points: f64,
    /// Fixed window radius, bypassing the rules above.
    pub fixed_radius: Option<f64>,
}

impl Default for SimulationSettings {
    fn default() -> Self {
        Self {
            min_ball_multiple: 5.0,
            min_expected_points: 500.0,
            residual_fraction: 1e-3,
            max_expected_points: 5e6,
            fixed_radius: None,
        }
    }
}

const TRIALS_PER_CHUNK: u64 = 1024;

/// Stream identifiers keep the links' random numbers independent.
fn stream_of(link: Link) -> u64 {
    match link {
        Link::BsUser => 1,
        Link::BsRelay => 2,
        Link::RelayUser => 3,
    }
}

const LAPLACE_STREAM: u64 = 4;

/// Per-trial description of one hop.
struct Hop<'a> {
    cfg: &'a NetworkConfig,
    link: Link,
    tx_power: f64,
    /// Density the serving node is the nearest point of; `None` draws the
    /// serving distance uniformly over the relay disk area.
    serving_density: Option<f64>,
    interferer_density: f64,
    /// Fraction of the serving process that interferes. Below one, the
    /// serving distance is drawn from the nearest-point law and interferers
    /// directly at their own density.
    retention: f64,
    base_radius: f64,
    window_radius: f64,
    los_fading: Gamma<f64>,
    nlos_fading: Gamma<f64>,
}

impl Hop<'_> {
    fn path_gain(&self, distance: f64) -> f64 {
        let b = &self.cfg.blockage;
        let alpha = if b.is_los(distance) { b.alpha_los() } else { b.alpha_nlos() };
        distance.powf(-alpha)
    }

    fn fading<R: Rng + ?Sized>(&self, distance: f64, rng: &mut R) -> f64 {
        if self.cfg.blockage.is_los(distance) {
            self.los_fading.sample(rng)
        } else {
            self.nlos_fading.sample(rng)
        }
    }

    fn interference_from<R: Rng + ?Sized>(&self, points: &[PolarPoint], rng: &mut R) -> f64 {
        let mut total = 0.0;
        for p in points {
            let gain = self.cfg.antenna.level_gain(sample_link_gain(&self.cfg.antenna, p.angle, rng));
            let h = self.fading(p.distance, rng);
            total += self.tx_power * gain * h * self.path_gain(p.distance);
        }
        total
    }

    /// Interference from the rings between the base window and the full
    /// window. Drawn after everything inside the base window so the base
    /// sample path does not depend on the window size.
    fn outer_interference<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let mut total = 0.0;
        let mut inner = self.base_radius;
        while inner < self.window_radius {
            let outer = (2.0 * inner).min(self.window_radius);
            let ring = sample_ppp_annulus(self.interferer_density, inner, outer, rng);
            total += self.interference_from(&ring, rng);
            inner = outer;
        }
        total
    }

    fn trial(&self, seed: &RngSeed, index: u64) -> bool {
        let mut rng = seed.trial_rng(index);
        let cfg = self.cfg;
        let serving_level = sample_serving_gain(&cfg.antenna, cfg.beam_error_sigma, &mut rng);
        let serving_gain = cfg.antenna.level_gain(serving_level);

        let (serving_distance, interference_inside) = match self.serving_density {
            Some(density) if self.retention >= 1.0 => {
                let points = sample_ppp_annulus(density, 0.0, self.base_radius, &mut rng);
                let Some(nearest) = points.first() else { return false };
                if nearest.distance > cfg.blockage.ball_radius() {
                    // No LOS node to associate with.
                    return false;
                }
                (nearest.distance, self.interference_from(&points[1..], &mut rng))
            }
            Some(density) => {
                // Nearest point of the full process by inversion of
                // 1 - exp(-π λ r²); given it, the remaining points form a PPP
                // beyond it, and their independent thinning is a PPP of the
                // interferer density.
                let u: f64 = rng.random();
                let d = (-(1.0 - u).ln() / (PI * density)).sqrt();
                if d > cfg.blockage.ball_radius() {
                    return false;
                }
                let points = sample_ppp_annulus(self.interferer_density, d, self.base_radius, &mut rng);
                (d, self.interference_from(&points, &mut rng))
            }
            None => {
                let d = cfg.relay_disk_radius * rng.random::<f64>().sqrt();
                let points = sample_ppp_annulus(self.interferer_density, 0.0, self.base_radius, &mut rng);
                let start = points.partition_point(|p| p.distance < d);
                (d, self.interference_from(&points[start..], &mut rng))
            }
        };
        let h0 = self.los_fading.sample(&mut rng);
        let interference = interference_inside + self.outer_interference(&mut rng);
        let signal = self.tx_power * serving_gain * h0 * serving_distance.powf(-cfg.blockage.alpha_los());
        signal > cfg.threshold * (cfg.noise_power + interference)
    }
}

/// Monte Carlo estimator of coverage and interference statistics.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Simulator {
    pub settings: SimulationSettings,
}

impl Simulator {
    pub fn new(settings: SimulationSettings) -> Self {
        Self { settings }
    }

    /// Window radius for interferers of `density` transmitting at
    /// `tx_power`, when serving distances reach `max_serving_distance`.
    ///
    /// Starts at `max(min_ball_multiple * R_B, radius holding
    /// min_expected_points)` and doubles until the mean interference from
    /// beyond the window, `2π λ P E[G] r^(2-αN) / (αN - 2)`, is below
    /// `residual_fraction * max(σ², P G_MM d^-αL / T)`. The second scale is
    /// the interference level at which the weakest aligned serving link
    /// crosses the threshold.
    pub fn window_radius(
        &self,
        cfg: &NetworkConfig,
        density: f64,
        tx_power: f64,
        max_serving_distance: f64,
    ) -> Result<(f64, f64), McError> {
        let r_b = cfg.blockage.ball_radius();
        let s = &self.settings;
        if let Some(r) = s.fixed_radius {
            if !(r > r_b) {
                return Err(McError::WindowTooSmall { radius: r, ball_radius: r_b });
            }
            return Ok((r, r));
        }
        let mut base = s.min_ball_multiple * r_b;
        if density > 0.0 {
            base = base.max((s.min_expected_points / (PI * density)).sqrt());
        }
        if !(base > r_b) {
            return Err(McError::WindowTooSmall { radius: base, ball_radius: r_b });
        }
        let alpha_n = cfg.blockage.alpha_nlos();
        let decision_scale = cfg
            .noise_power
            .max(tx_power * cfg.serving_gain() * max_serving_distance.powf(-cfg.blockage.alpha_los()) / cfg.threshold);
        let target = s.residual_fraction * decision_scale;
        let mean_gain = cfg.interferer_gains().mean();
        let residual = |r: f64| 2.0 * PI * density * tx_power * mean_gain * r.powf(2.0 - alpha_n) / (alpha_n - 2.0);
        let mut radius = base;
        while residual(radius) >= target {
            radius *= 2.0;
            let expected_points = density * PI * radius * radius;
            if expected_points > s.max_expected_points {
                return Err(McError::WindowTooLarge { expected_points });
            }
        }
        Ok((base, radius))
    }

    fn hop<'a>(&self, cfg: &'a NetworkConfig, link: Link, lambda_prime: Option<f64>) -> Result<Hop<'a>, McError> {
        cfg.validate()?;
        let tx_power = link.tx_power(cfg);
        let (serving_density, interferer_density, max_serving) = match link {
            Link::BsUser => (Some(cfg.lambda_b), cfg.lambda_b, cfg.blockage.ball_radius()),
            Link::BsRelay => (Some(cfg.lambda_b), cfg.lambda_min(), cfg.blockage.ball_radius()),
            Link::RelayUser => {
                let lp = lambda_prime.ok_or_else(|| McError::InvalidArgument("relay hop needs lambda_prime".into()))?;
                if !(lp.is_finite() && lp >= 0.0) {
                    return Err(McError::InvalidArgument(format!("lambda_prime {lp} must be non-negative")));
                }
                (None, lp, cfg.relay_disk_radius)
            }
        };
        let (base_radius, window_radius) = self.window_radius(cfg, interferer_density, tx_power, max_serving)?;
        let retention = match serving_density {
            Some(d) if d > 0.0 => (interferer_density / d).min(1.0),
            _ => 1.0,
        };
        Ok(Hop {
            cfg,
            link,
            tx_power,
            serving_density,
            interferer_density,
            retention,
            base_radius,
            window_radius,
            los_fading: nakagami(cfg.fading.nakagami_los()),
            nlos_fading: nakagami(cfg.fading.nakagami_nlos()),
        })
    }

    /// Coverage of one hop over `trials` independent network draws. The
    /// serving gain is drawn with the configuration's beam error deviation.
    pub fn coverage(
        &self,
        cfg: &NetworkConfig,
        link: Link,
        lambda_prime: Option<f64>,
        trials: u64,
        seed: u64,
    ) -> Result<McEstimate, McError> {
        if trials == 0 {
            return Err(McError::InvalidArgument("at least one trial is required".into()));
        }
        let hop = self.hop(cfg, link, lambda_prime)?;
        let root = RngSeed::new(seed, stream_of(hop.link));
        let successes: u64 = (0..trials)
            .into_par_iter()
            .map(|i| hop.trial(&root, i) as u64)
            .sum();
        Ok(McEstimate::from_successes(successes, trials))
    }

    pub fn coverage_bu(&self, cfg: &NetworkConfig, trials: u64, seed: u64) -> Result<McEstimate, McError> {
        self.coverage(cfg, Link::BsUser, None, trials, seed)
    }

    /// The serving BS is the nearest point of the full BS process; other BSs
    /// interfere after independent thinning to `lambda_min`.
    pub fn coverage_br(&self, cfg: &NetworkConfig, trials: u64, seed: u64) -> Result<McEstimate, McError> {
        self.coverage(cfg, Link::BsRelay, None, trials, seed)
    }

    /// Serving distance `a sqrt(U)`; active relays of density `lambda_prime`
    /// farther than the serving relay interfere.
    pub fn coverage_ru(
        &self,
        cfg: &NetworkConfig,
        lambda_prime: f64,
        trials: u64,
        seed: u64,
    ) -> Result<McEstimate, McError> {
        self.coverage(cfg, Link::RelayUser, Some(lambda_prime), trials, seed)
    }

    /// Estimates `E[exp(-s I)]` for interferers of `density` beyond `x0`
    /// transmitting at `tx_power`, with random gains, LOS/NLOS path loss
    /// and Nakagami fading.
    #[allow(clippy::too_many_arguments)]
    pub fn laplace_interference(
        &self,
        cfg: &NetworkConfig,
        s: f64,
        density: f64,
        tx_power: f64,
        x0: f64,
        trials: u64,
        seed: u64,
    ) -> Result<McEstimate, McError> {
        cfg.validate()?;
        if trials == 0 || !(s >= 0.0) || !(density >= 0.0) {
            return Err(McError::InvalidArgument("need trials >= 1, s >= 0 and density >= 0".into()));
        }
        // Grow the window until the neglected part of the Laplace exponent,
        // 2π λ s P E[G] r^(2-αN)/(αN-2), is below 1e-4; the estimate then
        // carries a relative bias of at most 1e-4.
        let alpha_n = cfg.blockage.alpha_nlos();
        let mean_gain = cfg.interferer_gains().mean();
        let tail = |r: f64| 2.0 * PI * density * s * tx_power * mean_gain * r.powf(2.0 - alpha_n) / (alpha_n - 2.0);
        let mut radius = self.settings.min_ball_multiple * cfg.blockage.ball_radius();
        while tail(radius) > 1e-4 {
            radius *= 2.0;
            let expected_points = density * PI * radius * radius;
            if expected_points > self.settings.max_expected_points {
                return Err(McError::WindowTooLarge { expected_points });
            }
        }
        let hop = Hop {
            cfg,
            link: Link::BsUser,
            tx_power,
            serving_density: None,
            interferer_density: density,
            retention: 1.0,
            base_radius: radius,
            window_radius: radius,
            los_fading: nakagami(cfg.fading.nakagami_los()),
            nlos_fading: nakagami(cfg.fading.nakagami_nlos()),
        };
        let root = RngSeed::new(seed, LAPLACE_STREAM);
        let chunks = trials.div_ceil(TRIALS_PER_CHUNK);
        // Fixed chunks summed in order keep the floating-point result
        // independent of scheduling.
        let partial: Vec<(f64, f64)> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut sum = 0.0;
                let mut sum_sq = 0.0;
                for i in c * TRIALS_PER_CHUNK..((c + 1) * TRIALS_PER_CHUNK).min(trials) {
                    let mut rng = root.trial_rng(i);
                    let points = sample_ppp_annulus(density, x0, radius, &mut rng);
                    let v = (-s * hop.interference_from(&points, &mut rng)).exp();
                    sum += v;
                    sum_sq += v * v;
                }
                (sum, sum_sq)
            })
            .collect();
        let (sum, sum_sq) = partial.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
        Ok(McEstimate::from_moments(sum, sum_sq, trials))
    }
}
