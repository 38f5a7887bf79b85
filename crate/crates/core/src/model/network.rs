use super::{gain_distribution, AntennaPattern, ConfigError, GainDistribution};

/// LOS ball blockage with dual-slope path loss: exponent `alpha_los` inside
/// `ball_radius`, `alpha_nlos` outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockageModel {
    ball_radius: f64,
    alpha_los: f64,
    alpha_nlos: f64,
}

impl BlockageModel {
    /// `alpha_los` may equal 2 since LOS interference only spans a bounded
    /// annulus; `alpha_nlos` must exceed 2 for the NLOS tail to converge.
    pub fn new(ball_radius: f64, alpha_los: f64, alpha_nlos: f64) -> Result<Self, ConfigError> {
        if !(ball_radius.is_finite() && ball_radius > 0.0) {
            return Err(ConfigError::invalid("R_B", "ball radius must be positive"));
        }
        if !(alpha_los.is_finite() && alpha_los >= 2.0) {
            return Err(ConfigError::invalid("alpha_L", "LOS exponent must be at least 2"));
        }
        if !(alpha_nlos.is_finite() && alpha_nlos > 2.0) {
            return Err(ConfigError::invalid("alpha_N", "NLOS exponent must exceed 2"));
        }
        if alpha_nlos < alpha_los {
            return Err(ConfigError::invalid("alpha_N", "NLOS exponent must be at least the LOS exponent"));
        }
        Ok(Self { ball_radius, alpha_los, alpha_nlos })
    }

    pub fn ball_radius(&self) -> f64 {
        self.ball_radius
    }

    pub fn alpha_los(&self) -> f64 {
        self.alpha_los
    }

    pub fn alpha_nlos(&self) -> f64 {
        self.alpha_nlos
    }

    pub fn is_los(&self, distance: f64) -> bool {
        distance <= self.ball_radius
    }
}

/// Nakagami shape parameters for LOS and NLOS links.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FadingParams {
    nakagami_los: u32,
    nakagami_nlos: u32,
}

impl FadingParams {
    pub fn new(nakagami_los: u32, nakagami_nlos: u32) -> Result<Self, ConfigError> {
        if nakagami_los == 0 {
            return Err(ConfigError::invalid("N_L", "must be a positive integer"));
        }
        if nakagami_nlos == 0 {
            return Err(ConfigError::invalid("N_N", "must be a positive integer"));
        }
        Ok(Self { nakagami_los, nakagami_nlos })
    }

    pub fn nakagami_los(&self) -> u32 {
        self.nakagami_los
    }

    pub fn nakagami_nlos(&self) -> u32 {
        self.nakagami_nlos
    }

    pub fn eta_los(&self) -> f64 {
        eta(self.nakagami_los)
    }
}

/// `N (N!)^(-1/N)`, the exponent scale in the tail bound of a unit-mean
/// gamma variable with shape `N`.
pub fn eta(n: u32) -> f64 {
    assert!(n >= 1, "Nakagami shape must be positive");
    let ln_factorial: f64 = (2..=n).map(|k| (k as f64).ln()).sum();
    n as f64 * (-ln_factorial / n as f64).exp()
}

/// Per-node consumption `P0 + beta * P_tx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerModel {
    static_bs: f64,
    static_rs: f64,
    beta_bs: f64,
    beta_rs: f64,
}

impl PowerModel {
    pub fn new(static_bs: f64, static_rs: f64, beta_bs: f64, beta_rs: f64) -> Result<Self, ConfigError> {
        let checks = [
            ("P_B0", static_bs, 0.0),
            ("P_R0", static_rs, 0.0),
            ("beta_B", beta_bs, 1.0),
            ("beta_R", beta_rs, 1.0),
        ];
        for (key, value, floor) in checks {
            if !(value.is_finite() && value > 0.0 && value >= floor) {
                return Err(ConfigError::invalid(key, format!("must be finite, positive and at least {floor}")));
            }
        }
        Ok(Self { static_bs, static_rs, beta_bs, beta_rs })
    }

    /// Same as [`PowerModel::new`] without the positivity checks, for limit
    /// studies such as zero static power.
    pub fn unchecked(static_bs: f64, static_rs: f64, beta_bs: f64, beta_rs: f64) -> Self {
        Self { static_bs, static_rs, beta_bs, beta_rs }
    }

    pub fn static_bs(&self) -> f64 {
        self.static_bs
    }

    pub fn static_rs(&self) -> f64 {
        self.static_rs
    }

    pub fn beta_bs(&self) -> f64 {
        self.beta_bs
    }

    pub fn beta_rs(&self) -> f64 {
        self.beta_rs
    }
}

/// Full scenario in linear SI units.
///
/// Fields are public so studies can perturb a single quantity; every engine
/// entry point calls [`NetworkConfig::validate`] first.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    /// BS density, per m².
    pub lambda_b: f64,
    /// RS density, per m².
    pub lambda_r: f64,
    /// Transmit powers in watts: BS to user, BS to relay, relay to user.
    pub p_bu: f64,
    pub p_br: f64,
    pub p_ru: f64,
    /// Noise power, watts.
    pub noise_power: f64,
    /// Linear SINR threshold.
    pub threshold: f64,
    /// Radius of the disk served by a relay, meters.
    pub relay_disk_radius: f64,
    /// Bandwidths (Hz) of the direct and relayed bands.
    pub bandwidth_nc: f64,
    pub bandwidth_c: f64,
    pub antenna: AntennaPattern,
    pub blockage: BlockageModel,
    pub fading: FadingParams,
    pub power: PowerModel,
    /// Standard deviation of the beam steering error, radians. Zero means
    /// perfect alignment.
    pub beam_error_sigma: f64,
}

impl NetworkConfig {
    /// Baseline parameter set (BS density 1e-4 per m², 30° beams).
    pub fn table_one() -> Self {
        super::ConfigParams::table_one()
            .to_config()
            .expect("baseline parameters are valid")
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_b.min(self.lambda_r)
    }

    /// Gain distribution of every interfering link.
    pub fn interferer_gains(&self) -> GainDistribution {
        gain_distribution(&self.antenna)
    }

    /// Gain of a perfectly aligned serving link.
    pub fn serving_gain(&self) -> f64 {
        self.antenna.main_gain() * self.antenna.main_gain()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = [
            ("lambda_B", self.lambda_b),
            ("lambda_R", self.lambda_r),
            ("P_BU_dBm", self.p_bu),
            ("P_BR_dBm", self.p_br),
            ("P_RU_dBm", self.p_ru),
            ("sigma2_dBm", self.noise_power),
            ("T_dB", self.threshold),
            ("a", self.relay_disk_radius),
            ("B_nc", self.bandwidth_nc),
            ("B_c", self.bandwidth_c),
        ];
        for (key, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(ConfigError::invalid(key, "must be finite and strictly positive"));
            }
        }
        if !(self.beam_error_sigma.is_finite() && self.beam_error_sigma >= 0.0) {
            return Err(ConfigError::invalid("sigma_BE_deg", "must be finite and non-negative"));
        }
        if self.relay_disk_radius > self.blockage.ball_radius() {
            return Err(ConfigError::invalid("a", "relay disk radius must not exceed the LOS ball radius"));
        }
        Ok(())
    }
}
