use std::f64::consts::PI;

use super::ConfigError;

/// Sectored antenna: gain `main_gain` over a main lobe of width `beamwidth`
/// radians, `side_gain` everywhere else.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaPattern {
    main_gain: f64,
    side_gain: f64,
    beamwidth: f64,
}

impl AntennaPattern {
    pub fn new(main_gain: f64, side_gain: f64, beamwidth: f64) -> Result<Self, ConfigError> {
        if !(side_gain.is_finite() && side_gain > 0.0) {
            return Err(ConfigError::invalid("m_dB", "side-lobe gain must be positive and finite"));
        }
        if !(main_gain.is_finite() && main_gain >= side_gain) {
            return Err(ConfigError::invalid("M_dB", "main-lobe gain must be finite and at least the side-lobe gain"));
        }
        if !(beamwidth > 0.0 && beamwidth <= 2.0 * PI) {
            return Err(ConfigError::invalid("theta_deg", "beamwidth must lie in (0, 360] degrees"));
        }
        Ok(Self { main_gain, side_gain, beamwidth })
    }

    pub fn main_gain(&self) -> f64 {
        self.main_gain
    }

    pub fn side_gain(&self) -> f64 {
        self.side_gain
    }

    pub fn beamwidth(&self) -> f64 {
        self.beamwidth
    }

    /// Fraction of the circle covered by the main lobe.
    pub fn main_lobe_fraction(&self) -> f64 {
        self.beamwidth / (2.0 * PI)
    }

    /// Product gain of a link at the given level.
    pub fn level_gain(&self, level: GainLevel) -> f64 {
        match level {
            GainLevel::MainMain => self.main_gain * self.main_gain,
            GainLevel::MainSide => self.main_gain * self.side_gain,
            GainLevel::SideSide => self.side_gain * self.side_gain,
        }
    }
}

/// Which lobes of the transmitter and receiver face each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GainLevel {
    MainMain,
    MainSide,
    SideSide,
}

impl GainLevel {
    pub const ALL: [GainLevel; 3] = [GainLevel::MainMain, GainLevel::MainSide, GainLevel::SideSide];

    /// Level given whether the transmit and receive main lobes cover the link.
    pub fn from_lobes(tx_main: bool, rx_main: bool) -> Self {
        match (tx_main, rx_main) {
            (true, true) => GainLevel::MainMain,
            (false, false) => GainLevel::SideSide,
            _ => GainLevel::MainSide,
        }
    }

    pub fn index(self) -> usize {
        match self {
            GainLevel::MainMain => 0,
            GainLevel::MainSide => 1,
            GainLevel::SideSide => 2,
        }
    }
}

/// Three-point distribution of the effective link gain, ordered MM, Mm, mm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainDistribution {
    levels: [(f64, f64); 3],
}

impl GainDistribution {
    /// Builds a distribution over the three gain levels of `antenna` with
    /// the given probabilities (MM, Mm, mm).
    pub fn with_probabilities(antenna: &AntennaPattern, probs: [f64; 3]) -> Result<Self, ConfigError> {
        if probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(ConfigError::invalid("gain_pmf", "probabilities must lie in [0, 1]"));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(ConfigError::invalid("gain_pmf", "probabilities must sum to 1"));
        }
        let levels = [
            (antenna.level_gain(GainLevel::MainMain), probs[0]),
            (antenna.level_gain(GainLevel::MainSide), probs[1]),
            (antenna.level_gain(GainLevel::SideSide), probs[2]),
        ];
        Ok(Self { levels })
    }

    pub fn levels(&self) -> &[(f64, f64); 3] {
        &self.levels
    }

    pub fn probabilities(&self) -> [f64; 3] {
        [self.levels[0].1, self.levels[1].1, self.levels[2].1]
    }

    pub fn probability(&self, level: GainLevel) -> f64 {
        self.levels[level.index()].1
    }

    pub fn gain(&self, level: GainLevel) -> f64 {
        self.levels[level.index()].0
    }

    pub fn mean(&self) -> f64 {
        self.levels.iter().map(|(g, p)| g * p).sum()
    }
}

/// Gain distribution of an interfering link whose transmit and receive
/// beams point in independent uniform directions.
pub fn gain_distribution(antenna: &AntennaPattern) -> GainDistribution {
    let main = antenna.main_lobe_fraction();
    let side = (2.0 * PI - antenna.beamwidth) / (2.0 * PI);
    GainDistribution {
        levels: [
            (antenna.level_gain(GainLevel::MainMain), main * main),
            (antenna.level_gain(GainLevel::MainSide), 2.0 * main * side),
            (antenna.level_gain(GainLevel::SideSide), side * side),
        ],
    }
}
