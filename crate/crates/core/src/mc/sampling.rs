//! Random draws used by the simulator.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Gamma, Poisson, StandardNormal};

use crate::model::{AntennaPattern, GainLevel};

/// Point in polar coordinates around the receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub distance: f64,
    pub angle: f64,
}

fn poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    let draw: f64 = Poisson::new(mean).expect("positive finite mean").sample(rng);
    draw as u64
}

/// Homogeneous PPP restricted to the annulus `inner <= r < outer`, sorted
/// by distance.
pub fn sample_ppp_annulus<R: Rng + ?Sized>(density: f64, inner: f64, outer: f64, rng: &mut R) -> Vec<PolarPoint> {
    let (r2_lo, r2_hi) = (inner * inner, outer * outer);
    let count = poisson_count(density * PI * (r2_hi - r2_lo), rng);
    let mut points: Vec<PolarPoint> = (0..count)
        .map(|_| {
            let u: f64 = rng.random();
            PolarPoint { distance: (r2_lo + u * (r2_hi - r2_lo)).sqrt(), angle: 2.0 * PI * rng.random::<f64>() }
        })
        .collect();
    points.sort_by(|a, b| a.distance.total_cmp(&b.distance));
    points
}

/// Homogeneous PPP on the disk of radius `r_max`, sorted by distance.
pub fn sample_ppp_disk<R: Rng + ?Sized>(density: f64, r_max: f64, rng: &mut R) -> Vec<PolarPoint> {
    sample_ppp_annulus(density, 0.0, r_max, rng)
}

/// Unit-mean gamma power gain with shape `n`.
pub fn sample_nakagami_power<R: Rng + ?Sized>(n: u32, rng: &mut R) -> f64 {
    nakagami(n).sample(rng)
}

pub(crate) fn nakagami(n: u32) -> Gamma<f64> {
    assert!(n >= 1, "Nakagami shape must be positive");
    Gamma::new(n as f64, 1.0 / n as f64).expect("valid gamma parameters")
}

fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Gain level of a link along `bearing` when transmitter and receiver
/// point their beams in independent uniform directions.
pub fn sample_link_gain<R: Rng + ?Sized>(antenna: &AntennaPattern, bearing: f64, rng: &mut R) -> GainLevel {
    let half = 0.5 * antenna.beamwidth();
    let tx_orientation = 2.0 * PI * rng.random::<f64>();
    let rx_orientation = 2.0 * PI * rng.random::<f64>();
    // The receiver sees the link from the opposite direction.
    let tx_main = angular_distance(tx_orientation, bearing + PI) <= half;
    let rx_main = angular_distance(rx_orientation, bearing) <= half;
    GainLevel::from_lobes(tx_main, rx_main)
}

pub fn sample_interferer_gain<R: Rng + ?Sized>(antenna: &AntennaPattern, rng: &mut R) -> GainLevel {
    sample_link_gain(antenna, 0.0, rng)
}

/// Gain level of the serving link when both ends steer with Gaussian error
/// of deviation `sigma`. Always consumes two normal draws, so `sigma = 0`
/// follows the same random path as any other deviation.
pub fn sample_serving_gain<R: Rng + ?Sized>(antenna: &AntennaPattern, sigma: f64, rng: &mut R) -> GainLevel {
    let half = 0.5 * antenna.beamwidth();
    let tx_err: f64 = rng.sample(StandardNormal);
    let rx_err: f64 = rng.sample(StandardNormal);
    GainLevel::from_lobes((sigma * tx_err).abs() <= half, (sigma * rx_err).abs() <= half)
}
