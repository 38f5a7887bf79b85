//! Stochastic-geometry analysis of a relay-assisted downlink mmWave cellular
//! network.
//!
//! Base stations and relays form independent Poisson point processes. Links
//! use sectored antennas, a LOS ball blockage model and Nakagami fading.
//! [`analytic`] evaluates coverage, area spectral efficiency, average power
//! and energy efficiency by nested quadrature; [`mc`] simulates the same
//! model directly and is used to check every analytic probability.
//!
//! ```
//! use mmwave_relay_ee::{analytic::AnalyticEngine, model::NetworkConfig};
//!
//! let cfg = NetworkConfig::table_one();
//! let (coverage, ee) = AnalyticEngine::default().evaluate(&cfg).unwrap();
//! assert!(coverage.p_bu > 0.5 && coverage.p_bu < 1.0);
//! assert!(ee.ee > 0.0);
//! ```

// `!(x > 0.0)` style checks deliberately reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod cli;
pub mod mc;
pub mod model;
pub mod quadrature;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/coverage.md")]
    mod coverage {}
    #[doc = include_str!("../../../book/src/energy.md")]
    mod energy {}
    #[doc = include_str!("../../../book/src/beam-error.md")]
    mod beam_error {}
    #[doc = include_str!("../../../book/src/monte-carlo.md")]
    mod monte_carlo {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
