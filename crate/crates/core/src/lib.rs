//! Outage analysis for satellite downlinks relayed through high-altitude
//! platforms (HAPS).
//!
//! The first hop is an optical link from the satellite to the best of `N`
//! HAPS nodes; the second hop runs optical and radio links in parallel to a
//! ground station that keeps the stronger branch. Outage probability is
//! computed in closed form and estimated by Monte Carlo simulation.
//!
//! Modules:
//! - [`scenario`]: configuration, presets and the scenario file format
//! - [`atmosphere`]: attenuation factors, turbulence statistics, noise
//! - [`fading`]: exponentiated Weibull, shadowed-Rician and pointing-error laws
//! - [`outage`]: link budgets, the end-to-end CDF, Monte Carlo and sweeps

pub mod atmosphere;
pub mod error;
pub mod fading;
pub mod numerics;
pub mod outage;
pub mod scenario;

pub use error::{Error, Result};
