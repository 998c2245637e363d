//! Fading laws: exponentiated Weibull irradiance for the optical hops,
//! shadowed-Rician power for the radio branch, and zero-boresight pointing
//! errors. Samplers take the caller's RNG; distribution objects are plain
//! immutable values.

mod ew;
mod pointing;
mod shadowed_rician;

pub use ew::{
    ew_cdf, ew_fit, ew_pdf, ew_sample, ew_snr_cdf, g1_series, g1_series_with, selection_cdf, EwLink, EwParams,
};
pub use pointing::{ew_pointing_cdf_at, ew_pointing_snr_cdf, pointing_geometry, pointing_sample, PointingParams};
pub use shadowed_rician::{sr_sample, sr_snr_cdf, sr_snr_cdf_double_sum, sr_snr_pdf, SrParams};
