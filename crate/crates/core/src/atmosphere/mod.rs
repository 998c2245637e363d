//! Deterministic propagation effects: attenuation factors for every hop,
//! turbulence statistics feeding the fading fits, RF path loss and receiver
//! noise.
//!
//! Attenuation coefficients are natural (km⁻¹) unless the name says dB.
//! [`AttenuationBreakdown`] keeps optical depths rather than transmittances so
//! that very lossy paths do not underflow.

mod rain;
mod turbulence;

pub use rain::{fso_rain_coeff, rain_constants, rf_rain_coeff, rf_rain_parameters, RainConstants};
pub use turbulence::{
    cn2, rms_wind_speed, rytov_variance, rytov_variance_with_profile, scintillation_index_aperture,
    scintillation_index_point, TurbulencePath,
};

use crate::error::{Error, Result};
use crate::scenario::{GroundReference, ScenarioConfig};

/// dB per neper of power: `10 / ln 10`.
pub const DB_PER_NEPER: f64 = 4.342_944_819_032_518;

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Boltzmann's constant in dBW/K/Hz.
pub const BOLTZMANN_DBW: f64 = -228.6;

/// Beer-Lambert transmittance `exp(-coeff * length)`.
pub fn beer_lambert(coeff_per_km: f64, length_km: f64) -> f64 {
    (-coeff_per_km * length_km).exp()
}

/// Clear-air extinction polynomial coefficients `(a, b, c, d)` for a
/// wavelength in µm.
pub fn mie_coefficients(lambda_um: f64) -> (f64, f64, f64, f64) {
    let l = lambda_um;
    let l2 = l * l;
    (
        -0.000545 * l2 + 0.002 * l - 0.0038,
        0.00628 * l2 - 0.0232 * l + 0.0439,
        -0.028 * l2 + 0.101 * l - 0.18,
        -0.228 * l2 * l + 0.922 * l2 - 1.26 * l + 0.719,
    )
}

/// Extinction ratio `τ = a h³ + b h² + c h + d` for a station at `h_e_km`.
pub fn mie_extinction(lambda_um: f64, h_e_km: f64) -> Result<f64> {
    if !(h_e_km > 0.0 && h_e_km < 5.0) {
        return Err(Error::ModelDomain(format!(
            "Mie extinction fit needs a station altitude in (0, 5) km, got {h_e_km} km"
        )));
    }
    let (a, b, c, d) = mie_coefficients(lambda_um);
    Ok(((a * h_e_km + b) * h_e_km + c) * h_e_km + d)
}

/// Mie transmittance `exp(-τ / sin Θ)`.
pub fn mie_transmittance(lambda_um: f64, h_e_km: f64, elevation_deg: f64) -> Result<f64> {
    Ok((-mie_extinction(lambda_um, h_e_km)? / elevation_deg.to_radians().sin()).exp())
}

/// Particle-size exponent of the Kim visibility model.
pub fn kim_exponent(visibility_km: f64) -> f64 {
    let v = visibility_km;
    if v > 50.0 {
        1.6
    } else if v > 6.0 {
        1.3
    } else if v > 1.0 {
        0.16 * v + 0.34
    } else if v > 0.5 {
        v - 0.5
    } else {
        0.0
    }
}

/// Kim fog/haze attenuation coefficient in km⁻¹ (multiply by
/// [`DB_PER_NEPER`] for dB/km).
pub fn kim_attenuation(visibility_km: f64, lambda_nm: f64) -> f64 {
    3.91 / visibility_km * (lambda_nm / 550.0).powf(-kim_exponent(visibility_km))
}

/// Cloud visibility in km from liquid water content (g/m³) and number
/// concentration (cm⁻³).
pub fn cloud_visibility(number_conc_cm3: f64, liquid_water_g_m3: f64) -> f64 {
    1.002 / (liquid_water_g_m3 * number_conc_cm3).powf(0.6473)
}

/// RF path gain in dB: antenna gains minus free-space, oxygen and rain loss.
pub fn rf_path_loss_db(
    length_m: f64,
    freq_ghz: f64,
    tx_gain_db: f64,
    rx_gain_db: f64,
    oxygen_db_per_km: f64,
    rain_db_per_km: f64,
) -> f64 {
    let lambda = SPEED_OF_LIGHT / (freq_ghz * 1e9);
    let length_km = length_m / 1000.0;
    tx_gain_db + rx_gain_db
        - 20.0 * (4.0 * std::f64::consts::PI * length_m / lambda).log10()
        - oxygen_db_per_km * length_km
        - rain_db_per_km * length_km
}

/// Thermal noise `k + T + B` in dBW.
pub fn thermal_noise_dbw(temperature_c: f64, bandwidth_hz: f64) -> f64 {
    BOLTZMANN_DBW + 10.0 * (temperature_c + 273.15).log10() + 10.0 * bandwidth_hz.log10()
}

/// Receiver noise `N₀ = P_n n_f` in dBW.
pub fn noise_power_dbw(temperature_c: f64, bandwidth_hz: f64, noise_figure_db: f64) -> f64 {
    thermal_noise_dbw(temperature_c, bandwidth_hz) + noise_figure_db
}

/// Receiver noise `N₀` in watts.
pub fn noise_power(temperature_c: f64, bandwidth_hz: f64, noise_figure_db: f64) -> f64 {
    10f64.powf(noise_power_dbw(temperature_c, bandwidth_hz, noise_figure_db) / 10.0)
}

/// Deterministic losses of one scenario. Optical factors are stored as
/// optical depths `-ln(transmittance)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AttenuationBreakdown {
    /// Satellite-HAPS stratospheric aerosol loss.
    pub stratospheric_depth: f64,
    pub mie_depth: f64,
    /// Fog plus cloud (geometrical scattering) on the HAPS-ground path.
    pub geometric_depth: f64,
    pub rain_fso_depth: f64,
    pub rf_rain_db_per_km: f64,
    /// RF path gain 𝓕 in dB (negative for a net loss).
    pub rf_path_loss_db: f64,
    pub noise_sat_haps_w: f64,
    pub noise_haps_gs_w: f64,
}

impl AttenuationBreakdown {
    pub fn stratospheric(&self) -> f64 {
        (-self.stratospheric_depth).exp()
    }

    pub fn mie(&self) -> f64 {
        (-self.mie_depth).exp()
    }

    pub fn geometric(&self) -> f64 {
        (-self.geometric_depth).exp()
    }

    pub fn rain_fso(&self) -> f64 {
        (-self.rain_fso_depth).exp()
    }

    /// Optical depth of the HAPS-ground optical path (Mie, fog/cloud, rain).
    pub fn haps_gs_fso_depth(&self) -> f64 {
        self.mie_depth + self.geometric_depth + self.rain_fso_depth
    }

    /// Total optical transmittance of the HAPS-ground path.
    pub fn total_fso_gain(&self) -> f64 {
        (-self.haps_gs_fso_depth()).exp()
    }

    pub fn noise_sat_haps_dbw(&self) -> f64 {
        10.0 * self.noise_sat_haps_w.log10()
    }

    pub fn noise_haps_gs_dbw(&self) -> f64 {
        10.0 * self.noise_haps_gs_w.log10()
    }
}

/// Path length through a layer of the given vertical extent above the
/// station, capped at the full slant path.
fn layer_path_km(thickness_m: Option<f64>, elevation_deg: f64, full_km: f64) -> f64 {
    match thickness_m {
        Some(t) => (t / 1000.0 / elevation_deg.to_radians().sin()).min(full_km),
        None => full_km,
    }
}

pub fn attenuation_breakdown(s: &ScenarioConfig) -> Result<AttenuationBreakdown> {
    let g = &s.geometry;
    let r = &s.radio;
    let w = &s.weather;
    let l_sh_km = g.sat_haps_range_m() / 1000.0;
    let l_hg_m = g.haps_gs_range_m();
    let l_hg_km = l_hg_m / 1000.0;

    let stratospheric_depth = w.volcanic.coeff_per_km() * l_sh_km;
    let mie_depth =
        mie_extinction(r.fso_wavelength_nm / 1000.0, g.gs_elevation_m / 1000.0)? / g.elevation_gs_deg.to_radians().sin();

    let mut geometric_depth = 0.0;
    if let Some(v) = w.fog.visibility_km() {
        let path = layer_path_km(w.fog_layer_thickness_m, g.elevation_gs_deg, l_hg_km);
        geometric_depth += kim_attenuation(v, r.fso_wavelength_nm) * path;
    }
    if let Some(cloud) = w.cloud {
        let v = cloud_visibility(cloud.number_concentration_cm3(), cloud.liquid_water_g_m3());
        let path = layer_path_km(w.cloud_layer_thickness_m, g.elevation_gs_deg, l_hg_km);
        geometric_depth += kim_attenuation(v, r.fso_wavelength_nm) * path;
    }

    let rain_fso_depth = fso_rain_coeff(w.rain_rate_mm_per_h) / DB_PER_NEPER * l_hg_km;
    let rf_rain_db_per_km = if w.rain_rate_mm_per_h > 0.0 {
        rf_rain_coeff(w.rain_rate_mm_per_h, r.rf_frequency_ghz, g.elevation_gs_deg, r.polarization_tilt_deg)?
    } else {
        0.0
    };
    let rf_path_loss_db = rf_path_loss_db(
        l_hg_m,
        r.rf_frequency_ghz,
        r.tx_gain_db,
        r.rx_gain_db,
        r.oxygen_atten_db_per_km,
        rf_rain_db_per_km,
    );

    Ok(AttenuationBreakdown {
        stratospheric_depth,
        mie_depth,
        geometric_depth,
        rain_fso_depth,
        rf_rain_db_per_km,
        rf_path_loss_db,
        noise_sat_haps_w: noise_power(r.temperature_sat_haps_c, r.bandwidth_hz, r.noise_figure_db),
        noise_haps_gs_w: noise_power(r.temperature_haps_gs_c, r.bandwidth_hz, r.noise_figure_db),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkId {
    SatHaps,
    HapsGs,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurbulenceStats {
    pub link: LinkId,
    pub rytov_variance: f64,
    /// Index used by the fading fit: aperture-averaged when enabled.
    pub scintillation_index: f64,
    pub point_scintillation_index: f64,
    pub aperture_averaged: bool,
}

/// Turbulence path of an optical hop of the scenario.
pub fn turbulence_path(s: &ScenarioConfig, link: LinkId) -> TurbulencePath {
    let g = &s.geometry;
    let w = &s.weather;
    match link {
        LinkId::SatHaps => TurbulencePath {
            h_start_m: g.haps_altitude_m,
            h_end_m: g.satellite_altitude_m,
            origin_m: g.haps_altitude_m,
            zenith_deg: g.zenith_sat_haps_deg,
            wind_rms_mps: w.wind_sat_haps.rms_mps(),
            c0: w.cn2_nominal_sat_haps,
        },
        LinkId::HapsGs => {
            let origin = match w.turbulence_ground_reference {
                GroundReference::SeaLevel => 0.0,
                GroundReference::Station => g.gs_elevation_m,
            };
            TurbulencePath {
                h_start_m: origin,
                h_end_m: g.haps_altitude_m,
                origin_m: origin,
                zenith_deg: g.zenith_haps_gs_deg,
                wind_rms_mps: w.wind_haps_gs.rms_mps(),
                c0: w.cn2_nominal_haps_gs,
            }
        }
    }
}

/// Rytov variance and scintillation index of an optical hop.
///
/// With aperture averaging enabled the aperture formula is used, capped at
/// the point-receiver value (the weak-turbulence aperture integral slightly
/// overshoots it as the aperture shrinks to zero).
pub fn turbulence_stats(s: &ScenarioConfig, link: LinkId) -> Result<TurbulenceStats> {
    let path = turbulence_path(s, link);
    let lambda = s.radio.fso_wavelength_nm;
    let rytov = rytov_variance(&path, lambda)?;
    let point = scintillation_index_point(rytov);
    let scintillation_index = if s.aperture_averaging_enabled {
        let length = match link {
            LinkId::SatHaps => s.geometry.sat_haps_range_m(),
            LinkId::HapsGs => s.geometry.haps_gs_range_m(),
        };
        scintillation_index_aperture(&path, lambda, s.geometry.receiver_aperture_diameter_m, length)?.min(point)
    } else {
        point
    };
    Ok(TurbulenceStats {
        link,
        rytov_variance: rytov,
        scintillation_index,
        point_scintillation_index: point,
        aperture_averaged: s.aperture_averaging_enabled,
    })
}
