//! Rain attenuation for the optical and radio branches.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Optical rain attenuation `1.076 R^0.67` in dB/km.
pub fn fso_rain_coeff(rain_mm_h: f64) -> f64 {
    1.076 * rain_mm_h.powf(0.67)
}

/// Frequency-dependent rain constants for horizontal and vertical
/// polarisation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RainConstants {
    pub freq_ghz: f64,
    pub k_h: f64,
    pub k_v: f64,
    pub alpha_h: f64,
    pub alpha_v: f64,
}

const TABLE_TEXT: &str = include_str!("../../data/itu_rain_p838.txt");

fn table() -> &'static [RainConstants] {
    static TABLE: OnceLock<Vec<RainConstants>> = OnceLock::new();
    TABLE.get_or_init(|| {
        TABLE_TEXT
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                let v: Vec<f64> = l
                    .split_whitespace()
                    .map(|t| t.parse().expect("bundled rain table is numeric"))
                    .collect();
                assert_eq!(v.len(), 5, "bundled rain table row `{l}`");
                RainConstants {
                    freq_ghz: v[0],
                    k_h: v[1],
                    k_v: v[2],
                    alpha_h: v[3],
                    alpha_v: v[4],
                }
            })
            .collect()
    })
}

/// Constants at `freq_ghz`, linearly interpolated between table rows.
pub fn rain_constants(freq_ghz: f64) -> Result<RainConstants> {
    let t = table();
    let (lo, hi) = (t[0].freq_ghz, t[t.len() - 1].freq_ghz);
    if !(freq_ghz >= lo && freq_ghz <= hi) {
        return Err(Error::UnsupportedFrequency(freq_ghz, lo, hi));
    }
    let i = t.partition_point(|r| r.freq_ghz < freq_ghz);
    if t[i].freq_ghz == freq_ghz {
        return Ok(t[i]);
    }
    let (a, b) = (t[i - 1], t[i]);
    let w = (freq_ghz - a.freq_ghz) / (b.freq_ghz - a.freq_ghz);
    let lerp = |x: f64, y: f64| x + w * (y - x);
    Ok(RainConstants {
        freq_ghz,
        k_h: lerp(a.k_h, b.k_h),
        k_v: lerp(a.k_v, b.k_v),
        alpha_h: lerp(a.alpha_h, b.alpha_h),
        alpha_v: lerp(a.alpha_v, b.alpha_v),
    })
}

/// Path-dependent `(k, alpha)` for elevation `Θ` and polarisation tilt `ι`.
pub fn rf_rain_parameters(freq_ghz: f64, elevation_deg: f64, tilt_deg: f64) -> Result<(f64, f64)> {
    let c = rain_constants(freq_ghz)?;
    let mix = elevation_deg.to_radians().cos().powi(2) * (2.0 * tilt_deg.to_radians()).cos();
    let k = (c.k_h + c.k_v + (c.k_h - c.k_v) * mix) / 2.0;
    let kh_a = c.k_h * c.alpha_h;
    let kv_a = c.k_v * c.alpha_v;
    let alpha = (kh_a + kv_a + (kh_a - kv_a) * mix) / (2.0 * k);
    Ok((k, alpha))
}

/// Radio rain attenuation `k R^alpha` in dB/km.
pub fn rf_rain_coeff(rain_mm_h: f64, freq_ghz: f64, elevation_deg: f64, tilt_deg: f64) -> Result<f64> {
    let (k, alpha) = rf_rain_parameters(freq_ghz, elevation_deg, tilt_deg)?;
    Ok(k * rain_mm_h.powf(alpha))
}
