//! Turbulence strength along slant paths: the Hufnagel-Valley C_n² profile,
//! Rytov variance, and point- and aperture-receiver scintillation indices.

use crate::error::Result;
use crate::numerics::Integrator;

/// Hufnagel-Valley profile, `h` in metres, result in m^(-2/3).
pub fn cn2(h_m: f64, wind_rms_mps: f64, c0: f64) -> f64 {
    8.148e-56 * wind_rms_mps * wind_rms_mps * h_m.powi(10) * (-h_m / 1000.0).exp()
        + 2.7e-16 * (-h_m / 1500.0).exp()
        + c0 * (-h_m / 100.0).exp()
}

/// RMS wind speed from the wind speed `v` at the platform.
pub fn rms_wind_speed(v_mps: f64) -> f64 {
    (v_mps * v_mps + 30.69 * v_mps + 348.91).sqrt()
}

/// Altitude span and turbulence parameters of one optical hop.
///
/// The path integrals run over `[h_start_m, h_end_m]`; path position is
/// measured from `origin_m`, which gives the `(h - origin)^(5/6)` weight of
/// the Rytov integral and the normalised position
/// `(h - origin) / (h_end - origin)` of the aperture kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurbulencePath {
    pub h_start_m: f64,
    pub h_end_m: f64,
    pub origin_m: f64,
    pub zenith_deg: f64,
    pub wind_rms_mps: f64,
    pub c0: f64,
}

impl TurbulencePath {
    fn sec_11_6(&self) -> f64 {
        (1.0 / self.zenith_deg.to_radians().cos()).powf(11.0 / 6.0)
    }

    /// Starting subdivision: the profile has structure on 100 m (surface
    /// term), 1.5 km and ~10 km (tropopause bump) scales.
    fn breaks(&self) -> Vec<f64> {
        let mut pts = vec![self.h_start_m];
        for h in [100.0, 500.0, 2e3, 5e3, 10e3, 15e3, 25e3, 50e3, 100e3, 200e3] {
            if h > self.h_start_m && h < self.h_end_m {
                pts.push(h);
            }
        }
        pts.push(self.h_end_m);
        pts
    }

    fn profile(&self, h: f64) -> f64 {
        cn2(h, self.wind_rms_mps, self.c0)
    }
}

fn wave_number(wavelength_nm: f64) -> f64 {
    2.0 * std::f64::consts::PI / (wavelength_nm * 1e-9)
}

/// `2.25 K^(7/6) sec^(11/6)(zenith) ∫ C_n²(h) (h - origin)^(5/6) dh`.
pub fn rytov_variance(path: &TurbulencePath, wavelength_nm: f64) -> Result<f64> {
    rytov_variance_with_profile(path, wavelength_nm, |h| path.profile(h))
}

/// [`rytov_variance`] with an arbitrary C_n² profile in place of the
/// Hufnagel-Valley one (the path's wind and `c0` are then unused).
pub fn rytov_variance_with_profile<F: Fn(f64) -> f64>(
    path: &TurbulencePath,
    wavelength_nm: f64,
    profile: F,
) -> Result<f64> {
    let k = wave_number(wavelength_nm);
    let integral = Integrator::default().integrate_with_breaks(
        |h| profile(h) * (h - path.origin_m).max(0.0).powf(5.0 / 6.0),
        &path.breaks(),
    )?;
    Ok(2.25 * k.powf(7.0 / 6.0) * path.sec_11_6() * integral.value)
}

/// Point-receiver scintillation index valid from weak to strong turbulence.
pub fn scintillation_index_point(rytov: f64) -> f64 {
    let s125 = rytov.powf(1.2); // sigma_R^(12/5)
    let a = 0.49 * rytov / (1.0 + 1.11 * s125).powf(7.0 / 6.0);
    let b = 0.51 * rytov / (1.0 + 0.69 * s125).powf(5.0 / 6.0);
    (a + b).exp_m1()
}

/// Scintillation index seen by a hard aperture of diameter `d_m` at the end
/// of a path of slant length `length_m`.
///
/// `8.7 k^(7/6) Δh^(5/6) sec^(11/6) Re ∫ C_n²(h) [(q + i x)^(5/6) - q^(5/6)] dh`
/// with `q = k D² / 16 L` and `x` the normalised path position.
pub fn scintillation_index_aperture(
    path: &TurbulencePath,
    wavelength_nm: f64,
    d_m: f64,
    length_m: f64,
) -> Result<f64> {
    let k = wave_number(wavelength_nm);
    let span = path.h_end_m - path.origin_m;
    let q = k * d_m * d_m / (16.0 * length_m);
    let q56 = q.powf(5.0 / 6.0);
    let integral = Integrator::default().integrate_with_breaks(
        |h| {
            let x = (h - path.origin_m) / span;
            path.profile(h) * q56 * aperture_kernel(x / q)
        },
        &path.breaks(),
    )?;
    let value = 8.7 * k.powf(7.0 / 6.0) * span.powf(5.0 / 6.0) * path.sec_11_6() * integral.value;
    Ok(value.max(0.0))
}

/// `Re (1 + iy)^(5/6) - 1`, free of cancellation when `y` is small.
fn aperture_kernel(y: f64) -> f64 {
    let theta = y.atan();
    let modulus = (5.0 / 12.0 * (y * y).ln_1p()).exp_m1();
    let half = (5.0 / 12.0 * theta).sin();
    modulus * (5.0 / 6.0 * theta).cos() - 2.0 * half * half
}
