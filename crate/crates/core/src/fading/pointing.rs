//! Zero-boresight pointing errors: Rayleigh radial jitter on a Gaussian beam
//! captured by a circular aperture.

use rand::Rng;

use super::ew::EwParams;
use crate::error::Result;
use crate::numerics::special::erf;
use crate::numerics::Integrator;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointingParams {
    /// Beam width `w_z = θ z` at the receiver.
    pub beam_width_m: f64,
    pub equiv_beam_width_m: f64,
    /// Fraction of power collected at perfect alignment, `erf(y)²`.
    pub a0: f64,
    /// `w_eq / 2σ_s`; infinite without jitter.
    pub g: f64,
    pub sigma_s_m: f64,
    pub aperture_radius_m: f64,
    /// `sqrt(π/2) ϖ / w_z`.
    pub y: f64,
}

pub fn pointing_geometry(divergence_rad: f64, length_m: f64, aperture_radius_m: f64, sigma_s_m: f64) -> PointingParams {
    let w_z = divergence_rad * length_m;
    let y = (std::f64::consts::PI / 2.0).sqrt() * aperture_radius_m / w_z;
    let erf_y = erf(y);
    let w_eq2 = w_z * w_z * std::f64::consts::PI.sqrt() * erf_y / (2.0 * y * (-y * y).exp());
    let w_eq = w_eq2.sqrt();
    PointingParams {
        beam_width_m: w_z,
        equiv_beam_width_m: w_eq,
        a0: erf_y * erf_y,
        g: if sigma_s_m > 0.0 {
            w_eq / (2.0 * sigma_s_m)
        } else {
            f64::INFINITY
        },
        sigma_s_m,
        aperture_radius_m,
        y,
    }
}

impl PointingParams {
    /// `P[I^p <= x] = (x / A₀)^(g²)` on `(0, A₀]`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else if x >= self.a0 {
            1.0
        } else if self.g.is_infinite() {
            0.0
        } else {
            (x / self.a0).powf(self.g * self.g)
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x <= 0.0 || x > self.a0 || self.g.is_infinite() {
            return 0.0;
        }
        let g2 = self.g * self.g;
        g2 / self.a0 * (x / self.a0).powf(g2 - 1.0)
    }

    /// `A₀ exp(-2r²/w_eq²)` with `r ~ Rayleigh(σ_s)`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        // 1 - u keeps the log argument in (0, 1]
        let r2 = -2.0 * self.sigma_s_m * self.sigma_s_m * (1.0 - u).ln();
        self.a0 * (-2.0 * r2 / (self.equiv_beam_width_m * self.equiv_beam_width_m)).exp()
    }

    /// `E[I^p] = A₀ g² / (g² + 1)`.
    pub fn mean(&self) -> f64 {
        if self.g.is_infinite() {
            self.a0
        } else {
            let g2 = self.g * self.g;
            self.a0 * g2 / (g2 + 1.0)
        }
    }
}

pub fn pointing_sample<R: Rng + ?Sized>(p: &PointingParams, rng: &mut R) -> f64 {
    p.sample(rng)
}

/// SNR CDF of a link with EW fading and pointing errors,
/// `γ = γ̄ (I^l I^s I^p)²`, by integrating the conditional EW CDF over the
/// pointing law.
///
/// With `v = (I^p/A₀)^(g²)` uniform on (0, 1):
/// `F(γ) = ∫₀¹ F_EW(x₀ / (A₀ v^(1/g²))) dv`, `x₀ = sqrt(γ/γ̄) / I^l`.
pub fn ew_pointing_snr_cdf(
    gamma: f64,
    avg_snr: f64,
    path_gain: f64,
    ew: &EwParams,
    pointing: &PointingParams,
) -> Result<f64> {
    if gamma <= 0.0 {
        return Ok(0.0);
    }
    let x0 = (gamma / avg_snr).sqrt() / path_gain;
    ew_pointing_cdf_at(x0, ew, pointing)
}

/// `P[I^s I^p <= x0]`.
pub fn ew_pointing_cdf_at(x0: f64, ew: &EwParams, pointing: &PointingParams) -> Result<f64> {
    if x0 <= 0.0 {
        return Ok(0.0);
    }
    let base = x0 / pointing.a0;
    if pointing.g.is_infinite() {
        return Ok(ew.cdf(base));
    }
    let inv_g2 = 1.0 / (pointing.g * pointing.g);
    let integrand = |v: f64| {
        if v <= 0.0 {
            return 1.0;
        }
        ew.cdf(base * (-v.ln() * inv_g2).exp())
    };
    let r = Integrator::default().integrate_with_breaks(integrand, &[0.0, 1e-12, 1e-6, 1e-3, 0.05, 0.3, 1.0])?;
    Ok(r.value.clamp(0.0, 1.0))
}
