//! Exponentiated Weibull irradiance fading.

use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::special::gamma;
use crate::numerics::series::ratio_series;
use crate::numerics::{SeriesOptions, SeriesSum};

/// `sum_k (-1)^k Γ(α) / (k! (k+1)^(1+n/β) Γ(α-k))`; `n = 1` is the mean
/// constant `g₁`.
fn moment_series(alpha: f64, beta: f64, n: f64, opts: SeriesOptions) -> Result<SeriesSum> {
    // (-1)^k Γ(α)/(k! Γ(α-k)) = (1-α)_k / k!: ratio (k + 1 - α)/(k + 1)
    let s = 1.0 + n / beta;
    ratio_series(1.0 - alpha, |k| (k + 1.0).powf(-s), opts)
}

/// The EW mean constant `g₁(α, β)`.
pub fn g1_series(alpha: f64, beta: f64) -> Result<SeriesSum> {
    g1_series_with(alpha, beta, SeriesOptions::default())
}

pub fn g1_series_with(alpha: f64, beta: f64, opts: SeriesOptions) -> Result<SeriesSum> {
    moment_series(alpha, beta, 1.0, opts)
}

/// Exponentiated Weibull parameters `(α, β, η)` and the scintillation index
/// they were fitted to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EwParams {
    pub alpha: f64,
    pub beta: f64,
    pub eta: f64,
    pub sigma_i2: f64,
}

/// Fits `(α, β, η)` to a scintillation index, with η chosen so that
/// `E[I] = 1`.
///
/// Fractional powers of σ are powers of the amplitude: `σ^(2/3)` is
/// `(σ²)^(1/3)`.
pub fn ew_fit(sigma_i2: f64) -> Result<EwParams> {
    if !(sigma_i2 > 0.0 && sigma_i2.is_finite()) {
        return Err(Error::FitDomain(sigma_i2, "scintillation index must be positive".into()));
    }
    let gamma_arg = 2.487 * sigma_i2.powf(1.0 / 6.0) - 0.104;
    if gamma_arg <= 0.0 {
        return Err(Error::FitDomain(
            sigma_i2,
            format!("gamma argument {gamma_arg} is not positive"),
        ));
    }
    let alpha = 7.220 * sigma_i2.powf(1.0 / 3.0) / gamma(gamma_arg);
    let beta = 1.012 * (alpha * sigma_i2).powf(-13.0 / 25.0) + 0.142;
    let g1 = g1_series(alpha, beta)?.value;
    let eta = 1.0 / (alpha * gamma(1.0 + 1.0 / beta) * g1);
    if !(alpha > 0.0 && beta > 0.0 && eta > 0.0 && eta.is_finite()) {
        return Err(Error::FitDomain(
            sigma_i2,
            format!("fit produced alpha={alpha}, beta={beta}, eta={eta}"),
        ));
    }
    Ok(EwParams {
        alpha,
        beta,
        eta,
        sigma_i2,
    })
}

impl EwParams {
    pub fn new(alpha: f64, beta: f64, eta: f64) -> Self {
        Self {
            alpha,
            beta,
            eta,
            sigma_i2: f64::NAN,
        }
    }

    /// `(1 - exp(-(x/η)^β))^α`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let t = (x / self.eta).powf(self.beta);
        (self.alpha * (-(-t).exp_m1()).ln()).exp()
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let z = x / self.eta;
        let t = z.powf(self.beta);
        let base = -(-t).exp_m1();
        self.alpha * self.beta / self.eta * z.powf(self.beta - 1.0) * (-t).exp() * base.powf(self.alpha - 1.0)
    }

    /// Inverse-CDF draw `η (-ln(1 - u^(1/α)))^(1/β)`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        // open interval keeps every draw strictly positive
        let u: f64 = rng.sample(rand::distr::Open01);
        self.quantile(u)
    }

    pub fn quantile(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return f64::INFINITY;
        }
        let v = (u.ln() / self.alpha).exp();
        let t = if v < 0.5 {
            -(-v).ln_1p()
        } else {
            // 1 - u^(1/α) without cancellation for u near 1
            -(-(u.ln() / self.alpha).exp_m1()).ln()
        };
        self.eta * t.powf(1.0 / self.beta)
    }

    /// `E[I^n] = α η^n Γ(1 + n/β) g_n(α, β)`.
    pub fn moment(&self, n: f64) -> Result<f64> {
        let g = moment_series(self.alpha, self.beta, n, SeriesOptions::default())?.value;
        Ok(self.alpha * self.eta.powf(n) * gamma(1.0 + n / self.beta) * g)
    }

    /// CDF of `γ = avg_snr (path_gain I)²`.
    pub fn snr_cdf(&self, gamma: f64, avg_snr: f64, path_gain: f64) -> f64 {
        ew_snr_cdf(gamma, avg_snr, path_gain, self)
    }
}

pub fn ew_cdf(x: f64, p: &EwParams) -> f64 {
    p.cdf(x)
}

pub fn ew_pdf(x: f64, p: &EwParams) -> f64 {
    p.pdf(x)
}

pub fn ew_sample<R: Rng + ?Sized>(p: &EwParams, rng: &mut R) -> f64 {
    p.sample(rng)
}

/// Single-link SNR CDF for `γ = γ̄ (I^l I)²`.
pub fn ew_snr_cdf(gamma: f64, avg_snr: f64, path_gain: f64, p: &EwParams) -> f64 {
    if gamma <= 0.0 {
        return 0.0;
    }
    p.cdf((gamma / avg_snr).sqrt() / path_gain)
}

/// One first-hop branch: average SNR, deterministic path gain and fading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EwLink {
    pub avg_snr: f64,
    pub path_gain: f64,
    pub params: EwParams,
}

/// CDF of the best of independent links: the product of the per-link CDFs.
pub fn selection_cdf(gamma: f64, links: &[EwLink]) -> f64 {
    links
        .iter()
        .map(|l| ew_snr_cdf(gamma, l.avg_snr, l.path_gain, &l.params))
        .product()
}
