//! Shadowed-Rician fading of the radio branch (integer Nakagami `m`).
//!
//! The closed forms below use the raw channel parameters, under which the
//! channel power `|f|²` has mean `2b + Ω`. [`SrParams::sample`] returns the
//! unit-mean power `|f|² / (2b + Ω)`; feed the closed forms
//! `avg_snr / (2b + Ω)` ([`SrParams::formula_avg_snr`]) to describe the same
//! link.

use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::error::{Error, Result};
use crate::numerics::special::{factorial, lower_regularized_gamma_int, pochhammer};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SrParams {
    pub m: u32,
    pub b: f64,
    pub omega: f64,
    pub mu: f64,
    pub delta: f64,
    pub nu: f64,
}

impl SrParams {
    pub fn new(m: u32, b: f64, omega: f64) -> Result<Self> {
        if m < 1 {
            return Err(Error::invalid("shadowing_m", "must be a positive integer"));
        }
        if !(b > 0.0 && omega > 0.0) {
            return Err(Error::invalid("shadowing", "b and omega must be positive"));
        }
        let mf = m as f64;
        let two_bm = 2.0 * b * mf;
        Ok(Self {
            m,
            b,
            omega,
            mu: (two_bm / (two_bm + omega)).powi(m as i32) / (2.0 * b),
            delta: omega / (2.0 * b * (two_bm + omega)),
            nu: 1.0 / (2.0 * b),
        })
    }

    /// Mean of the raw channel power, `2b + Ω`.
    pub fn mean_power(&self) -> f64 {
        2.0 * self.b + self.omega
    }

    /// Average SNR to use in the closed forms for a link whose unit-mean
    /// channel has average SNR `avg_snr`.
    pub fn formula_avg_snr(&self, avg_snr: f64) -> f64 {
        avg_snr / self.mean_power()
    }

    /// Mixture weights `w_l`: the CDF is `sum_l w_l P(l + 1, ϑγ)`.
    fn weights(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        let rate = self.nu - self.delta;
        (0..self.m as usize).map(move |l| {
            let c = pochhammer(1.0 - self.m as f64, l) * (-self.delta).powi(l as i32);
            (l, self.mu * c / (factorial(l) * rate.powi(l as i32 + 1)))
        })
    }

    /// CDF of `z = γ / γ̄`.
    pub fn cdf_normalized(&self, z: f64) -> f64 {
        if z <= 0.0 {
            return 0.0;
        }
        let x = (self.nu - self.delta) * z;
        self.weights()
            .map(|(l, w)| w * lower_regularized_gamma_int(l + 1, x))
            .sum::<f64>()
            .min(1.0)
    }

    /// Density of `z = γ / γ̄`.
    pub fn pdf_normalized(&self, z: f64) -> f64 {
        if z < 0.0 {
            return 0.0;
        }
        let rate = self.nu - self.delta;
        let poly: f64 = (0..self.m as usize)
            .map(|l| {
                let f = factorial(l);
                pochhammer(1.0 - self.m as f64, l) * (-self.delta).powi(l as i32) * z.powi(l as i32) / (f * f)
            })
            .sum();
        self.mu * poly * (-rate * z).exp()
    }

    /// Unit-mean channel power `|f|² / (2b + Ω)`: Nakagami-m line of sight
    /// plus circular Gaussian scatter of power `2b`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let los = Gamma::new(self.m as f64, self.omega / self.m as f64).expect("valid shape and scale");
        let amp = los.sample(rng).sqrt();
        let s = self.b.sqrt();
        let n1: f64 = StandardNormal.sample(rng);
        let n2: f64 = StandardNormal.sample(rng);
        let x = amp + s * n1;
        let y = s * n2;
        (x * x + y * y) / self.mean_power()
    }
}

pub fn sr_snr_pdf(gamma: f64, p: &SrParams, avg_snr: f64) -> f64 {
    p.pdf_normalized(gamma / avg_snr) / avg_snr
}

pub fn sr_snr_cdf(gamma: f64, p: &SrParams, avg_snr: f64) -> f64 {
    p.cdf_normalized(gamma / avg_snr)
}

/// The finite double sum
/// `1 - sum_l sum_q μ (1-m)_l (-δ)^l γ^q e^(-ϑγ) / (q! ϑ^(l-q+1) γ̄^(l+1) l!)`.
/// Suffers cancellation where the CDF is small; kept as a cross-check of
/// [`sr_snr_cdf`].
pub fn sr_snr_cdf_double_sum(gamma: f64, p: &SrParams, avg_snr: f64) -> f64 {
    let theta = (p.nu - p.delta) / avg_snr;
    let mut s = 0.0;
    for l in 0..p.m as usize {
        let c = p.mu * pochhammer(1.0 - p.m as f64, l) * (-p.delta).powi(l as i32)
            / (avg_snr.powi(l as i32 + 1) * factorial(l));
        for q in 0..=l {
            s += c * gamma.powi(q as i32) * (-theta * gamma).exp() / (factorial(q) * theta.powi((l - q) as i32 + 1));
        }
    }
    1.0 - s
}

pub fn sr_sample<R: Rng + ?Sized>(p: &SrParams, rng: &mut R) -> f64 {
    p.sample(rng)
}
