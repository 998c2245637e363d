//! Summation of slowly converging hypergeometric-type series.
//!
//! Both series the fading models need (the EW mean constant and the
//! generalized binomial expansion of `(1 - e^{-t})^alpha`) have the shape
//! `sum_k c_k w(k)` where `c_{k+1} = c_k (k + a) / (k + 1)` and `w` is a
//! smooth positive weight. Past `k > -a` the coefficients keep one sign and
//! extend to a smooth function of real `k` through gamma-function ratios, so
//! the tail beyond the term cap is summed with Euler-Maclaurin.

use super::quadrature::Integrator;
use super::special::ln_gamma_ratio;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// Stop once the estimated remainder falls below `rel_tol * |sum|`.
    pub rel_tol: f64,
    /// Absolute remainder accepted when the sum itself is tiny.
    pub abs_tol: f64,
    pub max_terms: usize,
    /// Sum the remainder past `max_terms` with Euler-Maclaurin instead of
    /// failing.
    pub accelerate_tail: bool,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-15,
            max_terms: 500,
            accelerate_tail: true,
        }
    }
}

/// A summed series together with its truncation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    /// Explicitly summed terms.
    pub terms: usize,
    /// Bound on the error left after truncation (and tail acceleration).
    pub bound: f64,
    pub tail_accelerated: bool,
}

/// Sums `sum_{k>=0} c_k w(k)` with `c_0 = 1`, `c_{k+1} = c_k (k + a)/(k + 1)`.
///
/// `weight` must be positive, smooth and non-increasing for real arguments
/// beyond `opts.max_terms - 2`.
pub fn ratio_series<W: Fn(f64) -> f64>(a: f64, weight: W, opts: SeriesOptions) -> Result<SeriesSum> {
    let mut coef = 1.0f64;
    let mut sum = 0.0f64;
    let mut abs_sum = 0.0f64;
    let mut k = 0usize;
    // past this index the coefficients no longer change sign
    let monotone_from = (-a).max(0.0).ceil() as usize + 1;

    while k < opts.max_terms {
        let w = weight(k as f64);
        let term = coef * w;
        sum += term;
        abs_sum += term.abs();
        let next_coef = coef * (k as f64 + a) / (k as f64 + 1.0);
        if next_coef == 0.0 {
            return Ok(SeriesSum {
                value: sum,
                terms: k + 1,
                bound: 0.0,
                tail_accelerated: false,
            });
        }
        if k >= monotone_from {
            let next = next_coef * weight(k as f64 + 1.0);
            let ratio = (next / term).abs();
            if ratio < 1.0 {
                let tail = next.abs() / (1.0 - ratio);
                if tail <= opts.rel_tol * sum.abs() || tail <= opts.abs_tol && sum.abs() < 1.0 {
                    return Ok(SeriesSum {
                        value: sum,
                        terms: k + 1,
                        bound: tail + roundoff(k + 1, abs_sum),
                        tail_accelerated: false,
                    });
                }
            }
        }
        coef = next_coef;
        k += 1;
    }

    // `coef` is now c_K for K = max_terms.
    let cap = k as f64;
    if !opts.accelerate_tail || cap + a <= 2.0 {
        let w = weight(cap);
        let term = coef * w;
        let ratio = ((cap + a) / (cap + 1.0) * weight(cap + 1.0) / w).abs();
        let bound = if ratio < 1.0 {
            term.abs() / (1.0 - ratio)
        } else {
            f64::INFINITY
        };
        return Err(Error::SeriesCap { terms: k, bound });
    }

    let ln_norm = ln_gamma_ratio(cap, a);
    let smooth = |x: f64| coef * (ln_gamma_ratio(x, a) - ln_norm).exp() * weight(x);
    // integrate over ln x: algebraically decaying tails become exponential
    let integral = Integrator::with_rel_tol(1e-12).integrate_to_infinity(
        |s| {
            let x = cap * s.exp();
            smooth(x) * x
        },
        0.0,
    )?;

    let f = |d: f64| smooth(cap + d);
    let (fm2, fm1, f0, fp1, fp2) = (f(-2.0), f(-1.0), f(0.0), f(1.0), f(2.0));
    let d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / 12.0;
    let d3 = (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / 2.0;
    let tail = integral.value + 0.5 * f0 - d1 / 12.0 + d3 / 720.0;
    let value = sum + tail;
    let bound = (d3 / 720.0).abs() + integral.abs_error + roundoff(k, abs_sum);
    if bound > opts.rel_tol * value.abs() && bound > opts.abs_tol {
        return Err(Error::SeriesCap { terms: k, bound });
    }
    Ok(SeriesSum {
        value,
        terms: k,
        bound,
        tail_accelerated: true,
    })
}

/// Rounding error of a left-to-right sum of `n` terms (random-walk
/// estimate; the worst case `n ε Σ|t|` is far too pessimistic here).
fn roundoff(n: usize, abs_sum: f64) -> f64 {
    (n as f64).sqrt() * f64::EPSILON * abs_sum
}

/// `(1 - e^{-t})^alpha` through its generalized binomial expansion
/// `sum_r C(alpha, r) (-1)^r e^{-r t}`.
pub fn binomial_exp_series(alpha: f64, t: f64, opts: SeriesOptions) -> Result<SeriesSum> {
    ratio_series(-alpha, |r| (-r * t).exp(), opts)
}
