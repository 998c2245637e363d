//! Closed-form end-to-end CDF and outage probability.
//!
//! `F₀(γ) = 1 - (1 - F_SH(γ)^N)(1 - F_FSO(γ) F_RF(γ))`, evaluated as
//! `a + b - ab` so small outage probabilities keep full relative precision.

use super::budget::{build_link_budget, LinkBudget};
use crate::error::Result;
use crate::fading::{ew_pointing_cdf_at, EwParams};
use crate::numerics::series::binomial_exp_series;
use crate::numerics::SeriesOptions;
use crate::scenario::{LinkMode, ScenarioConfig};

/// Per-hop CDF values at one SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopCdfs {
    /// One satellite-HAPS link.
    pub sat_haps: f64,
    /// Best of `N` satellite-HAPS links.
    pub selection: f64,
    /// Optical branch; 1 when the branch is disabled.
    pub fso: f64,
    /// Radio branch; 1 when the branch is disabled.
    pub rf: f64,
}

impl HopCdfs {
    pub fn end_to_end(&self) -> f64 {
        compose(self.selection, self.fso * self.rf)
    }
}

fn compose(first: f64, second: f64) -> f64 {
    (first + second - first * second).clamp(0.0, 1.0)
}

fn ew_cdf_ln(p: &EwParams, ln_x: f64) -> f64 {
    p.cdf(ln_x.exp())
}

/// Hop CDFs at `ln γ`.
pub fn hop_cdfs_ln(ln_gamma: f64, budget: &LinkBudget, n_haps: u32) -> Result<HopCdfs> {
    let ln_x = budget.ln_x_sat_haps(ln_gamma);
    let sat_haps = match &budget.pointing {
        Some(p) => ew_pointing_cdf_at(ln_x.exp(), &budget.ew_sat_haps, p)?,
        None => ew_cdf_ln(&budget.ew_sat_haps, ln_x),
    };
    let fso = if budget.link_mode.uses_fso() {
        ew_cdf_ln(&budget.ew_haps_gs, budget.ln_x_haps_gs_fso(ln_gamma))
    } else {
        1.0
    };
    let rf = if budget.link_mode.uses_rf() {
        budget.sr.cdf_normalized(budget.ln_z_haps_gs_rf(ln_gamma).exp())
    } else {
        1.0
    };
    Ok(HopCdfs {
        sat_haps,
        selection: sat_haps.powi(n_haps as i32),
        fso,
        rf,
    })
}

/// End-to-end SNR CDF with `n_haps` candidate relays.
pub fn end_to_end_cdf(gamma: f64, budget: &LinkBudget, n_haps: u32) -> Result<f64> {
    if gamma <= 0.0 {
        return Ok(0.0);
    }
    Ok(hop_cdfs_ln(gamma.ln(), budget, n_haps)?.end_to_end())
}

/// How the series route to the outage probability converged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesDiagnostics {
    /// Outage probability from the binomial-series expansion of the EW
    /// factors.
    pub series_op: f64,
    /// Most terms summed by any expanded factor.
    pub terms: usize,
    /// Bound on `|series_op - exact|` from truncation and roundoff.
    pub bound: f64,
    pub tail_accelerated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticOutage {
    pub op: f64,
    pub hops: HopCdfs,
    pub diagnostics: SeriesDiagnostics,
}

/// Options for the series route: relative term size 1e-12, 500-term cap,
/// absolute error 1e-13 accepted for the probability itself.
pub fn outage_series_options() -> SeriesOptions {
    SeriesOptions {
        rel_tol: 1e-12,
        abs_tol: 1e-13,
        max_terms: 500,
        accelerate_tail: true,
    }
}

/// Outage probability `F₀(γ_th)` of the scenario at its configured power.
pub fn analytic_outage(scenario: &ScenarioConfig) -> Result<AnalyticOutage> {
    outage_from_budget(&build_link_budget(scenario)?, outage_series_options())
}

/// Outage probability for a prepared link budget.
///
/// The returned `op` is the direct closed form. The EW factors are also
/// expanded as `sum_ρ C(α, ρ) (-1)^ρ exp(-ρ x^β)` and recombined; that value
/// and its error bound are reported in the diagnostics.
pub fn outage_from_budget(budget: &LinkBudget, opts: SeriesOptions) -> Result<AnalyticOutage> {
    let n = budget.n_haps;
    let ln_th = budget.ln_threshold;
    let hops = hop_cdfs_ln(ln_th, budget, n)?;
    let op = hops.end_to_end();

    let expand = |p: &EwParams, ln_x: f64| binomial_exp_series(p.alpha, (p.beta * (ln_x - p.eta.ln())).exp(), opts);

    let mut terms = 0;
    let mut accelerated = false;
    let (first, first_bound) = match &budget.pointing {
        // the pointing-averaged factor has no binomial expansion here
        Some(_) => (hops.selection, 0.0),
        None => {
            let s = expand(&budget.ew_sat_haps, budget.ln_x_sat_haps(ln_th))?;
            terms = terms.max(s.terms);
            accelerated |= s.tail_accelerated;
            let a = s.value.clamp(0.0, 1.0);
            let bound = n as f64 * a.powi(n as i32 - 1) * s.bound;
            (a.powi(n as i32), bound)
        }
    };
    let (fso, fso_bound) = if budget.link_mode == LinkMode::RfOnly {
        (1.0, 0.0)
    } else {
        let s = expand(&budget.ew_haps_gs, budget.ln_x_haps_gs_fso(ln_th))?;
        terms = terms.max(s.terms);
        accelerated |= s.tail_accelerated;
        (s.value.clamp(0.0, 1.0), s.bound)
    };
    let second = fso * hops.rf;
    let series_op = compose(first, second);
    let bound = (1.0 - second) * first_bound + (1.0 - first) * hops.rf * fso_bound + 4.0 * f64::EPSILON;

    Ok(AnalyticOutage {
        op,
        hops,
        diagnostics: SeriesDiagnostics {
            series_op,
            terms,
            bound,
            tail_accelerated: accelerated,
        },
    })
}
