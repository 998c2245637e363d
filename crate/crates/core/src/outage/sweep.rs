//! Outage curves over a transmit-power grid.

use rayon::prelude::*;

use super::analytic::{outage_from_budget, outage_series_options, SeriesDiagnostics};
use super::budget::{build_link_budget, LinkBudget};
use super::mc::{check_trials, mc_outage_budget, point_rng, McEstimate};
use crate::error::{Error, Result};
use crate::scenario::ScenarioConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepMode {
    Analytic,
    MonteCarlo,
    Both,
}

impl SweepMode {
    pub fn name(self) -> &'static str {
        match self {
            SweepMode::Analytic => "analytic",
            SweepMode::MonteCarlo => "mc",
            SweepMode::Both => "both",
        }
    }

    pub fn analytic(self) -> bool {
        self != SweepMode::MonteCarlo
    }

    pub fn monte_carlo(self) -> bool {
        self != SweepMode::Analytic
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutagePoint {
    pub tx_power_dbw: f64,
    pub analytic_op: Option<f64>,
    pub mc: Option<McEstimate>,
    pub diagnostics: Option<SeriesDiagnostics>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutageCurve {
    pub id: String,
    /// Scenario at the first grid power.
    pub scenario: ScenarioConfig,
    pub mode: SweepMode,
    pub seed: u64,
    pub n_trials: u64,
    pub points: Vec<OutagePoint>,
}

impl OutageCurve {
    pub fn powers(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.tx_power_dbw)
    }

    pub fn analytic(&self) -> Vec<f64> {
        self.points.iter().filter_map(|p| p.analytic_op).collect()
    }

    /// Largest series-route error bound over the curve.
    pub fn max_truncation_bound(&self) -> Option<f64> {
        self.points
            .iter()
            .filter_map(|p| p.diagnostics.map(|d| d.bound))
            .reduce(f64::max)
    }
}

/// Parameters of one sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings {
    pub mode: SweepMode,
    pub n_trials: u64,
    pub seed: u64,
}

impl Default for SweepSettings {
    fn default() -> Self {
        Self {
            mode: SweepMode::Analytic,
            n_trials: super::mc::DEFAULT_TRIALS,
            seed: 0,
        }
    }
}

/// Evaluates `scenario` at every power of `powers` (dBW, strictly
/// increasing). Point `i` draws its Monte Carlo samples from stream `i`.
pub fn sweep(id: &str, scenario: &ScenarioConfig, powers: &[f64], settings: SweepSettings) -> Result<OutageCurve> {
    check_grid(powers)?;
    if settings.mode.monte_carlo() {
        check_trials(settings.n_trials)?;
    }
    let base = build_link_budget(scenario)?;
    let points = powers
        .par_iter()
        .enumerate()
        .map(|(i, &p)| evaluate_point(&base.at_power(p), i as u64, settings))
        .collect::<Result<Vec<_>>>()?;
    Ok(OutageCurve {
        id: id.to_string(),
        scenario: scenario.at_power(powers[0]),
        mode: settings.mode,
        seed: settings.seed,
        n_trials: settings.n_trials,
        points,
    })
}

fn evaluate_point(budget: &LinkBudget, index: u64, settings: SweepSettings) -> Result<OutagePoint> {
    let (analytic_op, diagnostics) = if settings.mode.analytic() {
        let r = outage_from_budget(budget, outage_series_options())?;
        (Some(r.op), Some(r.diagnostics))
    } else {
        (None, None)
    };
    let mc = settings
        .mode
        .monte_carlo()
        .then(|| mc_outage_budget(budget, settings.n_trials, &mut point_rng(settings.seed, index)));
    Ok(OutagePoint {
        tx_power_dbw: budget.tx_power_sat_dbw,
        analytic_op,
        mc,
        diagnostics,
    })
}

pub fn check_grid(powers: &[f64]) -> Result<()> {
    if powers.is_empty() {
        return Err(Error::invalid("power", "grid is empty"));
    }
    if powers.iter().any(|p| !p.is_finite()) {
        return Err(Error::invalid("power", "grid values must be finite"));
    }
    if powers.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("power", "grid must be strictly increasing"));
    }
    Ok(())
}

/// `start, start + step, ...` up to `stop` inclusive (with a small tolerance
/// for accumulated rounding).
pub fn power_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(Error::invalid("power", "start, stop and step must be finite"));
    }
    if !(step > 0.0) {
        return Err(Error::invalid("power", "step must be positive"));
    }
    if stop < start {
        return Err(Error::invalid("power", "stop must not be below start"));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if n > 1_000_000 {
        return Err(Error::invalid("power", "grid has too many points"));
    }
    Ok((0..n).map(|i| start + i as f64 * step).collect())
}

/// Transmit power (dBW) at which the analytic outage probability of
/// `scenario` equals `target`, by bisection to 1e-6 dB.
pub fn power_for_outage(scenario: &ScenarioConfig, target: f64) -> Result<f64> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::invalid("target", "outage target must lie in (0, 1)"));
    }
    let base = build_link_budget(scenario)?;
    let op = |p: f64| -> Result<f64> { Ok(outage_from_budget(&base.at_power(p), outage_series_options())?.op) };

    // bracket around the configured power, widening geometrically
    let centre = scenario.tx_power_sat_dbw;
    let mut width = 100.0;
    let (mut lo, mut hi) = loop {
        let (lo, hi) = (centre - width, centre + width);
        if op(lo)? > target && op(hi)? < target {
            break (lo, hi);
        }
        width *= 2.0;
        if width > 6400.0 {
            return Err(Error::ModelDomain(format!(
                "outage probability {target} not reached within ±{} dB of {centre} dBW",
                width / 2.0
            )));
        }
    };
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if op(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// A grid of `n_points` powers spanning outage probabilities from `op_high`
/// down to `op_low` across all `scenarios`, rounded outward to whole dB.
pub fn auto_power_grid(scenarios: &[ScenarioConfig], op_high: f64, op_low: f64, n_points: usize) -> Result<Vec<f64>> {
    if scenarios.is_empty() || n_points < 2 {
        return Err(Error::invalid("power", "need at least one scenario and two points"));
    }
    let mut start = f64::INFINITY;
    let mut stop = f64::NEG_INFINITY;
    for s in scenarios {
        start = start.min(power_for_outage(s, op_high)?);
        stop = stop.max(power_for_outage(s, op_low)?);
    }
    let (start, stop) = (start.floor(), stop.ceil());
    let step = (stop - start) / (n_points - 1) as f64;
    Ok((0..n_points).map(|i| start + i as f64 * step).collect())
}
