//! End-to-end outage: link budgets, the closed-form CDF, Monte Carlo
//! estimation and power sweeps.

mod analytic;
mod budget;
mod mc;
mod sweep;

pub use analytic::{
    analytic_outage, end_to_end_cdf, hop_cdfs_ln, outage_from_budget, outage_series_options, AnalyticOutage, HopCdfs,
    SeriesDiagnostics,
};
pub use budget::{build_link_budget, LinkBudget};
pub use mc::{
    mc_outage, mc_outage_budget, mc_outage_stream, point_rng, trial_in_outage, McEstimate, DEFAULT_TRIALS, MIN_TRIALS,
    STARVED_HITS,
};
pub use sweep::{
    auto_power_grid, check_grid, power_for_outage, power_grid, sweep, OutageCurve, OutagePoint, SweepMode,
    SweepSettings,
};
