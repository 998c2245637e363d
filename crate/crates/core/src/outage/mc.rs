//! Monte Carlo estimate of the outage probability.
//!
//! Each trial draws the channel of every link and applies the system law
//! directly: `γ₀ = min(max_j γ_SH_j, max(γ_FSO, γ_RF))`, outage when
//! `γ₀ < γ_th`. Comparisons are made on log-SNR so the extreme
//! stratospheric loss of the default scenario stays representable.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::budget::{build_link_budget, LinkBudget};
use crate::error::{Error, Result};
use crate::scenario::ScenarioConfig;

/// Default trial count.
pub const DEFAULT_TRIALS: u64 = 1_000_000;
/// Fewest trials accepted by [`mc_outage`].
pub const MIN_TRIALS: u64 = 10_000;
/// Estimates backed by fewer outage events than this are flagged.
pub const STARVED_HITS: u64 = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub op: f64,
    /// 95% normal-approximation half-width, `1.96 sqrt(p̂(1-p̂)/n)`.
    pub halfwidth: f64,
    pub n_trials: u64,
    pub hits: u64,
    /// Fewer than [`STARVED_HITS`] outage events: the estimate is not to be
    /// trusted.
    pub starved: bool,
}

impl McEstimate {
    fn from_counts(hits: u64, n_trials: u64) -> Self {
        let n = n_trials as f64;
        let op = hits as f64 / n;
        Self {
            op,
            halfwidth: 1.96 * (op * (1.0 - op) / n).sqrt(),
            n_trials,
            hits,
            starved: hits < STARVED_HITS,
        }
    }

    /// Standard error `sqrt(p̂(1-p̂)/n)`.
    pub fn std_error(&self) -> f64 {
        self.halfwidth / 1.96
    }
}

/// RNG for power point `index` of a run seeded with `seed`: one ChaCha
/// stream per point, so results do not depend on scheduling.
pub fn point_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Whether one draw of the whole system is in outage.
pub fn trial_in_outage<R: rand::Rng + ?Sized>(budget: &LinkBudget, rng: &mut R) -> bool {
    let ln_th = budget.ln_threshold;
    // first hop: outage only if every HAPS is below threshold
    let ln_x_sh = budget.ln_x_sat_haps(ln_th);
    let mut first_ok = false;
    for _ in 0..budget.n_haps {
        let mut ln_i = budget.ew_sat_haps.sample(rng).ln();
        if let Some(p) = &budget.pointing {
            ln_i += p.sample(rng).ln();
        }
        first_ok |= ln_i >= ln_x_sh;
    }
    // second hop: draw both branches regardless so streams stay aligned
    // across link modes
    let ln_i_fso = budget.ew_haps_gs.sample(rng).ln();
    let ln_h_rf = budget.sr.sample(rng).ln();
    let fso_ok = budget.link_mode.uses_fso() && ln_i_fso >= budget.ln_x_haps_gs_fso(ln_th);
    let rf_ok = budget.link_mode.uses_rf() && ln_h_rf + budget.ln_avg_snr_haps_gs_rf >= ln_th;
    !(first_ok && (fso_ok || rf_ok))
}

/// Counts outage events over `n_trials` draws from `rng`.
pub fn mc_outage_budget<R: rand::Rng + ?Sized>(budget: &LinkBudget, n_trials: u64, rng: &mut R) -> McEstimate {
    let hits = (0..n_trials).filter(|_| trial_in_outage(budget, rng)).count() as u64;
    McEstimate::from_counts(hits, n_trials)
}

/// Monte Carlo outage probability of `scenario` at its configured power,
/// drawn from stream 0 of `seed`.
pub fn mc_outage(scenario: &ScenarioConfig, n_trials: u64, seed: u64) -> Result<McEstimate> {
    mc_outage_stream(scenario, n_trials, seed, 0)
}

/// As [`mc_outage`], drawing from stream `index` of `seed`.
pub fn mc_outage_stream(scenario: &ScenarioConfig, n_trials: u64, seed: u64, index: u64) -> Result<McEstimate> {
    check_trials(n_trials)?;
    let budget = build_link_budget(scenario)?;
    Ok(mc_outage_budget(&budget, n_trials, &mut point_rng(seed, index)))
}

pub(crate) fn check_trials(n_trials: u64) -> Result<()> {
    if n_trials < MIN_TRIALS {
        return Err(Error::invalid("n_trials", format!("must be at least {MIN_TRIALS}")));
    }
    Ok(())
}
