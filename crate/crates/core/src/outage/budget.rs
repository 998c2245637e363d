use crate::atmosphere::{attenuation_breakdown, turbulence_stats, AttenuationBreakdown, LinkId, TurbulenceStats};
use crate::error::Result;
use crate::fading::{ew_fit, pointing_geometry, EwParams, PointingParams, SrParams};
use crate::scenario::{LinkMode, ScenarioConfig};

const LN_10_OVER_10: f64 = std::f64::consts::LN_10 / 10.0;

/// Everything the outage computations need for one scenario and power
/// point. Average SNRs are held as natural logs: the stratospheric loss of
/// long slant paths pushes useful transmit powers far beyond what linear
/// doubles represent comfortably.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkBudget {
    pub tx_power_sat_dbw: f64,
    pub tx_power_haps_dbw: f64,
    pub n_haps: u32,
    pub link_mode: LinkMode,
    /// `ln(ζ P_S / N₀)` at each HAPS.
    pub ln_avg_snr_sat_haps: f64,
    /// `ln(ζ P_H / N₀)` at the ground station.
    pub ln_avg_snr_haps_gs_fso: f64,
    /// `ln(P_H 𝓕 / N₀)` at the ground station.
    pub ln_avg_snr_haps_gs_rf: f64,
    /// `ln γ_th`.
    pub ln_threshold: f64,
    pub attenuation: AttenuationBreakdown,
    pub turbulence_sat_haps: TurbulenceStats,
    pub turbulence_haps_gs: TurbulenceStats,
    pub ew_sat_haps: EwParams,
    pub ew_haps_gs: EwParams,
    pub sr: SrParams,
    /// Present when pointing errors are enabled on the satellite-HAPS hop.
    pub pointing: Option<PointingParams>,
}

impl LinkBudget {
    pub fn avg_snr_sat_haps(&self) -> f64 {
        self.ln_avg_snr_sat_haps.exp()
    }

    pub fn avg_snr_haps_gs_fso(&self) -> f64 {
        self.ln_avg_snr_haps_gs_fso.exp()
    }

    pub fn avg_snr_haps_gs_rf(&self) -> f64 {
        self.ln_avg_snr_haps_gs_rf.exp()
    }

    pub fn threshold(&self) -> f64 {
        self.ln_threshold.exp()
    }

    /// Stratospheric transmittance `I^l` of the first hop.
    pub fn stratospheric_gain(&self) -> f64 {
        self.attenuation.stratospheric()
    }

    /// Atmospheric transmittance `I^a` of the second optical hop.
    pub fn fso_gain(&self) -> f64 {
        self.attenuation.total_fso_gain()
    }

    /// Same budget at a different transmit power (HAPS offset preserved).
    pub fn at_power(&self, power_dbw: f64) -> Self {
        let ds = (power_dbw - self.tx_power_sat_dbw) * LN_10_OVER_10;
        let offset = self.tx_power_haps_dbw - self.tx_power_sat_dbw;
        let dh = (power_dbw + offset - self.tx_power_haps_dbw) * LN_10_OVER_10;
        Self {
            tx_power_sat_dbw: power_dbw,
            tx_power_haps_dbw: power_dbw + offset,
            ln_avg_snr_sat_haps: self.ln_avg_snr_sat_haps + ds,
            ln_avg_snr_haps_gs_fso: self.ln_avg_snr_haps_gs_fso + dh,
            ln_avg_snr_haps_gs_rf: self.ln_avg_snr_haps_gs_rf + dh,
            ..self.clone()
        }
    }

    /// `ln x` such that the first-hop outage event of one HAPS is `I^s I^p <= x`.
    pub(crate) fn ln_x_sat_haps(&self, ln_gamma: f64) -> f64 {
        0.5 * (ln_gamma - self.ln_avg_snr_sat_haps) + self.attenuation.stratospheric_depth
    }

    /// `ln x` such that the optical second-hop outage event is `I <= x`.
    pub(crate) fn ln_x_haps_gs_fso(&self, ln_gamma: f64) -> f64 {
        0.5 * (ln_gamma - self.ln_avg_snr_haps_gs_fso) + self.attenuation.haps_gs_fso_depth()
    }

    /// `ln z` such that the radio outage event is `|f|²/(2b+Ω) <= z / (2b+Ω)`
    /// in the raw-parameter closed form.
    pub(crate) fn ln_z_haps_gs_rf(&self, ln_gamma: f64) -> f64 {
        ln_gamma - self.ln_avg_snr_haps_gs_rf + self.sr.mean_power().ln()
    }
}

/// Resolves every deterministic factor and fading fit of `scenario` at its
/// configured transmit powers.
pub fn build_link_budget(scenario: &ScenarioConfig) -> Result<LinkBudget> {
    scenario.validate()?;
    let attenuation = attenuation_breakdown(scenario)?;
    let turbulence_sat_haps = turbulence_stats(scenario, LinkId::SatHaps)?;
    let turbulence_haps_gs = turbulence_stats(scenario, LinkId::HapsGs)?;
    let ew_sat_haps = ew_fit(turbulence_sat_haps.scintillation_index)?;
    let ew_haps_gs = ew_fit(turbulence_haps_gs.scintillation_index)?;
    let sh = &scenario.shadowing;
    let sr = SrParams::new(sh.m, sh.b, sh.omega)?;
    let g = &scenario.geometry;
    let pointing = scenario.pointing_errors_enabled.then(|| {
        pointing_geometry(
            g.beam_divergence_rad,
            g.sat_haps_range_m(),
            g.receiver_aperture_diameter_m / 2.0,
            g.jitter_stddev_m,
        )
    });

    let r = &scenario.radio;
    let ln_zeta = r.oe_conversion.ln();
    let ln_ps = scenario.tx_power_sat_dbw * LN_10_OVER_10;
    let ln_ph = scenario.tx_power_haps_dbw * LN_10_OVER_10;
    let ln_n_h = attenuation.noise_sat_haps_w.ln();
    let ln_n_g = attenuation.noise_haps_gs_w.ln();
    Ok(LinkBudget {
        tx_power_sat_dbw: scenario.tx_power_sat_dbw,
        tx_power_haps_dbw: scenario.tx_power_haps_dbw,
        n_haps: scenario.n_haps,
        link_mode: scenario.link_mode,
        ln_avg_snr_sat_haps: ln_zeta + ln_ps - ln_n_h,
        ln_avg_snr_haps_gs_fso: ln_zeta + ln_ph - ln_n_g,
        ln_avg_snr_haps_gs_rf: ln_ph + attenuation.rf_path_loss_db * LN_10_OVER_10 - ln_n_g,
        ln_threshold: r.snr_threshold_db * LN_10_OVER_10,
        attenuation,
        turbulence_sat_haps,
        turbulence_haps_gs,
        ew_sat_haps,
        ew_haps_gs,
        sr,
        pointing,
    })
}
