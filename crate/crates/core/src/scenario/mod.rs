//! Scenario configuration: geometry, radio and optical parameters, weather,
//! shadowing, and the preset tables.
//!
//! Configuration values keep the units they are quoted in (dB, dBW, degrees,
//! km⁻¹, nm); conversion to SI and linear power happens in [`crate::atmosphere`]
//! and [`crate::outage`].

mod file;
mod presets;

pub use file::{apply_overrides, load_scenario, serialize_scenario, ScenarioOverrides};
pub use presets::{
    figure_preset, figure_presets, preset_tables, CloudRow, CurveVariant, FigurePreset, FogRow,
    PresetCatalog, PresetEntry, RainRow, ShadowingRow, VolcanicRow,
};

use crate::error::{Error, Result};

/// Length of a flat-slab path between two altitudes at the given zenith
/// angle.
pub fn slant_range(h_top_m: f64, h_bottom_m: f64, zenith_deg: f64) -> Result<f64> {
    if !(0.0..90.0).contains(&zenith_deg) {
        return Err(Error::InvalidGeometry(format!(
            "zenith angle {zenith_deg} deg outside [0, 90)"
        )));
    }
    if h_top_m <= h_bottom_m {
        return Err(Error::InvalidGeometry(format!(
            "top altitude {h_top_m} m not above bottom altitude {h_bottom_m} m"
        )));
    }
    Ok((h_top_m - h_bottom_m) / zenith_deg.to_radians().cos())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometryConfig {
    pub satellite_altitude_m: f64,
    pub haps_altitude_m: f64,
    /// Ground station height above mean sea level.
    pub gs_elevation_m: f64,
    pub zenith_sat_haps_deg: f64,
    pub zenith_haps_gs_deg: f64,
    /// Elevation of the HAPS seen from the ground station; `90 - zenith_haps_gs_deg`.
    pub elevation_gs_deg: f64,
    pub receiver_aperture_diameter_m: f64,
    pub beam_divergence_rad: f64,
    pub jitter_stddev_m: f64,
    /// Only zero boresight is modelled.
    pub boresight_m: f64,
}

impl GeometryConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.gs_elevation_m >= 0.0) {
            return Err(Error::invalid("gs_elevation_m", "must be >= 0"));
        }
        if !(self.haps_altitude_m > self.gs_elevation_m) {
            return Err(Error::invalid("haps_altitude_m", "must exceed gs_elevation_m"));
        }
        if !(self.satellite_altitude_m > self.haps_altitude_m) {
            return Err(Error::invalid("satellite_altitude_m", "must exceed haps_altitude_m"));
        }
        for (name, z) in [
            ("zenith_sat_haps_deg", self.zenith_sat_haps_deg),
            ("zenith_haps_gs_deg", self.zenith_haps_gs_deg),
        ] {
            if !(0.0..90.0).contains(&z) {
                return Err(Error::invalid(name, "must lie in [0, 90) degrees"));
            }
        }
        if (self.elevation_gs_deg - (90.0 - self.zenith_haps_gs_deg)).abs() > 1e-9 {
            return Err(Error::invalid(
                "elevation_gs_deg",
                format!(
                    "{} inconsistent with zenith_haps_gs_deg {} (expected {})",
                    self.elevation_gs_deg,
                    self.zenith_haps_gs_deg,
                    90.0 - self.zenith_haps_gs_deg
                ),
            ));
        }
        positive("receiver_aperture_diameter_m", self.receiver_aperture_diameter_m)?;
        positive("beam_divergence_rad", self.beam_divergence_rad)?;
        if !(self.jitter_stddev_m >= 0.0) {
            return Err(Error::invalid("jitter_stddev_m", "must be >= 0"));
        }
        if self.boresight_m != 0.0 {
            return Err(Error::invalid("boresight_m", "only zero boresight is supported"));
        }
        Ok(())
    }

    pub fn sat_haps_range_m(&self) -> f64 {
        (self.satellite_altitude_m - self.haps_altitude_m) / self.zenith_sat_haps_deg.to_radians().cos()
    }

    pub fn haps_gs_range_m(&self) -> f64 {
        (self.haps_altitude_m - self.gs_elevation_m) / self.zenith_haps_gs_deg.to_radians().cos()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadioConfig {
    pub fso_wavelength_nm: f64,
    pub rf_frequency_ghz: f64,
    pub tx_gain_db: f64,
    pub rx_gain_db: f64,
    pub oxygen_atten_db_per_km: f64,
    pub polarization_tilt_deg: f64,
    /// Optical-to-electrical conversion coefficient.
    pub oe_conversion: f64,
    pub noise_figure_db: f64,
    pub bandwidth_hz: f64,
    pub temperature_sat_haps_c: f64,
    pub temperature_haps_gs_c: f64,
    pub snr_threshold_db: f64,
}

impl RadioConfig {
    pub fn validate(&self) -> Result<()> {
        positive("fso_wavelength_nm", self.fso_wavelength_nm)?;
        positive("rf_frequency_ghz", self.rf_frequency_ghz)?;
        positive("tx_gain_db", self.tx_gain_db)?;
        positive("rx_gain_db", self.rx_gain_db)?;
        positive("noise_figure_db", self.noise_figure_db)?;
        positive("bandwidth_hz", self.bandwidth_hz)?;
        if !(self.oxygen_atten_db_per_km >= 0.0) {
            return Err(Error::invalid("oxygen_atten_db_per_km", "must be >= 0"));
        }
        if !(self.oe_conversion > 0.0 && self.oe_conversion <= 1.0) {
            return Err(Error::invalid("oe_conversion", "must lie in (0, 1]"));
        }
        for (name, t) in [
            ("temperature_sat_haps_c", self.temperature_sat_haps_c),
            ("temperature_haps_gs_c", self.temperature_haps_gs_c),
        ] {
            if !(t > -273.15) {
                return Err(Error::invalid(name, "must be above absolute zero"));
            }
        }
        if !self.snr_threshold_db.is_finite() {
            return Err(Error::invalid("snr_threshold_db", "must be finite"));
        }
        if !self.polarization_tilt_deg.is_finite() {
            return Err(Error::invalid("polarization_tilt_deg", "must be finite"));
        }
        Ok(())
    }
}

/// Stratospheric aerosol level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VolcanicLevel {
    Extreme,
    High,
    Moderate,
    Background,
    /// The coefficient used for the simulation parameter set (2.15e-1 km⁻¹),
    /// kept distinct from the extreme-volcanic table row.
    Reference,
    Custom(f64),
}

impl VolcanicLevel {
    pub const NAMED: [VolcanicLevel; 5] = [
        VolcanicLevel::Extreme,
        VolcanicLevel::High,
        VolcanicLevel::Moderate,
        VolcanicLevel::Background,
        VolcanicLevel::Reference,
    ];

    pub fn coeff_per_km(self) -> f64 {
        match self {
            VolcanicLevel::Extreme => 2e-1,
            VolcanicLevel::High => 5e-2,
            VolcanicLevel::Moderate => 8e-3,
            VolcanicLevel::Background => 1e-4,
            VolcanicLevel::Reference => 2.15e-1,
            VolcanicLevel::Custom(psi) => psi,
        }
    }

    pub fn name(self) -> Option<&'static str> {
        match self {
            VolcanicLevel::Extreme => Some("extreme"),
            VolcanicLevel::High => Some("high"),
            VolcanicLevel::Moderate => Some("moderate"),
            VolcanicLevel::Background => Some("background"),
            VolcanicLevel::Reference => Some("table5-default"),
            VolcanicLevel::Custom(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FogLevel {
    Dense,
    Thick,
    Moderate,
    Light,
    Thin,
}

impl FogLevel {
    pub const ALL: [FogLevel; 5] = [
        FogLevel::Dense,
        FogLevel::Thick,
        FogLevel::Moderate,
        FogLevel::Light,
        FogLevel::Thin,
    ];

    pub fn visibility_km(self) -> f64 {
        match self {
            FogLevel::Dense => 0.05,
            FogLevel::Thick => 0.20,
            FogLevel::Moderate => 0.50,
            FogLevel::Light => 0.77,
            FogLevel::Thin => 1.90,
        }
    }

    /// Attenuation coefficient as printed in the fog table at 1550 nm.
    pub fn printed_attenuation_db_per_km(self) -> f64 {
        match self {
            FogLevel::Dense => 339.62,
            FogLevel::Thick => 84.90,
            FogLevel::Moderate => 33.96,
            FogLevel::Light => 16.67,
            FogLevel::Thin => 4.59,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FogLevel::Dense => "dense",
            FogLevel::Thick => "thick",
            FogLevel::Moderate => "moderate",
            FogLevel::Light => "light",
            FogLevel::Thin => "thin",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Fog {
    None,
    Level(FogLevel),
    /// Visibility override in km.
    Visibility(f64),
}

impl Fog {
    pub fn visibility_km(self) -> Option<f64> {
        match self {
            Fog::None => None,
            Fog::Level(l) => Some(l.visibility_km()),
            Fog::Visibility(v) => Some(v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CloudType {
    Cumulus,
    Stratus,
    Stratocumulus,
    Altostratus,
    Nimbostratus,
    Cirrus,
    ThinCirrus,
}

impl CloudType {
    pub const ALL: [CloudType; 7] = [
        CloudType::Cumulus,
        CloudType::Stratus,
        CloudType::Stratocumulus,
        CloudType::Altostratus,
        CloudType::Nimbostratus,
        CloudType::Cirrus,
        CloudType::ThinCirrus,
    ];

    /// Number concentration in cm⁻³.
    pub fn number_concentration_cm3(self) -> f64 {
        match self {
            CloudType::Cumulus | CloudType::Stratus | CloudType::Stratocumulus => 250.0,
            CloudType::Altostratus => 400.0,
            CloudType::Nimbostratus => 200.0,
            CloudType::Cirrus => 0.025,
            CloudType::ThinCirrus => 0.5,
        }
    }

    /// Liquid water content in g/m³.
    pub fn liquid_water_g_m3(self) -> f64 {
        match self {
            CloudType::Cumulus => 1.0,
            CloudType::Stratus => 0.29,
            CloudType::Stratocumulus => 0.15,
            CloudType::Altostratus => 0.41,
            CloudType::Nimbostratus => 0.65,
            CloudType::Cirrus => 0.06405,
            CloudType::ThinCirrus => 3.128e-4,
        }
    }

    /// Visibility as printed in the cloud table.
    pub fn printed_visibility_km(self) -> f64 {
        match self {
            CloudType::Cumulus => 0.0280,
            CloudType::Stratus => 0.0626,
            CloudType::Stratocumulus => 0.0959,
            CloudType::Altostratus => 0.0369,
            CloudType::Nimbostratus => 0.0429,
            CloudType::Cirrus => 64.66,
            CloudType::ThinCirrus => 290.69,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CloudType::Cumulus => "cumulus",
            CloudType::Stratus => "stratus",
            CloudType::Stratocumulus => "stratocumulus",
            CloudType::Altostratus => "altostratus",
            CloudType::Nimbostratus => "nimbostratus",
            CloudType::Cirrus => "cirrus",
            CloudType::ThinCirrus => "thin-cirrus",
        }
    }
}

/// Wind input for the turbulence profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Wind {
    /// RMS wind speed used directly in the C_n² profile.
    Rms(f64),
    /// Wind speed at the platform, converted with `sqrt(v² + 30.69 v + 348.91)`.
    Ground(f64),
}

impl Wind {
    pub fn rms_mps(self) -> f64 {
        match self {
            Wind::Rms(u) => u,
            Wind::Ground(v) => crate::atmosphere::rms_wind_speed(v),
        }
    }

    fn speed(self) -> f64 {
        match self {
            Wind::Rms(u) | Wind::Ground(u) => u,
        }
    }
}

/// Lower reference altitude for the HAPS-to-ground turbulence integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroundReference {
    /// Integrate from mean sea level, path weight `h^(5/6)`.
    SeaLevel,
    /// Integrate from the ground station, path weight `(h - h_E)^(5/6)`.
    Station,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeatherConfig {
    pub volcanic: VolcanicLevel,
    pub fog: Fog,
    /// Vertical extent of the fog layer above the station; `None` applies fog
    /// along the whole HAPS-to-ground path.
    pub fog_layer_thickness_m: Option<f64>,
    pub cloud: Option<CloudType>,
    pub cloud_layer_thickness_m: Option<f64>,
    pub rain_rate_mm_per_h: f64,
    pub wind_sat_haps: Wind,
    pub wind_haps_gs: Wind,
    /// Nominal C_n² at the HAPS, m^(-2/3).
    pub cn2_nominal_sat_haps: f64,
    /// Nominal C_n² at the ground, m^(-2/3).
    pub cn2_nominal_haps_gs: f64,
    pub turbulence_ground_reference: GroundReference,
}

impl WeatherConfig {
    pub fn validate(&self) -> Result<()> {
        positive("stratospheric_coeff_per_km", self.volcanic.coeff_per_km())?;
        if let Fog::Visibility(v) = self.fog {
            positive("visibility_km", v)?;
        }
        if let Some(t) = self.fog_layer_thickness_m {
            positive("fog_layer_thickness_m", t)?;
        }
        if let Some(t) = self.cloud_layer_thickness_m {
            positive("cloud_layer_thickness_m", t)?;
        }
        if !(self.rain_rate_mm_per_h >= 0.0) || !self.rain_rate_mm_per_h.is_finite() {
            return Err(Error::invalid("rain_rate_mm_h", "must be >= 0"));
        }
        positive("wind_sat_haps", self.wind_sat_haps.speed())?;
        positive("wind_haps_gs", self.wind_haps_gs.speed())?;
        if !(self.cn2_nominal_sat_haps >= 0.0) {
            return Err(Error::invalid("cn2_nominal_sat_haps", "must be >= 0"));
        }
        if !(self.cn2_nominal_haps_gs >= 0.0) {
            return Err(Error::invalid("cn2_nominal_haps_gs", "must be >= 0"));
        }
        Ok(())
    }
}

/// Shadowed-Rician parameters: Nakagami `m`, half scatter power `b`, LOS
/// power `omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShadowingPreset {
    pub m: u32,
    pub b: f64,
    pub omega: f64,
}

impl ShadowingPreset {
    pub const HEAVY: ShadowingPreset = ShadowingPreset {
        m: 1,
        b: 0.063,
        omega: 8.94e-4,
    };
    pub const AVERAGE: ShadowingPreset = ShadowingPreset {
        m: 10,
        b: 0.126,
        omega: 0.835,
    };
    pub const LIGHT: ShadowingPreset = ShadowingPreset {
        m: 19,
        b: 0.158,
        omega: 1.29,
    };

    pub fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(Error::invalid("shadowing_m", "must be a positive integer"));
        }
        positive("shadowing_b", self.b)?;
        positive("shadowing_omega", self.omega)
    }
}

/// Which second-hop branches reach the ground station's selection combiner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkMode {
    Hybrid,
    FsoOnly,
    RfOnly,
}

impl LinkMode {
    pub fn name(self) -> &'static str {
        match self {
            LinkMode::Hybrid => "hybrid",
            LinkMode::FsoOnly => "fso-only",
            LinkMode::RfOnly => "rf-only",
        }
    }

    pub fn uses_fso(self) -> bool {
        self != LinkMode::RfOnly
    }

    pub fn uses_rf(self) -> bool {
        self != LinkMode::FsoOnly
    }
}

/// A full experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub geometry: GeometryConfig,
    pub radio: RadioConfig,
    pub weather: WeatherConfig,
    pub shadowing: ShadowingPreset,
    pub n_haps: u32,
    pub pointing_errors_enabled: bool,
    pub aperture_averaging_enabled: bool,
    pub tx_power_sat_dbw: f64,
    pub tx_power_haps_dbw: f64,
    pub link_mode: LinkMode,
}

impl ScenarioConfig {
    /// Parameter set of the simulation table: clear sky, one HAPS, equal
    /// 10 dBW transmit powers.
    pub fn reference() -> Self {
        Self {
            geometry: GeometryConfig {
                satellite_altitude_m: 500e3,
                haps_altitude_m: 19e3,
                gs_elevation_m: 800.0,
                zenith_sat_haps_deg: 65.0,
                zenith_haps_gs_deg: 20.0,
                elevation_gs_deg: 70.0,
                receiver_aperture_diameter_m: 0.15,
                beam_divergence_rad: 0.2e-3,
                jitter_stddev_m: 0.1,
                boresight_m: 0.0,
            },
            radio: RadioConfig {
                fso_wavelength_nm: 1550.0,
                rf_frequency_ghz: 40.0,
                tx_gain_db: 45.0,
                rx_gain_db: 45.0,
                oxygen_atten_db_per_km: 0.1,
                polarization_tilt_deg: 45.0,
                oe_conversion: 1.0,
                noise_figure_db: 1.0,
                bandwidth_hz: 0.5e9,
                temperature_sat_haps_c: -55.0,
                temperature_haps_gs_c: 18.0,
                snr_threshold_db: 7.0,
            },
            weather: WeatherConfig {
                volcanic: VolcanicLevel::Reference,
                fog: Fog::None,
                fog_layer_thickness_m: None,
                cloud: None,
                cloud_layer_thickness_m: None,
                rain_rate_mm_per_h: 0.0,
                wind_sat_haps: Wind::Ground(65.0),
                wind_haps_gs: Wind::Rms(21.0),
                cn2_nominal_sat_haps: 1e-18,
                cn2_nominal_haps_gs: 1.7e-14,
                turbulence_ground_reference: GroundReference::SeaLevel,
            },
            shadowing: ShadowingPreset::AVERAGE,
            n_haps: 1,
            pointing_errors_enabled: false,
            aperture_averaging_enabled: false,
            tx_power_sat_dbw: 10.0,
            tx_power_haps_dbw: 10.0,
            link_mode: LinkMode::Hybrid,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_haps < 1 {
            return Err(Error::invalid("n_haps", "must be >= 1"));
        }
        self.geometry.validate()?;
        self.radio.validate()?;
        self.weather.validate()?;
        self.shadowing.validate()?;
        if !self.tx_power_sat_dbw.is_finite() {
            return Err(Error::invalid("tx_power_sat_dbw", "must be finite"));
        }
        if !self.tx_power_haps_dbw.is_finite() {
            return Err(Error::invalid("tx_power_haps_dbw", "must be finite"));
        }
        Ok(())
    }

    /// Copy with the satellite transmitting at `power_dbw` and the HAPS
    /// keeping its configured offset from the satellite.
    pub fn at_power(&self, power_dbw: f64) -> Self {
        let offset = self.tx_power_haps_dbw - self.tx_power_sat_dbw;
        Self {
            tx_power_sat_dbw: power_dbw,
            tx_power_haps_dbw: power_dbw + offset,
            ..self.clone()
        }
    }
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self::reference()
    }
}

fn positive(field: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("must be positive and finite, got {v}")))
    }
}
