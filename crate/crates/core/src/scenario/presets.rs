//! Named parameter tables and per-figure experiment bundles.

use std::sync::OnceLock;

use super::file::apply_overrides;
use super::*;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct VolcanicRow {
    pub name: &'static str,
    pub level: VolcanicLevel,
    pub coeff_per_km: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FogRow {
    pub name: &'static str,
    pub level: FogLevel,
    pub visibility_km: f64,
    pub attenuation_db_per_km: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CloudRow {
    pub name: &'static str,
    pub cloud: CloudType,
    pub number_concentration_cm3: f64,
    pub liquid_water_g_m3: f64,
    pub visibility_km: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RainRow {
    pub name: &'static str,
    pub rate_mm_per_h: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShadowingRow {
    pub name: &'static str,
    pub preset: ShadowingPreset,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PresetEntry {
    Volcanic(VolcanicRow),
    Fog(FogRow),
    Cloud(CloudRow),
    Rain(RainRow),
    Shadowing(ShadowingRow),
}

/// Transcribed parameter tables: stratospheric aerosol levels, fog and cloud
/// rows, rain rates and shadowing levels.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetCatalog {
    pub volcanic: Vec<VolcanicRow>,
    pub fog: Vec<FogRow>,
    pub cloud: Vec<CloudRow>,
    pub rain: Vec<RainRow>,
    pub shadowing: Vec<ShadowingRow>,
}

impl PresetCatalog {
    /// Case-insensitive lookup by row name, e.g. `"extreme volcanic"`,
    /// `"thin fog"`, `"cumulus"`, `"heavy rain"`, `"average shadowing"`.
    pub fn lookup(&self, name: &str) -> Option<PresetEntry> {
        let key = normalize(name);
        let hit = |row_name: &str| normalize(row_name) == key;
        self.volcanic
            .iter()
            .find(|r| hit(r.name))
            .map(|r| PresetEntry::Volcanic(r.clone()))
            .or_else(|| self.fog.iter().find(|r| hit(r.name)).map(|r| PresetEntry::Fog(r.clone())))
            .or_else(|| self.cloud.iter().find(|r| hit(r.name)).map(|r| PresetEntry::Cloud(r.clone())))
            .or_else(|| self.rain.iter().find(|r| hit(r.name)).map(|r| PresetEntry::Rain(r.clone())))
            .or_else(|| {
                self.shadowing
                    .iter()
                    .find(|r| hit(r.name))
                    .map(|r| PresetEntry::Shadowing(r.clone()))
            })
    }
}

fn normalize(s: &str) -> String {
    s.trim()
        .to_ascii_lowercase()
        .split(|c: char| c == ' ' || c == '-' || c == '_')
        .filter(|w| !w.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn preset_tables() -> PresetCatalog {
    let volcanic = [
        ("extreme volcanic", VolcanicLevel::Extreme),
        ("high volcanic", VolcanicLevel::High),
        ("moderate volcanic", VolcanicLevel::Moderate),
        ("background volcanic", VolcanicLevel::Background),
    ]
    .into_iter()
    .map(|(name, level)| VolcanicRow {
        name,
        level,
        coeff_per_km: level.coeff_per_km(),
    })
    .collect();

    let fog = FogLevel::ALL
        .into_iter()
        .map(|level| FogRow {
            name: match level {
                FogLevel::Dense => "dense fog",
                FogLevel::Thick => "thick fog",
                FogLevel::Moderate => "moderate fog",
                FogLevel::Light => "light fog",
                FogLevel::Thin => "thin fog",
            },
            level,
            visibility_km: level.visibility_km(),
            attenuation_db_per_km: level.printed_attenuation_db_per_km(),
        })
        .collect();

    let cloud = CloudType::ALL
        .into_iter()
        .map(|cloud| CloudRow {
            name: cloud.name(),
            cloud,
            number_concentration_cm3: cloud.number_concentration_cm3(),
            liquid_water_g_m3: cloud.liquid_water_g_m3(),
            visibility_km: cloud.printed_visibility_km(),
        })
        .collect();

    let rain = vec![
        RainRow {
            name: "light rain",
            rate_mm_per_h: 2.5,
        },
        RainRow {
            name: "moderate rain",
            rate_mm_per_h: 12.5,
        },
        RainRow {
            name: "heavy rain",
            rate_mm_per_h: 25.0,
        },
    ];

    let shadowing = vec![
        ShadowingRow {
            name: "heavy shadowing",
            preset: ShadowingPreset::HEAVY,
        },
        ShadowingRow {
            name: "average shadowing",
            preset: ShadowingPreset::AVERAGE,
        },
        ShadowingRow {
            name: "light shadowing",
            preset: ShadowingPreset::LIGHT,
        },
    ];

    PresetCatalog {
        volcanic,
        fog,
        cloud,
        rain,
        shadowing,
    }
}

/// One curve of a figure: an id plus the overrides applied to the figure's
/// base scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveVariant {
    pub id: String,
    pub overrides: ScenarioOverrides,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub name: &'static str,
    /// What the figure shows and which unstated parameters were assumed.
    pub description: &'static str,
    pub scenario: ScenarioConfig,
    pub curves: Vec<CurveVariant>,
}

impl FigurePreset {
    /// Scenarios for every curve, built from `base` (normally
    /// `self.scenario`, possibly with user overrides already applied).
    pub fn curve_scenarios(&self, base: &ScenarioConfig) -> Result<Vec<(String, ScenarioConfig)>> {
        self.curves
            .iter()
            .map(|c| Ok((c.id.clone(), apply_overrides(base, &c.overrides)?)))
            .collect()
    }
}

fn curve(id: &str, overrides: &[(&str, &str)]) -> CurveVariant {
    CurveVariant {
        id: id.to_string(),
        overrides: overrides
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect(),
    }
}

fn build_presets() -> Vec<FigurePreset> {
    let base = ScenarioConfig::reference;
    let with = |f: fn(&mut ScenarioConfig)| {
        let mut s = base();
        f(&mut s);
        s
    };

    vec![
        FigurePreset {
            name: "fig2-clear",
            description: "Clear weather, N = 1: hybrid vs FSO-only vs RF-only second hop. \
                          Simulation-table defaults; average shadowing and no aperture \
                          averaging assumed (not stated for this figure).",
            scenario: base(),
            curves: vec![
                curve("hybrid", &[("link_mode", "hybrid")]),
                curve("fso-only", &[("link_mode", "fso-only")]),
                curve("rf-only", &[("link_mode", "rf-only")]),
            ],
        },
        FigurePreset {
            name: "fig3-diversity",
            description: "Clear weather, hybrid second hop, N in {1, 2, 5, 10}. \
                          Average shadowing and no aperture averaging assumed.",
            scenario: base(),
            curves: [1, 2, 5, 10]
                .iter()
                .map(|n| CurveVariant {
                    id: format!("n{n}"),
                    overrides: vec![("n_haps".into(), n.to_string())],
                })
                .collect(),
        },
        FigurePreset {
            name: "fig4-rain",
            description: "Rain (0 / 2.5 / 12.5 / 25 mm/h), N = 1, D_G = 0.15 m with aperture \
                          averaging; heavy rain also under heavy and light shadowing. \
                          Average shadowing assumed for the rain sweep.",
            scenario: with(|s| {
                s.aperture_averaging_enabled = true;
                s.geometry.receiver_aperture_diameter_m = 0.15;
            }),
            curves: vec![
                curve("clear", &[("rain_rate_mm_h", "0")]),
                curve("light-rain", &[("rain_rate_mm_h", "2.5")]),
                curve("moderate-rain", &[("rain_rate_mm_h", "12.5")]),
                curve("heavy-rain", &[("rain_rate_mm_h", "25")]),
                curve(
                    "heavy-rain-heavy-shadowing",
                    &[("rain_rate_mm_h", "25"), ("shadowing", "heavy")],
                ),
                curve(
                    "heavy-rain-light-shadowing",
                    &[("rain_rate_mm_h", "25"), ("shadowing", "light")],
                ),
            ],
        },
        FigurePreset {
            name: "fig5-fog-rain",
            description: "Fog and rain, N = 2, D_G = 0.15 m with aperture averaging. Fog \
                          occupies a 100 m layer above the station; light fog combined with \
                          each rain level, plus moderate fog without rain. Average \
                          shadowing assumed.",
            scenario: with(|s| {
                s.n_haps = 2;
                s.aperture_averaging_enabled = true;
                s.geometry.receiver_aperture_diameter_m = 0.15;
                s.weather.fog = Fog::Level(FogLevel::Light);
                s.weather.fog_layer_thickness_m = Some(100.0);
            }),
            curves: vec![
                curve("light-fog", &[("rain_rate_mm_h", "0")]),
                curve("light-fog-light-rain", &[("rain_rate_mm_h", "2.5")]),
                curve("light-fog-moderate-rain", &[("rain_rate_mm_h", "12.5")]),
                curve("light-fog-heavy-rain", &[("rain_rate_mm_h", "25")]),
                curve("moderate-fog", &[("fog", "moderate"), ("rain_rate_mm_h", "0")]),
            ],
        },
        FigurePreset {
            name: "fig6-aperture",
            description: "Aperture averaging, hybrid, N = 3, D_G in {0.05, 0.1, 0.15, 0.2} m. \
                          Averaging applied to both FSO hops; clear weather and average \
                          shadowing assumed.",
            scenario: with(|s| {
                s.n_haps = 3;
                s.aperture_averaging_enabled = true;
            }),
            curves: ["0.05", "0.1", "0.15", "0.2"]
                .iter()
                .map(|d| curve(&format!("d{d}"), &[("receiver_aperture_diameter_m", d)]))
                .collect(),
        },
        FigurePreset {
            name: "fig7-pointing",
            description: "Zero-boresight pointing errors on the satellite-HAPS hop \
                          (theta = 0.2 mrad, sigma_s = 0.1 m), N = 1, D_G in {0.15, 0.2} m \
                          with aperture averaging, each with and without pointing errors. \
                          Clear weather and average shadowing assumed.",
            scenario: with(|s| {
                s.aperture_averaging_enabled = true;
                s.pointing_errors_enabled = true;
            }),
            curves: vec![
                curve(
                    "d0.15-pointing",
                    &[("receiver_aperture_diameter_m", "0.15"), ("pointing_errors", "true")],
                ),
                curve(
                    "d0.15-no-pointing",
                    &[("receiver_aperture_diameter_m", "0.15"), ("pointing_errors", "false")],
                ),
                curve(
                    "d0.2-pointing",
                    &[("receiver_aperture_diameter_m", "0.2"), ("pointing_errors", "true")],
                ),
                curve(
                    "d0.2-no-pointing",
                    &[("receiver_aperture_diameter_m", "0.2"), ("pointing_errors", "false")],
                ),
            ],
        },
        FigurePreset {
            name: "fig8-wind",
            description: "HAPS-ground RMS wind speed in {10, 21, 30} m/s, N = 1. Clear \
                          weather, average shadowing, no aperture averaging assumed.",
            scenario: base(),
            curves: ["10", "21", "30"]
                .iter()
                .map(|u| curve(&format!("u{u}"), &[("wind_rms_haps_gs_mps", u)]))
                .collect(),
        },
    ]
}

pub fn figure_presets() -> &'static [FigurePreset] {
    static PRESETS: OnceLock<Vec<FigurePreset>> = OnceLock::new();
    PRESETS.get_or_init(build_presets)
}

pub fn figure_preset(name: &str) -> Option<&'static FigurePreset> {
    figure_presets().iter().find(|p| p.name == name)
}
