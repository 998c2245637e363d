//! Scenario file format.
//!
//! A scenario file is flat TOML: one `key = value` pair per line, `#`
//! comments, UTF-8. Values are numbers, booleans or quoted strings; tables and
//! arrays are rejected. An optional `preset = "<figure preset>"` key expands to
//! that preset's base scenario before the remaining keys are applied, so any
//! key overrides the preset regardless of where it appears in the file.
//! Unspecified keys take the simulation-table defaults.
//!
//! Keys:
//!
//! | key | meaning |
//! |-----|---------|
//! | `satellite_altitude_m`, `haps_altitude_m`, `gs_elevation_m` | altitudes (m) |
//! | `zenith_sat_haps_deg`, `zenith_haps_gs_deg` | zenith angles |
//! | `elevation_gs_deg` | ground elevation; derived from `zenith_haps_gs_deg` when omitted |
//! | `receiver_aperture_diameter_m`, `beam_divergence_rad`, `jitter_stddev_m`, `boresight_m` | optics |
//! | `fso_wavelength_nm`, `rf_frequency_ghz`, `tx_gain_db`, `rx_gain_db` | radio |
//! | `oxygen_atten_db_per_km`, `polarization_tilt_deg`, `oe_conversion` | radio |
//! | `noise_figure_db`, `bandwidth_hz`, `temperature_sat_haps_c`, `temperature_haps_gs_c`, `snr_threshold_db` | noise, threshold |
//! | `volcanic` | `extreme`, `high`, `moderate`, `background`, `table5-default` |
//! | `stratospheric_coeff_per_km` | custom aerosol coefficient (excludes `volcanic`) |
//! | `fog` | `none`, `dense`, `thick`, `moderate`, `light`, `thin` |
//! | `visibility_km` | fog visibility override (excludes `fog`) |
//! | `fog_layer_thickness_m`, `cloud_layer_thickness_m` | layer extents; `0` or absent means the whole path |
//! | `cloud` | `none` or a cloud type (`cumulus`, ..., `thin-cirrus`) |
//! | `rain_rate_mm_h` | rain rate |
//! | `wind_rms_sat_haps_mps` / `wind_speed_sat_haps_mps` | RMS wind, or platform wind converted to RMS |
//! | `wind_rms_haps_gs_mps` / `wind_speed_haps_gs_mps` | same for the second hop |
//! | `cn2_nominal_sat_haps`, `cn2_nominal_haps_gs` | nominal C_n² |
//! | `turbulence_ground_reference` | `sea-level` or `station` |
//! | `shadowing` | `heavy`, `average`, `light` |
//! | `shadowing_m`, `shadowing_b`, `shadowing_omega` | custom shadowing (excludes `shadowing`) |
//! | `n_haps`, `pointing_errors`, `aperture_averaging`, `link_mode` | system |
//! | `tx_power_sat_dbw`, `tx_power_haps_dbw` | transmit powers |

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use toml::{Spanned, Value};

use super::presets::figure_preset;
use super::*;
use crate::error::{Error, Result};

/// Extra `key = value` pairs applied on top of a scenario (CLI overrides,
/// preset curve variants).
pub type ScenarioOverrides = Vec<(String, String)>;

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Parses and validates a scenario file.
pub fn load_scenario(text: &str) -> Result<ScenarioConfig> {
    let table: BTreeMap<String, Spanned<Value>> = toml::from_str(text).map_err(|e| Error::Parse {
        line: e.span().map(|s| line_of(text, s.start)).unwrap_or(0),
        message: e.message().to_string(),
    })?;

    let mut config = match table.get("preset") {
        Some(v) => {
            let line = line_of(text, v.span().start);
            let name = v.get_ref().as_str().ok_or_else(|| Error::Parse {
                line,
                message: "`preset` must be a string".into(),
            })?;
            figure_preset(name)
                .map(|p| p.scenario.clone())
                .ok_or_else(|| Error::Parse {
                    line,
                    message: format!("unknown preset `{name}`"),
                })?
        }
        None => ScenarioConfig::reference(),
    };

    let mut applier = Applier::default();
    let mut entries: Vec<_> = table.iter().filter(|(k, _)| k.as_str() != "preset").collect();
    entries.sort_by_key(|(_, v)| v.span().start);
    for (key, value) in entries {
        let line = line_of(text, value.span().start);
        applier
            .apply(&mut config, key, value.get_ref())
            .map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse { line, message },
                other => other,
            })?;
    }
    applier.finish(&mut config);
    config.validate()?;
    Ok(config)
}

/// Applies `key = value` overrides (values in file syntax, bare words
/// allowed for strings) to an existing scenario and re-validates it.
pub fn apply_overrides(config: &ScenarioConfig, overrides: &[(String, String)]) -> Result<ScenarioConfig> {
    let mut config = config.clone();
    for (key, raw) in overrides {
        let value = parse_value(raw);
        let mut applier = Applier::default();
        applier.apply(&mut config, key, &value)?;
        applier.finish(&mut config);
    }
    config.validate()?;
    Ok(config)
}

fn parse_value(raw: &str) -> Value {
    let raw = raw.trim();
    let parsed: std::result::Result<BTreeMap<String, Value>, _> = toml::from_str(&format!("v = {raw}"));
    match parsed {
        Ok(mut m) => m.remove("v").unwrap_or_else(|| Value::String(raw.to_string())),
        Err(_) => Value::String(raw.to_string()),
    }
}

#[derive(Default)]
struct Applier {
    seen: BTreeSet<&'static str>,
    elevation_set: bool,
    zenith_set: bool,
}

fn bad(message: impl Into<String>) -> Error {
    Error::Parse {
        line: 0,
        message: message.into(),
    }
}

fn num(key: &str, v: &Value) -> Result<f64> {
    match v {
        Value::Float(f) => Ok(*f),
        Value::Integer(i) => Ok(*i as f64),
        _ => Err(bad(format!("`{key}` expects a number"))),
    }
}

fn boolean(key: &str, v: &Value) -> Result<bool> {
    v.as_bool().ok_or_else(|| bad(format!("`{key}` expects true or false")))
}

fn string<'a>(key: &str, v: &'a Value) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(format!("`{key}` expects a string")))
}

fn optional_thickness(key: &str, v: &Value) -> Result<Option<f64>> {
    let t = num(key, v)?;
    Ok(if t == 0.0 { None } else { Some(t) })
}

impl Applier {
    /// Records that one of a group of mutually exclusive keys was given.
    fn exclusive(&mut self, group: &'static str, key: &str) -> Result<()> {
        if !self.seen.insert(group) {
            return Err(bad(format!("`{key}` conflicts with another {group} key")));
        }
        Ok(())
    }

    fn apply(&mut self, c: &mut ScenarioConfig, key: &str, v: &Value) -> Result<()> {
        let g = &mut c.geometry;
        let r = &mut c.radio;
        let w = &mut c.weather;
        match key {
            "satellite_altitude_m" => g.satellite_altitude_m = num(key, v)?,
            "haps_altitude_m" => g.haps_altitude_m = num(key, v)?,
            "gs_elevation_m" => g.gs_elevation_m = num(key, v)?,
            "zenith_sat_haps_deg" => g.zenith_sat_haps_deg = num(key, v)?,
            "zenith_haps_gs_deg" => {
                g.zenith_haps_gs_deg = num(key, v)?;
                self.zenith_set = true;
            }
            "elevation_gs_deg" => {
                g.elevation_gs_deg = num(key, v)?;
                self.elevation_set = true;
            }
            "receiver_aperture_diameter_m" => g.receiver_aperture_diameter_m = num(key, v)?,
            "beam_divergence_rad" => g.beam_divergence_rad = num(key, v)?,
            "jitter_stddev_m" => g.jitter_stddev_m = num(key, v)?,
            "boresight_m" => g.boresight_m = num(key, v)?,

            "fso_wavelength_nm" => r.fso_wavelength_nm = num(key, v)?,
            "rf_frequency_ghz" => r.rf_frequency_ghz = num(key, v)?,
            "tx_gain_db" => r.tx_gain_db = num(key, v)?,
            "rx_gain_db" => r.rx_gain_db = num(key, v)?,
            "oxygen_atten_db_per_km" => r.oxygen_atten_db_per_km = num(key, v)?,
            "polarization_tilt_deg" => r.polarization_tilt_deg = num(key, v)?,
            "oe_conversion" => r.oe_conversion = num(key, v)?,
            "noise_figure_db" => r.noise_figure_db = num(key, v)?,
            "bandwidth_hz" => r.bandwidth_hz = num(key, v)?,
            "temperature_sat_haps_c" => r.temperature_sat_haps_c = num(key, v)?,
            "temperature_haps_gs_c" => r.temperature_haps_gs_c = num(key, v)?,
            "snr_threshold_db" => r.snr_threshold_db = num(key, v)?,

            "volcanic" => {
                self.exclusive("stratospheric", key)?;
                let name = string(key, v)?;
                w.volcanic = VolcanicLevel::NAMED
                    .into_iter()
                    .find(|l| l.name() == Some(name))
                    .ok_or_else(|| bad(format!("unknown volcanic level `{name}`")))?;
            }
            "stratospheric_coeff_per_km" => {
                self.exclusive("stratospheric", key)?;
                w.volcanic = VolcanicLevel::Custom(num(key, v)?);
            }
            "fog" => {
                self.exclusive("fog", key)?;
                let name = string(key, v)?;
                w.fog = if name == "none" {
                    Fog::None
                } else {
                    Fog::Level(
                        FogLevel::ALL
                            .into_iter()
                            .find(|l| l.name() == name)
                            .ok_or_else(|| bad(format!("unknown fog level `{name}`")))?,
                    )
                };
            }
            "visibility_km" => {
                self.exclusive("fog", key)?;
                w.fog = Fog::Visibility(num(key, v)?);
            }
            "fog_layer_thickness_m" => w.fog_layer_thickness_m = optional_thickness(key, v)?,
            "cloud" => {
                let name = string(key, v)?;
                w.cloud = if name == "none" {
                    None
                } else {
                    Some(
                        CloudType::ALL
                            .into_iter()
                            .find(|t| t.name() == name)
                            .ok_or_else(|| bad(format!("unknown cloud type `{name}`")))?,
                    )
                };
            }
            "cloud_layer_thickness_m" => w.cloud_layer_thickness_m = optional_thickness(key, v)?,
            "rain_rate_mm_h" => w.rain_rate_mm_per_h = num(key, v)?,
            "wind_rms_sat_haps_mps" => {
                self.exclusive("sat-haps wind", key)?;
                w.wind_sat_haps = Wind::Rms(num(key, v)?);
            }
            "wind_speed_sat_haps_mps" => {
                self.exclusive("sat-haps wind", key)?;
                w.wind_sat_haps = Wind::Ground(num(key, v)?);
            }
            "wind_rms_haps_gs_mps" => {
                self.exclusive("haps-gs wind", key)?;
                w.wind_haps_gs = Wind::Rms(num(key, v)?);
            }
            "wind_speed_haps_gs_mps" => {
                self.exclusive("haps-gs wind", key)?;
                w.wind_haps_gs = Wind::Ground(num(key, v)?);
            }
            "cn2_nominal_sat_haps" => w.cn2_nominal_sat_haps = num(key, v)?,
            "cn2_nominal_haps_gs" => w.cn2_nominal_haps_gs = num(key, v)?,
            "turbulence_ground_reference" => {
                w.turbulence_ground_reference = match string(key, v)? {
                    "sea-level" => GroundReference::SeaLevel,
                    "station" => GroundReference::Station,
                    other => return Err(bad(format!("unknown ground reference `{other}`"))),
                }
            }

            "shadowing" => {
                self.exclusive("shadowing", key)?;
                c.shadowing = match string(key, v)? {
                    "heavy" => ShadowingPreset::HEAVY,
                    "average" => ShadowingPreset::AVERAGE,
                    "light" => ShadowingPreset::LIGHT,
                    other => return Err(bad(format!("unknown shadowing level `{other}`"))),
                }
            }
            "shadowing_m" => {
                let m = num(key, v)?;
                if m < 1.0 || m.fract() != 0.0 || m > u32::MAX as f64 {
                    return Err(Error::invalid(key, "must be a positive integer"));
                }
                c.shadowing.m = m as u32;
            }
            "shadowing_b" => c.shadowing.b = num(key, v)?,
            "shadowing_omega" => c.shadowing.omega = num(key, v)?,

            "n_haps" => {
                let n = num(key, v)?;
                if n < 0.0 || n.fract() != 0.0 || n > u32::MAX as f64 {
                    return Err(Error::invalid(key, "must be a non-negative integer"));
                }
                c.n_haps = n as u32;
            }
            "pointing_errors" => c.pointing_errors_enabled = boolean(key, v)?,
            "aperture_averaging" => c.aperture_averaging_enabled = boolean(key, v)?,
            "tx_power_sat_dbw" => c.tx_power_sat_dbw = num(key, v)?,
            "tx_power_haps_dbw" => c.tx_power_haps_dbw = num(key, v)?,
            "link_mode" => {
                c.link_mode = match string(key, v)? {
                    "hybrid" => LinkMode::Hybrid,
                    "fso-only" => LinkMode::FsoOnly,
                    "rf-only" => LinkMode::RfOnly,
                    other => return Err(bad(format!("unknown link mode `{other}`"))),
                }
            }
            "preset" => return Err(bad("`preset` may only appear in a scenario file")),
            other => return Err(bad(format!("unknown key `{other}`"))),
        }
        if matches!(key, "shadowing" | "shadowing_m" | "shadowing_b" | "shadowing_omega") {
            let group = if key == "shadowing" { "named shadowing" } else { "custom shadowing" };
            self.seen.insert(group);
            if self.seen.contains("named shadowing") && self.seen.contains("custom shadowing") {
                return Err(bad(format!("`{key}` conflicts with another shadowing key")));
            }
        }
        Ok(())
    }

    fn finish(&self, c: &mut ScenarioConfig) {
        if self.zenith_set && !self.elevation_set {
            c.geometry.elevation_gs_deg = 90.0 - c.geometry.zenith_haps_gs_deg;
        } else if self.elevation_set && !self.zenith_set {
            c.geometry.zenith_haps_gs_deg = 90.0 - c.geometry.elevation_gs_deg;
        }
    }
}

/// Writes every field explicitly, in a form [`load_scenario`] reads back to
/// an identical configuration.
pub fn serialize_scenario(c: &ScenarioConfig) -> String {
    let mut out = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(out, "{k} = {v}");
    };
    let f = |x: f64| format!("{x:?}");
    let s = |x: &str| format!("\"{x}\"");
    let g = &c.geometry;
    kv("satellite_altitude_m", f(g.satellite_altitude_m));
    kv("haps_altitude_m", f(g.haps_altitude_m));
    kv("gs_elevation_m", f(g.gs_elevation_m));
    kv("zenith_sat_haps_deg", f(g.zenith_sat_haps_deg));
    kv("zenith_haps_gs_deg", f(g.zenith_haps_gs_deg));
    kv("elevation_gs_deg", f(g.elevation_gs_deg));
    kv("receiver_aperture_diameter_m", f(g.receiver_aperture_diameter_m));
    kv("beam_divergence_rad", f(g.beam_divergence_rad));
    kv("jitter_stddev_m", f(g.jitter_stddev_m));
    kv("boresight_m", f(g.boresight_m));
    let r = &c.radio;
    kv("fso_wavelength_nm", f(r.fso_wavelength_nm));
    kv("rf_frequency_ghz", f(r.rf_frequency_ghz));
    kv("tx_gain_db", f(r.tx_gain_db));
    kv("rx_gain_db", f(r.rx_gain_db));
    kv("oxygen_atten_db_per_km", f(r.oxygen_atten_db_per_km));
    kv("polarization_tilt_deg", f(r.polarization_tilt_deg));
    kv("oe_conversion", f(r.oe_conversion));
    kv("noise_figure_db", f(r.noise_figure_db));
    kv("bandwidth_hz", f(r.bandwidth_hz));
    kv("temperature_sat_haps_c", f(r.temperature_sat_haps_c));
    kv("temperature_haps_gs_c", f(r.temperature_haps_gs_c));
    kv("snr_threshold_db", f(r.snr_threshold_db));
    let w = &c.weather;
    match w.volcanic.name() {
        Some(name) => kv("volcanic", s(name)),
        None => kv("stratospheric_coeff_per_km", f(w.volcanic.coeff_per_km())),
    }
    match w.fog {
        Fog::None => kv("fog", s("none")),
        Fog::Level(l) => kv("fog", s(l.name())),
        Fog::Visibility(v) => kv("visibility_km", f(v)),
    }
    kv("fog_layer_thickness_m", f(w.fog_layer_thickness_m.unwrap_or(0.0)));
    kv("cloud", s(w.cloud.map(|t| t.name()).unwrap_or("none")));
    kv("cloud_layer_thickness_m", f(w.cloud_layer_thickness_m.unwrap_or(0.0)));
    kv("rain_rate_mm_h", f(w.rain_rate_mm_per_h));
    match w.wind_sat_haps {
        Wind::Rms(u) => kv("wind_rms_sat_haps_mps", f(u)),
        Wind::Ground(v) => kv("wind_speed_sat_haps_mps", f(v)),
    }
    match w.wind_haps_gs {
        Wind::Rms(u) => kv("wind_rms_haps_gs_mps", f(u)),
        Wind::Ground(v) => kv("wind_speed_haps_gs_mps", f(v)),
    }
    kv("cn2_nominal_sat_haps", f(w.cn2_nominal_sat_haps));
    kv("cn2_nominal_haps_gs", f(w.cn2_nominal_haps_gs));
    kv(
        "turbulence_ground_reference",
        s(match w.turbulence_ground_reference {
            GroundReference::SeaLevel => "sea-level",
            GroundReference::Station => "station",
        }),
    );
    kv("shadowing_m", c.shadowing.m.to_string());
    kv("shadowing_b", f(c.shadowing.b));
    kv("shadowing_omega", f(c.shadowing.omega));
    kv("n_haps", c.n_haps.to_string());
    kv("pointing_errors", c.pointing_errors_enabled.to_string());
    kv("aperture_averaging", c.aperture_averaging_enabled.to_string());
    kv("tx_power_sat_dbw", f(c.tx_power_sat_dbw));
    kv("tx_power_haps_dbw", f(c.tx_power_haps_dbw));
    kv("link_mode", s(c.link_mode.name()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn preset_only_matches_table_defaults() {
        let c = load_scenario("preset = \"fig2-clear\"\n").unwrap();
        let d = ScenarioConfig::reference();
        assert_eq!(c.geometry, d.geometry);
        assert_eq!(c.radio, d.radio);
        assert_eq!(c.weather, d.weather);
        assert_eq!(c.n_haps, 1);
    }

    #[test]
    fn zero_haps_rejected() {
        match load_scenario("n_haps = 0") {
            Err(Error::Invalid { field, .. }) => assert_eq!(field, "n_haps"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn thin_fog_sets_visibility() {
        let c = load_scenario("fog = \"thin\"").unwrap();
        assert_eq!(c.weather.fog.visibility_km(), Some(1.9));
    }

    #[test]
    fn unknown_key_reports_line() {
        let text = "# header\nn_haps = 2\n\nbogus_key = 1\n";
        match load_scenario(text) {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 4);
                assert!(message.contains("bogus_key"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_error_reports_line() {
        match load_scenario("n_haps = 2\nfog = \n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fog_and_visibility_are_exclusive() {
        assert!(load_scenario("fog = \"thin\"\nvisibility_km = 3.0").is_err());
        let c = load_scenario("visibility_km = 3.0").unwrap();
        assert_eq!(c.weather.fog, Fog::Visibility(3.0));
    }

    #[test]
    fn elevation_follows_zenith() {
        let c = load_scenario("zenith_haps_gs_deg = 30").unwrap();
        assert_eq!(c.geometry.elevation_gs_deg, 60.0);
        assert!(load_scenario("zenith_haps_gs_deg = 30\nelevation_gs_deg = 70").is_err());
    }

    #[test]
    fn preset_keys_are_overridable_in_any_order() {
        let c = load_scenario("n_haps = 4\npreset = \"fig8-wind\"").unwrap();
        assert_eq!(c.n_haps, 4);
    }

    #[test]
    fn overrides_accept_bare_words() {
        let base = ScenarioConfig::default();
        let c = apply_overrides(&base, &[("fog".into(), "moderate".into()), ("n_haps".into(), "3".into())]).unwrap();
        assert_eq!(c.weather.fog, Fog::Level(FogLevel::Moderate));
        assert_eq!(c.n_haps, 3);
    }

    #[test]
    fn nested_tables_rejected() {
        assert!(load_scenario("[geometry]\nhaps_altitude_m = 1").is_err());
    }

    fn arb_scenario() -> impl Strategy<Value = ScenarioConfig> {
        (
            1u32..12,
            0.01f64..0.5,
            0.0f64..50.0,
            prop::sample::select(vec![Fog::None, Fog::Level(FogLevel::Light), Fog::Visibility(2.5)]),
            prop::sample::select(vec![VolcanicLevel::Background, VolcanicLevel::Custom(3.3e-3)]),
            any::<bool>(),
            -20.0f64..60.0,
            prop::sample::select(vec![Wind::Rms(21.0), Wind::Ground(12.5)]),
        )
            .prop_map(|(n, d, rain, fog, volcanic, pe, p, wind)| {
                let mut c = ScenarioConfig::default();
                c.n_haps = n;
                c.geometry.receiver_aperture_diameter_m = d;
                c.weather.rain_rate_mm_per_h = rain;
                c.weather.fog = fog;
                c.weather.volcanic = volcanic;
                c.weather.wind_haps_gs = wind;
                c.pointing_errors_enabled = pe;
                c.tx_power_sat_dbw = p;
                c.tx_power_haps_dbw = p + 1.0 / 3.0;
                c
            })
    }

    proptest! {
        #[test]
        fn serialize_round_trip(c in arb_scenario()) {
            let text = serialize_scenario(&c);
            let back = load_scenario(&text).unwrap();
            prop_assert_eq!(back, c);
        }
    }
}
