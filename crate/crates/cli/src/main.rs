//! `linksim`: outage-probability sweeps from the command line.
//!
//! Exit codes: 0 success, 1 invalid input, 2 numerical or I/O failure.

mod csv;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use linksim::outage::{
    auto_power_grid, power_for_outage, power_grid, sweep, OutageCurve, SweepMode, SweepSettings, DEFAULT_TRIALS,
};
use linksim::scenario::{apply_overrides, figure_preset, figure_presets, load_scenario, preset_tables, ScenarioConfig};
use linksim::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Analytic,
    Mc,
    Both,
}

impl From<Mode> for SweepMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Analytic => SweepMode::Analytic,
            Mode::Mc => SweepMode::MonteCarlo,
            Mode::Both => SweepMode::Both,
        }
    }
}

/// Outage probability of satellite downlinks relayed through HAPS nodes.
#[derive(Debug, Parser)]
#[command(name = "linksim", version)]
struct Cli {
    /// Scenario file (flat TOML).
    #[arg(long, conflicts_with = "preset")]
    scenario: Option<PathBuf>,

    /// Figure preset, e.g. fig2-clear (see --list-presets).
    #[arg(long)]
    preset: Option<String>,

    #[arg(long, value_enum, default_value = "analytic")]
    mode: Mode,

    /// Power grid `start:stop:step` in dBW. Defaults to a 30-point grid
    /// spanning outage probabilities 0.5 down to 1e-8.
    #[arg(long, allow_hyphen_values = true)]
    power: Option<String>,

    /// Monte Carlo trials per point; scientific notation accepted.
    #[arg(short = 'n', long, default_value_t = DEFAULT_TRIALS.to_string())]
    trials: String,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// CSV destination; standard output when omitted.
    #[arg(short = 'o', long)]
    out: Option<PathBuf>,

    /// Print the parameter tables and figure presets, then exit.
    #[arg(long)]
    list_presets: bool,

    /// `key=value` scenario override; repeatable.
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    /// Shorthand for `--override fog=<level>`.
    #[arg(long)]
    fog: Option<String>,

    /// Outage probability whose crossing power the summary reports.
    #[arg(long, default_value_t = 1e-6)]
    target_op: f64,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Numerical(_) | Failure::Io(_) => 2,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "error: {m}"),
            Failure::Numerical(m) => write!(f, "numerical failure: {m}"),
            Failure::Io(m) => write!(f, "i/o failure: {m}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.code())
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("LINKSIM_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("LINKSIM_THREADS must be a positive integer, got `{v}`")))?;
    // only fails if a pool already exists, which cannot happen here
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn parse_trials(s: &str) -> Result<u64, Failure> {
    let bad = || Failure::Usage(format!("invalid trial count `{s}`"));
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let v: f64 = s.parse().map_err(|_| bad())?;
    if v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v < 1.8e19 {
        Ok(v as u64)
    } else {
        Err(bad())
    }
}

fn parse_power(s: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Failure::Usage(format!("power grid must be `start:stop:step`, got `{s}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| bad())?;
    Ok(power_grid(nums[0], nums[1], nums[2])?)
}

fn parse_overrides(cli: &Cli) -> Result<Vec<(String, String)>, Failure> {
    let mut out = Vec::new();
    for o in &cli.overrides {
        let (k, v) = o
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("override `{o}` is not key=value")))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    if let Some(f) = &cli.fog {
        out.push(("fog".into(), f.clone()));
    }
    Ok(out)
}

/// The run's label, base scenario (overrides applied) and curve scenarios.
struct Plan {
    source: String,
    base: ScenarioConfig,
    curves: Vec<(String, ScenarioConfig)>,
}

fn plan(cli: &Cli, overrides: &[(String, String)]) -> Result<Plan, Failure> {
    if let Some(name) = &cli.preset {
        let preset = figure_preset(name).ok_or_else(|| Failure::from(Error::UnknownPreset(name.clone())))?;
        // user overrides change the figure's base; each curve's own settings
        // are applied on top so curve ids stay truthful
        let base = apply_overrides(&preset.scenario, overrides)?;
        let curves = preset.curve_scenarios(&base)?;
        return Ok(Plan {
            source: format!("preset {name}"),
            base,
            curves,
        });
    }
    let (source, scenario) = match &cli.scenario {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            (format!("file {}", path.display()), load_scenario(&text)?)
        }
        None => ("defaults".to_string(), ScenarioConfig::default()),
    };
    let base = apply_overrides(&scenario, overrides)?;
    Ok(Plan {
        source,
        curves: vec![("scenario".to_string(), base.clone())],
        base,
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    if cli.list_presets {
        print!("{}", list_presets());
        return Ok(());
    }
    configure_threads()?;
    let n_trials = parse_trials(&cli.trials)?;
    let overrides = parse_overrides(&cli)?;
    let plan = plan(&cli, &overrides)?;
    let scenarios: Vec<ScenarioConfig> = plan.curves.iter().map(|(_, s)| s.clone()).collect();
    let powers = match &cli.power {
        Some(p) => parse_power(p)?,
        None => auto_power_grid(&scenarios, 0.5, 1e-8, 30)?,
    };
    let settings = SweepSettings {
        mode: cli.mode.into(),
        n_trials,
        seed: cli.seed,
    };
    let curves = plan
        .curves
        .iter()
        .map(|(id, s)| sweep(id, s, &powers, settings))
        .collect::<Result<Vec<_>, Error>>()?;

    let header = csv::Header {
        source: &plan.source,
        base: &plan.base,
        mode: settings.mode,
        seed: cli.seed,
        n_trials,
    };
    let mut buf = Vec::new();
    csv::emit_csv(&header, &curves, &mut buf).map_err(|e| Failure::Io(e.to_string()))?;
    let summary = summary(&curves, cli.target_op);
    match &cli.out {
        Some(path) => {
            fs::write(path, &buf).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            print!("{summary}");
        }
        None => {
            io::stdout().write_all(&buf).map_err(|e| Failure::Io(e.to_string()))?;
            eprint!("{summary}");
        }
    }
    Ok(())
}

fn summary(curves: &[OutageCurve], target: f64) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    for c in curves {
        let _ = write!(s, "{}:", c.id);
        let min = |it: &mut dyn Iterator<Item = (f64, f64)>| it.min_by(|a, b| a.1.total_cmp(&b.1));
        if let Some((p, op)) = min(&mut c.points.iter().filter_map(|p| p.analytic_op.map(|o| (p.tx_power_dbw, o)))) {
            let _ = write!(s, " min analytic OP {op:.3e} at {p} dBW;");
        }
        if let Some((p, op)) = min(&mut c.points.iter().filter_map(|p| p.mc.map(|m| (p.tx_power_dbw, m.op)))) {
            let _ = write!(s, " min MC OP {op:.3e} at {p} dBW;");
        }
        if c.mode.analytic() && target > 0.0 && target < 1.0 {
            match power_for_outage(&c.scenario, target) {
                Ok(p) => {
                    let _ = write!(s, " OP = {target:e} at {p:.3} dBW");
                }
                Err(e) => {
                    let _ = write!(s, " OP = {target:e} not located ({e})");
                }
            }
        }
        s.push('\n');
        if let Some(b) = c.max_truncation_bound().filter(|&b| b > 1e-10) {
            let _ = writeln!(s, "  warning: series truncation bound reaches {b:.2e}");
        }
        let starved = c.points.iter().filter(|p| p.mc.is_some_and(|m| m.starved)).count();
        if starved > 0 {
            let _ = writeln!(s, "  warning: {starved} MC-starved point(s) (fewer than 10 outage events)");
        }
    }
    s
}

fn list_presets() -> String {
    use std::fmt::Write as _;
    let t = preset_tables();
    let mut s = String::new();
    let _ = writeln!(s, "Stratospheric aerosol levels (coefficient, 1/km):");
    for r in &t.volcanic {
        let _ = writeln!(s, "  {:<22} {}", r.name, r.coeff_per_km);
    }
    let _ = writeln!(s, "Fog (visibility km, attenuation dB/km at 1550 nm):");
    for r in &t.fog {
        let _ = writeln!(s, "  {:<22} {:<8} {}", r.name, r.visibility_km, r.attenuation_db_per_km);
    }
    let _ = writeln!(s, "Clouds (number concentration 1/cm^3, liquid water g/m^3, visibility km):");
    for r in &t.cloud {
        let _ = writeln!(
            s,
            "  {:<22} {:<8} {:<10} {}",
            r.name, r.number_concentration_cm3, r.liquid_water_g_m3, r.visibility_km
        );
    }
    let _ = writeln!(s, "Rain (mm/h):");
    for r in &t.rain {
        let _ = writeln!(s, "  {:<22} {}", r.name, r.rate_mm_per_h);
    }
    let _ = writeln!(s, "Shadowing (m, b, omega):");
    for r in &t.shadowing {
        let p = r.preset;
        let _ = writeln!(s, "  {:<22} {:<8} {:<10} {}", r.name, p.m, p.b, p.omega);
    }
    let _ = writeln!(s, "Figure presets:");
    for p in figure_presets() {
        let ids: Vec<&str> = p.curves.iter().map(|c| c.id.as_str()).collect();
        let _ = writeln!(s, "  {:<16} curves: {}", p.name, ids.join(", "));
        let _ = writeln!(s, "  {:<16} {}", "", p.description);
    }
    s
}
