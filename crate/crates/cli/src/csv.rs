//! CSV output.
//!
//! Format version 1: a block of `# key = value` header lines (format
//! version, program version, source, mode, seed, trials, curve ids and the
//! full base-scenario digest under `scenario.`), then the column line
//! `power_dBW,curve_id,analytic_op,mc_op,mc_ci_halfwidth,n_trials` and one
//! row per curve and power. Missing estimators leave their columns empty.
//! Floats use the shortest decimal that round-trips.

use std::io::{self, Write};

use linksim::outage::{OutageCurve, SweepMode};
use linksim::scenario::{serialize_scenario, ScenarioConfig};

pub const FORMAT_VERSION: u32 = 1;
pub const COLUMNS: &str = "power_dBW,curve_id,analytic_op,mc_op,mc_ci_halfwidth,n_trials";

pub struct Header<'a> {
    pub source: &'a str,
    pub base: &'a ScenarioConfig,
    pub mode: SweepMode,
    pub seed: u64,
    pub n_trials: u64,
}

fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn emit_csv<W: Write>(header: &Header, curves: &[OutageCurve], sink: &mut W) -> io::Result<()> {
    writeln!(sink, "# format = {FORMAT_VERSION}")?;
    writeln!(sink, "# version = {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(sink, "# source = {}", header.source)?;
    writeln!(sink, "# mode = {}", header.mode.name())?;
    writeln!(sink, "# seed = {}", header.seed)?;
    if header.mode.monte_carlo() {
        writeln!(sink, "# n_trials = {}", header.n_trials)?;
    }
    let ids: Vec<&str> = curves.iter().map(|c| c.id.as_str()).collect();
    writeln!(sink, "# curves = {}", ids.join(" "))?;
    for line in serialize_scenario(header.base).lines() {
        writeln!(sink, "# scenario.{line}")?;
    }
    writeln!(sink, "{COLUMNS}")?;
    for c in curves {
        for p in &c.points {
            let analytic = p.analytic_op.map(num).unwrap_or_default();
            let (mc, hw, n) = match p.mc {
                Some(m) => (num(m.op), num(m.halfwidth), m.n_trials.to_string()),
                None => Default::default(),
            };
            writeln!(sink, "{},{},{analytic},{mc},{hw},{n}", num(p.tx_power_dbw), c.id)?;
        }
    }
    Ok(())
}
