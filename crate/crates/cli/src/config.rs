//! Command-line and config-file options.
//!
//! A config file holds `key = value` lines, where keys are the long flag
//! names without the leading dashes (`temperature-mK = 50`). `#` starts a
//! comment. Flags given on the command line override config entries.

use std::f64::consts::PI;
use std::path::PathBuf;

use dce_gauss::dce::DceParams;
use dce_gauss::sweep::{Axis, AxisRange, SweepSpec};

use crate::CliError;

pub const DEFAULT_STEPS: usize = 101;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Options {
    pub epsilon: Option<f64>,
    pub temperature_mk: Option<f64>,
    pub drive_ghz: Option<f64>,
    pub leff_mm: Option<f64>,
    pub speed: Option<f64>,
    pub detuning_ghz: Option<f64>,
    pub out: Option<PathBuf>,
    pub steps: Option<usize>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub var: Option<Axis>,
    pub steps2: Option<usize>,
    pub from2: Option<f64>,
    pub to2: Option<f64>,
    pub var2: Option<Axis>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid value `{value}` for `{key}`")))
}

impl Options {
    /// Parses the contents of a config file.
    pub fn parse_config(text: &str) -> Result<Self, CliError> {
        let mut opts = Options::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "config line {}: expected `key = value`, got `{line}`",
                    lineno + 1
                )));
            };
            opts.set(key.trim(), value.trim())?;
        }
        Ok(opts)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let axis = |v: &str| {
            v.parse::<Axis>()
                .map_err(|_| CliError::Usage(format!("invalid value `{v}` for `{key}`")))
        };
        match key {
            "epsilon" => self.epsilon = Some(parse_value(key, value)?),
            "temperature-mK" => self.temperature_mk = Some(parse_value(key, value)?),
            "drive-GHz" => self.drive_ghz = Some(parse_value(key, value)?),
            "leff-mm" => self.leff_mm = Some(parse_value(key, value)?),
            "speed" => self.speed = Some(parse_value(key, value)?),
            "detuning-GHz" => self.detuning_ghz = Some(parse_value(key, value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            "steps" => self.steps = Some(parse_value(key, value)?),
            "from" => self.from = Some(parse_value(key, value)?),
            "to" => self.to = Some(parse_value(key, value)?),
            "var" => self.var = Some(axis(value)?),
            "steps2" => self.steps2 = Some(parse_value(key, value)?),
            "from2" => self.from2 = Some(parse_value(key, value)?),
            "to2" => self.to2 = Some(parse_value(key, value)?),
            "var2" => self.var2 = Some(axis(value)?),
            other => return Err(CliError::Usage(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }

    /// Fields set in `self` win over those in `base`.
    pub fn overlay(self, base: Options) -> Options {
        Options {
            epsilon: self.epsilon.or(base.epsilon),
            temperature_mk: self.temperature_mk.or(base.temperature_mk),
            drive_ghz: self.drive_ghz.or(base.drive_ghz),
            leff_mm: self.leff_mm.or(base.leff_mm),
            speed: self.speed.or(base.speed),
            detuning_ghz: self.detuning_ghz.or(base.detuning_ghz),
            out: self.out.or(base.out),
            steps: self.steps.or(base.steps),
            from: self.from.or(base.from),
            to: self.to.or(base.to),
            var: self.var.or(base.var),
            steps2: self.steps2.or(base.steps2),
            from2: self.from2.or(base.from2),
            to2: self.to2.or(base.to2),
            var2: self.var2.or(base.var2),
        }
    }

    /// Physical parameters, defaulting to the standard waveguide at ε = 0.15,
    /// T = 50 mK.
    pub fn params(&self) -> Result<DceParams, CliError> {
        let std = DceParams::standard();
        let bad = |flag: &str, v: f64, why: &str| {
            CliError::Usage(format!("invalid value {v} for --{flag}: {why}"))
        };
        let epsilon = self.epsilon.unwrap_or(std.amplitude);
        if !(0.0..1.0).contains(&epsilon) {
            return Err(bad("epsilon", epsilon, "must lie in [0, 1)"));
        }
        let temperature_mk = self.temperature_mk.unwrap_or(std.temperature * 1e3);
        if !(temperature_mk >= 0.0 && temperature_mk.is_finite()) {
            return Err(bad("temperature-mK", temperature_mk, "must be non-negative"));
        }
        let positive = |flag: &str, v: Option<f64>, default: f64| match v {
            Some(x) if !(x > 0.0 && x.is_finite()) => Err(bad(flag, x, "must be positive")),
            Some(x) => Ok(x),
            None => Ok(default),
        };
        let drive_ghz = positive("drive-GHz", self.drive_ghz, std.drive_angular_freq / (2.0 * PI * 1e9))?;
        let leff_mm = positive("leff-mm", self.leff_mm, std.effective_length * 1e3)?;
        let speed = positive("speed", self.speed, std.speed)?;
        let detuning_ghz = self.detuning_ghz.unwrap_or(0.0);
        if !(detuning_ghz.abs() < drive_ghz / 2.0) {
            return Err(bad("detuning-GHz", detuning_ghz, "|detuning| must be below half the drive frequency"));
        }
        let params = DceParams {
            speed,
            drive_angular_freq: 2.0 * PI * drive_ghz * 1e9,
            effective_length: leff_mm * 1e-3,
            amplitude: epsilon,
            detuning: 2.0 * PI * detuning_ghz * 1e9,
            temperature: temperature_mk * 1e-3,
        };
        params.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(params)
    }

    pub fn sweep_spec(&self) -> Result<SweepSpec, CliError> {
        let fixed = self.params()?;
        let var = self
            .var
            .ok_or_else(|| CliError::Usage("sweep requires --var".into()))?;
        let primary = axis_range(var, self.from, self.to, self.steps, "")?;
        let secondary = match self.var2 {
            Some(var2) => Some(axis_range(var2, self.from2, self.to2, self.steps2, "2")?),
            None if self.from2.is_some() || self.to2.is_some() || self.steps2.is_some() => {
                return Err(CliError::Usage("--from2/--to2/--steps2 need --var2".into()))
            }
            None => None,
        };
        SweepSpec::new(primary, secondary, fixed).map_err(|e| CliError::Usage(e.to_string()))
    }
}

fn axis_range(
    axis: Axis,
    from: Option<f64>,
    to: Option<f64>,
    steps: Option<usize>,
    suffix: &str,
) -> Result<AxisRange, CliError> {
    let need = |v: Option<f64>, name: &str| {
        v.ok_or_else(|| CliError::Usage(format!("sweep requires --{name}{suffix}")))
    };
    let (mut start, mut stop) = (need(from, "from")?, need(to, "to")?);
    if axis == Axis::Temperature {
        // mK on the command line
        start *= 1e-3;
        stop *= 1e-3;
    }
    AxisRange::new(axis, start, stop, steps.unwrap_or(DEFAULT_STEPS))
        .map_err(|e| CliError::Usage(format!("--var{suffix} {axis}: {e}")))
}
