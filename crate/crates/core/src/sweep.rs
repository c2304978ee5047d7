//! Parameter grids over the DCE model and their CSV rendering.
//!
//! Rows are evaluated independently (optionally on the rayon pool) and always
//! emitted in grid order, so the output bytes do not depend on the execution
//! strategy.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use crate::correlations::{self, ReportFlag};
use crate::dce::{self, DceParams, ThermalOccupations};
use crate::error::{invalid, Error, Result};

pub const CSV_HEADER: &str = "epsilon,temperature_K,n_th,f,steering_ab,steering_ba,steering_pert,\
ip_a,ip_b,ip_pert,log_neg,physicality_deficit,flags";

/// Highest temperature represented in the fig3 preset, kelvin.
const FIG3_MAX_TEMPERATURE: f64 = 0.035;

/// Swept variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    /// Drive amplitude ε.
    Epsilon,
    /// Temperature in kelvin.
    Temperature,
    /// Thermal occupation of both modes, overriding the Bose–Einstein value.
    NTh,
    /// Small parameter, overriding the value derived from ε.
    F,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Epsilon => "epsilon",
            Axis::Temperature => "temperature",
            Axis::NTh => "n_th",
            Axis::F => "f",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "epsilon" => Ok(Axis::Epsilon),
            "temperature" => Ok(Axis::Temperature),
            "n_th" => Ok(Axis::NTh),
            "f" => Ok(Axis::F),
            other => Err(invalid(
                "var",
                format!("unknown axis `{other}` (expected epsilon, temperature, n_th or f)"),
            )),
        }
    }
}

/// Uniform grid with inclusive endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange {
    pub axis: Axis,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl AxisRange {
    pub fn new(axis: Axis, start: f64, stop: f64, steps: usize) -> Result<Self> {
        if !(start < stop) || !start.is_finite() || !stop.is_finite() {
            return Err(invalid("from", format!("need start < stop, got {start} .. {stop}")));
        }
        if steps < 2 {
            return Err(invalid("steps", format!("need at least 2 steps, got {steps}")));
        }
        let (lo_ok, hi_ok) = match axis {
            Axis::Epsilon | Axis::F => (start >= 0.0, stop < 1.0),
            Axis::Temperature | Axis::NTh => (start >= 0.0, true),
        };
        if !lo_ok || !hi_ok {
            return Err(invalid(
                "from",
                format!("range {start} .. {stop} is outside the domain of `{axis}`"),
            ));
        }
        Ok(Self {
            axis,
            start,
            stop,
            steps,
        })
    }

    pub fn value(&self, index: usize) -> f64 {
        if index + 1 == self.steps {
            return self.stop;
        }
        self.start + (self.stop - self.start) * index as f64 / (self.steps - 1) as f64
    }
}

/// One parameter point, possibly with `n_th` and/or `f` fixed directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub params: DceParams,
    pub n_override: Option<f64>,
    pub f_override: Option<f64>,
}

impl GridPoint {
    pub fn from_params(params: DceParams) -> Self {
        Self {
            params,
            n_override: None,
            f_override: None,
        }
    }

    fn set(&mut self, axis: Axis, value: f64) {
        match axis {
            Axis::Epsilon => self.params.amplitude = value,
            Axis::Temperature => self.params.temperature = value,
            Axis::NTh => self.n_override = Some(value),
            Axis::F => self.f_override = Some(value),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub primary: AxisRange,
    pub secondary: Option<AxisRange>,
    pub fixed: DceParams,
}

impl SweepSpec {
    pub fn new(primary: AxisRange, secondary: Option<AxisRange>, fixed: DceParams) -> Result<Self> {
        if let Some(second) = &secondary {
            if second.axis == primary.axis {
                return Err(invalid(
                    "var2",
                    format!("second axis must differ from the first (both `{}`)", primary.axis),
                ));
            }
        }
        fixed.validate()?;
        Ok(Self {
            primary,
            secondary,
            fixed,
        })
    }

    pub fn len(&self) -> usize {
        self.primary.steps * self.secondary.map_or(1, |s| s.steps)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid points in emission order (row-major, first axis outermost).
    pub fn points(&self) -> Vec<GridPoint> {
        let inner = self.secondary.map_or(1, |s| s.steps);
        (0..self.len())
            .map(|k| {
                let mut point = GridPoint::from_params(self.fixed);
                point.set(self.primary.axis, self.primary.value(k / inner));
                if let Some(second) = &self.secondary {
                    point.set(second.axis, second.value(k % inner));
                }
                point
            })
            .collect()
    }
}

/// Figure presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// ε ∈ [0, 0.25] at 50 mK, 251 points.
    Fig1,
    /// `n_th` ∈ [0, 0.02] at ε = 0.15, 251 points.
    Fig2,
    /// `n_th` up to its 35 mK value × `f` ∈ [0, 0.05], 101 × 101 points.
    Fig3,
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(Preset::Fig1),
            "fig2" => Ok(Preset::Fig2),
            "fig3" => Ok(Preset::Fig3),
            other => Err(invalid("figure", format!("unknown preset `{other}`"))),
        }
    }
}

impl Preset {
    pub fn spec(self) -> SweepSpec {
        let standard = DceParams::standard();
        let (primary, secondary) = match self {
            Preset::Fig1 => (AxisRange::new(Axis::Epsilon, 0.0, 0.25, 251), None),
            Preset::Fig2 => (AxisRange::new(Axis::NTh, 0.0, 0.02, 251), None),
            Preset::Fig3 => {
                let n_max = dce::thermal_occupation(
                    standard.drive_angular_freq / 2.0,
                    FIG3_MAX_TEMPERATURE,
                );
                (
                    AxisRange::new(Axis::NTh, 0.0, n_max, 101),
                    Some(AxisRange::new(Axis::F, 0.0, 0.05, 101).expect("valid preset")),
                )
            }
        };
        SweepSpec::new(primary.expect("valid preset"), secondary, standard).expect("valid preset")
    }
}

/// One line of sweep output.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    /// `None` when `f` was swept directly and no ε < 1 reproduces it.
    pub epsilon: Option<f64>,
    pub temperature_k: Option<f64>,
    pub n_th: f64,
    pub f: f64,
    pub steering_ab: f64,
    pub steering_ba: f64,
    pub steering_pert: f64,
    pub ip_a: f64,
    pub ip_b: f64,
    pub ip_pert: f64,
    pub log_neg: f64,
    pub physicality_deficit: f64,
    pub flags: Vec<ReportFlag>,
}

impl CsvRow {
    pub fn to_csv_line(&self) -> String {
        let opt = |x: Option<f64>| x.map(format_f64).unwrap_or_default();
        let flags: Vec<&str> = self.flags.iter().map(|f| f.token()).collect();
        [
            opt(self.epsilon),
            opt(self.temperature_k),
            format_f64(self.n_th),
            format_f64(self.f),
            format_f64(self.steering_ab),
            format_f64(self.steering_ba),
            format_f64(self.steering_pert),
            format_f64(self.ip_a),
            format_f64(self.ip_b),
            format_f64(self.ip_pert),
            format_f64(self.log_neg),
            format_f64(self.physicality_deficit),
            flags.join(";"),
        ]
        .join(",")
    }
}

/// Shortest round-trip decimal, no exponent, `0` for either signed zero.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x}")
    }
}

pub fn run_point(point: &GridPoint) -> Result<CsvRow> {
    let p = &point.params;
    p.validate()?;
    let half_drive = p.drive_angular_freq / 2.0;

    let (f, epsilon) = match point.f_override {
        Some(f) => {
            let eps = f / p.coupling_per_amplitude();
            (f, (0.0..1.0).contains(&eps).then_some(eps))
        }
        None => (dce::small_parameter(p)?, Some(p.amplitude)),
    };
    let (occ, temperature_k) = match point.n_override {
        Some(n) => {
            if !(n >= 0.0 && n.is_finite()) {
                return Err(invalid("n_th", format!("must be non-negative, got {n}")));
            }
            (
                ThermalOccupations::symmetric(n),
                Some(dce::temperature_for_occupation(half_drive, n)),
            )
        }
        None => (dce::occupations(p), Some(p.temperature)),
    };

    let r = correlations::report(f, &occ)?;
    Ok(CsvRow {
        epsilon,
        temperature_k,
        n_th: occ.mean(),
        f,
        steering_ab: r.steering_a_to_b,
        steering_ba: r.steering_b_to_a,
        steering_pert: r.steering_perturbative,
        ip_a: r.ip_probe_a,
        ip_b: r.ip_probe_b,
        ip_pert: r.ip_perturbative,
        log_neg: r.log_negativity,
        physicality_deficit: r.physicality_deficit,
        flags: r.flags,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Rows evaluated on the current rayon pool.
    #[default]
    Parallel,
}

pub fn evaluate(spec: &SweepSpec, execution: Execution) -> Result<Vec<CsvRow>> {
    let points = spec.points();
    match execution {
        Execution::Sequential => points.iter().map(run_point).collect(),
        Execution::Parallel => points.par_iter().map(run_point).collect(),
    }
}

/// Writes the header and one line per grid point.
pub fn run_sweep<W: Write>(spec: &SweepSpec, out: W, execution: Execution) -> Result<()> {
    let rows = evaluate(spec, execution)?;
    write_csv(&rows, out)
}

pub fn write_csv<W: Write>(rows: &[CsvRow], out: W) -> Result<()> {
    let mut out = std::io::BufWriter::new(out);
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.to_csv_line())?;
    }
    out.flush()?;
    Ok(())
}
