//! `dce-gauss`: quantum correlations of the dynamical-Casimir two-mode state.

mod config;

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dce_gauss::correlations::{critical_temperature, Measure};
use dce_gauss::sweep::{self, Axis, Execution, GridPoint, Preset};

use config::Options;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Model(#[from] dce_gauss::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use dce_gauss::Error as E;
        match self {
            CliError::Usage(_) | CliError::File { .. } => 1,
            CliError::Model(E::InvalidParameter { .. } | E::Io(_)) => 1,
            CliError::Model(_) => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "dce-gauss", version, about = "Steering, discord and entanglement of DCE photon pairs")]
struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a single parameter point.
    State(ParamArgs),
    /// Sweep one or two variables and write CSV.
    Sweep {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Regenerate the data behind a figure preset.
    Figure {
        /// fig1, fig2 or fig3.
        #[arg(value_parser = clap::value_parser!(Preset))]
        preset: Preset,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Temperature at which a correlation measure vanishes.
    Critical {
        #[arg(value_enum)]
        measure: MeasureArg,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MeasureArg {
    Steering,
    Entanglement,
}

impl MeasureArg {
    fn measure(self) -> Measure {
        match self {
            MeasureArg::Steering => Measure::Steering,
            MeasureArg::Entanglement => Measure::Entanglement,
        }
    }

    fn name(self) -> &'static str {
        match self {
            MeasureArg::Steering => "steering",
            MeasureArg::Entanglement => "entanglement",
        }
    }
}

#[derive(Args, Debug)]
struct ParamArgs {
    /// Drive amplitude ε, in [0, 1).
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long = "temperature-mK")]
    temperature_mk: Option<f64>,
    /// Drive frequency ω_d/2π.
    #[arg(long = "drive-GHz")]
    drive_ghz: Option<f64>,
    /// Effective SQUID length.
    #[arg(long = "leff-mm")]
    leff_mm: Option<f64>,
    /// Propagation speed in the waveguide, m/s.
    #[arg(long)]
    speed: Option<f64>,
    /// Mode detuning δω/2π.
    #[arg(long = "detuning-GHz", allow_negative_numbers = true)]
    detuning_ghz: Option<f64>,
    /// File of `key = value` lines; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// epsilon, temperature (mK), n_th or f.
    #[arg(long, value_parser = clap::value_parser!(Axis))]
    var: Option<Axis>,
    #[arg(long)]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Second axis, iterated fastest.
    #[arg(long, value_parser = clap::value_parser!(Axis))]
    var2: Option<Axis>,
    #[arg(long)]
    from2: Option<f64>,
    #[arg(long)]
    to2: Option<f64>,
    #[arg(long)]
    steps2: Option<usize>,
}

impl ParamArgs {
    fn options(&self, grid: Option<&GridArgs>) -> Result<Options, CliError> {
        let mut flags = Options {
            epsilon: self.epsilon,
            temperature_mk: self.temperature_mk,
            drive_ghz: self.drive_ghz,
            leff_mm: self.leff_mm,
            speed: self.speed,
            detuning_ghz: self.detuning_ghz,
            out: self.out.clone(),
            ..Options::default()
        };
        if let Some(g) = grid {
            flags.var = g.var;
            flags.from = g.from;
            flags.to = g.to;
            flags.steps = g.steps;
            flags.var2 = g.var2;
            flags.from2 = g.from2;
            flags.to2 = g.to2;
            flags.steps2 = g.steps2;
        }
        let base = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::File {
                    path: path.clone(),
                    source,
                })?;
                Options::parse_config(&text)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
            }
            None => Options::default(),
        };
        Ok(flags.overlay(base))
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|source| CliError::File {
                path: p.to_path_buf(),
                source,
            })?;
            Ok(Box::new(file))
        }
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }

    match cli.command {
        Command::State(args) => {
            let opts = args.options(None)?;
            let params = opts.params()?;
            let row = sweep::run_point(&GridPoint::from_params(params))?;
            sweep::write_csv(&[row], output(opts.out.as_deref())?)?;
        }
        Command::Sweep { params, grid } => {
            let opts = params.options(Some(&grid))?;
            let spec = opts.sweep_spec()?;
            let rows = sweep::evaluate(&spec, Execution::Parallel)?;
            sweep::write_csv(&rows, output(opts.out.as_deref())?)?;
        }
        Command::Figure { preset, out } => {
            let rows = sweep::evaluate(&preset.spec(), Execution::Parallel)?;
            sweep::write_csv(&rows, output(out.as_deref())?)?;
        }
        Command::Critical { measure, params } => {
            let opts = params.options(None)?;
            let p = opts.params()?;
            let t = critical_temperature(&p, measure.measure())?;
            let mut out = output(opts.out.as_deref())?;
            let value = t.map(sweep::format_f64).unwrap_or_default();
            writeln!(out, "measure,critical_temperature_K")
                .and_then(|_| writeln!(out, "{},{value}", measure.name()))
                .and_then(|_| out.flush())
                .map_err(dce_gauss::Error::from)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
