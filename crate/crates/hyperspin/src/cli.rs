//! Argument parsing and command dispatch for the `hyperspin` binary.

use std::ffi::OsString;
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperspin_core::state::channel_params;
use hyperspin_core::{ChannelName, KernelVariant};
use serde::Serialize;

use crate::check::run_checks;
use crate::emit::{emit, emit_record, Format};
use crate::grid::{parse_axis_spec, Axis, Progression, SweepGrid};
use crate::preset::{FigurePreset, MeasureSelector};
use crate::sweep::{run_sweep_with, threads_from_env, evaluate_point};
use crate::SweepError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hyperspin", version, about = "Quantum resources of hyperon pairs under correlated dephasing")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a channel's decay parameter and form-factor phase as JSON
    Params {
        #[arg(long)]
        channel: ChannelName,
    },
    /// Evaluate every measure at one point
    Measure(MeasureArgs),
    /// Evaluate a figure preset or an explicit grid
    Sweep(SweepArgs),
    /// Run the embedded invariant suite
    Check {
        #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
        kernel_variant: VariantArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Standard,
    Printed,
}

impl From<VariantArg> for KernelVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Standard => KernelVariant::Standard,
            VariantArg::Printed => KernelVariant::Printed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long)]
    pub channel: ChannelName,
    /// Production angle in radians
    #[arg(long, conflicts_with = "phi_deg", required_unless_present = "phi_deg")]
    pub phi: Option<f64>,
    /// Production angle in degrees
    #[arg(long)]
    pub phi_deg: Option<f64>,
    #[arg(long)]
    pub mu: f64,
    #[arg(long)]
    pub tau: f64,
    #[arg(long)]
    pub time: f64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
    pub kernel_variant: VariantArg,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Figure preset id (h1a … nm1)
    #[arg(long, conflicts_with_all = ["channel", "phi", "phi_deg", "mu", "tau", "time", "grid"])]
    pub figure: Option<FigurePreset>,
    #[arg(long, required_unless_present = "figure")]
    pub channel: Option<ChannelName>,
    #[arg(long, conflicts_with = "phi_deg")]
    pub phi: Option<f64>,
    #[arg(long)]
    pub phi_deg: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub time: Option<f64>,
    /// Swept axis as axis=start:stop:step (phi, mu, tau, time); repeatable
    #[arg(long)]
    pub grid: Vec<String>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    /// Output file; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
    pub kernel_variant: VariantArg,
}

#[derive(Serialize)]
struct ParamsOut {
    channel: &'static str,
    upsilon_psi: f64,
    delta_theta: f64,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<SweepError> for Failure {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::InvalidGrid(_) | SweepError::UnknownPreset(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(format!("i/o error: {e}"))
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Params { channel } => params(channel, out),
        Command::Measure(a) => measure(&a, out),
        Command::Sweep(a) => sweep(&a, out, err),
        Command::Check { kernel_variant } => {
            let report = run_checks(kernel_variant.into());
            match write!(out, "{report}") {
                Ok(()) if report.passed() => Ok(()),
                Ok(()) => return EXIT_CHECK_FAILED,
                Err(e) => Err(e.into()),
            }
        }
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_RUNTIME
        }
    }
}

fn params(channel: ChannelName, out: &mut dyn Write) -> Result<(), Failure> {
    let ch = channel_params(channel);
    let p = ParamsOut { channel: channel.as_str(), upsilon_psi: ch.upsilon_psi, delta_theta: ch.delta_theta };
    let json = serde_json::to_string(&p).map_err(|e| Failure::Runtime(e.to_string()))?;
    writeln!(out, "{json}")?;
    Ok(())
}

fn angle(rad: Option<f64>, deg: Option<f64>) -> Option<f64> {
    rad.or(deg.map(f64::to_radians))
}

fn measure(a: &MeasureArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let phi = angle(a.phi, a.phi_deg).ok_or_else(|| Failure::Usage("--phi or --phi-deg is required".into()))?;
    let grid = SweepGrid::new(vec![a.channel], vec![phi], vec![a.mu], vec![a.tau], Progression::single(a.time))?;
    let point = grid.point(0);
    let record = evaluate_point(&point, a.kernel_variant.into()).map_err(|e| Failure::Runtime(format!("at {point}: {e}")))?;
    emit_record(&point, &record, a.format.into(), out)?;
    Ok(())
}

fn explicit_grid(a: &SweepArgs) -> Result<SweepGrid, Failure> {
    let channel = a.channel.ok_or_else(|| Failure::Usage("--channel is required without --figure".into()))?;
    let mut phi = angle(a.phi, a.phi_deg).map(|p| vec![p]);
    let mut mu = a.mu.map(|m| vec![m]);
    let mut tau = a.tau.map(|t| vec![t]);
    let mut time = a.time.map(Progression::single);
    for spec in &a.grid {
        let (axis, range) = parse_axis_spec(spec)?;
        match axis {
            Axis::Phi => phi = Some(range.values()),
            Axis::Mu => mu = Some(range.values()),
            Axis::Tau => tau = Some(range.values()),
            Axis::Time => time = Some(range),
        }
    }
    let missing = |name: &str| Failure::Usage(format!("no value for {name}: pass --{name} or --grid {name}=start:stop:step"));
    let grid = SweepGrid::new(
        vec![channel],
        phi.ok_or_else(|| missing("phi"))?,
        mu.ok_or_else(|| missing("mu"))?,
        tau.ok_or_else(|| missing("tau"))?,
        time.ok_or_else(|| missing("time"))?,
    )?;
    Ok(grid.with_variant(a.kernel_variant.into()))
}

fn sweep(a: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let (grid, selector, preset) = match a.figure {
        Some(id) => (id.grid().with_variant(a.kernel_variant.into()), id.selector(), Some(id)),
        None => (explicit_grid(a)?, MeasureSelector::all(), None),
    };
    let result = run_sweep_with(&grid, &selector, preset, threads_from_env())?;
    let format = a.format.into();
    let (bytes, target) = match &a.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
            (emit(&result, format, file)?, path.display().to_string())
        }
        None => (emit(&result, format, &mut *out)?, "stdout".to_owned()),
    };
    let label = preset.map_or_else(|| format!("grid {}", &result.metadata.grid_hash[..12]), |p: FigurePreset| p.to_string());
    writeln!(err, "{label}: {} records, {bytes} bytes -> {target}", result.records.len())?;
    Ok(())
}
