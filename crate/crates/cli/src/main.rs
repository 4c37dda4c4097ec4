mod commands;
mod config;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use rotmode_core::asymptotics::ApproxRegime;
use rotmode_core::model::ModelParams;
use std::path::PathBuf;
use std::process::ExitCode;

/// Two harmonic modes coupled by rotation: stability classification,
/// observable time series, oracle validation, approximation comparison,
/// and phase-diagram sweeps. All frequencies are in units of omega1.
#[derive(Parser)]
#[command(name = "rotmode", version)]
struct Cli {
    /// TOML config file; command-line flags override its values
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify one parameter point (JSON) or sweep the plane (CSV)
    Stability(StabilityArgs),
    /// Emit the observable time series (CSV or JSON)
    Evolve(EvolveArgs),
    /// Compare the closed-form propagator against the integrated oracle;
    /// exits nonzero if any scaled deviation exceeds the threshold
    Validate(ValidateArgs),
    /// Tabulate a closed-form approximation against the exact observables
    Approx(ApproxArgs),
    /// Print the normal-mode decomposition (JSON)
    Normalmodes(CommonArgs),
    /// Print the propagator blocks at one time (JSON)
    Propagator(PropagatorArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Second mode frequency, 0 < omega2 <= 1
    #[arg(long, allow_negative_numbers = true)]
    omega2: Option<f64>,
    /// Rotation frequency, >= 0
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
    /// Output file (stdout when omitted)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StabilityArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, allow_negative_numbers = true)]
    omega2_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega2_max: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega2_step: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega_max: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega_step: Option<f64>,
    /// Extra per-point column for sweeps
    #[arg(long, value_enum)]
    quantity: Option<QuantityArg>,
    /// Time window scanned for the max-f / max-squeeze quantities
    #[arg(long, allow_negative_numbers = true)]
    tmax: Option<f64>,
}

#[derive(Args)]
struct EvolveArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// End of the time grid; defaults to one slow beat period
    #[arg(long, allow_negative_numbers = true)]
    tmax: Option<f64>,
    /// Number of grid points (default 2048)
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Initial coherent amplitudes; recorded in JSON output
    #[arg(long, allow_negative_numbers = true)]
    alpha1_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha1_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha2_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha2_im: Option<f64>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// End of the comparison grid (default 50)
    #[arg(long, allow_negative_numbers = true)]
    tmax: Option<f64>,
    /// Number of comparison times (default 51)
    #[arg(long)]
    points: Option<usize>,
    /// Integrator step (default 1e-3)
    #[arg(long, allow_negative_numbers = true)]
    dt: Option<f64>,
    /// Scaled-deviation threshold for the exit status (default 1e-6)
    #[arg(long, allow_negative_numbers = true)]
    threshold: Option<f64>,
}

#[derive(Args)]
struct ApproxArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Which closed-form approximation to tabulate
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// End of the time grid; defaults to one slow beat period
    #[arg(long, allow_negative_numbers = true)]
    tmax: Option<f64>,
    /// Number of grid points (default 512)
    #[arg(long)]
    points: Option<usize>,
}

#[derive(Args)]
struct PropagatorArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Evaluation time
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    NearInstability,
    WeakCoupling,
    ShortTime,
}

impl From<KindArg> for ApproxRegime {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::NearInstability => ApproxRegime::NearInstability,
            KindArg::WeakCoupling => ApproxRegime::WeakCoupling,
            KindArg::ShortTime => ApproxRegime::ShortTime,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuantityArg {
    Regime,
    OmegaMinusSq,
    MaxF,
    MaxSqueeze,
}

impl From<QuantityArg> for commands::SweepQuantity {
    fn from(q: QuantityArg) -> Self {
        match q {
            QuantityArg::Regime => commands::SweepQuantity::Regime,
            QuantityArg::OmegaMinusSq => commands::SweepQuantity::OmegaMinusSq,
            QuantityArg::MaxF => commands::SweepQuantity::MaxF,
            QuantityArg::MaxSqueeze => commands::SweepQuantity::MaxSqueeze,
        }
    }
}

/// Config files spell enums with either dashes or underscores.
fn parse_enum_key<T: ValueEnum>(s: &str, what: &str) -> Result<T> {
    T::from_str(&s.replace('_', "-"), true)
        .map_err(|e| anyhow::anyhow!("invalid {what} {s:?}: {e}"))
}

fn resolve_params(a: &CommonArgs, f: &config::FileConfig) -> Result<ModelParams<f64>> {
    let omega2 = a
        .omega2
        .or(f.omega2)
        .context("omega2 is required (--omega2 or config key `omega2`)")?;
    let omega = a
        .omega
        .or(f.omega)
        .context("omega is required (--omega or config key `omega`)")?;
    Ok(ModelParams::new(1.0, omega2, omega)?)
}

fn resolve_out(a: &CommonArgs, f: &config::FileConfig) -> Option<PathBuf> {
    a.out.clone().or_else(|| f.out.clone())
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("ROTMODE_THREADS") {
        let n: usize = v
            .parse()
            .context("ROTMODE_THREADS must be a positive integer")?;
        if n == 0 {
            bail!("ROTMODE_THREADS must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the sweep thread pool")?;
    }
    let file = config::load(cli.config.as_deref())?;
    match cli.command {
        Cmd::Stability(args) => {
            let out = resolve_out(&args.common, &file);
            let fsweep = file.sweep.as_ref();
            let sweep_requested = fsweep.is_some()
                || [
                    args.omega2_min,
                    args.omega2_max,
                    args.omega2_step,
                    args.omega_min,
                    args.omega_max,
                    args.omega_step,
                ]
                .iter()
                .any(Option::is_some);
            if !sweep_requested {
                let p = resolve_params(&args.common, &file)?;
                commands::stability_point(&p, out.as_deref())?;
                return Ok(ExitCode::SUCCESS);
            }
            let axis = |flag: Option<f64>,
                        key: fn(&config::SweepFile) -> Option<f64>,
                        name: &str|
             -> Result<f64> {
                flag.or_else(|| fsweep.and_then(key))
                    .with_context(|| format!("sweep needs {name} (flag or [sweep] config key)"))
            };
            let quantity = match args.quantity {
                Some(q) => q,
                None => match fsweep.and_then(|s| s.quantity.as_deref()) {
                    Some(s) => parse_enum_key(s, "sweep quantity")?,
                    None => QuantityArg::Regime,
                },
            };
            let spec = commands::SweepSpec {
                omega2: (
                    axis(args.omega2_min, |s| s.omega2_min, "omega2-min")?,
                    axis(args.omega2_max, |s| s.omega2_max, "omega2-max")?,
                    axis(args.omega2_step, |s| s.omega2_step, "omega2-step")?,
                ),
                omega: (
                    axis(args.omega_min, |s| s.omega_min, "omega-min")?,
                    axis(args.omega_max, |s| s.omega_max, "omega-max")?,
                    axis(args.omega_step, |s| s.omega_step, "omega-step")?,
                ),
                quantity: quantity.into(),
                tmax: args.tmax.or(file.tmax).unwrap_or(25.0),
            };
            commands::stability_sweep(&spec, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Evolve(args) => {
            let p = resolve_params(&args.common, &file)?;
            let out = resolve_out(&args.common, &file);
            let format = match args.format {
                Some(fm) => fm,
                None => match file.format.as_deref() {
                    Some(s) => parse_enum_key(s, "format")?,
                    None => FormatArg::Csv,
                },
            };
            let spec = commands::EvolveSpec {
                tmax: args.tmax.or(file.tmax),
                points: args.points.or(file.points).unwrap_or(2048),
                alpha1: Complex::new(
                    args.alpha1_re.or(file.alpha1_re).unwrap_or(0.0),
                    args.alpha1_im.or(file.alpha1_im).unwrap_or(0.0),
                ),
                alpha2: Complex::new(
                    args.alpha2_re.or(file.alpha2_re).unwrap_or(0.0),
                    args.alpha2_im.or(file.alpha2_im).unwrap_or(0.0),
                ),
                json: matches!(format, FormatArg::Json),
            };
            commands::evolve(&p, &spec, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Validate(args) => {
            let p = resolve_params(&args.common, &file)?;
            let out = resolve_out(&args.common, &file);
            let spec = commands::ValidateSpec {
                tmax: args.tmax.or(file.tmax).unwrap_or(50.0),
                points: args.points.or(file.points).unwrap_or(51),
                dt: args.dt.or(file.dt).unwrap_or(1e-3),
                threshold: args.threshold.or(file.threshold).unwrap_or(1e-6),
            };
            let pass = commands::validate(&p, &spec, out.as_deref())?;
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Cmd::Approx(args) => {
            let p = resolve_params(&args.common, &file)?;
            let out = resolve_out(&args.common, &file);
            let kind = match args.kind {
                Some(k) => k,
                None => match file.kind.as_deref() {
                    Some(s) => parse_enum_key(s, "approximation kind")?,
                    None => bail!("approx needs --kind (or config key `kind`)"),
                },
            };
            let spec = commands::ApproxSpec {
                kind: kind.into(),
                tmax: args.tmax.or(file.tmax),
                points: args.points.or(file.points).unwrap_or(512),
            };
            commands::approx(&p, &spec, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Normalmodes(args) => {
            let p = resolve_params(&args, &file)?;
            let out = resolve_out(&args, &file);
            commands::normalmodes(&p, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Propagator(args) => {
            let p = resolve_params(&args.common, &file)?;
            let out = resolve_out(&args.common, &file);
            let t = args
                .t
                .or(file.t)
                .context("propagator needs --t (or config key `t`)")?;
            commands::propagator(&p, t, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
