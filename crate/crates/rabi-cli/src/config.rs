//! Flag parsing and up-front validation.
//!
//! Every numeric constraint of the underlying library types is re-checked
//! here at parse time so a bad invocation dies with a usage error naming
//! each offending flag, before any computation starts.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rabi_core::analysis::{GridSpec, SweepConfig, DEFAULT_COLLAPSE_THRESHOLD};
use rabi_core::models::{ModelParams, ModelVariant};
use rabi_core::quantum::{DEFAULT_WIGNER_POINTS, DEFAULT_WIGNER_RANGE};

#[derive(Parser, Debug)]
#[command(
    name = "rabi",
    version,
    about = "Quantum Rabi model family in a truncated Fock space: spectra, Wigner functions, entanglement entropy"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Subcommand, Debug)]
pub enum CliCommand {
    /// Sweep the lowest eigenvalues over the coupling strength g
    Spectrum(SpectrumArgs),
    /// Ground-state entanglement entropy over the coupling strength g
    Entropy(EntropyArgs),
    /// Ground-state Wigner function over a phase-space grid
    Wigner(WignerArgs),
    /// Spectral-collapse coupling estimates across Stark couplings
    GcScan(GcScanArgs),
    /// Truncation-convergence table over a set of Fock dimensions
    Converge(ConvergeArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Qrm,
    Qrsm,
    #[value(name = "2pqrm")]
    TwoPhotonQrm,
    #[value(name = "2prsm")]
    TwoPhotonRsm,
}

impl From<ModelKind> for ModelVariant {
    fn from(kind: ModelKind) -> ModelVariant {
        match kind {
            ModelKind::Qrm => ModelVariant::Qrm,
            ModelKind::Qrsm => ModelVariant::Qrsm,
            ModelKind::TwoPhotonQrm => ModelVariant::TwoPhotonQrm,
            ModelKind::TwoPhotonRsm => ModelVariant::TwoPhotonRsm,
        }
    }
}

/// Inclusive axis range written as `MIN:MAX`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisRange {
    pub min: f64,
    pub max: f64,
}

impl FromStr for AxisRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| format!("expected MIN:MAX, got '{s}'"))?;
        let min: f64 = lo
            .trim()
            .parse()
            .map_err(|_| format!("'{lo}' is not a number"))?;
        let max: f64 = hi
            .trim()
            .parse()
            .map_err(|_| format!("'{hi}' is not a number"))?;
        Ok(AxisRange { min, max })
    }
}

impl fmt::Display for AxisRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.min, self.max)
    }
}

#[derive(Args, Debug)]
pub struct ModelOpts {
    /// Model variant
    #[arg(long, value_enum)]
    pub model: ModelKind,
    /// Cavity frequency (the frequency unit)
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub omega_c: f64,
    /// Qubit frequency, in units of omega-c
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub omega_0: f64,
}

#[derive(Args, Debug)]
pub struct SweepOpts {
    /// Lower end of the coupling grid
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub g_min: f64,
    /// Upper end of the coupling grid
    #[arg(long, allow_hyphen_values = true)]
    pub g_max: f64,
    /// Number of grid points (both ends included)
    #[arg(long)]
    pub g_steps: usize,
}

#[derive(Args, Debug)]
pub struct OutputOpts {
    /// Output path prefix; data goes to <out>.csv, plots to <out>.svg
    #[arg(long)]
    pub out: PathBuf,
    /// Also render an SVG plot
    #[arg(long)]
    pub svg: bool,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelOpts,
    /// Stark coupling strength
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub gamma: f64,
    #[command(flatten)]
    pub sweep: SweepOpts,
    /// Fock truncation N
    #[arg(long, default_value_t = 200)]
    pub fock_dim: usize,
    /// Number of lowest eigenvalues to record
    #[arg(long, default_value_t = 10)]
    pub levels: usize,
    /// Collapse detector: spacing fraction of its g-min value
    #[arg(long, default_value_t = DEFAULT_COLLAPSE_THRESHOLD)]
    pub threshold_fraction: f64,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub model: ModelOpts,
    /// Stark coupling strengths, comma-separated (one curve per value)
    #[arg(long, value_delimiter = ',', default_value = "0", allow_hyphen_values = true)]
    pub gamma: Vec<f64>,
    #[command(flatten)]
    pub sweep: SweepOpts,
    /// Fock truncation N
    #[arg(long, default_value_t = 200)]
    pub fock_dim: usize,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct WignerArgs {
    #[command(flatten)]
    pub model: ModelOpts,
    /// Stark coupling strength
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub gamma: f64,
    /// Coupling strength g
    #[arg(long, allow_hyphen_values = true)]
    pub g: f64,
    /// Fock truncation N
    #[arg(long, default_value_t = 200)]
    pub fock_dim: usize,
    /// Phase-space x range as MIN:MAX
    #[arg(long, default_value_t = AxisRange { min: -DEFAULT_WIGNER_RANGE, max: DEFAULT_WIGNER_RANGE }, allow_hyphen_values = true)]
    pub x_range: AxisRange,
    /// Phase-space p range as MIN:MAX
    #[arg(long, default_value_t = AxisRange { min: -DEFAULT_WIGNER_RANGE, max: DEFAULT_WIGNER_RANGE }, allow_hyphen_values = true)]
    pub p_range: AxisRange,
    /// Samples per phase-space axis
    #[arg(long, default_value_t = DEFAULT_WIGNER_POINTS)]
    pub grid_points: usize,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct GcScanArgs {
    #[command(flatten)]
    pub model: ModelOpts,
    /// Stark coupling strengths, comma-separated ascending
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub gamma: Vec<f64>,
    #[command(flatten)]
    pub sweep: SweepOpts,
    /// Fock truncation N
    #[arg(long, default_value_t = 200)]
    pub fock_dim: usize,
    /// Number of lowest eigenvalues in the spacing statistic
    #[arg(long, default_value_t = 10)]
    pub levels: usize,
    /// Collapse detector: spacing fraction of its g-min value
    #[arg(long, default_value_t = DEFAULT_COLLAPSE_THRESHOLD)]
    pub threshold_fraction: f64,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub model: ModelOpts,
    /// Stark coupling strength
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub gamma: f64,
    /// Coupling strength g
    #[arg(long, allow_hyphen_values = true)]
    pub g: f64,
    /// Fock truncations to compare, comma-separated ascending
    #[arg(long, value_delimiter = ',')]
    pub fock_dim: Vec<usize>,
    /// Number of lowest eigenvalues tracked for drift
    #[arg(long, default_value_t = 10)]
    pub levels: usize,
    #[command(flatten)]
    pub output: OutputOpts,
}

/// A fully validated run: what to compute and where to put it.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandConfig,
    pub out: PathBuf,
    pub emit_svg: bool,
}

#[derive(Debug, Clone)]
pub enum CommandConfig {
    Spectrum {
        cfg: SweepConfig,
        threshold_fraction: f64,
    },
    Entropy {
        cfg: SweepConfig,
        gammas: Vec<f64>,
    },
    Wigner {
        params: ModelParams,
        grid: GridSpec,
    },
    GcScan {
        cfg: SweepConfig,
        gammas: Vec<f64>,
        threshold_fraction: f64,
    },
    Converge {
        params: ModelParams,
        dims: Vec<usize>,
        levels: usize,
    },
}

/// Collects `--flag: problem` entries and renders them as one usage error.
#[derive(Debug, Default)]
struct Violations(Vec<String>);

impl Violations {
    fn push(&mut self, flag: &str, problem: impl fmt::Display) {
        self.0.push(format!("--{flag}: {problem}"));
    }

    fn into_result<T>(self, value: T) -> Result<T, String> {
        if self.0.is_empty() {
            Ok(value)
        } else {
            Err(format!("invalid usage\n  {}", self.0.join("\n  ")))
        }
    }
}

fn check_model(v: &mut Violations, model: &ModelOpts, gammas: &[f64], fock_dim: usize) {
    let variant: ModelVariant = model.model.into();
    if !model.omega_c.is_finite() || model.omega_c <= 0.0 {
        v.push("omega-c", "must be a positive number");
    }
    if !model.omega_0.is_finite() {
        v.push("omega-0", "must be finite");
    }
    for &gamma in gammas {
        if !gamma.is_finite() {
            v.push("gamma", "must be finite");
        } else if gamma != 0.0
            && matches!(variant, ModelVariant::Qrm | ModelVariant::TwoPhotonQrm)
        {
            v.push(
                "gamma",
                format!(
                    "must be 0 for the {variant} variant (got {gamma}); use {} instead",
                    if variant == ModelVariant::Qrm {
                        "qrsm"
                    } else {
                        "2prsm"
                    }
                ),
            );
        }
    }
    if fock_dim < 2 {
        v.push("fock-dim", format!("must be at least 2, got {fock_dim}"));
    } else if variant.is_two_photon() && fock_dim < 3 {
        v.push(
            "fock-dim",
            format!("two-photon models need at least 3 Fock states for a nonzero (a^dag)^2, got {fock_dim}"),
        );
    }
}

fn check_sweep(v: &mut Violations, sweep: &SweepOpts) {
    if !sweep.g_min.is_finite() || sweep.g_min < 0.0 {
        v.push("g-min", "must be a finite nonnegative number");
    }
    if !sweep.g_max.is_finite() || sweep.g_max <= sweep.g_min {
        v.push("g-max", format!("must exceed g-min = {}", sweep.g_min));
    }
    if sweep.g_steps < 2 {
        v.push("g-steps", "need at least 2 grid points");
    }
}

fn check_levels(v: &mut Violations, levels: usize, fock_dim: usize) {
    if levels == 0 || levels > 2 * fock_dim {
        v.push(
            "levels",
            format!("must lie in 1..=2*fock-dim = {}", 2 * fock_dim),
        );
    }
}

fn check_threshold(v: &mut Violations, threshold: f64) {
    if !threshold.is_finite() || threshold <= 0.0 || threshold >= 1.0 {
        v.push(
            "threshold-fraction",
            "must lie strictly between 0 and 1",
        );
    }
}

fn model_params(model: &ModelOpts, gamma: f64, g: f64, fock_dim: usize) -> ModelParams {
    ModelParams {
        variant: model.model.into(),
        omega_c: model.omega_c,
        omega_0: model.omega_0,
        g,
        gamma,
        fock_dim,
    }
}

/// Validate parsed flags into a [`RunConfig`]; the error is a usage report
/// listing every invalid flag.
pub fn validate(cli: Cli) -> Result<RunConfig, String> {
    match cli.command {
        CliCommand::Spectrum(args) => {
            let mut v = Violations::default();
            check_model(&mut v, &args.model, &[args.gamma], args.fock_dim);
            check_sweep(&mut v, &args.sweep);
            check_levels(&mut v, args.levels, args.fock_dim);
            check_threshold(&mut v, args.threshold_fraction);
            let cfg = SweepConfig {
                base: model_params(&args.model, args.gamma, 0.0, args.fock_dim),
                g_min: args.sweep.g_min,
                g_max: args.sweep.g_max,
                g_steps: args.sweep.g_steps,
                levels: args.levels,
            };
            v.into_result(RunConfig {
                command: CommandConfig::Spectrum {
                    cfg,
                    threshold_fraction: args.threshold_fraction,
                },
                out: args.output.out,
                emit_svg: args.output.svg,
            })
        }
        CliCommand::Entropy(args) => {
            let mut v = Violations::default();
            check_model(&mut v, &args.model, &args.gamma, args.fock_dim);
            check_sweep(&mut v, &args.sweep);
            if args.gamma.is_empty() {
                v.push("gamma", "need at least one value");
            }
            for pair in args.gamma.windows(2) {
                if pair[0] >= pair[1] {
                    v.push("gamma", "values must be strictly ascending");
                    break;
                }
            }
            let cfg = SweepConfig {
                base: model_params(&args.model, 0.0, 0.0, args.fock_dim),
                g_min: args.sweep.g_min,
                g_max: args.sweep.g_max,
                g_steps: args.sweep.g_steps,
                levels: 1,
            };
            v.into_result(RunConfig {
                command: CommandConfig::Entropy {
                    cfg,
                    gammas: args.gamma,
                },
                out: args.output.out,
                emit_svg: args.output.svg,
            })
        }
        CliCommand::Wigner(args) => {
            let mut v = Violations::default();
            check_model(&mut v, &args.model, &[args.gamma], args.fock_dim);
            if !args.g.is_finite() || args.g < 0.0 {
                v.push("g", "must be a finite nonnegative number");
            }
            for (flag, range) in [("x-range", args.x_range), ("p-range", args.p_range)] {
                if !(range.min.is_finite() && range.max.is_finite()) || range.min >= range.max {
                    v.push(flag, format!("need MIN < MAX, got {range}"));
                }
            }
            if args.grid_points < 2 {
                v.push("grid-points", "need at least 2 samples per axis");
            }
            let grid = GridSpec {
                x_min: args.x_range.min,
                x_max: args.x_range.max,
                p_min: args.p_range.min,
                p_max: args.p_range.max,
                x_points: args.grid_points,
                p_points: args.grid_points,
            };
            v.into_result(RunConfig {
                command: CommandConfig::Wigner {
                    params: model_params(&args.model, args.gamma, args.g, args.fock_dim),
                    grid,
                },
                out: args.output.out,
                emit_svg: args.output.svg,
            })
        }
        CliCommand::GcScan(args) => {
            let mut v = Violations::default();
            check_model(&mut v, &args.model, &args.gamma, args.fock_dim);
            check_sweep(&mut v, &args.sweep);
            check_levels(&mut v, args.levels, args.fock_dim);
            check_threshold(&mut v, args.threshold_fraction);
            if args.gamma.is_empty() {
                v.push("gamma", "need at least one value");
            }
            for pair in args.gamma.windows(2) {
                if pair[0] >= pair[1] {
                    v.push("gamma", "values must be strictly ascending");
                    break;
                }
            }
            if args
                .gamma
                .iter()
                .any(|gamma| gamma.abs() >= args.model.omega_c)
            {
                v.push(
                    "gamma",
                    format!("each |gamma| must stay below omega-c = {}", args.model.omega_c),
                );
            }
            let cfg = SweepConfig {
                base: model_params(&args.model, 0.0, 0.0, args.fock_dim),
                g_min: args.sweep.g_min,
                g_max: args.sweep.g_max,
                g_steps: args.sweep.g_steps,
                levels: args.levels,
            };
            v.into_result(RunConfig {
                command: CommandConfig::GcScan {
                    cfg,
                    gammas: args.gamma,
                    threshold_fraction: args.threshold_fraction,
                },
                out: args.output.out,
                emit_svg: args.output.svg,
            })
        }
        CliCommand::Converge(args) => {
            let mut v = Violations::default();
            let min_dim = args.fock_dim.first().copied().unwrap_or(0);
            check_model(&mut v, &args.model, &[args.gamma], min_dim.max(2));
            if !args.g.is_finite() || args.g < 0.0 {
                v.push("g", "must be a finite nonnegative number");
            }
            if args.fock_dim.len() < 2 {
                v.push("fock-dim", "need at least two dimensions to compare");
            }
            for pair in args.fock_dim.windows(2) {
                if pair[0] >= pair[1] {
                    v.push("fock-dim", "dimensions must be strictly ascending");
                    break;
                }
            }
            let variant: ModelVariant = args.model.model.into();
            let floor = if variant.is_two_photon() { 3 } else { 2 };
            if args.fock_dim.iter().any(|&d| d < floor) {
                v.push("fock-dim", format!("each dimension must be at least {floor}"));
            }
            if args.levels == 0 || args.fock_dim.first().is_some_and(|&d| args.levels > 2 * d) {
                v.push("levels", "must lie in 1..=2*min(fock-dim)");
            }
            v.into_result(RunConfig {
                command: CommandConfig::Converge {
                    params: model_params(&args.model, args.gamma, args.g, min_dim.max(2)),
                    dims: args.fock_dim,
                    levels: args.levels,
                },
                out: args.output.out,
                emit_svg: args.output.svg,
            })
        }
    }
}
