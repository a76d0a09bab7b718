//! `fraclog` command-line front end.
//!
//! Exit codes: 0 on success, 2 for invalid flags or parameter values (the
//! message names the flag), 3 for numerical failures, 1 for I/O errors.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod csv;
pub mod error;
pub mod plot;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use fraclog_core::dynamics::{
    default_escape_bound, DEFAULT_MAX_PERIOD, DEFAULT_PERIOD_TOL, DEFAULT_SAMPLES,
    DEFAULT_TRANSIENT, DEFAULT_X0,
};
use fraclog_core::{
    alpha_slice, bifurcation_scan, find_doublings, fixed_points, iterate, lyapunov, AxisParameter,
    AxisSpec, Family, Lyapunov, MapSpec, OrbitConfig, ScanRow, ScanSettings,
};

use crate::csv::{lyapunov_field, num, status_label, write_atomic, Table};
pub use crate::error::CliError;
use crate::plot::{emit_plot_script, PlotKind};

#[derive(Debug, Parser)]
#[command(
    name = "fraclog",
    version,
    about = "Fractional logistic map dynamics toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Rejected: every computation is deterministic.
    #[arg(long, global = true, hide = true)]
    seed: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Flm,
    Logistic,
    Ricker,
    Hassel,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Flm => Family::Flm,
            FamilyArg::Logistic => Family::ClassicLogistic,
            FamilyArg::Ricker => Family::Ricker,
            FamilyArg::Hassel => Family::Hassel,
        }
    }
}

#[derive(Debug, Clone, Args)]
struct MapArgs {
    #[arg(long, value_enum, default_value = "flm")]
    family: FamilyArg,
    /// FLM order (flm only)
    #[arg(long, value_name = "R", default_value_t = 0.5)]
    alpha: f64,
    #[arg(long = "lambda", value_name = "R", default_value_t = 5.0)]
    lambda: f64,
    /// Ricker/Hassel exponent
    #[arg(long, value_name = "R", default_value_t = 1.0)]
    beta: f64,
}

impl MapArgs {
    fn spec(&self) -> Result<MapSpec, CliError> {
        let family = Family::from(self.family);
        let alpha = if family == Family::Flm {
            self.alpha
        } else {
            0.0
        };
        Ok(MapSpec::new(family, alpha, self.lambda, self.beta)?)
    }

    fn config(&self) -> String {
        self.config_for_axis(None)
    }

    /// Settings line for a scan; the swept parameter is described by the axis.
    fn config_for_axis(&self, axis: Option<AxisParameter>) -> String {
        let mut parts = vec![format!("family={}", Family::from(self.family))];
        if self.family == FamilyArg::Flm && axis != Some(AxisParameter::Alpha) {
            parts.push(format!("alpha={}", self.alpha));
        }
        if axis != Some(AxisParameter::Lambda) {
            parts.push(format!("lambda={}", self.lambda));
        }
        if matches!(self.family, FamilyArg::Ricker | FamilyArg::Hassel) {
            parts.push(format!("beta={}", self.beta));
        }
        parts.join(" ")
    }
}

#[derive(Debug, Clone, Args)]
struct OrbitArgs {
    #[arg(long, value_name = "R", default_value_t = DEFAULT_X0)]
    x0: f64,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_TRANSIENT)]
    transient: usize,
    #[arg(long, value_name = "N", default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Escape bound [default: 10*(1+alpha/2)]
    #[arg(long, value_name = "R")]
    escape_bound: Option<f64>,
}

impl OrbitArgs {
    fn config_for(&self, alpha: f64) -> Result<OrbitConfig, CliError> {
        let cfg = OrbitConfig {
            x0: self.x0,
            transient: self.transient,
            samples: self.samples,
            escape_bound: self
                .escape_bound
                .unwrap_or_else(|| default_escape_bound(alpha)),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn describe(cfg: &OrbitConfig) -> String {
        format!(
            "x0={} transient={} samples={} escape_bound={}",
            cfg.x0, cfg.transient, cfg.samples, cfg.escape_bound
        )
    }
}

#[derive(Debug, Clone, Args)]
struct PeriodArgs {
    #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_PERIOD)]
    max_period: usize,
    /// Relative period tolerance, scaled by max(1, |x|)
    #[arg(long, value_name = "R", default_value_t = DEFAULT_PERIOD_TOL)]
    tol: f64,
    /// Worker threads (never changes the output)
    #[arg(long, value_name = "N", default_value_t = 1)]
    workers: usize,
}

impl PeriodArgs {
    fn settings(&self) -> Result<ScanSettings, CliError> {
        if self.max_period == 0 {
            return Err(CliError::usage("--max-period", "must be positive"));
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(CliError::usage("--tol", "must be a finite value > 0"));
        }
        if self.workers == 0 {
            return Err(CliError::usage("--workers", "must be positive"));
        }
        Ok(ScanSettings {
            max_period: self.max_period,
            tol: self.tol,
            workers: self.workers,
        })
    }

    fn describe(&self) -> String {
        format!("max_period={} tol={}", self.max_period, self.tol)
    }
}

#[derive(Debug, Clone, Args)]
struct AxisArgs {
    #[arg(long, value_name = "R")]
    lambda_min: Option<f64>,
    #[arg(long, value_name = "R")]
    lambda_max: Option<f64>,
    #[arg(long, value_name = "R")]
    alpha_min: Option<f64>,
    #[arg(long, value_name = "R")]
    alpha_max: Option<f64>,
    #[arg(long, value_name = "N", default_value_t = 1601)]
    steps: usize,
}

impl AxisArgs {
    fn is_given(&self) -> bool {
        self.lambda_min.is_some()
            || self.lambda_max.is_some()
            || self.alpha_min.is_some()
            || self.alpha_max.is_some()
    }

    fn axis(&self) -> Result<AxisSpec, CliError> {
        let lambda = (self.lambda_min, self.lambda_max);
        let alpha = (self.alpha_min, self.alpha_max);
        let (parameter, min, max, names) = match (lambda, alpha) {
            ((Some(lo), Some(hi)), (None, None)) => (
                AxisParameter::Lambda,
                lo,
                hi,
                ("--lambda-min", "--lambda-max"),
            ),
            ((None, None), (Some(lo), Some(hi))) => {
                (AxisParameter::Alpha, lo, hi, ("--alpha-min", "--alpha-max"))
            }
            ((None, None), (None, None)) => {
                return Err(CliError::usage(
                    "--lambda-min",
                    "give --lambda-min/--lambda-max or --alpha-min/--alpha-max",
                ))
            }
            ((Some(_), None), _) => return Err(CliError::usage("--lambda-max", "missing")),
            ((None, Some(_)), _) => return Err(CliError::usage("--lambda-min", "missing")),
            (_, (Some(_), None)) => return Err(CliError::usage("--alpha-max", "missing")),
            (_, (None, Some(_))) => return Err(CliError::usage("--alpha-min", "missing")),
            _ => {
                return Err(CliError::usage(
                    "--alpha-min",
                    "a scan sweeps either lambda or alpha, not both",
                ))
            }
        };
        if !min.is_finite() {
            return Err(CliError::usage(names.0, "must be finite"));
        }
        if !max.is_finite() || (self.steps > 1 && max <= min) || (self.steps == 1 && max != min) {
            return Err(CliError::usage(
                names.1,
                if self.steps == 1 {
                    "a one-step axis needs min = max"
                } else {
                    "must exceed the axis minimum"
                },
            ));
        }
        match parameter {
            AxisParameter::Lambda if !(min > 0.0) => {
                return Err(CliError::usage(names.0, "lambda must be positive"))
            }
            AxisParameter::Alpha if !(min >= 0.0) => {
                return Err(CliError::usage(names.0, "alpha must be >= 0"))
            }
            AxisParameter::Alpha if max > 5.0 => {
                return Err(CliError::usage(names.1, "alpha must be <= 5"))
            }
            _ => {}
        }
        if self.steps == 0 {
            return Err(CliError::usage("--steps", "must be positive"));
        }
        Ok(AxisSpec {
            parameter,
            min,
            max,
            steps: self.steps,
        })
    }

    fn describe(axis: &AxisSpec) -> String {
        let name = match axis.parameter {
            AxisParameter::Lambda => "lambda",
            AxisParameter::Alpha => "alpha",
        };
        format!(
            "{name}_min={} {name}_max={} steps={}",
            axis.min, axis.max, axis.steps
        )
    }

    /// Largest order the scan touches, for the default escape bound.
    fn alpha_for_escape(axis: &AxisSpec, map_alpha: f64) -> f64 {
        match axis.parameter {
            AxisParameter::Alpha => axis.max,
            AxisParameter::Lambda => map_alpha,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a map (and its derivative) at one point
    Eval {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, value_name = "R")]
        x: f64,
        /// Also print the derivative
        #[arg(long)]
        derivative: bool,
    },
    /// Iterate a map and write the recorded orbit (CSV: n,x)
    Orbit {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        orbit: OrbitArgs,
        #[arg(short = 'o', value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Positive fixed points of the FLM (CSV: x,residual,multiplier,stability)
    FixedPoints {
        #[arg(long, value_name = "R", default_value_t = 0.5)]
        alpha: f64,
        #[arg(long = "lambda", value_name = "R", default_value_t = 5.0)]
        lambda: f64,
        #[arg(short = 'o', value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Bifurcation scan over lambda or alpha
    Bifurcation {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        axis: AxisArgs,
        #[command(flatten)]
        orbit: OrbitArgs,
        #[command(flatten)]
        period: PeriodArgs,
        #[arg(short = 'o', value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// FLM scan over alpha at fixed lambda
    AlphaSlice {
        #[arg(long = "lambda", value_name = "R", default_value_t = 5.0)]
        lambda: f64,
        #[arg(long, value_name = "R", default_value_t = 0.0)]
        alpha_min: f64,
        #[arg(long, value_name = "R", default_value_t = 1.0)]
        alpha_max: f64,
        #[arg(long, value_name = "N", default_value_t = 1601)]
        steps: usize,
        #[command(flatten)]
        orbit: OrbitArgs,
        #[command(flatten)]
        period: PeriodArgs,
        #[arg(short = 'o', value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Locate period doublings and estimate Feigenbaum ratios
    Doublings {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        axis: AxisArgs,
        #[command(flatten)]
        orbit: OrbitArgs,
        #[command(flatten)]
        period: PeriodArgs,
        /// Number of doublings to locate
        #[arg(long, value_name = "N", default_value_t = 3)]
        max_k: usize,
        #[arg(short = 'o', value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Lyapunov exponent at one parameter, or a sweep when an axis is given
    Lyapunov {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        axis: AxisArgs,
        #[command(flatten)]
        orbit: OrbitArgs,
        #[command(flatten)]
        period: PeriodArgs,
        #[arg(short = 'o', value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// FLM values (or k-fold iterates) over x, alpha in [0,1]^2 (CSV: x,alpha,value)
    Surface {
        #[arg(long = "lambda", value_name = "R", default_value_t = 4.0)]
        lambda: f64,
        /// Number of map compositions
        #[arg(long, value_name = "N", default_value_t = 1)]
        iterates: usize,
        #[arg(long, value_name = "N", default_value_t = 101)]
        steps: usize,
        #[arg(short = 'o', value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Write a plotting script for an existing CSV
    Plot {
        /// bifurcation, lyapunov or surface
        #[arg(long, value_name = "KIND")]
        kind: String,
        csv: PathBuf,
    },
    /// Run the oracle suite and print a pass/fail table
    Verify,
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = Cli::command()
        .mut_subcommands(|c| c.allow_negative_numbers(true))
        .try_get_matches_from(argv)
        .and_then(|m| Cli::from_arg_matches(&m));
    let cli = match parsed {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(cli, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    if cli.seed.is_some() {
        return Err(CliError::usage(
            "--seed",
            "fraclog is fully deterministic and takes no random seed",
        ));
    }
    match cli.command {
        Command::Eval { map, x, derivative } => {
            let spec = map.spec()?;
            let v = spec.eval(x)?;
            writeln!(out, "{v}").map_err(stdout_err)?;
            if derivative {
                writeln!(out, "{}", spec.derivative(x)?).map_err(stdout_err)?;
            }
            Ok(())
        }
        Command::Orbit { map, orbit, output } => {
            let spec = map.spec()?;
            let cfg = orbit.config_for(spec.order())?;
            let result = iterate(&spec, &cfg)?;
            let config = format!(
                "command=orbit {} {}",
                map.config(),
                OrbitArgs::describe(&cfg)
            );
            let mut table = Table::new(&config, "n,x");
            table.comments.push(format!("status: {}", result.status));
            table.lines = result
                .points
                .iter()
                .enumerate()
                .map(|(i, &x)| format!("{},{}", cfg.transient + i + 1, num(x)))
                .collect();
            emit(out, output.as_deref(), &table, None)
        }
        Command::FixedPoints {
            alpha,
            lambda,
            output,
        } => {
            MapSpec::flm(alpha, lambda)?;
            let set = fixed_points(alpha, lambda)?;
            let config = format!("command=fixed-points alpha={alpha} lambda={lambda}");
            let mut table = Table::new(&config, "x,residual,multiplier,stability");
            table.comments.push(format!(
                "origin: x = 0 is a fixed point ({})",
                set.includes_origin
            ));
            table.lines = set
                .roots
                .iter()
                .map(|r| {
                    format!(
                        "{},{},{},{}",
                        num(r.x),
                        num(r.residual),
                        num(r.multiplier),
                        r.stability
                    )
                })
                .collect();
            emit(out, output.as_deref(), &table, None)
        }
        Command::Bifurcation {
            map,
            axis,
            orbit,
            period,
            output,
        } => {
            let spec = map.spec()?;
            let axis_spec = axis.axis()?;
            if axis_spec.parameter == AxisParameter::Alpha && spec.family != Family::Flm {
                return Err(CliError::usage(
                    "--family",
                    "an alpha axis needs --family flm",
                ));
            }
            let cfg = orbit.config_for(AxisArgs::alpha_for_escape(&axis_spec, spec.order()))?;
            let settings = period.settings()?;
            let rows = bifurcation_scan(&spec, &axis_spec, &cfg, &settings)?;
            let config = format!(
                "command=bifurcation {} {} {} {}",
                map.config_for_axis(Some(axis_spec.parameter)),
                AxisArgs::describe(&axis_spec),
                OrbitArgs::describe(&cfg),
                period.describe()
            );
            emit_scan(out, output.as_deref(), &rows, &config)
        }
        Command::AlphaSlice {
            lambda,
            alpha_min,
            alpha_max,
            steps,
            orbit,
            period,
            output,
        } => {
            MapSpec::flm(0.0, lambda)?;
            let axis_args = AxisArgs {
                lambda_min: None,
                lambda_max: None,
                alpha_min: Some(alpha_min),
                alpha_max: Some(alpha_max),
                steps,
            };
            let axis_spec = axis_args.axis()?;
            let cfg = orbit.config_for(axis_spec.max)?;
            let settings = period.settings()?;
            let rows = alpha_slice(lambda, &axis_spec, &cfg, &settings)?;
            let config = format!(
                "command=alpha-slice lambda={lambda} {} {} {}",
                AxisArgs::describe(&axis_spec),
                OrbitArgs::describe(&cfg),
                period.describe()
            );
            emit_scan(out, output.as_deref(), &rows, &config)
        }
        Command::Doublings {
            map,
            axis,
            orbit,
            period,
            max_k,
            output,
        } => {
            let spec = map.spec()?;
            let axis_spec = axis.axis()?;
            let cfg = orbit.config_for(AxisArgs::alpha_for_escape(&axis_spec, spec.order()))?;
            let settings = period.settings()?;
            let seq = find_doublings(&spec, &axis_spec, &cfg, max_k, &settings)?;
            let config = format!(
                "command=doublings {} {} {} {} max_k={max_k}",
                map.config_for_axis(Some(axis_spec.parameter)),
                AxisArgs::describe(&axis_spec),
                OrbitArgs::describe(&cfg),
                period.describe()
            );
            let mut table = Table::new(&config, "k,period_from,period_to,param,delta");
            table.lines = seq
                .bifurcation_params
                .iter()
                .enumerate()
                .map(|(k, &p)| {
                    let delta = k
                        .checked_sub(2)
                        .and_then(|i| seq.delta_estimates.get(i))
                        .map(|&d| num(d))
                        .unwrap_or_default();
                    format!("{k},{},{},{},{delta}", 1usize << k, 2usize << k, num(p))
                })
                .collect();
            emit(out, output.as_deref(), &table, None)
        }
        Command::Lyapunov {
            map,
            axis,
            orbit,
            period,
            output,
        } => {
            let spec = map.spec()?;
            if !axis.is_given() {
                let cfg = orbit.config_for(spec.order())?;
                let value = match lyapunov(&spec, &cfg)? {
                    Lyapunov::Value(v) => v.to_string(),
                    Lyapunov::Undefined => "undefined".to_string(),
                };
                return writeln!(out, "{value}").map_err(stdout_err);
            }
            let axis_spec = axis.axis()?;
            let cfg = orbit.config_for(AxisArgs::alpha_for_escape(&axis_spec, spec.order()))?;
            let settings = period.settings()?;
            let rows = bifurcation_scan(&spec, &axis_spec, &cfg, &settings)?;
            let config = format!(
                "command=lyapunov {} {} {} {}",
                map.config_for_axis(Some(axis_spec.parameter)),
                AxisArgs::describe(&axis_spec),
                OrbitArgs::describe(&cfg),
                period.describe()
            );
            let mut table = Table::new(&config, "param,lyapunov,status");
            table.lines = rows
                .iter()
                .map(|r| {
                    format!(
                        "{},{},{}",
                        num(r.param_value),
                        lyapunov_field(&r.lyapunov),
                        status_label(&r.orbit_status)
                    )
                })
                .collect();
            emit(out, output.as_deref(), &table, Some(PlotKind::Lyapunov))
        }
        Command::Surface {
            lambda,
            iterates,
            steps,
            output,
        } => {
            MapSpec::flm(0.0, lambda)?;
            if iterates == 0 {
                return Err(CliError::usage("--iterates", "must be positive"));
            }
            if steps < 2 {
                return Err(CliError::usage(
                    "--steps",
                    "a surface needs at least 2 steps",
                ));
            }
            let config =
                format!("command=surface lambda={lambda} iterates={iterates} steps={steps}");
            let mut table = Table::new(&config, "x,alpha,value");
            let grid: Vec<f64> = (0..steps).map(|i| i as f64 / (steps - 1) as f64).collect();
            for &alpha in &grid {
                for &x in &grid {
                    let value = compose(alpha, lambda, x, iterates);
                    table
                        .lines
                        .push(format!("{},{},{}", num(x), num(alpha), num(value)));
                }
            }
            emit(out, output.as_deref(), &table, Some(PlotKind::Surface))
        }
        Command::Plot { kind, csv } => {
            let kind: PlotKind = kind.parse()?;
            let script = emit_plot_script(&csv, kind)?;
            writeln!(out, "{}", script.display()).map_err(stdout_err)
        }
        Command::Verify => {
            let checks = verify::run_all();
            write!(out, "{}", verify::render(&checks)).map_err(stdout_err)?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed == 0 {
                Ok(())
            } else {
                Err(CliError::VerifyFailed {
                    failed,
                    total: checks.len(),
                })
            }
        }
    }
}

/// `iterates`-fold composition of the FLM; NaN once an iterate leaves the
/// real domain.
fn compose(alpha: f64, lam: f64, x: f64, iterates: usize) -> f64 {
    let mut v = x;
    for _ in 0..iterates {
        match fraclog_core::flm_eval(alpha, lam, v) {
            Ok(next) => v = next,
            Err(_) => return f64::NAN,
        }
    }
    v
}

fn stdout_err(source: std::io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn emit(
    out: &mut dyn Write,
    path: Option<&Path>,
    table: &Table,
    plot: Option<PlotKind>,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            write_atomic(p, &table.render())?;
            if let Some(kind) = plot {
                emit_plot_script(p, kind)?;
            }
            Ok(())
        }
        None => out.write_all(table.render().as_bytes()).map_err(stdout_err),
    }
}

fn emit_scan(
    out: &mut dyn Write,
    path: Option<&Path>,
    rows: &[ScanRow],
    config: &str,
) -> Result<(), CliError> {
    let table = csv::scan_table(rows, config)?;
    emit(out, path, &table, Some(PlotKind::Bifurcation))
}
