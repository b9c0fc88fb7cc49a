//! `regamma` command-line front end.
//!
//! Exit codes: `0` success, `1` usage or evaluation error (or a failed
//! `verify` check), `2` when a result comes back with `tolerance_not_met`.

mod bench;
mod sweep;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::gamma::{
    gamma_cauchy_saalschutz, gamma_negative, gamma_ratio, gamma_with_method, recip_gamma,
    recip_gamma_neg_reflection, GammaValue, MethodTag, Provenance,
};
use crate::hankel::{inverse_laplace_contour, HankelContour};
use crate::kernel::sin_pi;
use crate::quadrature::{ConditionFlag, IntegralResult, QuadratureConfig};

pub use sweep::{Preset, SweepRow, SweepSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_TOLERANCE: i32 = 2;

const EPS_ENV: &str = "REGAMMA_EPS_REL";

#[derive(Debug, Parser)]
#[command(
    name = "regamma",
    version,
    about = "Reciprocal Gamma through regularized integrals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one function at one argument.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Evaluate on a grid and write CSV.
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Run the cross-representation and property checks.
    Verify(VerifyArgs),
    /// Time every method on a fixed grid against an oracle.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct Tolerance {
    /// Relative tolerance handed to the quadrature engine.
    #[arg(long, env = EPS_ENV, default_value_t = 1e-8)]
    eps_rel: f64,
}

impl Tolerance {
    fn config(&self) -> Result<QuadratureConfig> {
        let cfg = QuadratureConfig::with_eps_rel(self.eps_rel);
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FnKind {
    RecipGamma,
    Gamma,
    GammaNeg,
    RecipGammaNeg,
    GammaRatio,
    InvLaplace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Real,
    Power,
    Log,
    Cs,
    Hankel,
}

impl From<MethodArg> for MethodTag {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Real => MethodTag::RealAxis,
            MethodArg::Power => MethodTag::PowerSubst,
            MethodArg::Log => MethodTag::LogForm,
            MethodArg::Cs => MethodTag::CauchySaalschutz,
            MethodArg::Hankel => MethodTag::Hankel,
        }
    }
}

#[derive(Debug, Args)]
struct EvalArgs {
    z: f64,
    #[command(flatten)]
    tol: Tolerance,
    #[arg(long = "fn", value_enum, default_value = "recip-gamma")]
    function: FnKind,
    #[arg(long, value_enum, default_value = "real")]
    method: MethodArg,
    /// Denominator argument for `gamma-ratio`.
    #[arg(long)]
    b: Option<f64>,
    /// Time for `inv-laplace`.
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Hankel ray angle.
    #[arg(long)]
    delta: Option<f64>,
    /// Hankel arc radius.
    #[arg(long)]
    r0: Option<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    tol: Tolerance,
    #[arg(long, value_enum, conflicts_with_all = ["min", "max", "step"])]
    preset: Option<Preset>,
    #[arg(long, requires_all = ["max", "step"])]
    min: Option<f64>,
    #[arg(long)]
    max: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    #[arg(long = "fn", value_enum)]
    function: Option<FnKind>,
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Grid points this close to an integer are snapped to it.
    #[arg(long, default_value_t = 1e-6)]
    integer_radius: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    tol: Tolerance,
    /// Add the contour-invariance checks.
    #[arg(long)]
    hankel: bool,
    /// Add the near-integer accuracy report.
    #[arg(long)]
    near_integer: bool,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Tolerances to benchmark, comma or space separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    eps_rel: Vec<f64>,
    #[arg(long, value_enum, default_value = "lanczos")]
    compare_oracle: bench::OracleKind,
    /// Product length for the product oracle.
    #[arg(long, default_value_t = 100_000.0)]
    terms: f64,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parse `args` (program name first) and run, writing to stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Eval(a) => a.tol.config().and_then(|cfg| cmd_eval(&a, &cfg, out)),
        Command::Sweep(a) => a
            .tol
            .config()
            .and_then(|cfg| sweep_from_args(&a, &cfg, out)),
        Command::Verify(a) => a
            .tol
            .config()
            .and_then(|cfg| verify::cmd_verify(a.hankel, a.near_integer, &cfg, out)),
        Command::Bench(a) => bench_from_args(&a, out),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io_error(context: &str, e: std::io::Error) -> Error {
    Error::Io(format!("{context}: {e}"))
}

/// Inputs besides `z` that some functions need.
#[derive(Debug, Clone, Copy)]
pub struct Extras {
    pub b: Option<f64>,
    pub t: f64,
    pub contour: HankelContour,
}

impl Default for Extras {
    fn default() -> Self {
        Self {
            b: None,
            t: 1.0,
            contour: HankelContour::default(),
        }
    }
}

/// `Γ(-z)` by any representation of `1/Γ(z)`: `Γ(-z) = -π / (z sin(πz) Γ(z))`.
fn gamma_neg_with_method(z: f64, cfg: &QuadratureConfig, method: MethodTag) -> Result<GammaValue> {
    match method {
        MethodTag::RealAxis => gamma_negative(z, cfg),
        MethodTag::CauchySaalschutz => gamma_cauchy_saalschutz(z, cfg),
        _ => {
            crate::kernel::decompose(z)?;
            let r = recip_gamma(z, cfg, method)?;
            let value = -std::f64::consts::PI * r.value / (z * sin_pi(z));
            Ok(GammaValue { value, ..r })
        }
    }
}

/// Evaluate `function` at `z`.
pub fn evaluate(
    function: FnKind,
    z: f64,
    method: MethodTag,
    cfg: &QuadratureConfig,
    extras: &Extras,
) -> Result<GammaValue> {
    match function {
        FnKind::RecipGamma => recip_gamma(z, cfg, method),
        FnKind::Gamma => gamma_with_method(z, cfg, method),
        FnKind::GammaNeg => gamma_neg_with_method(z, cfg, method),
        FnKind::RecipGammaNeg => recip_gamma_neg_reflection(z, cfg),
        FnKind::GammaRatio => {
            let b = extras
                .b
                .ok_or_else(|| Error::InvalidArgument("gamma-ratio needs --b".into()))?;
            gamma_ratio(z, b, cfg)
        }
        FnKind::InvLaplace => {
            let r = inverse_laplace_contour(z, extras.t, &extras.contour, cfg)?;
            Ok(GammaValue {
                value: r.value.re,
                method: MethodTag::Hankel,
                quadrature: Provenance::Quadrature(IntegralResult {
                    value: r.value.re,
                    abs_error_estimate: r.abs_error_estimate,
                    evaluations: r.evaluations,
                    condition_flag: r.condition_flag,
                }),
            })
        }
    }
}

fn exit_for(flag: ConditionFlag) -> i32 {
    if flag == ConditionFlag::ToleranceNotMet {
        EXIT_TOLERANCE
    } else {
        EXIT_OK
    }
}

fn cmd_eval(a: &EvalArgs, cfg: &QuadratureConfig, out: &mut dyn Write) -> Result<i32> {
    let mut contour = HankelContour::default();
    if let Some(d) = a.delta {
        contour.delta = d;
    }
    if let Some(r) = a.r0 {
        contour.r0 = r;
    }
    let extras = Extras {
        b: a.b,
        t: a.t,
        contour,
    };
    let v = evaluate(a.function, a.z, a.method.into(), cfg, &extras)?;
    let report = format!(
        "value: {:.16e}\nmethod: {}\nabs_err: {:.3e}\nflag: {}\nevaluations: {}\n",
        v.value,
        v.method,
        v.abs_error(),
        v.condition_flag(),
        v.evaluations()
    );
    out.write_all(report.as_bytes())
        .map_err(|e| io_error("stdout", e))?;
    Ok(exit_for(v.condition_flag()))
}

fn sweep_from_args(a: &SweepArgs, cfg: &QuadratureConfig, out: &mut dyn Write) -> Result<i32> {
    let mut spec = match (a.preset, a.min, a.max, a.step) {
        (Some(p), ..) => SweepSpec::preset(p),
        (None, Some(min), Some(max), Some(step)) => SweepSpec {
            z_min: min,
            z_max: max,
            step,
            ..SweepSpec::default()
        },
        _ => {
            return Err(Error::InvalidArgument(
                "sweep needs --preset or all of --min, --max, --step".into(),
            ))
        }
    };
    if let Some(f) = a.function {
        spec.function = f;
    }
    if let Some(m) = a.method {
        spec.method = m.into();
    }
    spec.integer_exclusion_radius = a.integer_radius;
    let rows = sweep::run_sweep(&spec, cfg)?;
    sweep::write_csv(&a.out, &rows)?;
    let worst = rows
        .iter()
        .filter(|r| r.flag == ConditionFlag::ToleranceNotMet.as_str())
        .count();
    writeln!(out, "wrote {} rows to {}", rows.len(), a.out.display())
        .map_err(|e| io_error("stdout", e))?;
    Ok(if worst > 0 { EXIT_TOLERANCE } else { EXIT_OK })
}

fn bench_from_args(a: &BenchArgs, out: &mut dyn Write) -> Result<i32> {
    if !(a.terms >= 1.0 && a.terms.is_finite()) {
        return Err(Error::InvalidArgument(format!("--terms {}", a.terms)));
    }
    let eps = if a.eps_rel.is_empty() {
        let from_env = match std::env::var(EPS_ENV) {
            Ok(v) => v
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("{EPS_ENV}={v}")))?,
            Err(_) => 1e-8,
        };
        vec![from_env]
    } else {
        a.eps_rel.clone()
    };
    let table = bench::run_bench(&eps, a.compare_oracle, a.terms as usize)?;
    let csv = bench::to_csv(&table);
    match &a.out {
        Some(path) => {
            std::fs::write(path, csv).map_err(|e| io_error(&path.display().to_string(), e))?
        }
        None => out
            .write_all(csv.as_bytes())
            .map_err(|e| io_error("stdout", e))?,
    }
    Ok(EXIT_OK)
}
