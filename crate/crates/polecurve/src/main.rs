//! Thin command-line front end; all work happens in the library.
//!
//! Exit codes: 0 success, 1 tolerance or convergence failure, 2 usage error,
//! 3 mathematical domain error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polecurve::commands::{
    cmd_classify, cmd_energy, cmd_minimize, cmd_plot, cmd_trace, cmd_validate, CChoice,
    MinimizeConfig, TraceConfig, ValidateConfig,
};
use polecurve::csvio;
use polecurve::error::Error;
use polecurve::geometry::{AmbientVec, PolarPoint, SpaceKind};
use polecurve::stationary::Sign;

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    H2,
    S2,
    E2,
}

impl From<SpaceArg> for SpaceKind {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::H2 => SpaceKind::Hyperbolic,
            SpaceArg::S2 => SpaceKind::Spherical,
            SpaceArg::E2 => SpaceKind::Euclidean,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "polecurve",
    about = "Stationary curves and minimizers of pole-weighted length energies",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one stationary curve and write CSV / SVG
    Trace(TraceArgs),
    /// Check a curve CSV against the stationarity characterization
    Validate(ValidateArgs),
    /// Classify a constant-curvature level set and its stationarity
    Classify(ClassifyArgs),
    /// Evaluate the energy of a curve CSV by quadrature
    Energy(EnergyArgs),
    /// Minimize the energy between two endpoints
    Minimize(MinimizeArgs),
    /// Render a curve CSV as an SVG figure
    Plot(PlotArgs),
}

#[derive(Args)]
struct TraceArgs {
    #[arg(long, value_enum)]
    space: SpaceArg,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    /// First-integral constant, or `auto-circle` to derive it from the seed
    #[arg(long, default_value = "auto-circle")]
    c: String,
    #[arg(long)]
    u0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    v0: f64,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2, allow_hyphen_values = true)]
    sigma0: f64,
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    #[arg(long, default_value_t = 10.0)]
    len: f64,
    /// Radial branch sign: + or -
    #[arg(long, default_value = "+")]
    branch_t: String,
    /// Angular branch sign: + or -
    #[arg(long, default_value = "+")]
    branch_v: String,
    #[arg(long)]
    out_csv: Option<PathBuf>,
    #[arg(long)]
    out_svg: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    input: PathBuf,
    #[arg(long, value_enum)]
    space: SpaceArg,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, default_value_t = 1e-6)]
    tol_residual: f64,
    #[arg(long, default_value_t = 1e-6)]
    tol_drift: f64,
    /// Also run the closed-curve structural checks when the curve closes up
    #[arg(long)]
    check_closed: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, value_enum)]
    space: SpaceArg,
    /// Axis vector as x,y,z
    #[arg(long, value_delimiter = ',', num_args = 3, allow_hyphen_values = true)]
    a: Vec<f64>,
    #[arg(long, allow_hyphen_values = true)]
    tau: f64,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnergyArgs {
    input: PathBuf,
    #[arg(long, value_enum)]
    space: SpaceArg,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MinimizeArgs {
    #[arg(long, value_enum)]
    space: SpaceArg,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long)]
    u1: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    v1: f64,
    #[arg(long)]
    u2: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    v2: f64,
    #[arg(long, default_value_t = 64)]
    vertices: usize,
    #[arg(long, default_value_t = 60_000)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-8)]
    grad_tol: f64,
    #[arg(long, default_value_t = 5)]
    starts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Run the Dijkstra oracle on an NUxNV grid, e.g. 200x400
    #[arg(long)]
    dp_grid: Option<String>,
    #[arg(long)]
    out_report: Option<PathBuf>,
    #[arg(long)]
    out_csv: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    input: PathBuf,
    #[arg(long, value_enum)]
    space: SpaceArg,
    #[arg(long)]
    out: PathBuf,
}

fn parse_sign(s: &str) -> Result<Sign, Error> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        other => Err(Error::InvalidParameter(format!(
            "branch sign must be + or -, got '{other}'"
        ))),
    }
}

fn parse_grid(s: &str) -> Result<(usize, usize), Error> {
    let mut it = s.split(['x', 'X']);
    let bad = || Error::InvalidParameter(format!("grid must look like 200x400, got '{s}'"));
    let nu = it.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
    let nv = it.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
    Ok((nu, nv))
}

fn emit_json<T: serde::Serialize>(value: &T, out: Option<&PathBuf>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::InvalidParameter(format!("serialization failed: {e}")))?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Trace(a) => {
            let c = match a.c.as_str() {
                "auto-circle" | "auto" => CChoice::FromSeed,
                other => CChoice::Explicit(other.parse().map_err(|_| {
                    Error::InvalidParameter(format!("--c must be a number or auto-circle, got '{other}'"))
                })?),
            };
            let cfg = TraceConfig {
                space: a.space.into(),
                alpha: a.alpha,
                c,
                u0: a.u0,
                v0: a.v0,
                sigma0: a.sigma0,
                step: a.step,
                length: a.len,
                branch_t: parse_sign(&a.branch_t)?,
                branch_v: parse_sign(&a.branch_v)?,
                out_csv: a.out_csv,
                out_svg: a.out_svg,
            };
            let (summary, _) = cmd_trace(&cfg)?;
            emit_json(&summary, None)?;
            Ok(0)
        }
        Command::Validate(a) => {
            let space: SpaceKind = a.space.into();
            let curve = csvio::read_curve(&a.input, space)?;
            let cfg = ValidateConfig {
                space,
                alpha: a.alpha,
                c: a.c,
                tol_residual: a.tol_residual,
                tol_drift: a.tol_drift,
                check_closed: a.check_closed,
            };
            let report = cmd_validate(&cfg, &curve)?;
            let passed = report.passed;
            emit_json(&report, a.out.as_ref())?;
            Ok(if passed { 0 } else { 1 })
        }
        Command::Classify(a) => {
            let axis = AmbientVec::new(a.a[0], a.a[1], a.a[2]);
            let report = cmd_classify(a.space.into(), axis, a.tau, a.alpha)?;
            emit_json(&report, a.out.as_ref())?;
            Ok(0)
        }
        Command::Energy(a) => {
            let space: SpaceKind = a.space.into();
            let curve = csvio::read_curve(&a.input, space)?;
            let report = cmd_energy(space, a.alpha, &curve)?;
            emit_json(&report, a.out.as_ref())?;
            Ok(0)
        }
        Command::Minimize(a) => {
            let dp_grid = a.dp_grid.as_deref().map(parse_grid).transpose()?;
            let cfg = MinimizeConfig {
                space: a.space.into(),
                alpha: a.alpha,
                p1: PolarPoint::new(a.u1, a.v1),
                p2: PolarPoint::new(a.u2, a.v2),
                n_vertices: a.vertices,
                max_iters: a.max_iters,
                grad_tol: a.grad_tol,
                starts: a.starts,
                seed: a.seed,
                jobs: a.jobs,
                dp_grid,
                out_csv: a.out_csv,
            };
            let report = cmd_minimize(&cfg)?;
            let ok = report.converged;
            emit_json(&report, a.out_report.as_ref())?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Plot(a) => {
            let space: SpaceKind = a.space.into();
            let curve = csvio::read_curve(&a.input, space)?;
            let content = cmd_plot(&curve)?;
            std::fs::write(&a.out, content)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
