//! Batch front end for the ellipsoid library: evaluates potentials, fields,
//! confocal parameters, and demagnetizing factors over point lists and
//! grids, and runs a self-contained validation suite.
//!
//! Design constraints the commands share:
//!
//! - output rows follow input order exactly, whatever `--threads` says;
//! - reruns with identical inputs produce byte-identical output (numbers are
//!   printed with 17 significant digits, `validate` is seeded);
//! - exit code 0 means success with every quadrature converged, 1 means a
//!   usage or domain error (diagnostic on stderr), 2 means results were
//!   produced but at least one quadrature missed its tolerance (the affected
//!   rows are flagged).

mod output;
mod points;
mod validate;

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use ellipsoid_core::{
    demag_factors_integral, field_at, hollow_shell_potential, potential_at, Ellipsoid,
    QuadratureConfig,
};
use rayon::prelude::*;

use output::OutputFormat;

pub use points::{parse_point_arg, parse_points_file, PointsError};

/// Entry point shared by the binary and the tests: parses `argv`, runs the
/// command, and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version to stdout and usage errors to stderr.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            1
        }
    }
}

#[derive(Parser)]
#[command(
    name = "ellipsoid",
    version,
    about = "Potentials, fields, and demagnetizing factors of solid ellipsoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Newtonian potential at points (unit density unless --G is given)
    Potential(PotentialArgs),
    /// Gradient of the potential at points
    Field(FieldArgs),
    /// Demagnetizing factors of the body
    Demag(DemagArgs),
    /// Confocal parameter and interior/boundary/exterior class of points
    Tau(TauArgs),
    /// Run the built-in validation suite against a body
    Validate(ValidateArgs),
    /// Potential on a rectangular grid (row-major, endpoints included)
    Grid(GridArgs),
}

/// Semi-axes as one comma-separated argument; a newtype so clap treats the
/// list as a single occurrence.
#[derive(Clone, Debug)]
struct AxesArg(Vec<f64>);

fn parse_axes_arg(s: &str) -> Result<AxesArg, String> {
    let mut axes = Vec::new();
    for token in s.split(',') {
        let token = token.trim();
        let value: f64 = token
            .parse()
            .map_err(|_| format!("{token:?} is not a number"))?;
        axes.push(value);
    }
    Ok(AxesArg(axes))
}

#[derive(Args)]
struct CommonArgs {
    /// Semi-axes a1,a2,... (at least three, all positive)
    #[arg(long, value_name = "A1,A2,...", value_parser = parse_axes_arg, allow_hyphen_values = true)]
    axes: AxesArg,
}

impl CommonArgs {
    fn body(&self) -> anyhow::Result<Ellipsoid> {
        Ok(Ellipsoid::new(&self.axes.0)?)
    }
}

#[derive(Args)]
struct PointOpts {
    /// Evaluation point x1,x2,... (repeatable)
    #[arg(long = "point", value_name = "X1,X2,...", allow_hyphen_values = true)]
    point: Vec<String>,
    /// File of points, one per line: comma-separated or a JSON array
    #[arg(long, value_name = "PATH")]
    points_file: Option<PathBuf>,
}

impl PointOpts {
    fn gather(&self, dim: usize) -> anyhow::Result<Vec<Vec<f64>>> {
        if self.point.is_empty() && self.points_file.is_none() {
            bail!("no points given: pass --point or --points-file");
        }
        let mut all = Vec::with_capacity(self.point.len());
        for arg in &self.point {
            all.push(parse_point_arg(arg, dim)?);
        }
        if let Some(path) = &self.points_file {
            all.extend(parse_points_file(path, dim)?);
        }
        Ok(all)
    }
}

#[derive(Args)]
struct QuadOpts {
    /// Relative tolerance for adaptive quadrature (default 1e-10)
    #[arg(long, value_name = "REL")]
    rel_tol: Option<f64>,
    /// Absolute tolerance for adaptive quadrature (default 1e-14)
    #[arg(long, value_name = "ABS")]
    abs_tol: Option<f64>,
}

impl QuadOpts {
    fn config(&self) -> anyhow::Result<QuadratureConfig> {
        let mut cfg = QuadratureConfig::default();
        if let Some(rel) = self.rel_tol {
            if !(rel.is_finite() && rel > 0.0) {
                bail!("--rel-tol must be a positive finite real, got {rel}");
            }
            cfg.rel_tol = rel;
        }
        if let Some(abs) = self.abs_tol {
            if !(abs.is_finite() && abs > 0.0) {
                bail!("--abs-tol must be a positive finite real, got {abs}");
            }
            cfg.abs_tol = abs;
        }
        Ok(cfg)
    }
}

#[derive(Args)]
struct FormatOpt {
    /// Output format: JSON lines or headerless CSV
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

#[derive(Args)]
struct ThreadOpts {
    /// Worker threads (default: ELLIPSOID_THREADS, else all cores)
    #[arg(long, value_name = "K")]
    threads: Option<usize>,
}

impl ThreadOpts {
    fn resolve(&self) -> anyhow::Result<Option<usize>> {
        let requested = match self.threads {
            Some(n) => Some(n),
            None => match std::env::var("ELLIPSOID_THREADS") {
                Ok(raw) => Some(
                    raw.parse::<usize>()
                        .map_err(|_| anyhow!("ELLIPSOID_THREADS must be a positive integer, got {raw:?}"))?,
                ),
                Err(_) => None,
            },
        };
        if requested == Some(0) {
            bail!("thread count must be at least 1");
        }
        Ok(requested)
    }
}

/// Runs `f` inside a dedicated pool when a thread count was requested,
/// otherwise on the global default pool.
fn with_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> anyhow::Result<R> {
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| anyhow!("cannot build thread pool: {e}"))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

#[derive(Args)]
struct PotentialArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    points: PointOpts,
    #[command(flatten)]
    quad: QuadOpts,
    #[command(flatten)]
    format: FormatOpt,
    #[command(flatten)]
    threads: ThreadOpts,
    /// Hollow-shell variant: the body scaled by this factor minus the body
    #[arg(long, value_name = "S")]
    scale: Option<f64>,
    /// Gravitational constant: switches to the physical potential
    /// 4 pi G rho N(x); requires exactly one of --rho/--mass
    #[arg(long = "G", value_name = "G")]
    gravitational_constant: Option<f64>,
    /// Uniform mass density of the body (or shell material)
    #[arg(long, value_name = "RHO")]
    rho: Option<f64>,
    /// Total mass, converted to a density by the solid volume (the shell
    /// volume when --scale is given)
    #[arg(long, value_name = "M")]
    mass: Option<f64>,
}

impl PotentialArgs {
    /// The constant multiplying the geometric potential: 1 for unit
    /// density, `4 pi G rho` when gravity flags are present.
    fn gravity_factor(&self, e: &Ellipsoid) -> anyhow::Result<f64> {
        let g = match self.gravitational_constant {
            None => {
                if self.rho.is_some() || self.mass.is_some() {
                    bail!("--rho/--mass require --G");
                }
                return Ok(1.0);
            }
            Some(g) => g,
        };
        if !(g.is_finite() && g > 0.0) {
            bail!("--G must be a positive finite real, got {g}");
        }
        if e.dim() != 3 {
            bail!("gravity scaling applies to three-dimensional bodies only");
        }
        let rho = match (self.rho, self.mass) {
            (Some(rho), None) => rho,
            (None, Some(mass)) => {
                if !(mass.is_finite() && mass > 0.0) {
                    bail!("--mass must be a positive finite real, got {mass}");
                }
                let reference = match self.scale {
                    Some(s) => e.volume() * (s.powi(3) - 1.0),
                    None => e.volume(),
                };
                mass / reference
            }
            (Some(_), Some(_)) => bail!("--rho and --mass are mutually exclusive"),
            (None, None) => bail!("--G requires exactly one of --rho/--mass"),
        };
        if !(rho.is_finite() && rho > 0.0) {
            bail!("density must be a positive finite real, got {rho}");
        }
        Ok(4.0 * PI * g * rho)
    }
}

#[derive(Args)]
struct FieldArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    points: PointOpts,
    #[command(flatten)]
    quad: QuadOpts,
    #[command(flatten)]
    format: FormatOpt,
    #[command(flatten)]
    threads: ThreadOpts,
}

#[derive(Args)]
struct DemagArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    quad: QuadOpts,
    #[command(flatten)]
    format: FormatOpt,
}

#[derive(Args)]
struct TauArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    points: PointOpts,
    #[command(flatten)]
    format: FormatOpt,
    #[command(flatten)]
    threads: ThreadOpts,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Seed for the randomized checks; fixed seed, fixed report
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    quad: QuadOpts,
    #[command(flatten)]
    threads: ThreadOpts,
}

#[derive(Args)]
struct GridArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Per-axis extent MIN:MAX:STEPS, given once per axis
    #[arg(long = "grid", value_name = "MIN:MAX:STEPS", allow_hyphen_values = true)]
    grid: Vec<String>,
    #[command(flatten)]
    quad: QuadOpts,
    #[command(flatten)]
    format: FormatOpt,
    #[command(flatten)]
    threads: ThreadOpts,
}

fn dispatch(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Potential(args) => run_potential(args),
        Command::Field(args) => run_field(args),
        Command::Demag(args) => run_demag(args),
        Command::Tau(args) => run_tau(args),
        Command::Validate(args) => run_validate(args),
        Command::Grid(args) => run_grid(args),
    }
}

/// Prints rows and converts "all converged" into the exit code contract.
fn emit(rows: Vec<(String, bool)>) -> anyhow::Result<i32> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut all_converged = true;
    for (row, converged) in rows {
        writeln!(out, "{row}").context("cannot write to stdout")?;
        all_converged &= converged;
    }
    Ok(if all_converged { 0 } else { 2 })
}

fn potential_rows(
    e: &Ellipsoid,
    points: &[Vec<f64>],
    cfg: &QuadratureConfig,
    format: OutputFormat,
    threads: Option<usize>,
    scale: Option<f64>,
    factor: f64,
) -> anyhow::Result<Vec<(String, bool)>> {
    with_pool(threads, || {
        points
            .par_iter()
            .map(|x| -> anyhow::Result<(String, bool)> {
                let pv = match scale {
                    Some(s) => hollow_shell_potential(e, s, x, cfg)?,
                    None => potential_at(e, x, cfg)?,
                };
                let converged = pv.quadrature.converged;
                let row = output::potential_row(
                    format,
                    x,
                    &pv.point_class,
                    factor * pv.value,
                    factor.abs() * pv.quadrature.error_estimate,
                    converged,
                );
                Ok((row, converged))
            })
            .collect()
    })?
}

fn run_potential(args: PotentialArgs) -> anyhow::Result<i32> {
    let e = args.common.body()?;
    let points = args.points.gather(e.dim())?;
    let cfg = args.quad.config()?;
    let threads = args.threads.resolve()?;
    let factor = args.gravity_factor(&e)?;
    let rows = potential_rows(
        &e,
        &points,
        &cfg,
        args.format.format,
        threads,
        args.scale,
        factor,
    )?;
    emit(rows)
}

fn run_field(args: FieldArgs) -> anyhow::Result<i32> {
    let e = args.common.body()?;
    let points = args.points.gather(e.dim())?;
    let cfg = args.quad.config()?;
    let threads = args.threads.resolve()?;
    let format = args.format.format;
    let rows = with_pool(threads, || {
        points
            .par_iter()
            .map(|x| -> anyhow::Result<(String, bool)> {
                let fv = field_at(&e, x, &cfg)?;
                let converged = fv.converged();
                let row = output::field_row(
                    format,
                    x,
                    &fv.point_class,
                    &fv.components,
                    fv.error_estimate(),
                    converged,
                );
                Ok((row, converged))
            })
            .collect::<anyhow::Result<Vec<_>>>()
    })??;
    emit(rows)
}

fn run_demag(args: DemagArgs) -> anyhow::Result<i32> {
    let e = args.common.body()?;
    let cfg = args.quad.config()?;
    let eval = demag_factors_integral(&e, &cfg)?;
    let converged = eval.converged();
    let row = output::demag_row(args.format.format, &eval.tensor.factors(), converged);
    emit(vec![(row, converged)])
}

fn run_tau(args: TauArgs) -> anyhow::Result<i32> {
    let e = args.common.body()?;
    let points = args.points.gather(e.dim())?;
    let threads = args.threads.resolve()?;
    let format = args.format.format;
    let rows = with_pool(threads, || {
        points
            .par_iter()
            .map(|x| -> anyhow::Result<(String, bool)> {
                let class = e.classify(x)?;
                Ok((output::tau_row(format, x, &class), true))
            })
            .collect::<anyhow::Result<Vec<_>>>()
    })??;
    emit(rows)
}

fn run_validate(args: ValidateArgs) -> anyhow::Result<i32> {
    let e = args.common.body()?;
    let cfg = args.quad.config()?;
    // The suite is sequential by design: its report must be byte-identical
    // whatever --threads says, so the flag is accepted and ignored.
    let _ = args.threads.resolve()?;
    let (report, all_passed) = validate::run_validation(&e, args.seed, &cfg)?;
    print!("{report}");
    Ok(if all_passed { 0 } else { 1 })
}

fn run_grid(args: GridArgs) -> anyhow::Result<i32> {
    let e = args.common.body()?;
    let cfg = args.quad.config()?;
    let threads = args.threads.resolve()?;
    let points = grid_points(&args.grid, e.dim())?;
    let rows = potential_rows(&e, &points, &cfg, args.format.format, threads, None, 1.0)?;
    emit(rows)
}

/// Expands per-axis `MIN:MAX:STEPS` specs into a row-major point list with
/// the last axis varying fastest; both endpoints are included.
fn grid_points(specs: &[String], dim: usize) -> anyhow::Result<Vec<Vec<f64>>> {
    if specs.len() != dim {
        bail!(
            "expected {dim} --grid specs (one per axis), got {}",
            specs.len()
        );
    }
    let axes: Vec<(f64, f64, usize)> = specs
        .iter()
        .map(|s| parse_grid_spec(s))
        .collect::<anyhow::Result<_>>()?;
    let total: usize = axes.iter().map(|(_, _, steps)| steps).product();
    let mut points = Vec::with_capacity(total);
    for flat in 0..total {
        let mut coords = vec![0.0; dim];
        let mut rem = flat;
        for axis in (0..dim).rev() {
            let (min, max, steps) = axes[axis];
            let i = rem % steps;
            rem /= steps;
            coords[axis] = min + (max - min) * (i as f64) / ((steps - 1) as f64);
        }
        points.push(coords);
    }
    Ok(points)
}

fn parse_grid_spec(spec: &str) -> anyhow::Result<(f64, f64, usize)> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        bail!("grid spec {spec:?} must be MIN:MAX:STEPS");
    }
    let min: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| anyhow!("grid spec {spec:?}: {:?} is not a number", parts[0]))?;
    let max: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| anyhow!("grid spec {spec:?}: {:?} is not a number", parts[1]))?;
    let steps: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| anyhow!("grid spec {spec:?}: {:?} is not a step count", parts[2]))?;
    if !(min.is_finite() && max.is_finite()) {
        bail!("grid spec {spec:?}: bounds must be finite");
    }
    if min > max {
        bail!("grid spec {spec:?}: MIN must not exceed MAX");
    }
    if steps < 2 {
        bail!("grid spec {spec:?}: STEPS must be at least 2");
    }
    Ok((min, max, steps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_points_are_row_major_with_endpoints() {
        let specs = vec![
            "0:1:2".to_string(),
            "0:2:3".to_string(),
            "5:5.5:2".to_string(),
        ];
        let points = grid_points(&specs, 3).unwrap();
        assert_eq!(points.len(), 12);
        assert_eq!(points[0], vec![0.0, 0.0, 5.0]);
        // Last axis varies fastest.
        assert_eq!(points[1], vec![0.0, 0.0, 5.5]);
        assert_eq!(points[2], vec![0.0, 1.0, 5.0]);
        assert_eq!(points[11], vec![1.0, 2.0, 5.5]);
    }

    #[test]
    fn grid_specs_are_validated() {
        assert!(grid_points(&["0:1:2".into()], 3).is_err());
        assert!(grid_points(&["0:1:1".into(), "0:1:2".into(), "0:1:2".into()], 3).is_err());
        assert!(grid_points(&["1:0:2".into(), "0:1:2".into(), "0:1:2".into()], 3).is_err());
        assert!(grid_points(&["a:1:2".into(), "0:1:2".into(), "0:1:2".into()], 3).is_err());
    }

    #[test]
    fn axes_argument_parses_lists() {
        let axes = parse_axes_arg("3, 2,1").unwrap();
        assert_eq!(axes.0, vec![3.0, 2.0, 1.0]);
        assert!(parse_axes_arg("3,two,1").is_err());
    }
}
