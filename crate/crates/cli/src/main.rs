//! Command-line surface over the blaschke-core library: classification
//! queries, curve and sample exports, and PPM rasters of the parameter
//! pictures.
//!
//! Exit codes: 0 success, 2 usage or I/O problems, 3 mathematical degeneracy
//! (poles, failed convergence, ambiguous or inconsistent classification).
//! Every error prints a JSON diagnostic with a stable "code" field to stderr.

use blaschke_core::raster::{self, Overlay, Rect};
use blaschke_core::tol::Tolerances;
use blaschke_core::unicritical::Region;
use blaschke_core::{degree2, multibrot, unicritical, wire, Error};
use clap::{Parser, Subcommand};
use num_complex::Complex64;
use std::f64::consts::TAU;
use std::io::Write;
use std::path::PathBuf;
use std::{fs, io};

const WHITE: [u8; 3] = [255, 255, 255];
const BLACK: [u8; 3] = [0, 0, 0];
const GRAY: [u8; 3] = [128, 128, 128];
const RED: [u8; 3] = [255, 0, 0];

/// Samples per curve when a polyline is drawn onto a raster.
const OVERLAY_SAMPLES: usize = 1 << 14;

#[derive(Parser)]
#[command(name = "blaschke", version, about = "Blaschke product parameter-space toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Distance to the boundary curve below which a parameter counts as on it.
    #[arg(long, global = true, value_name = "EPS", allow_hyphen_values = true)]
    tol_boundary: Option<f64>,
    /// Slack on |multiplier - 1| for the parabolic verdict.
    #[arg(long, global = true, value_name = "EPS", allow_hyphen_values = true)]
    tol_parabolic: Option<f64>,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file. Commands that produce files require it; JSON commands
    /// print to stdout when it is omitted.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the degree-d product with zero w: dynamics plus curve membership.
    Classify {
        #[arg(long)]
        d: u32,
        /// Parameter as "a+bi", "0.5i", or a bare real.
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Export the parameter curve of degree d as CSV (theta,re,im).
    Epicycloid {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        samples: usize,
    },
    /// Degree-2 invariant, critical point, and conjugating map for zeros u, w.
    Lambda {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Parameter-plane raster of degree d over [-1,1]^2 with the curve overlaid.
    RenderParams {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        resolution: usize,
    },
    /// The (u, w) square shaded by the real invariant, with level curves.
    RenderReal {
        #[arg(long)]
        resolution: usize,
        /// Level-curve values, comma separated, each in (-1, 1).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambdas: Vec<f64>,
    },
    /// Backward-orbit samples of the Julia set of the degree-d product with zero w.
    Julia {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
    },
    /// Central component of the degree-d Multibrot set with its boundary curve.
    Multibrot {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        resolution: usize,
    },
}

enum CliError {
    Math(Error),
    Io(io::Error),
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(err) if !err.is_usage() => 3,
            _ => 2,
        }
    }

    fn diagnostic(&self) -> serde_json::Value {
        match self {
            CliError::Math(err) => wire::diagnostic_json(err),
            CliError::Io(err) => {
                serde_json::json!({"code": "io", "message": err.to_string()})
            }
            CliError::Usage(message) => {
                serde_json::json!({"code": "usage", "message": message})
            }
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Math(err)
    }
}

impl From<io::Error> for CliError {
    fn from(err: io::Error) -> Self {
        CliError::Io(err)
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // help and version are not failures; everything else joins the JSON
        // diagnostic contract instead of clap's plain-text report
        Err(err)
            if matches!(
                err.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            err.exit()
        }
        Err(err) => {
            let rendered = err.to_string();
            let first_line = rendered
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            let usage = CliError::Usage(first_line.to_string());
            eprintln!("{}", usage.diagnostic());
            std::process::exit(usage.exit_code());
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("{}", err.diagnostic());
        std::process::exit(err.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let tol = tolerances(&cli)?;
    match &cli.command {
        Command::Classify { d, w } => classify(&cli, tol, *d, w),
        Command::Epicycloid { d, samples } => epicycloid(&cli, *d, *samples),
        Command::Lambda { u, w } => lambda(&cli, tol, u, w),
        Command::RenderParams { d, resolution } => render_params(&cli, *d, *resolution),
        Command::RenderReal {
            resolution,
            lambdas,
        } => render_real(&cli, *resolution, lambdas),
        Command::Julia { d, w, n } => julia(&cli, tol, *d, w, *n),
        Command::Multibrot { d, resolution } => multibrot_cmd(&cli, tol, *d, *resolution),
    }
}

fn tolerances(cli: &Cli) -> Result<Tolerances, CliError> {
    let mut tol = Tolerances::default();
    for (value, name) in [
        (cli.tol_boundary, "--tol-boundary"),
        (cli.tol_parabolic, "--tol-parabolic"),
    ] {
        if let Some(v) = value {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Usage(format!("{name} must be positive, got {v}")));
            }
        }
    }
    if let Some(band) = cli.tol_boundary {
        tol.band = band;
    }
    if let Some(parabolic) = cli.tol_parabolic {
        tol.parabolic = parabolic;
    }
    Ok(tol)
}

/// Writes to --out when given, otherwise to stdout.
fn emit(cli: &Cli, bytes: &[u8]) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => fs::write(path, bytes)?,
        None => io::stdout().write_all(bytes)?,
    }
    Ok(())
}

/// File-producing commands must have somewhere to write.
fn require_out(cli: &Cli) -> Result<&PathBuf, CliError> {
    cli.out
        .as_ref()
        .ok_or_else(|| CliError::Usage("this command writes a file; pass --out".into()))
}

fn ensure_resolution(resolution: usize) -> Result<(), CliError> {
    if resolution < 16 {
        return Err(CliError::Usage(format!(
            "resolution must be at least 16, got {resolution}"
        )));
    }
    Ok(())
}

fn classify(cli: &Cli, tol: Tolerances, d: u32, w_text: &str) -> Result<(), CliError> {
    let w = wire::parse_complex(w_text)?;
    let member = unicritical::membership(d, w, &tol)?;
    let class = unicritical::classify(d, w, &tol)?;
    let mut text = wire::classify_json(&class, &member).to_string();
    text.push('\n');
    emit(cli, text.as_bytes())
}

fn epicycloid(cli: &Cli, d: u32, samples: usize) -> Result<(), CliError> {
    if samples < 2 {
        return Err(CliError::Usage(format!(
            "samples must be at least 2, got {samples}"
        )));
    }
    let mut csv = String::from("theta,re,im\n");
    for k in 0..samples {
        let theta = TAU * k as f64 / samples as f64;
        let z = unicritical::gamma_point(d, theta)?;
        csv.push_str(&wire::csv_row(&[theta, z.re, z.im]));
        csv.push('\n');
    }
    let path = require_out(cli)?;
    Ok(fs::write(path, csv)?)
}

fn lambda(cli: &Cli, tol: Tolerances, u_text: &str, w_text: &str) -> Result<(), CliError> {
    let u = wire::parse_complex(u_text)?;
    let w = wire::parse_complex(w_text)?;
    let witness = degree2::conjugator(u, w)?;
    let critical = degree2::critical_point(u, w)?;
    let class = degree2::classify(u, w, &tol)?;
    let mut text =
        wire::degree2_json(u, w, critical, &witness, class.kind.as_str()).to_string();
    text.push('\n');
    emit(cli, text.as_bytes())
}

fn render_params(cli: &Cli, d: u32, resolution: usize) -> Result<(), CliError> {
    ensure_resolution(resolution)?;
    let path = require_out(cli)?;
    // the visual band is wider than the point-query default so the boundary
    // shows up at raster scale
    let band_tol = Tolerances::with_band(cli.tol_boundary.unwrap_or(Tolerances::RASTER_BAND));
    let rect = Rect::unit_square();
    let mut image = raster::map_grid(rect, resolution, resolution, |z| {
        if z.norm() >= 1.0 {
            return Ok(BLACK); // outside the parameter disk
        }
        let member = unicritical::membership(d, z, &band_tol)?;
        Ok(match member.region {
            Region::Inside => WHITE,
            Region::Boundary => BLACK,
            Region::Outside => GRAY,
        })
    })?;
    let curve = unicritical::gamma_polyline(d, OVERLAY_SAMPLES)?;
    raster::add_overlay(
        &mut image,
        rect,
        &Overlay {
            points: curve.points().to_vec(),
            color: BLACK,
        },
    );
    raster::add_overlay(
        &mut image,
        rect,
        &Overlay {
            points: unicritical::cusp_values(d)?,
            color: RED,
        },
    );
    Ok(fs::write(path, raster::to_ppm(&image))?)
}

fn render_real(cli: &Cli, resolution: usize, lambdas: &[f64]) -> Result<(), CliError> {
    ensure_resolution(resolution)?;
    for &l in lambdas {
        if !(l.is_finite() && l.abs() < 1.0) {
            return Err(CliError::Usage(format!(
                "level-curve values must lie in (-1, 1), got {l}"
            )));
        }
    }
    let path = require_out(cli)?;
    let rect = Rect::unit_square();
    // the invariant of the real pair (u, w), evaluated directly so the grid
    // edges u = -1 and w = 1 (where the formula is still finite) render too
    let gray = raster::map_grid(rect, resolution, resolution, |z| {
        let (u, w) = (z.re, z.im);
        Ok::<u8, Error>(raster::gray_level((w + u - 2.0 * w * u) / (2.0 - w - u)))
    })?;
    let mut image = gray.map(|&g| [g, g, g]);

    let steps = 4 * resolution;
    let sweep = (0..=steps).map(|k| -1.0 + 2.0 * k as f64 / steps as f64);
    let diagonal = sweep.clone().map(|t| Complex64::new(t, t)).collect();
    raster::add_overlay(
        &mut image,
        rect,
        &Overlay {
            points: diagonal,
            color: WHITE,
        },
    );
    for &l in lambdas {
        let mut points = Vec::new();
        for t in sweep.clone() {
            if let Ok(v) = degree2::f_lambda(l, t) {
                if v.abs() <= 1.0 {
                    // the involution makes (v, t) a point of the same curve,
                    // which fills in the steep branch near the pole
                    points.push(Complex64::new(t, v));
                    points.push(Complex64::new(v, t));
                }
            }
        }
        raster::add_overlay(
            &mut image,
            rect,
            &Overlay {
                points,
                color: BLACK,
            },
        );
    }
    Ok(fs::write(path, raster::to_ppm(&image))?)
}

fn julia(cli: &Cli, tol: Tolerances, d: u32, w_text: &str, n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let path = require_out(cli)?.clone();
    let w = wire::parse_complex(w_text)?;
    let product = unicritical::product(d, w)?;
    let class = product.classify_dynamics(&tol)?;
    let julia = product.julia_classify(&tol)?;

    let mut sidecar_path = path.clone().into_os_string();
    sidecar_path.push(".json");
    let mut sidecar = wire::julia_json(&class, &julia).to_string();
    sidecar.push('\n');
    fs::write(&sidecar_path, sidecar)?;

    // the verdict is always written; sampling can still fail (no repelling
    // fixed point to start from), which leaves a header-only CSV behind
    match product.julia_sample(n, cli.seed, &tol) {
        Ok(samples) => {
            let mut csv = String::from("re,im\n");
            for z in samples {
                csv.push_str(&wire::csv_row(&[z.re, z.im]));
                csv.push('\n');
            }
            Ok(fs::write(&path, csv)?)
        }
        Err(err) => {
            if matches!(err, Error::NoRepellingFixedPoint) {
                fs::write(&path, "re,im\n")?;
            }
            Err(err.into())
        }
    }
}

/// Region sized to the boundary curve: the d=2 cardioid gets the classical
/// asymmetric frame, higher degrees a symmetric square with a margin.
fn multibrot_region(d: u32) -> Result<Rect, Error> {
    if d == 2 {
        return Rect::new(-1.0, 0.5, -0.75, 0.75);
    }
    let reach = multibrot::fixed_point_radius(d)? * (d as f64 + 1.0) / d as f64 + 0.1;
    Rect::new(-reach, reach, -reach, reach)
}

fn multibrot_cmd(cli: &Cli, tol: Tolerances, d: u32, resolution: usize) -> Result<(), CliError> {
    ensure_resolution(resolution)?;
    let path = require_out(cli)?;
    let rect = multibrot_region(d)?;
    let grid = multibrot::component_raster(d, rect, resolution, resolution, &tol)?;
    let mut image = grid.map(|status| match status {
        multibrot::CentralStatus::Attracting => WHITE,
        multibrot::CentralStatus::Neutral => BLACK,
        multibrot::CentralStatus::Outside => GRAY,
    });
    let boundary = multibrot::boundary_polyline(d, OVERLAY_SAMPLES)?;
    raster::add_overlay(
        &mut image,
        rect,
        &Overlay {
            points: boundary.points().to_vec(),
            color: BLACK,
        },
    );
    Ok(fs::write(path, raster::to_ppm(&image))?)
}
