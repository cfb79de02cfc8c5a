//! Command-line front end for the plane-operator analyses.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 domain error
//! (singular, degenerate, reflection, det != 1).

use std::f64::consts::{FRAC_PI_2, PI};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use planeop::angles::{rotation_range, RangeMode};
use planeop::matrix::{classify, Mat2, SpectrumClass, Vec2};
use planeop::meanangle::{estimate_mean_alpha, estimate_mean_gamma_prime};
use planeop::polar::{operator_norm, polar_decompose};
use planeop::trajectory::{ellipse_through, orbit};
use planeop::Error;

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "planeop", version, about = "Geometric analysis of invertible 2x2 real operators")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct MatrixArg {
    /// Matrix as "a,b;c,d" or a JSON array [[a,b],[c,d]]
    #[arg(short, long)]
    matrix: String,
    /// Emit a JSON object instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify the spectrum (complex pair / real distinct / degenerate)
    Classify(MatrixArg),
    /// Polar decomposition A = O B
    Polar(MatrixArg),
    /// Operator norm max(sqrt(lambda), sqrt(mu))
    Norm(MatrixArg),
    /// Rotation-angle range over all directions
    Angles(MatrixArg),
    /// Monte Carlo estimates of the mean rotation angles (complex case)
    MeanAngle {
        /// Candidate draws (at least 10000)
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// RNG seed; defaults to $PLANEOP_SEED, then 0
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Orbit and invariant ellipse of a det=1 complex-spectrum operator
    Trajectory {
        #[command(flatten)]
        matrix: MatrixArg,
        /// Starting point "x,y"
        #[arg(long, default_value = "1,0")]
        point: String,
        /// Number of orbit points
        #[arg(short = 'n', long, default_value_t = 64)]
        iterations: usize,
        /// Write the orbit as CSV (k,x,y,form_residual)
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write a static SVG figure of the ellipse and orbit
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InsufficientSamples { .. } => CliError::Usage(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn parse_matrix(s: &str) -> Result<Mat2, CliError> {
    let bad = || CliError::Usage(format!("cannot parse matrix {s:?}: expected \"a,b;c,d\" or [[a,b],[c,d]]"));
    let entries: Vec<f64> = if s.trim_start().starts_with('[') {
        let rows: Vec<Vec<f64>> = serde_json::from_str(s).map_err(|_| bad())?;
        rows.into_iter().flatten().collect()
    } else {
        s.split(';')
            .flat_map(|row| row.split(','))
            .map(|e| e.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?
    };
    match entries[..] {
        [a, b, c, d] if entries.iter().all(|e| e.is_finite()) => Ok(Mat2::new(a, b, c, d)),
        _ => Err(bad()),
    }
}

fn parse_point(s: &str) -> Result<Vec2, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    let parse = |p: &str| {
        p.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("cannot parse point {s:?}: expected \"x,y\"")))
    };
    match parts[..] {
        [x, y] => Ok(Vec2::new(parse(x)?, parse(y)?)),
        _ => Err(CliError::Usage(format!("cannot parse point {s:?}: expected \"x,y\""))),
    }
}

fn deg(rad: f64) -> f64 {
    rad.to_degrees()
}

fn mat_json(m: Mat2) -> serde_json::Value {
    json!([[m.a, m.b], [m.c, m.d]])
}

fn cmd_classify(arg: &MatrixArg) -> Result<(), CliError> {
    let m = parse_matrix(&arg.matrix)?;
    let class = classify(m)?;
    if arg.json {
        let body = match class {
            SpectrumClass::ComplexPair { re, im } => json!({
                "schema": SCHEMA, "command": "classify",
                "class": "complex", "re": re, "im": im,
            }),
            SpectrumClass::RealDistinct { lambda1, lambda2, u1, u2, beta } => json!({
                "schema": SCHEMA, "command": "classify",
                "class": "real",
                "lambda1": lambda1, "lambda2": lambda2,
                "u1": [u1.x, u1.y], "u2": [u2.x, u2.y],
                "beta": beta,
            }),
        };
        println!("{body}");
    } else {
        let disc = m.trace() * m.trace() - 4.0 * m.det();
        match class {
            SpectrumClass::ComplexPair { re, im } => {
                println!("complex spectrum, eigenvalues {re} \u{b1} {im}i (discriminant {disc})");
            }
            SpectrumClass::RealDistinct { lambda1, lambda2, u1, u2, beta } => {
                println!(
                    "real spectrum, \u{3bb}1={lambda1}, \u{3bb}2={lambda2}, \u{3b2}={:.2}\u{b0} (discriminant {disc})",
                    deg(beta)
                );
                println!("eigenvectors u1=({}, {}), u2=({}, {})", u1.x, u1.y, u2.x, u2.y);
            }
        }
    }
    Ok(())
}

fn cmd_polar(arg: &MatrixArg) -> Result<(), CliError> {
    let m = parse_matrix(&arg.matrix)?;
    let p = polar_decompose(m)?;
    if arg.json {
        println!(
            "{}",
            json!({
                "schema": SCHEMA, "command": "polar",
                "alpha": p.alpha,
                "orthogonal": mat_json(p.orthogonal),
                "positive": mat_json(p.positive),
                "singular_values": [p.sqrt_lambda, p.sqrt_mu],
                "e1": [p.e1.x, p.e1.y], "e2": [p.e2.x, p.e2.y],
            })
        );
    } else {
        println!("alpha = {} rad ({:.2}\u{b0})", p.alpha, deg(p.alpha));
        println!("O = [[{}, {}], [{}, {}]]", p.orthogonal.a, p.orthogonal.b, p.orthogonal.c, p.orthogonal.d);
        println!("B = [[{}, {}], [{}, {}]]", p.positive.a, p.positive.b, p.positive.c, p.positive.d);
        println!("singular values \u{221a}\u{3bb} = {}, \u{221a}\u{3bc} = {}", p.sqrt_lambda, p.sqrt_mu);
    }
    Ok(())
}

fn cmd_norm(arg: &MatrixArg) -> Result<(), CliError> {
    let m = parse_matrix(&arg.matrix)?;
    let n = operator_norm(m);
    if arg.json {
        println!("{}", json!({"schema": SCHEMA, "command": "norm", "norm": n}));
    } else {
        println!("{n}");
    }
    Ok(())
}

fn cmd_angles(arg: &MatrixArg) -> Result<(), CliError> {
    let m = parse_matrix(&arg.matrix)?;
    let r = rotation_range(m)?;
    let mode = match r.mode {
        RangeMode::OneDirectional => "one-directional",
        RangeMode::Bidirectional => "bidirectional",
        RangeMode::CentralSymmetric => "central-symmetric",
        RangeMode::AdjacentCones => "adjacent-cones",
    };
    if arg.json {
        println!(
            "{}",
            json!({
                "schema": SCHEMA, "command": "angles",
                "gamma_min": r.gamma_min, "gamma_max": r.gamma_max, "mode": mode,
            })
        );
    } else {
        println!(
            "[{:.2}\u{b0}, {:.2}\u{b0}], {mode} ({}\u{2013}{} rad)",
            deg(r.gamma_min),
            deg(r.gamma_max),
            r.gamma_min,
            r.gamma_max
        );
    }
    Ok(())
}

fn cmd_mean_angle(samples: u64, seed: Option<u64>, json_out: bool) -> Result<(), CliError> {
    let seed = seed
        .or_else(|| std::env::var("PLANEOP_SEED").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(0);
    let g = estimate_mean_gamma_prime(seed, samples)?;
    let a = estimate_mean_alpha(seed, samples)?;
    let ratio = g.acceptance_ratio();
    let two_over_pi = 2.0 / PI;
    if json_out {
        println!(
            "{}",
            json!({
                "schema": SCHEMA, "command": "mean-angle",
                "seed": seed, "samples": samples,
                "gamma_prime_max": {"mean": g.mean, "std_error": g.std_error, "accepted": g.n_accepted},
                "alpha": {"mean": a.mean, "std_error": a.std_error, "accepted": a.n_accepted},
                "acceptance_ratio": ratio,
                "interval": [a.mean - g.mean, a.mean + g.mean],
                "reference": {"gamma_prime_max": two_over_pi, "alpha": FRAC_PI_2, "acceptance_ratio": 0.25},
            })
        );
    } else {
        println!("seed {seed}, {samples} candidate draws, {} accepted", g.n_accepted);
        println!("mean \u{3b3}'max = {} \u{b1} {}   (reference 2/\u{3c0} = {two_over_pi})", g.mean, g.std_error);
        println!("mean \u{3b1}     = {} \u{b1} {}   (reference \u{3c0}/2 = {FRAC_PI_2})", a.mean, a.std_error);
        println!("acceptance ratio = {ratio}   (reference 1/4)");
        println!("mean-angle interval [{}, {}]", a.mean - g.mean, a.mean + g.mean);
    }
    Ok(())
}

fn write_orbit_csv(path: &PathBuf, points: &[Vec2], residual: impl Fn(Vec2) -> f64) -> Result<(), CliError> {
    let mut out = String::from("k,x,y,form_residual\n");
    for (k, p) in points.iter().enumerate() {
        out.push_str(&format!("{k},{},{},{}\n", p.x, p.y, residual(*p)));
    }
    fs::write(path, out)?;
    Ok(())
}

fn write_orbit_svg(
    path: &PathBuf,
    ellipse: &planeop::trajectory::EllipseReport,
    points: &[Vec2],
) -> Result<(), CliError> {
    // 256-segment outline from the axis parameterization
    let outline: Vec<Vec2> = (0..=256)
        .map(|i| {
            let t = i as f64 / 256.0 * std::f64::consts::TAU;
            ellipse.axis_major * (ellipse.semi_major * t.cos())
                + ellipse.axis_minor * (ellipse.semi_minor * t.sin())
        })
        .collect();
    let half_w = 1.1 * outline.iter().map(|p| p.x.abs()).fold(0.0, f64::max);
    let half_h = 1.1 * outline.iter().map(|p| p.y.abs()).fold(0.0, f64::max);
    let marker = 0.02 * half_w.max(half_h);
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        -half_w,
        -half_h,
        2.0 * half_w,
        2.0 * half_h
    );
    // SVG y grows downward; flip y when plotting
    let poly: Vec<String> = outline.iter().map(|p| format!("{},{}", p.x, -p.y)).collect();
    svg.push_str(&format!(
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"/>\n",
        poly.join(" "),
        marker * 0.2
    ));
    for p in points {
        svg.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{marker}\" fill=\"crimson\"/>\n",
            p.x, -p.y
        ));
    }
    svg.push_str("</svg>\n");
    fs::write(path, svg)?;
    Ok(())
}

fn cmd_trajectory(
    arg: &MatrixArg,
    point: &str,
    iterations: usize,
    csv: Option<&PathBuf>,
    svg: Option<&PathBuf>,
) -> Result<(), CliError> {
    let m = parse_matrix(&arg.matrix)?;
    let x0 = parse_point(point)?;
    if iterations == 0 {
        return Err(CliError::Usage("iterations must be at least 1".into()));
    }
    let ellipse = ellipse_through(m, x0)?;
    let rep = orbit(m, x0, iterations)?;
    if let Some(path) = csv {
        write_orbit_csv(path, &rep.points, |p| ellipse.form_residual(p))?;
    }
    if let Some(path) = svg {
        write_orbit_svg(path, &ellipse, &rep.points)?;
    }
    let theta = rep.theta_over_2pi * std::f64::consts::TAU;
    if arg.json {
        println!(
            "{}",
            json!({
                "schema": SCHEMA, "command": "trajectory",
                "theta": theta,
                "period": rep.period,
                "invariants": {"S": ellipse.s, "delta": ellipse.delta, "Delta": ellipse.big_delta},
                "semi_major": ellipse.semi_major, "semi_minor": ellipse.semi_minor,
                "axis_major": [ellipse.axis_major.x, ellipse.axis_major.y],
                "axis_minor": [ellipse.axis_minor.x, ellipse.axis_minor.y],
                "r2": ellipse.r2,
                "points": rep.points.iter().map(|p| json!([p.x, p.y])).collect::<Vec<_>>(),
            })
        );
    } else {
        println!("theta = {theta} rad ({:.2}\u{b0})", deg(theta));
        match rep.period {
            Some(q) => println!("period = {q}"),
            None => println!("no period \u{2264} {}", iterations.min(planeop::trajectory::Q_MAX)),
        }
        println!("invariants S = {}, \u{3b4} = {}, \u{394} = {}", ellipse.s, ellipse.delta, ellipse.big_delta);
        println!("semi-axes a = {}, b = {}", ellipse.semi_major, ellipse.semi_minor);
        println!("{} orbit points", rep.points.len());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.cmd {
        Cmd::Classify(arg) => cmd_classify(arg),
        Cmd::Polar(arg) => cmd_polar(arg),
        Cmd::Norm(arg) => cmd_norm(arg),
        Cmd::Angles(arg) => cmd_angles(arg),
        Cmd::MeanAngle { samples, seed, json } => cmd_mean_angle(*samples, *seed, *json),
        Cmd::Trajectory { matrix, point, iterations, csv, svg } => {
            cmd_trajectory(matrix, point, *iterations, csv.as_ref(), svg.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are not errors
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
