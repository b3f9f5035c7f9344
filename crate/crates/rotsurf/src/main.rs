//! Command line front end: self-check suites, the bracket table, grid
//! sampling with CSV/JSON/OBJ export, and pointwise curvature reports.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 usage, domain, or
//! data errors (clap reports its own parse failures with 2 as well).

use clap::{Args, Parser, Subcommand, ValueEnum};
use rotsurf::curve::{Curve4, Interval, ScalarMap};
use rotsurf::groups::RotationPair;
use rotsurf::killing::{bracket_table, render_bracket_table};
use rotsurf::mesh::{
    export_csv, export_json, export_obj, sample_grid, GridSpec, DEFAULT_PROJECTION,
};
use rotsurf::surface::{curvature_report, oracle_curvatures, SurfaceSpec};
use rotsurf::verify::{all_suites, render, suite_by_name, SUITE_NAMES};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "rotsurf",
    version,
    about = "Rotational surfaces in flat (2,2) signature space: subgroup matrices, bracket tables, curvature, mesh export"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the numeric self-check suites.
    Verify {
        /// Suite to run: algebra, killing, groups, surfaces, or all.
        #[arg(default_value = "all")]
        suite: String,
        /// Multiplier on every inexact threshold (1.0 = pinned defaults).
        #[arg(long, default_value_t = 1.0)]
        tol: f64,
    },
    /// Print the bracket table of the six rotational generators.
    Brackets,
    /// Sample a patch over a parameter grid and export it.
    Sample {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Grid resolution as NTxNS, e.g. 16x24.
        #[arg(long)]
        grid: String,
        /// t range as lo:hi.
        #[arg(long, allow_hyphen_values = true)]
        trange: String,
        /// s range as lo:hi.
        #[arg(long, allow_hyphen_values = true)]
        srange: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// OBJ only: three distinct 1-based coordinate axes to keep, as i,j,k.
        #[arg(long)]
        project: Option<String>,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip per-vertex curvature sampling.
        #[arg(long)]
        no_curvature: bool,
    },
    /// Report curvature at one parameter point.
    Curvature {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Parameter point as t:s.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct SurfaceArgs {
    /// Rotation pair: 14, 23, or 56.
    #[arg(long)]
    pair: String,
    /// Builtin curve name, or four comma separated component expressions
    /// in s.
    #[arg(long, allow_hyphen_values = true)]
    curve: String,
    /// Bind the shape constant, as c=VALUE.
    #[arg(long, allow_hyphen_values = true)]
    param: Option<String>,
    /// Curve domain as lo:hi (mandatory when a component divides).
    #[arg(long, allow_hyphen_values = true)]
    domain: Option<String>,
    /// First subgroup parameter as an expression in t.
    #[arg(long, default_value = "t", allow_hyphen_values = true)]
    reparam1: String,
    /// Second subgroup parameter as an expression in t.
    #[arg(long, default_value = "t", allow_hyphen_values = true)]
    reparam2: String,
    /// Skip the restriction probe and the closed-formula road; only the
    /// projection road is available then.
    #[arg(long)]
    general: bool,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Obj,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Verify { suite, tol } => {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(format!("--tol must be positive and finite, got {tol}"));
            }
            let suites: Vec<(&str, Vec<rotsurf::verify::Check>)> = if suite == "all" {
                all_suites(tol)
            } else {
                let checks = suite_by_name(&suite, tol).ok_or_else(|| {
                    format!(
                        "unknown suite '{suite}'; expected one of {} or all",
                        SUITE_NAMES.join(", ")
                    )
                })?;
                vec![(
                    SUITE_NAMES
                        .iter()
                        .find(|n| **n == suite)
                        .copied()
                        .unwrap_or("suite"),
                    checks,
                )]
            };
            let ok = render(&mut io::stdout().lock(), &suites).map_err(|e| e.to_string())?;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Brackets => {
            let table = bracket_table().map_err(|e| e.to_string())?;
            print!("{}", render_bracket_table(&table));
            Ok(ExitCode::SUCCESS)
        }
        Command::Sample {
            surface,
            grid,
            trange,
            srange,
            format,
            project,
            out,
            no_curvature,
        } => {
            let spec = build_surface(&surface)?;
            let (nt, ns) = parse_grid(&grid)?;
            let g = GridSpec::new(
                nt,
                ns,
                parse_range(&trange, "--trange")?,
                parse_range(&srange, "--srange")?,
            )
            .map_err(|e| e.to_string())?;
            if project.is_some() && format != Format::Obj {
                return Err("--project is only meaningful with --format obj".to_string());
            }
            let mesh = sample_grid(&spec, &g, !no_curvature).map_err(|e| e.to_string())?;
            let mut sink: BufWriter<Box<dyn Write>> = BufWriter::new(match &out {
                Some(path) => Box::new(
                    File::create(path)
                        .map_err(|e| format!("cannot create {}: {e}", path.display()))?,
                ),
                None => Box::new(io::stdout().lock()),
            });
            match format {
                Format::Csv => export_csv(&mesh, &mut sink),
                Format::Json => export_json(&mesh, &mut sink),
                Format::Obj => {
                    let axes = match &project {
                        Some(p) => parse_project(p)?,
                        None => DEFAULT_PROJECTION,
                    };
                    export_obj(&mesh, &mut sink, axes)
                }
            }
            .map_err(|e| e.to_string())?;
            sink.flush().map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Curvature { surface, at, json } => {
            let spec = build_surface(&surface)?;
            let (t, s) =
                parse_range(&at, "--at").map_err(|_| format!("--at expects t:s, got '{at}'"))?;
            let stdout = &mut io::stdout().lock();
            if spec.restricted {
                let report = curvature_report(&spec, t, s).map_err(|e| e.to_string())?;
                if json {
                    serde_json::to_writer_pretty(&mut *stdout, &report)
                        .map_err(|e| e.to_string())?;
                    writeln!(stdout).map_err(|e| e.to_string())?;
                } else {
                    write!(stdout, "{report}").map_err(|e| e.to_string())?;
                }
            } else {
                let oracle = oracle_curvatures(&spec, t, s).map_err(|e| e.to_string())?;
                if json {
                    serde_json::to_writer_pretty(&mut *stdout, &oracle)
                        .map_err(|e| e.to_string())?;
                    writeln!(stdout).map_err(|e| e.to_string())?;
                } else {
                    writeln!(
                        stdout,
                        "pair {} at (t, s) = ({t}, {s}) [general patch, projection road only]",
                        spec.pair
                    )
                    .map_err(|e| e.to_string())?;
                    writeln!(
                        stdout,
                        "curvature scalar = {:.12e}\nmean curvature vector = [{:+.12e}, {:+.12e}, {:+.12e}, {:+.12e}]\n|<H, H>| = {:.12e}",
                        oracle.gauss,
                        oracle.mean[0],
                        oracle.mean[1],
                        oracle.mean[2],
                        oracle.mean[3],
                        oracle.mean_norm_sq
                    )
                    .map_err(|e| e.to_string())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn build_surface(args: &SurfaceArgs) -> Result<SurfaceSpec, String> {
    let pair = RotationPair::from_str(&args.pair)
        .map_err(|_| format!("--pair must be 14, 23, or 56, got '{}'", args.pair))?;
    let shape = match &args.param {
        Some(p) => Some(parse_param(p)?),
        None => None,
    };
    let domain = match &args.domain {
        Some(d) => {
            let (lo, hi) = parse_range(d, "--domain")?;
            Some(Interval::new(lo, hi).map_err(|e| e.to_string())?)
        }
        None => None,
    };
    let is_builtin = Curve4::builtin_names().any(|n| n == args.curve);
    let curve = if is_builtin {
        let mut c = Curve4::builtin_with_shape(&args.curve, shape).map_err(|e| e.to_string())?;
        if let Some(dom) = domain {
            c.domain = dom;
        }
        c
    } else {
        Curve4::parse("custom", &args.curve, shape, domain).map_err(|e| e.to_string())?
    };
    let r1 = ScalarMap::parse(&args.reparam1, shape).map_err(|e| e.to_string())?;
    let r2 = ScalarMap::parse(&args.reparam2, shape).map_err(|e| e.to_string())?;
    SurfaceSpec::new(pair, curve, r1, r2, !args.general).map_err(|e| e.to_string())
}

fn parse_range(text: &str, flag: &str) -> Result<(f64, f64), String> {
    let Some((a, b)) = text.split_once(':') else {
        return Err(format!("{flag} expects lo:hi, got '{text}'"));
    };
    let lo: f64 = a
        .trim()
        .parse()
        .map_err(|_| format!("{flag}: '{a}' is not a number"))?;
    let hi: f64 = b
        .trim()
        .parse()
        .map_err(|_| format!("{flag}: '{b}' is not a number"))?;
    Ok((lo, hi))
}

fn parse_grid(text: &str) -> Result<(usize, usize), String> {
    let Some((a, b)) = text.split_once('x') else {
        return Err(format!("--grid expects NTxNS, got '{text}'"));
    };
    let nt: usize = a
        .trim()
        .parse()
        .map_err(|_| format!("--grid: '{a}' is not a count"))?;
    let ns: usize = b
        .trim()
        .parse()
        .map_err(|_| format!("--grid: '{b}' is not a count"))?;
    Ok((nt, ns))
}

fn parse_param(text: &str) -> Result<f64, String> {
    let Some(rest) = text.strip_prefix("c=") else {
        return Err(format!("--param expects c=VALUE, got '{text}'"));
    };
    rest.trim()
        .parse()
        .map_err(|_| format!("--param: '{rest}' is not a number"))
}

fn parse_project(text: &str) -> Result<[usize; 3], String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("--project expects i,j,k, got '{text}'"));
    }
    let mut axes = [0usize; 3];
    for (slot, part) in axes.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| format!("--project: '{part}' is not an axis index"))?;
    }
    Ok(axes)
}
