//! Experiment CLI for the weighted spectral calculus library.
//!
//! Every subcommand runs one verification study, writes its plot data under
//! the output directory and prints a JSON summary on stdout. Exit codes:
//! 0 when every checked property holds, 1 on a numerical failure (the JSON
//! diagnostic still goes to stdout), 2 on usage or configuration errors.
//!
//! Identical arguments and seeds produce byte-identical output files.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use transpect::io;
use transpect::{
    check_decay_envelope, check_embedding, delta_convergence_study, embedding_constant,
    make_geometry, random_hs_sample, solve_aging, spectral_l2_norm, validate_geometry,
    weighted_hermite, weighted_inner, weighted_norm, wft, AgingSymbol, GeometryPair,
    GeometrySpec, Grid, WeightedSignal,
};

const GEOMETRY_SCHEMA: &str = r#"{"kind": "identity"|"affine"|"hadamard"|"composed", "params": {...}, "weight": {"kind": "constant"|"poly"|"coeffs", ...}}"#;

#[derive(Parser)]
#[command(
    name = "transpect",
    version,
    about = "Verification studies for weighted spectral calculus",
    propagate_version = true
)]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

/// Grid parameters shared by most studies.
#[derive(Args, Clone)]
struct GridArgs {
    /// Geometry descriptor JSON; identity with unit weight when omitted
    #[arg(long)]
    geometry: Option<PathBuf>,
    /// Half-width L of the transmuted grid
    #[arg(long = "L", default_value_t = 20.0)]
    l: f64,
    /// Number of nodes (power of two)
    #[arg(long = "N", default_value_t = 4096)]
    n: usize,
}

#[derive(Args, Clone)]
struct OutArg {
    /// Output directory (default: $TS_DEFAULT_OUT or ./out)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check hypotheses H1/H2 for a geometry descriptor
    ValidateGeometry {
        #[arg(long)]
        geometry: PathBuf,
        /// Number of log-spaced sample points
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Isometry residuals of the weighted Fourier transform on random signals
    Parseval {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Orthonormality of the weighted Hermite basis
    HermiteGram {
        #[command(flatten)]
        grid: GridArgs,
        /// Basis functions 0..modes
        #[arg(long, default_value_t = 21)]
        modes: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Sampling-law convergence study for the mollified weighted delta
    DeltaScaling {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        tau: f64,
        /// Strictly decreasing mollifier widths
        #[arg(long, value_delimiter = ',', default_value = "0.32,0.16,0.08,0.04")]
        eps: Vec<f64>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Pointwise embedding check over random spectral-colored signals
    Embedding {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 50)]
        seeds: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Solve the fractional aging equation for a signal read from CSV
    Solve {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        s: f64,
        /// Input signal CSV with columns t,y,re,im on the same grid
        #[arg(long)]
        input: PathBuf,
        /// Apply a smooth plateau window before solving
        #[arg(long)]
        window: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Impulse-response envelope sweep over source points
    Green {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 1.5)]
        alpha: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-2,0,2")]
        t0: Vec<f64>,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Signal with its pointwise decay envelope +-C_s ||u||_{H^s} / omega(t)
    EnvelopeCsv {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        s: f64,
        /// Seed for a generated sample when no input is given
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Optional input signal CSV instead of a generated sample
        #[arg(long)]
        input: Option<PathBuf>,
        /// Apply a smooth plateau window to the signal
        #[arg(long)]
        window: bool,
        #[command(flatten)]
        out: OutArg,
    },
}

enum Failure {
    /// Bad arguments or configuration: exit 2.
    Usage(String),
    /// A checked numerical property failed: exit 1, diagnostic on stdout.
    Numeric(serde_json::Value),
}

impl From<transpect::Error> for Failure {
    fn from(e: transpect::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::IoError> for Failure {
    fn from(e: io::IoError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = CliArgs::parse();
    match run(cli.command) {
        Ok(summary) => {
            print!("{}", io::to_json_string(&summary));
            ExitCode::SUCCESS
        }
        Err(Failure::Numeric(diag)) => {
            print!("{}", io::to_json_string(&diag));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("geometry schema: {GEOMETRY_SCHEMA}");
            eprintln!("run `transpect --help` for usage");
            ExitCode::from(2)
        }
    }
}

fn out_dir(arg: &OutArg) -> PathBuf {
    arg.out.clone().unwrap_or_else(|| {
        std::env::var_os("TS_DEFAULT_OUT")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("out"))
    })
}

fn load_geometry(path: &Option<PathBuf>) -> Result<GeometryPair, Failure> {
    let spec = match path {
        None => GeometrySpec::identity(),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("bad geometry descriptor {}: {e}", p.display())))?
        }
    };
    Ok(make_geometry(&spec)?)
}

fn build_grid(args: &GridArgs) -> Result<(GeometryPair, Grid), Failure> {
    let g = load_geometry(&args.geometry)?;
    let grid = Grid::build(&g, args.l, args.n)?;
    Ok((g, grid))
}

fn run(command: Command) -> Result<serde_json::Value, Failure> {
    match command {
        Command::ValidateGeometry {
            geometry,
            samples,
            out,
        } => {
            let text = std::fs::read_to_string(&geometry)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", geometry.display())))?;
            let spec: GeometrySpec = serde_json::from_str(&text).map_err(|e| {
                Failure::Usage(format!("bad geometry descriptor {}: {e}", geometry.display()))
            })?;
            let summary = match make_geometry(&spec) {
                Ok(g) => {
                    let report = validate_geometry(&g, samples);
                    json!({
                        "subcommand": "validate-geometry",
                        "geometry": spec,
                        "report": report,
                        "pass": report.pass,
                    })
                }
                Err(e) => json!({
                    "subcommand": "validate-geometry",
                    "geometry": spec,
                    "construction_error": e.to_string(),
                    "pass": false,
                }),
            };
            io::write_json(&out_dir(&out).join("validate_geometry.json"), &summary)?;
            if summary["pass"].as_bool() == Some(true) {
                Ok(summary)
            } else {
                Err(Failure::Numeric(summary))
            }
        }

        Command::Parseval {
            grid,
            trials,
            seed,
            out,
        } => {
            let (_, grid) = build_grid(&grid)?;
            let mut rows = String::from("trial,residual\n");
            let mut max_residual: f64 = 0.0;
            for trial in 0..trials {
                let f = random_hs_sample(seed + trial, 3.0, 1.0, &grid);
                let n = weighted_norm(&f);
                let m = spectral_l2_norm(&wft(&f));
                let residual = (n - m).abs() / n;
                max_residual = max_residual.max(residual);
                rows.push_str(&format!("{trial},{}\n", io::format_g17(residual)));
            }
            let dir = out_dir(&out);
            std::fs::create_dir_all(&dir)
                .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
            std::fs::write(dir.join("parseval.csv"), rows)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let pass = max_residual <= 1e-9;
            let summary = json!({
                "subcommand": "parseval",
                "trials": trials,
                "max_residual": max_residual,
                "threshold": 1e-9,
                "pass": pass,
            });
            if pass {
                Ok(summary)
            } else {
                Err(Failure::Numeric(summary))
            }
        }

        Command::HermiteGram { grid, modes, out } => {
            let (g, grid) = build_grid(&grid)?;
            let basis: Result<Vec<WeightedSignal>, _> =
                (0..modes).map(|n| weighted_hermite(&g, n, &grid)).collect();
            let basis = basis?;
            let mut worst: f64 = 0.0;
            let mut worst_at = (0usize, 0usize);
            for m in 0..modes {
                for n in m..modes {
                    let ip = weighted_inner(&basis[m], &basis[n])?;
                    let target = if m == n { 1.0 } else { 0.0 };
                    let dev = (ip.re - target).abs().max(ip.im.abs());
                    if dev > worst {
                        worst = dev;
                        worst_at = (m, n);
                    }
                }
            }
            let pass = worst <= 1e-8;
            let summary = json!({
                "subcommand": "hermite-gram",
                "modes": modes,
                "max_gram_deviation": worst,
                "worst_entry": [worst_at.0, worst_at.1],
                "threshold": 1e-8,
                "pass": pass,
            });
            io::write_json(&out_dir(&out).join("hermite_gram.json"), &summary)?;
            if pass {
                Ok(summary)
            } else {
                Err(Failure::Numeric(summary))
            }
        }

        Command::DeltaScaling {
            grid,
            tau,
            eps,
            out,
        } => {
            let (g, grid) = build_grid(&grid)?;
            // smooth test function: a Gaussian profile in the transmuted
            // coordinate, evaluated exactly at tau
            let phi = |t: f64| {
                let y = g.psi(t);
                Complex64::new((-y * y / 2.0).exp(), 0.0)
            };
            let rows = delta_convergence_study(&grid, tau, phi, &eps)?;
            io::write_delta_study_csv(&out_dir(&out).join("delta_scaling.csv"), &rows)?;
            let decreasing = rows.windows(2).all(|w| w[1].abs_error < w[0].abs_error);
            let orders_ok = rows
                .iter()
                .filter_map(|r| r.est_order)
                .all(|q| (1.5..=2.5).contains(&q));
            let pass = decreasing && orders_ok;
            let summary = json!({
                "subcommand": "delta-scaling",
                "tau": tau,
                "rows": rows,
                "errors_decreasing": decreasing,
                "orders_in_window": orders_ok,
                "pass": pass,
            });
            if pass {
                Ok(summary)
            } else {
                Err(Failure::Numeric(summary))
            }
        }

        Command::Embedding {
            grid,
            s,
            seeds,
            out,
        } => {
            let (_, grid) = build_grid(&grid)?;
            let c_s = embedding_constant(s)?;
            let mut results = Vec::new();
            let mut max_ratio: f64 = 0.0;
            let mut pass = true;
            for seed in 0..seeds {
                let f = random_hs_sample(seed, s, 1.0, &grid);
                let report = check_embedding(&f, s)?;
                max_ratio = max_ratio.max(report.ratio);
                pass &= report.pass;
                results.push(json!({
                    "seed": seed,
                    "lhs": report.lhs,
                    "rhs": report.rhs,
                    "ratio": report.ratio,
                    "pass": report.pass,
                }));
            }
            let summary = json!({
                "subcommand": "embedding",
                "s": s,
                "C_s": c_s,
                "seeds": seeds,
                "results": results,
                "max_ratio": max_ratio,
                "pass": pass,
            });
            io::write_json(&out_dir(&out).join("embedding.json"), &summary)?;
            if pass {
                Ok(summary)
            } else {
                Err(Failure::Numeric(summary))
            }
        }

        Command::Solve {
            grid,
            alpha,
            s,
            input,
            window,
            out,
        } => {
            let a = AgingSymbol::new(alpha)?;
            let (_, grid) = build_grid(&grid)?;
            let mut f = io::read_signal_csv(&input, &grid)?;
            if window {
                f = f.windowed(&grid.plateau_window(0.5, 0.9));
            }
            let report = solve_aging(&f, a, s);
            let dir = out_dir(&out);
            io::write_signal_csv(&dir.join("solution.csv"), &report.solution)?;
            let summary_struct = report.summary();
            io::write_json(&dir.join("solve_report.json"), &summary_struct)?;
            let pass = summary_struct.bound_satisfied;
            let summary = json!({
                "subcommand": "solve",
                "report": summary_struct,
                "pass": pass,
            });
            if pass {
                Ok(summary)
            } else {
                Err(Failure::Numeric(summary))
            }
        }

        Command::Green {
            grid,
            alpha,
            t0,
            eps,
            out,
        } => {
            let a = AgingSymbol::new(alpha)?;
            let (_, grid) = build_grid(&grid)?;
            let report = check_decay_envelope(&grid, a, &t0, eps)?;
            io::write_envelope_report_csv(&out_dir(&out).join("green_sweep.csv"), &report)?;
            let summary = json!({
                "subcommand": "green",
                "alpha": alpha,
                "eps": eps,
                "report": report,
                "pass": report.pass,
            });
            if report.pass {
                Ok(summary)
            } else {
                Err(Failure::Numeric(summary))
            }
        }

        Command::EnvelopeCsv {
            grid,
            s,
            seed,
            input,
            window,
            out,
        } => {
            let (_, grid) = build_grid(&grid)?;
            let c_s = embedding_constant(s)?;
            let mut f = match &input {
                Some(path) => io::read_signal_csv(path, &grid)?,
                None => random_hs_sample(seed, s, 1.0, &grid),
            };
            if window {
                f = f.windowed(&grid.plateau_window(0.5, 0.9));
            }
            let bound = c_s * transpect::sobolev_norm(&f, s);
            io::write_pointwise_envelope_csv(&out_dir(&out).join("envelope.csv"), &f, bound)?;
            let report = check_embedding(&f, s)?;
            let summary = json!({
                "subcommand": "envelope-csv",
                "s": s,
                "C_s": c_s,
                "bound": bound,
                "max_weighted_amplitude": report.lhs,
                "ratio": report.ratio,
                "pass": report.pass,
            });
            if report.pass {
                Ok(summary)
            } else {
                Err(Failure::Numeric(summary))
            }
        }
    }
}
