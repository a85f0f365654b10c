//! `chebenclose` command-line front end: coefficient and result file
//! formats plus the `eval`, `bench`, `compare` and `gen` commands.

pub mod coeffs;
pub mod compare;
pub mod results;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use chebenclose::bench::{gen_decaying_coeffs, run_benchmark, BenchConfig, BenchReport};
use chebenclose::interval::numparse::{literal_down, literal_up};
use chebenclose::{Method, RealInterval, Status};

use results::CsvRow;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ALL_FAILED: i32 = 3;

/// Environment variable capping benchmark worker threads.
pub const THREADS_ENV: &str = "CHEB_ENCLOSE_THREADS";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("header declares {declared} coefficients but {found} were found")]
    Count { declared: usize, found: usize },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "chebenclose",
    version,
    about = "Validated enclosures of Chebyshev expansions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enclose an expansion from a coefficient file at one point or interval.
    Eval {
        /// Coefficient file (`chebenclose-coeffs v1 <count>` format).
        coeffs: PathBuf,
        /// Evaluation point `t` or interval `inf,sup`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Comma-separated methods; all by default.
        #[arg(long, value_delimiter = ',')]
        methods: Option<Vec<Method>>,
        /// Append hexadecimal-float columns.
        #[arg(long)]
        hex: bool,
    },
    /// Run the random-interval benchmark.
    Bench {
        #[arg(long, default_value_t = 1024)]
        degree: usize,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.01)]
        rho: f64,
        #[arg(long, default_value_t = 0.0)]
        coeff_radius: f64,
        #[arg(long, default_value_t = 0.0)]
        point_radius: f64,
        #[arg(long, default_value_t = 0.1)]
        boundary_bias: f64,
        #[arg(long, value_delimiter = ',')]
        methods: Option<Vec<Method>>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Output path; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Timing repetitions per evaluation (median is reported).
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long)]
        hex: bool,
    },
    /// Compare radii and statuses of two result CSV files.
    Compare { a: PathBuf, b: PathBuf },
    /// Write a synthetic decaying-coefficient expansion as a coefficient file.
    Gen {
        #[arg(long, default_value_t = 1024)]
        degree: usize,
        #[arg(long, default_value_t = 1.01)]
        rho: f64,
        #[arg(long, default_value_t = 0.0)]
        coeff_radius: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        hex: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `t` or `inf,sup`; decimal literals are enclosed outward.
pub fn parse_point(s: &str) -> Result<RealInterval, String> {
    let err = |e: chebenclose::IntervalError| format!("bad --x value {s:?}: {e}");
    match s.split_once(',') {
        Some((a, b)) => {
            let inf = literal_down(a).map_err(err)?;
            let sup = literal_up(b).map_err(err)?;
            RealInterval::new(inf, sup).map_err(err)
        }
        None => RealInterval::from_decimal_str(s).map_err(err),
    }
}

fn threads_from_env() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            )),
        },
        Err(_) => Ok(None),
    }
}

fn write_output(out: &Option<PathBuf>, bytes: &[u8], stdout: &mut dyn Write) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, bytes),
        None => stdout.write_all(bytes),
    }
}

pub fn aggregate_table(report: &BenchReport) -> String {
    let mut s = format!(
        "{:<20} {:>12} {:>14} {:>12} {:>10}\n",
        "method", "mean_digits", "median_radius", "total_s", "excluded"
    );
    for m in &report.summaries {
        let digits = m
            .digits
            .mean
            .map_or_else(|| "-".to_string(), |d| format!("{d:.3}"));
        s.push_str(&format!(
            "{:<20} {:>12} {:>14.3e} {:>12.6} {:>10}\n",
            m.method.as_str(),
            digits,
            m.median_radius,
            m.total_seconds,
            m.digits.excluded
        ));
    }
    s
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match cli.command {
        Command::Eval {
            coeffs,
            x,
            methods,
            hex,
        } => {
            let text = match fs::read_to_string(&coeffs) {
                Ok(t) => t,
                Err(e) => {
                    let _ = writeln!(stderr, "error: cannot read {}: {e}", coeffs.display());
                    return EXIT_INPUT;
                }
            };
            let p = match coeffs::parse_coeff_file(&text) {
                Ok(p) => p,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {}: {e}", coeffs.display());
                    return EXIT_INPUT;
                }
            };
            let x = match parse_point(&x) {
                Ok(x) => x,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return EXIT_INPUT;
                }
            };
            let mut methods = methods.unwrap_or_else(|| Method::ALL.to_vec());
            methods.dedup();
            let results: Vec<_> = methods.iter().map(|m| m.enclose(&p, &x)).collect();
            let rows: Vec<CsvRow> = results
                .iter()
                .map(|r| CsvRow::from_result(0, x, r))
                .collect();
            if let Err(e) = results::write_csv(&rows, hex, &mut *stdout) {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_INPUT;
            }
            let failed = results
                .iter()
                .filter(|r| matches!(r.status, Status::Degenerate | Status::DomainError))
                .count();
            if failed == results.len() {
                EXIT_ALL_FAILED
            } else {
                EXIT_OK
            }
        }
        Command::Bench {
            degree,
            points,
            seed,
            rho,
            coeff_radius,
            point_radius,
            boundary_bias,
            methods,
            format,
            out,
            repeats,
            hex,
        } => {
            let threads = match threads_from_env() {
                Ok(t) => t,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return EXIT_INPUT;
                }
            };
            let config = BenchConfig {
                degree,
                num_points: points,
                decay_rho: rho,
                coeff_radius,
                point_radius,
                seed,
                methods: methods.unwrap_or_else(|| Method::ALL.to_vec()),
                boundary_bias,
                repeats,
                threads,
            };
            let report = match run_benchmark(&config) {
                Ok(r) => r,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return EXIT_INPUT;
                }
            };
            let bytes = match format {
                OutputFormat::Csv => {
                    let mut buf = Vec::new();
                    if let Err(e) =
                        results::write_csv(&results::report_rows(&report), hex, &mut buf)
                    {
                        let _ = writeln!(stderr, "error: {e}");
                        return EXIT_INPUT;
                    }
                    buf
                }
                OutputFormat::Json => match serde_json::to_vec_pretty(&report) {
                    Ok(b) => b,
                    Err(e) => {
                        let _ = writeln!(stderr, "error: {e}");
                        return EXIT_INPUT;
                    }
                },
            };
            if let Err(e) = write_output(&out, &bytes, stdout) {
                let _ = writeln!(stderr, "error: cannot write report: {e}");
                return EXIT_INPUT;
            }
            let _ = write!(stderr, "{}", aggregate_table(&report));
            EXIT_OK
        }
        Command::Compare { a, b } => {
            let load = |path: &PathBuf| -> Result<Vec<CsvRow>, String> {
                let f = fs::File::open(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                results::read_csv(f).map_err(|e| format!("{}: {e}", path.display()))
            };
            let outcome = load(&a).and_then(|ra| {
                let rb = load(&b)?;
                compare::compare(&ra, &rb).map_err(|e| e.to_string())
            });
            match outcome {
                Ok(c) => {
                    let _ = write!(stdout, "{}", c.render());
                    EXIT_OK
                }
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    EXIT_INPUT
                }
            }
        }
        Command::Gen {
            degree,
            rho,
            coeff_radius,
            seed,
            hex,
            out,
        } => {
            if !(rho.is_finite() && rho > 1.0 && coeff_radius.is_finite() && coeff_radius >= 0.0) {
                let _ = writeln!(stderr, "error: need rho > 1 and a finite coeff-radius >= 0");
                return EXIT_INPUT;
            }
            let p = gen_decaying_coeffs(degree, rho, coeff_radius, seed);
            let text = coeffs::write_coeff_file(&p, hex);
            match write_output(&out, text.as_bytes(), stdout) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    EXIT_INPUT
                }
            }
        }
    }
}
