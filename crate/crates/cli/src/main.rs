//! Command-line front end: instance generation, evaluation with a
//! selectable method, cross-method verification, and benchmark sweeps.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 input error.

mod bench;
mod instance;

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bieval::bipoly::{self, BiPoly, PointSet};
use bieval::Fe;
use clap::{Parser, Subcommand};

use instance::{InstanceFile, PointMode};

/// NTT-friendly 62-bit prime (29 * 2^57 + 1), the default bench modulus.
const DEFAULT_BENCH_MODULUS: u64 = 4179340454199820289;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Mismatch(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Mismatch(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<bieval::Error> for CliError {
    fn from(e: bieval::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Method {
    /// Per-point nested Horner (the ground truth).
    Naive,
    /// Grid-block evaluation.
    Grid,
    /// Interpolation + modular composition pipeline with shear handling.
    Fast,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::Grid => "grid",
            Method::Fast => "fast",
        }
    }
}

pub fn run_method(
    method: Method,
    poly: &BiPoly,
    pts: &PointSet,
    seed: u64,
) -> bieval::Result<Vec<Fe>> {
    match method {
        Method::Naive => bipoly::naive_multieval(poly, pts),
        Method::Grid => bipoly::multieval_grid_blocks(poly, pts),
        Method::Fast => bipoly::multieval_any(poly, pts, seed),
    }
}

#[derive(Parser)]
#[command(
    name = "bieval",
    about = "Multipoint evaluation of dense bivariate polynomials over prime fields",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a deterministic pseudorandom instance file.
    Gen {
        /// Strict bound on the X-degree.
        #[arg(long)]
        n: usize,
        /// Strict bound on the Y-degree.
        #[arg(long)]
        m: usize,
        /// Prime modulus of the coefficient field.
        #[arg(long)]
        modulus: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// How the n*m evaluation points are laid out.
        #[arg(long, value_enum, default_value = "generic")]
        points_mode: PointMode,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate an instance, printing one residue per point in input order.
    Eval {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "fast")]
        method: Method,
        /// Seed for the fast method's shear search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run all three methods and check that they agree.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Optional file of expected values (one integer per line) to
        /// compare against as well.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Time the methods over a size sweep and emit CSV records.
    Bench {
        /// Comma-separated sizes, e.g. 8x8,16x16,32x32.
        #[arg(long, value_parser = parse_sizes)]
        sizes: Sizes,
        #[arg(long, default_value_t = DEFAULT_BENCH_MODULUS)]
        modulus: u64,
        /// Comma-separated subset of naive,grid,fast.
        #[arg(long, default_value = "naive,fast", value_parser = parse_methods)]
        methods: Methods,
        /// Timed repetitions per cell (a warm-up run is discarded); the
        /// median is reported.
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Debug)]
struct Sizes(Vec<(usize, usize)>);

fn parse_sizes(s: &str) -> Result<Sizes, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let (n, m) = part
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("bad size '{part}', expected NxM"))?;
        let n: usize = n.parse().map_err(|_| format!("bad size '{part}'"))?;
        let m: usize = m.parse().map_err(|_| format!("bad size '{part}'"))?;
        if n == 0 || m == 0 {
            return Err(format!("bad size '{part}': dimensions start at 1"));
        }
        out.push((n, m));
    }
    if out.is_empty() {
        return Err("no sizes given".into());
    }
    Ok(Sizes(out))
}

#[derive(Clone, Debug)]
struct Methods(Vec<Method>);

fn parse_methods(s: &str) -> Result<Methods, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        out.push(match part.trim() {
            "naive" => Method::Naive,
            "grid" => Method::Grid,
            "fast" => Method::Fast,
            other => return Err(format!("unknown method '{other}'")),
        });
    }
    Ok(Methods(out))
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<InstanceFile, CliError> {
    let text = read_file(path)?;
    InstanceFile::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_gen(
    n: usize,
    m: usize,
    modulus: u64,
    seed: u64,
    mode: PointMode,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let inst = instance::generate(n, m, modulus, seed, mode)?;
    write_output(out, &inst.serialize())
}

fn cmd_eval(path: &Path, method: Method, seed: u64) -> Result<(), CliError> {
    let inst = load_instance(path)?;
    let field = inst.field()?;
    let values = run_method(
        method,
        &inst.to_bipoly(field),
        &inst.to_pointset(field),
        seed,
    )?;
    let mut stdout = std::io::stdout().lock();
    for v in values {
        writeln!(stdout, "{v}").map_err(|e| CliError::Input(e.to_string()))?;
    }
    Ok(())
}

fn cmd_verify(path: &Path, seed: u64, expect: Option<&Path>) -> Result<(), CliError> {
    let inst = load_instance(path)?;
    let field = inst.field()?;
    let poly = inst.to_bipoly(field);
    let pts = inst.to_pointset(field);

    let methods = [Method::Naive, Method::Grid, Method::Fast];
    let mut results = Vec::new();
    for method in methods {
        results.push(run_method(method, &poly, &pts, seed)?);
    }
    for k in 0..pts.len() {
        let base = results[0][k];
        for (i, method) in methods.iter().enumerate().skip(1) {
            if results[i][k] != base {
                return Err(CliError::Mismatch(format!(
                    "mismatch at index {k}: naive={base}, {}={}",
                    method.name(),
                    results[i][k]
                )));
            }
        }
    }

    if let Some(expect_path) = expect {
        let text = read_file(expect_path)?;
        let mut expected = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let v: i128 = line.parse().map_err(|_| {
                CliError::Input(format!(
                    "{}: line {}: bad integer '{line}'",
                    expect_path.display(),
                    lineno + 1
                ))
            })?;
            expected.push(field.from_i128(v));
        }
        if expected.len() != pts.len() {
            return Err(CliError::Mismatch(format!(
                "expected-values file has {} values for {} points",
                expected.len(),
                pts.len()
            )));
        }
        for (k, (&got, &want)) in results[0].iter().zip(expected.iter()).enumerate() {
            if got != want {
                return Err(CliError::Mismatch(format!(
                    "mismatch against expected values at index {k}: computed {got}, expected {want}"
                )));
            }
        }
    }

    println!("OK: 3 methods agree on {} values", pts.len());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    sizes: &[(usize, usize)],
    modulus: u64,
    methods: &[Method],
    reps: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let mut report: Vec<u8> = Vec::new();
    let mut csv: Vec<u8> = Vec::new();
    bench::run(sizes, modulus, methods, reps, seed, &mut csv, &mut report)?;
    write_output(out, &String::from_utf8_lossy(&csv))?;
    // Human-readable summary goes to stderr so the CSV stream stays clean.
    eprint!("{}", String::from_utf8_lossy(&report));
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen {
            n,
            m,
            modulus,
            seed,
            points_mode,
            out,
        } => cmd_gen(n, m, modulus, seed, points_mode, out.as_deref()),
        Command::Eval { file, method, seed } => cmd_eval(&file, method, seed),
        Command::Verify { file, seed, expect } => cmd_verify(&file, seed, expect.as_deref()),
        Command::Bench {
            sizes,
            modulus,
            methods,
            reps,
            seed,
            out,
        } => cmd_bench(&sizes.0, modulus, &methods.0, reps, seed, out.as_deref()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Mismatch(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
