//! Command-line front end. `main` in the binary only forwards to [`main`].

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::convex_poly::{peaking_polynomial, AlphaChoice, PeakError, PeakingOptions, DEFAULT_M_CAP};
use crate::dynamics::{empirical_density_scan_with_tol, growth_witness, DEFAULT_HULL_TOL, lattice, orbit, random_functional, DynamicsError, GrowthOutcome};
use crate::interpolation::{solve, InterpolationCertificate, InterpolationProblem};
use crate::jordan_forms::DirectSumSpec;
use crate::json;
use crate::matrix::{complex_vec, MatrixSpec};
use crate::selftest;
use crate::spectral::{classify, Tolerances};

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARSE: u8 = 1;
pub const EXIT_PRECONDITION: u8 = 2;
pub const EXIT_CAP: u8 = 3;
pub const EXIT_SELFTEST_FAILED: u8 = 4;

const AFTER_HELP: &str = "\
Input is a file path, inline JSON, or '-' for stdin (the default).
Complex numbers are [re, im] pairs; real scalars may be bare numbers.

Exit codes: 0 success, 1 parse error, 2 precondition violated,
3 solver cap reached, 4 selftest criterion failed.
Errors are written to stderr as JSON.

Logging: set CONVEX_CYCLIC_LOG to error, warn, info, debug or trace.";

#[derive(Debug, Parser)]
#[command(name = "convex-cyclic", version, about = "Convex-cyclicity of matrices, convex-polynomial peaking and interpolation, orbit-hull growth", after_help = AFTER_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input: file path, inline JSON, or '-' for stdin.
    #[arg(long, global = true, default_value = "-")]
    pub input: String,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance override: eigenvalue tolerance for analyze, residual
    /// tolerance for interpolate, hull tolerance for density.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Degree cap for interpolate.
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Orbit length for orbit, and the scan cap for density growth witnesses.
    #[arg(long, global = true)]
    pub horizon: Option<usize>,
    /// Growth threshold for density witnesses.
    #[arg(long, global = true)]
    pub threshold: Option<f64>,
    /// Generator budget for density.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Classify a matrix ({"field","rows"}) or canonical form ({"blocks"}).
    Analyze,
    /// Solve a convex-polynomial interpolation problem.
    Interpolate,
    /// Build a peaking polynomial for a node set.
    Peak,
    /// Write the orbit of a start vector as CSV.
    Orbit,
    /// Empirical hull coverage of a grid, plus growth witnesses.
    Density,
    /// Run the built-in acceptance checks.
    Selftest {
        /// Comma-separated criterion ids; all when absent.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

/// A failure mapped to an exit code and a structured message.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn parse(message: impl ToString) -> Self {
        Self { code: EXIT_PARSE, kind: "ParseError", message: message.to_string() }
    }

    fn precondition(message: impl ToString) -> Self {
        Self { code: EXIT_PRECONDITION, kind: "PreconditionViolated", message: message.to_string() }
    }

    fn io(message: impl ToString) -> Self {
        Self { code: EXIT_PARSE, kind: "IoError", message: message.to_string() }
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        CliError::precondition(e)
    }
}

/// Result of a subcommand: text to write and the exit code to return.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

fn ok(text: String) -> Outcome {
    Outcome { text, code: EXIT_OK }
}

fn read_input(spec: &str) -> Result<String, CliError> {
    let trimmed = spec.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(spec.to_string());
    }
    if spec == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf).map_err(CliError::io)?;
        return Ok(buf);
    }
    std::fs::read_to_string(spec).map_err(|e| CliError::io(format!("{spec}: {e}")))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(CliError::parse)
}

fn render<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    json::to_string(value).map_err(|e| CliError { code: EXIT_PARSE, kind: "SerializeError", message: e.to_string() })
}

/// Either a dense matrix or a canonical form.
#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixInput {
    Dense(MatrixSpec),
    Form(DirectSumSpec),
}

impl MatrixInput {
    fn into_matrix(self) -> Result<MatrixSpec, CliError> {
        match self {
            MatrixInput::Dense(m) => Ok(m),
            MatrixInput::Form(f) => f.build().map_err(CliError::precondition),
        }
    }
}

fn analyze(cli: &Cli, text: &str) -> Result<Outcome, CliError> {
    let t = parse::<MatrixInput>(text)?.into_matrix()?;
    let tol = cli.tol.map(Tolerances::with_eig);
    let verdict = classify(&t, tol).map_err(CliError::precondition)?;
    Ok(ok(render(&verdict)?))
}

fn interpolate(cli: &Cli, text: &str) -> Result<Outcome, CliError> {
    let mut prob: InterpolationProblem = parse(text)?;
    if let Some(d) = cli.max_degree {
        prob.max_degree = d;
    }
    if let Some(t) = cli.tol {
        prob.residual_tol = t;
    }
    prob.validate().map_err(CliError::precondition)?;
    let cert = solve(&prob);
    let code = match cert {
        InterpolationCertificate::InfeasibleAtCap { .. } => EXIT_CAP,
        _ => EXIT_OK,
    };
    Ok(Outcome { text: render(&cert)?, code })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PeakInput {
    #[serde(with = "complex_vec")]
    nodes: Vec<Complex64>,
    #[serde(default)]
    alpha: Option<AlphaInput>,
    #[serde(default)]
    margin_goal: f64,
    #[serde(default)]
    avoid_real: bool,
    #[serde(default = "default_m_cap")]
    m_cap: usize,
}

fn default_m_cap() -> usize {
    DEFAULT_M_CAP
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AlphaInput {
    Value(f64),
    Keyword(String),
}

fn peak(text: &str) -> Result<Outcome, CliError> {
    let input: PeakInput = parse(text)?;
    let alpha = match input.alpha {
        None => AlphaChoice::Auto,
        Some(AlphaInput::Value(a)) => AlphaChoice::Fixed(a),
        Some(AlphaInput::Keyword(k)) if k == "auto" => AlphaChoice::Auto,
        Some(AlphaInput::Keyword(k)) => return Err(CliError::parse(format!("alpha must be a number or \"auto\", got {k:?}"))),
    };
    let opts = PeakingOptions { alpha, margin_goal: input.margin_goal, avoid_real: input.avoid_real, m_cap: input.m_cap };
    match peaking_polynomial(&input.nodes, &opts) {
        Ok(cert) => Ok(ok(render(&cert)?)),
        Err(e @ PeakError::PreconditionViolated(_)) => Err(CliError::precondition(e)),
        Err(e) => Err(CliError { code: EXIT_CAP, kind: "SolverCap", message: e.to_string() }),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrbitInput {
    matrix: MatrixInput,
    #[serde(with = "complex_vec")]
    start: Vec<Complex64>,
}

fn orbit_cmd(cli: &Cli, text: &str) -> Result<Outcome, CliError> {
    let input: OrbitInput = parse(text)?;
    let t = input.matrix.into_matrix()?;
    let trace = orbit(&t, &DVector::from_vec(input.start), cli.horizon.unwrap_or(20))?;
    Ok(ok(trace.to_csv()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeInput {
    per_side: usize,
    lo: f64,
    hi: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DensityInput {
    matrix: MatrixInput,
    #[serde(with = "complex_vec")]
    start: Vec<Complex64>,
    #[serde(default)]
    grid: Option<Vec<GridPoint>>,
    #[serde(default)]
    lattice: Option<LatticeInput>,
    #[serde(default = "default_functionals")]
    functionals: usize,
}

#[derive(Deserialize)]
struct GridPoint(#[serde(with = "complex_vec")] Vec<Complex64>);

fn default_functionals() -> usize {
    50
}

#[derive(Serialize)]
struct GrowthSummary {
    functionals: usize,
    witnessed: usize,
    bounded: usize,
    overflow: usize,
    threshold: f64,
    max_n: usize,
    largest_index: Option<usize>,
}

fn density(cli: &Cli, text: &str) -> Result<Outcome, CliError> {
    let input: DensityInput = parse(text)?;
    let t = input.matrix.into_matrix()?;
    let x = DVector::from_vec(input.start);
    let grid: Vec<DVector<Complex64>> = match (input.grid, input.lattice) {
        (Some(_), Some(_)) => return Err(CliError::parse("give either grid or lattice, not both")),
        (Some(g), None) => g.into_iter().map(|p| DVector::from_vec(p.0)).collect(),
        (None, Some(l)) => lattice(t.dim(), l.per_side, l.lo, l.hi),
        (None, None) => lattice(t.dim(), 5, -10.0, 10.0),
    };
    if let Some(bad) = grid.iter().position(|g| g.len() != t.dim()) {
        return Err(CliError::precondition(format!("grid point {bad} has the wrong dimension")));
    }
    let budget = cli.budget.unwrap_or(400);
    let report = empirical_density_scan_with_tol(&t, &x, &grid, budget, cli.tol.unwrap_or(DEFAULT_HULL_TOL))?;
    let threshold = cli.threshold.unwrap_or(1e6);
    let max_n = cli.horizon.unwrap_or(2000);
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut summary = GrowthSummary {
        functionals: input.functionals,
        witnessed: 0,
        bounded: 0,
        overflow: 0,
        threshold,
        max_n,
        largest_index: None,
    };
    for _ in 0..input.functionals {
        let f = random_functional(t.field(), t.dim(), &mut rng);
        match growth_witness(&t, &x, &f, threshold, max_n)? {
            GrowthOutcome::Witness(w) => {
                summary.witnessed += 1;
                summary.largest_index = Some(summary.largest_index.unwrap_or(0).max(w.index));
            }
            GrowthOutcome::Bounded { .. } => summary.bounded += 1,
            GrowthOutcome::OverflowReached { .. } => summary.overflow += 1,
        }
    }
    let out = json!({ "coverage": report, "growth": summary, "seed": cli.seed, "budget": budget });
    Ok(ok(render(&out)?))
}

fn selftest_cmd(cli: &Cli, only: &[u8]) -> Result<Outcome, CliError> {
    let report = selftest::run(cli.seed, only);
    let code = if report.passed { EXIT_OK } else { EXIT_SELFTEST_FAILED };
    Ok(Outcome { text: render(&report)?, code })
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Selftest { only } => selftest_cmd(cli, only),
        cmd => {
            let text = read_input(&cli.input)?;
            match cmd {
                Command::Analyze => analyze(cli, &text),
                Command::Interpolate => interpolate(cli, &text),
                Command::Peak => peak(&text),
                Command::Orbit => orbit_cmd(cli, &text),
                Command::Density => density(cli, &text),
                Command::Selftest { .. } => unreachable!(),
            }
        }
    }
}

fn init_logging() {
    let env = env_logger::Env::new().filter_or("CONVEX_CYCLIC_LOG", "warn");
    let _ = env_logger::Builder::from_env(env).format_timestamp(None).try_init();
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    init_logging();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors are parse errors; --help and --version are not errors.
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { EXIT_OK });
        }
    };
    let result = run(&cli).and_then(|out| {
        match &cli.output {
            Some(path) => std::fs::write(path, &out.text).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?,
            None => io::stdout().write_all(out.text.as_bytes()).map_err(CliError::io)?,
        }
        Ok(out.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let msg = json!({ "error": e.kind, "message": e.message });
            eprintln!("{msg}");
            ExitCode::from(e.code)
        }
    }
}
