//! `spinsq`: critical temperatures of spin models and entanglement checks on
//! measured states or collective moments.
//!
//! CSV and reports go to stdout, diagnostics to stderr. Exit codes: 0 on
//! success, 1 when a computation fails (for example the search range is too
//! small), 2 on flag misuse, 3 on a malformed input file.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "spinsq", version, about = "Spin-squeezing entanglement criteria and thermal spin models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Critical temperatures of Heisenberg and XY rings.
    Table1(Table1Args),
    /// Critical temperatures of the four-site cluster as a function of J2.
    Fig2(Fig2Args),
    /// Evaluate every criterion on a state file or a moments file.
    Check(CheckArgs),
    /// Optimal measurement directions for a moments file with full correlations.
    Directions(DirectionsArgs),
    /// Critical temperature of a single model and criterion.
    Tc(TcArgs),
    /// Write a reference or thermal state (or its moments) in file format.
    GenState(GenStateArgs),
}

#[derive(Args, Debug, Clone)]
struct SearchArgs {
    /// Upper end of the temperature grid.
    #[arg(long)]
    t_max: Option<f64>,
    /// Lower end of the temperature grid.
    #[arg(long, default_value_t = 0.02)]
    t_min: f64,
    /// Number of log-spaced grid points.
    #[arg(long, default_value_t = 200)]
    grid_points: usize,
    /// Bisection tolerance in temperature.
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    /// Optimize measurement directions for eqs2.
    #[arg(long)]
    optimize_directions: bool,
}

#[derive(Args, Debug)]
struct Table1Args {
    /// heisenberg, xy or both.
    #[arg(long, default_value = "both")]
    family: String,
    /// Ring sizes (comma separated or repeated).
    #[arg(long, value_delimiter = ',', default_values_t = [3usize, 4, 5, 6, 7, 8, 9])]
    n: Vec<usize>,
    /// Criteria (comma separated).
    #[arg(long, value_delimiter = ',', default_values_t = ["eqs2".to_string(), "ppt".to_string()])]
    criterion: Vec<String>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args, Debug)]
struct Fig2Args {
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    j2_min: f64,
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    j2_max: f64,
    #[arg(long, default_value_t = 31)]
    steps: usize,
    /// Criteria (comma separated).
    #[arg(long, value_delimiter = ',', default_values_t = ["eqs2".to_string(), "ppt".to_string(), "ccnr".to_string()])]
    criteria: Vec<String>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Density matrix file (`DMAT d` header).
    #[arg(long, conflicts_with = "moments", required_unless_present = "moments")]
    state: Option<PathBuf>,
    /// Moments file (`key = value` lines).
    #[arg(long)]
    moments: Option<PathBuf>,
    /// Also search for the best measurement frame.
    #[arg(long)]
    optimize_directions: bool,
}

#[derive(Args, Debug)]
struct DirectionsArgs {
    #[arg(long)]
    moments: PathBuf,
}

#[derive(Args, Debug)]
struct TcArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    j2: f64,
    #[arg(long, default_value = "eqs2")]
    criterion: String,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args, Debug)]
struct GenStateArgs {
    /// singlet_pairs, dicke_half or ghz.
    #[arg(long, conflicts_with = "thermal", required_unless_present = "thermal")]
    reference: Option<String>,
    /// Model family for a thermal state.
    #[arg(long)]
    thermal: Option<String>,
    #[arg(long)]
    n: usize,
    /// Temperature of the thermal state.
    #[arg(long, requires = "thermal")]
    t: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    j2: f64,
    /// Emit the collective moments instead of the density matrix.
    #[arg(long)]
    moments: bool,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    Compute(String),
    Usage(String),
    Input(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Compute(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Compute(m) | Failure::Usage(m) | Failure::Input(m) => m,
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("SPINSQ_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("SPINSQ_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Compute(e.to_string()))
}

fn run(cli: Cli) -> Result<String, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Table1(a) => commands::table1(&a),
        Command::Fig2(a) => commands::fig2(&a),
        Command::Check(a) => commands::check(&a),
        Command::Directions(a) => commands::directions(&a),
        Command::Tc(a) => commands::tc(&a),
        Command::GenState(a) => commands::gen_state(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
