use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod design;
mod error;
mod grid;

use error::CliError;

#[derive(Parser)]
#[command(name = "naivecov", version, about = "Coverage bounds for confidence intervals after model selection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum-coverage upper bound at a single (m, rho)
    Bound(CommonArgs),
    /// Large-sample bound (same as `bound --m inf`)
    Limit(CommonArgs),
    /// Bounds over a grid of m and rho values
    Curve(CommonArgs),
    /// Compare quadrature against Monte Carlo on a grid of points
    Verify(CommonArgs),
    /// Regression simulation of coverage after best-subset selection
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Clone, Debug)]
pub struct CommonArgs {
    /// aic, bic, cp, adjr2 or ttest
    #[arg(long)]
    pub method: Option<String>,
    /// Nominal noncoverage of the interval
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Number of regression parameters
    #[arg(long)]
    pub p: Option<u64>,
    /// Residual degrees of freedom n - p: comma list, `inf` allowed
    #[arg(long)]
    pub m: Option<String>,
    /// Single correlation value
    #[arg(long, conflicts_with = "rho_grid")]
    pub rho: Option<f64>,
    /// Correlation grid lo:step:hi
    #[arg(long)]
    pub rho_grid: Option<String>,
    /// Evaluate coverage at this gamma instead of minimizing
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Size of the t-test rule (defaults to alpha)
    #[arg(long)]
    pub test_size: Option<f64>,
    /// Monte Carlo draws per point
    #[arg(long)]
    pub reps: Option<usize>,
    #[arg(long, default_value_t = 20_261_017)]
    pub seed: u64,
    /// Output file (standard output when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Clone, Debug)]
pub struct SimulateArgs {
    /// Design file: `n p q`, rows of X, a, one or more beta rows, sigma
    #[arg(long)]
    pub design: PathBuf,
    #[arg(long, default_value = "cp")]
    pub method: String,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long)]
    pub test_size: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub reps: usize,
    #[arg(long, default_value_t = 20_261_017)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<(), CliError> = match cli.command {
        Command::Bound(a) => commands::bound(&a, false),
        Command::Limit(a) => commands::bound(&a, true),
        Command::Curve(a) => commands::curve(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Simulate(a) => commands::simulate(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
