use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use unibounds::pair::PermConvention;
use unibounds::Strategy;
use unibounds_cli::commands;
use unibounds_cli::config::{GridSpec, OutputFormat};
use unibounds_cli::error::CliError;

#[derive(Parser)]
#[command(
    name = "unibounds",
    version,
    about = "Variance products and lower bounds for unitary operators on quantum states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Built-in scenario: ex1, ex2, ex3:<dim>, ex4
    #[arg(long, conflicts_with = "state")]
    scenario: Option<String>,
    /// Parameter value for --scenario
    #[arg(long)]
    theta: Option<f64>,
    /// State file (pure vector or mixed density matrix)
    #[arg(long)]
    state: Option<PathBuf>,
    /// Comma-separated operator matrix files (two or three)
    #[arg(long, value_delimiter = ',')]
    ops: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate variances, their product, and requested lower bounds
    Eval {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated bounds: product, I<d>, I1prime, S<p>-<q>,
        /// M<t>-<p>-<q>[-x|y|z], yu<d>
        #[arg(long, default_value = "product,I1prime,I2")]
        bounds: String,
        /// Validation tolerance
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Check bound invariants over a scenario grid or random instances
    Verify {
        /// Built-in scenario to sweep
        #[arg(long, conflicts_with = "random")]
        scenario: Option<String>,
        /// Dimension for random instances
        #[arg(long)]
        random: Option<usize>,
        /// Number of random instances
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Alternate mixed states into the random trials
        #[arg(long)]
        mixed: bool,
        /// Parameter grid start:stop:step for --scenario
        #[arg(long, default_value_t = GridSpec::DEFAULT)]
        grid: GridSpec,
        /// Seed for random instances
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Residual tolerance (0 makes every check strict)
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Directory for failing-instance files
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Write a bundled example sweep as CSV plus a plot script
    Sweep {
        /// Figure id: fig1, fig2, fig4, fig5, fig6, fig7
        #[arg(long)]
        figure: String,
        /// Parameter grid start:stop:step
        #[arg(long, default_value_t = GridSpec::DEFAULT)]
        grid: GridSpec,
        /// Output CSV path, or a directory for <figure>.csv
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximize one bound over index relabelings of the amplitude vectors
    Permmax {
        #[command(flatten)]
        input: InputArgs,
        /// Bound to maximize: I1prime, S<p>-<q>, or M<t>-<p>-<q>
        #[arg(long)]
        bound: String,
        /// exhaustive or sampled
        #[arg(long, default_value = "exhaustive")]
        strategy: String,
        /// Seed for --strategy sampled
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Sample count for --strategy sampled
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Relabeling convention: consistent or cross-term
        #[arg(long, default_value = "consistent")]
        convention: String,
        /// Validation tolerance
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

fn parse_strategy(name: &str, seed: u64, samples: usize) -> Result<Strategy, CliError> {
    match name {
        "exhaustive" => Ok(Strategy::Exhaustive),
        "sampled" => Ok(Strategy::Sampled { seed, samples }),
        other => Err(CliError::Input(format!(
            "unknown strategy '{other}' (expected exhaustive or sampled)"
        ))),
    }
}

fn parse_convention(name: &str) -> Result<PermConvention, CliError> {
    match name {
        "consistent" => Ok(PermConvention::Consistent),
        "cross-term" => Ok(PermConvention::CrossTerm),
        other => Err(CliError::Input(format!(
            "unknown convention '{other}' (expected consistent or cross-term)"
        ))),
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Eval {
            input,
            bounds,
            tol,
            format,
        } => commands::cmd_eval(
            input.scenario.as_deref(),
            input.theta,
            input.state.as_deref(),
            &input.ops,
            &bounds,
            tol,
            format,
        ),
        Command::Verify {
            scenario,
            random,
            trials,
            mixed,
            grid,
            seed,
            tol,
            out,
            format,
        } => commands::cmd_verify(
            scenario.as_deref(),
            random,
            trials,
            mixed,
            &grid,
            seed,
            tol,
            out.as_deref(),
            format,
        ),
        Command::Sweep { figure, grid, out } => commands::cmd_sweep(&figure, &grid, out.as_deref()),
        Command::Permmax {
            input,
            bound,
            strategy,
            seed,
            samples,
            convention,
            tol,
            format,
        } => commands::cmd_permmax(
            input.scenario.as_deref(),
            input.theta,
            input.state.as_deref(),
            &input.ops,
            &bound,
            parse_strategy(&strategy, seed, samples)?,
            parse_convention(&convention)?,
            tol,
            format,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
