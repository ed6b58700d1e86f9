use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qcomm::problem::{Order, ProblemOptions};
use qcomm::{exit_code, CheckArgs, CliError, Example, Report, SolveArgs};

/// Solve X^n + A_1 X^(n-1) + ... + A_n = O over matrices commuting with Q.
#[derive(Parser)]
#[command(name = "qcomm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SolveFlags {
    /// Emit the solution set as JSON.
    #[arg(long)]
    json: bool,
    /// Absolute root clustering distance.
    #[arg(long, value_name = "X")]
    cluster_tol: Option<f64>,
    /// Relative residual above which a solution is flagged.
    #[arg(long, value_name = "X")]
    residual_tol: Option<f64>,
    /// Largest number of solutions to enumerate.
    #[arg(long, value_name = "N")]
    cap: Option<usize>,
    /// List the first `cap` solutions instead of failing when there are more.
    #[arg(long)]
    truncate: bool,
    #[arg(long, value_enum)]
    order: Option<OrderArg>,
}

impl SolveFlags {
    fn args(&self) -> SolveArgs {
        SolveArgs {
            json: self.json,
            overrides: ProblemOptions {
                cluster_tol: self.cluster_tol,
                residual_tol: self.residual_tol,
                cap: self.cap,
                truncate: self.truncate.then_some(true),
                order: self.order.map(|o| match o {
                    OrderArg::Lex => Order::Lexicographic,
                    OrderArg::Colex => Order::Colexicographic,
                }),
                ..ProblemOptions::default()
            },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Colex,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleArg {
    #[value(alias = "paper-3.1")]
    WeightedCirculant,
    #[value(alias = "paper-3.2")]
    Companion,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file and list every solution.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        flags: SolveFlags,
    },
    /// Verify candidate solutions against a problem file.
    Check {
        problem: PathBuf,
        candidate: PathBuf,
        /// Also require the candidates to equal the full solution set, in any order.
        #[arg(long)]
        match_set: bool,
        #[arg(long, value_name = "X", default_value_t = 1e-7)]
        match_tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Representation polynomial of a matrix commuting with Q.
    Repr {
        qfile: PathBuf,
        afile: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Eigen-decomposition report for Q.
    Diag {
        qfile: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Solve a built-in worked example.
    Example {
        #[arg(value_enum)]
        name: ExampleArg,
        #[command(flatten)]
        flags: SolveFlags,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("QCOMM_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Invalid(format!("QCOMM_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Invalid(format!("cannot configure thread pool: {e}")))
}

fn run(command: Command) -> Result<Report, CliError> {
    configure_threads()?;
    match command {
        Command::Solve { file, flags } => qcomm::cmd_solve(&file, &flags.args()),
        Command::Check {
            problem,
            candidate,
            match_set,
            match_tol,
            json,
        } => qcomm::cmd_check(
            &problem,
            &candidate,
            &CheckArgs {
                json,
                match_set,
                match_tol,
            },
        ),
        Command::Repr { qfile, afile, json } => qcomm::cmd_repr(&qfile, &afile, json),
        Command::Diag { qfile, json } => qcomm::cmd_diag(&qfile, json),
        Command::Example { name, flags } => {
            let example = match name {
                ExampleArg::WeightedCirculant => Example::WeightedCirculant,
                ExampleArg::Companion => Example::Companion,
            };
            qcomm::cmd_example(example, &flags.args())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command);
    let code = exit_code(&result);
    match &result {
        Ok(report) => {
            let _ = std::io::stdout().write_all(report.stdout.as_bytes());
            for line in &report.diagnostics {
                eprintln!("{line}");
            }
        }
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(code as u8)
}
